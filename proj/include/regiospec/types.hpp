#pragma once

#include <Eigen/Core>

namespace regiospec {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<double>;
using Matrix = MatrixX<double>;

// Points in R^N for N <= 2; fixed capacity keeps evaluation loops off the heap.
using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 2, 1>;

inline Point make_point(double x) {
  Point p(1);
  p << x;
  return p;
}

inline Point make_point(double x, double y) {
  Point p(2);
  p << x, y;
  return p;
}

}  // namespace regiospec
