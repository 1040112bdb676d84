#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "regiospec/geometry.hpp"
#include "regiospec/pointwise.hpp"

namespace regiospec {

/// Names accepted by test_function: identity, poly2, cospi, bump.
std::vector<std::string> test_function_names();

/// Built-in fields with exact Lipschitz data, adapted to the domain d:
///   identity  y1
///   poly2     (y1 - a)(b - y1) along the first axis
///   cospi     cos(pi y1)
///   bump      exp(1 - 1/(1 - rho^2)), rho = |y - center| / w, w = min side / 4
ScalarField test_function(std::string_view name, const Domain& d);

}  // namespace regiospec
