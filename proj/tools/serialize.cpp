#include "serialize.hpp"

#include <sstream>

#include "regiospec/error.hpp"

namespace regiospec::io {

namespace {

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

std::string num(double v) { return Json(v).dump(); }

}  // namespace

Json to_json(const Domain& d) {
  Json j;
  j["dim"] = d.dim();
  const Point lo = d.lower(), hi = d.upper();
  if (d.dim() == 1) {
    j["interval"] = {lo[0], hi[0]};
  } else {
    j["rect"] = {lo[0], hi[0], lo[1], hi[1]};
  }
  return j;
}

Domain domain_from_json(const Json& j) {
  const int dim = j.at("dim").get<int>();
  if (dim == 1) {
    const auto& v = j.at("interval");
    return Domain::interval(v.at(0).get<double>(), v.at(1).get<double>());
  }
  if (dim == 2) {
    const auto& v = j.at("rect");
    return Domain::rectangle(v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>(),
                             v.at(3).get<double>());
  }
  throw Error(ErrorCode::InvalidArgument, "domain dimension must be 1 or 2");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "not a number: '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "not a number: '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

Domain parse_domain(const std::string& text) {
  const auto v = parse_list(text);
  if (v.size() == 2) return Domain::interval(v[0], v[1]);
  if (v.size() == 4) return Domain::rectangle(v[0], v[1], v[2], v[3]);
  throw Error(ErrorCode::InvalidArgument, "domain needs 2 (interval) or 4 (rectangle) numbers");
}

Point parse_point(const std::string& text) {
  const auto v = parse_list(text);
  if (v.size() == 1) return make_point(v[0]);
  if (v.size() == 2) return make_point(v[0], v[1]);
  throw Error(ErrorCode::InvalidArgument, "point needs 1 or 2 coordinates");
}

Json to_json(const FormMatrix& f) {
  Json j;
  j["n"] = f.n();
  j["kind"] = std::string(to_string(f.kind));
  j["s"] = f.s;
  j["delta"] = f.delta ? Json(*f.delta) : Json(nullptr);
  Json data = Json::array();
  for (Eigen::Index r = 0; r < f.data.rows(); ++r) {
    for (Eigen::Index c = 0; c < f.data.cols(); ++c) data.push_back(f.data(r, c));
  }
  j["data"] = std::move(data);
  return j;
}

Json to_json(const SpectralResult& r, bool withVectors) {
  Json j;
  j["s"] = r.s;
  j["lambda"] = vector_json(r.eigenvalues);
  j["residuals"] = vector_json(r.residuals);
  j["mesh"] = {{"domain", to_json(r.domain)}, {"cells", r.cells}, {"nodes", r.eigenvectors.rows()}};
  if (withVectors) {
    Json vecs = Json::array();
    for (Eigen::Index k = 0; k < r.eigenvectors.cols(); ++k) vecs.push_back(vector_json(r.eigenvectors.col(k)));
    j["eigenvectors"] = std::move(vecs);
  }
  return j;
}

Json to_json(const SweepResult& sw) {
  Json j;
  j["mesh"] = {{"domain", to_json(sw.mesh.domain)}, {"cells", sw.mesh.n}, {"nodes", sw.mesh.node_count()}};
  j["sGrid"] = sw.sGrid;
  j["nMax"] = sw.nMax;
  Json per = Json::array();
  for (std::size_t i = 0; i < sw.perS.size(); ++i) {
    Json row = to_json(sw.perS[i]);
    row.erase("mesh");
    Json mu = Json::array();
    for (int n = 0; n <= sw.nMax; ++n) mu.push_back(sw.mu(n, static_cast<Eigen::Index>(i)));
    row["mu"] = std::move(mu);
    per.push_back(std::move(row));
  }
  j["perS"] = std::move(per);
  return j;
}

Json to_json(const DerivativeReport& r) {
  return {{"value", r.value}, {"muZero", r.muZero}, {"deviation", r.deviation}, {"sUsed", r.sUsed}};
}

Json to_json(const BoundReport& b) {
  Json cone = {{"pass", b.coneCheck.pass},
               {"worstSlack", b.coneCheck.worstSlack},
               {"samples", b.coneCheck.samples}};
  return {{"n", b.n}, {"supNorms", b.supNorms}, {"maxRatio", b.maxRatio}, {"c0", b.c0}, {"coneCheck", cone}};
}

Json to_json(const Verdict& v) { return {{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}}; }

std::string to_csv(const FormMatrix& f) {
  std::string out;
  for (Eigen::Index r = 0; r < f.data.rows(); ++r) {
    for (Eigen::Index c = 0; c < f.data.cols(); ++c) {
      if (c) out += ',';
      out += num(f.data(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string to_csv(const SweepResult& sw) {
  std::string out = "n,s,lambda,mu\n";
  for (int n = 0; n <= sw.nMax; ++n) {
    for (std::size_t i = 0; i < sw.sGrid.size(); ++i) {
      out += std::to_string(n) + ',' + num(sw.sGrid[i]) + ',' + num(sw.lambda(n, i)) + ',' +
             num(sw.mu(n, static_cast<Eigen::Index>(i))) + '\n';
    }
  }
  return out;
}

}  // namespace regiospec::io
