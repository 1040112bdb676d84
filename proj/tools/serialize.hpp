#pragma once

#include <string>

#include <json.hpp>

#include "regiospec/asymptotics.hpp"
#include "regiospec/galerkin.hpp"
#include "regiospec/geometry.hpp"
#include "regiospec/spectrum.hpp"

namespace regiospec::io {

using Json = nlohmann::ordered_json;

Json to_json(const Domain& d);
Domain domain_from_json(const Json& j);

/// Parses "a,b" (interval) or "a1,b1,a2,b2" (rectangle).
Domain parse_domain(const std::string& text);
Point parse_point(const std::string& text);
std::vector<double> parse_list(const std::string& text);

Json to_json(const FormMatrix& f);
Json to_json(const SpectralResult& r, bool withVectors = false);
Json to_json(const SweepResult& sw);
Json to_json(const DerivativeReport& r);
Json to_json(const BoundReport& b);
Json to_json(const Verdict& v);

std::string to_csv(const FormMatrix& f);
/// One row per (n, s): n,s,lambda,mu.
std::string to_csv(const SweepResult& sw);

}  // namespace regiospec::io
