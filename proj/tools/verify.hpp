#pragma once

#include <string>
#include <vector>

#include "regiospec/asymptotics.hpp"

namespace regiospec::verify {

std::vector<std::string> suite_names();

/// Runs a named invariant suite; each entry is one check.
std::vector<Verdict> run_suite(const std::string& name, unsigned long long seed);

/// Order grid used by the sweep command when none is given.
std::vector<double> default_sweep_grid();

}  // namespace regiospec::verify
