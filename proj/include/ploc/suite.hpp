#pragma once

#include <string>

#include "ploc/io.hpp"
#include "ploc/products.hpp"

namespace ploc {

struct RunConfig {
  std::string input;
  std::string suite = "all";
  int bound = 3;
  int workers = 1;
};

bool valid_suite(const std::string& name);

/// Runs the selected verifier family over one loaded instance and folds
/// the outcome into one deterministic report. Sweeps that range over the
/// partial normal subgroups are aggregated id by id: any failure wins and
/// names the subgroup in its witness, otherwise a pass with the swept
/// bound, and a skip only when no run met the hypothesis.
Report run_suite(const Loaded& obj, const RunConfig& cfg);

}  // namespace ploc
