#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "smallscat/bem.hpp"
#include "smallscat/config.hpp"

namespace smallscat::cli {

/// 17-significant-digit serialization (round-trip exact for doubles).
std::string fmt17(double v);

struct CheckOutput {
  GeometryStats stats;
  ValidityReport report;
  bool corollary_applicable = false;
  bool certified = false;
  double charge_sum_bound = 0.0;
};

/// Command cores. Each writes deterministic CSV into cfg.output_dir and
/// returns the written paths. Errors propagate as exceptions; the binary
/// maps them to exit codes (2 config, 3 numerical, 4 invertibility).
std::vector<std::string> run_caps(const ScenarioConfig& cfg);
std::vector<std::string> run_forward(const ScenarioConfig& cfg);
std::vector<std::string> run_oracle(const ScenarioConfig& cfg);
std::vector<std::string> run_compare(const ScenarioConfig& cfg, CompareMetrics* metrics = nullptr);
std::vector<std::string> run_check(const ScenarioConfig& cfg, std::ostream& text,
                                   CheckOutput* out = nullptr);
std::vector<std::string> run_sweep(const ScenarioConfig& cfg, std::ostream& text,
                                   double* slope_out = nullptr);

/// Full argv dispatch used by the binary; prints written paths to `out`
/// and diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smallscat::cli
