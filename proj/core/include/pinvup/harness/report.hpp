#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pinvup/block_update.hpp"
#include "pinvup/greville.hpp"

namespace pinvup::harness {

struct InstanceReport {
  std::size_t id = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t p = 0;  // appended columns, or rows in row mode
  bool rows = false;
  std::vector<DispatchBranch> branches;
  MpResiduals mp;
  double oracle_dev = 0.0;  // max-abs deviation from the Greville oracle
  double bound = 0.0;       // acceptance bound both mp and oracle_dev were held to
  double t_block_us = 0.0;
  double t_oracle_us = 0.0;
  bool pass = false;
};

struct RunSummary {
  bool pass = true;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double worst_residual = 0.0;
  double worst_dev = 0.0;
};

/// JSON layout:
///   {"instances": [{"id", "shape": {"m","n","p"}, "mode", "branches": [{"tag","k","delta"}],
///                   "mp": {"r1","r2","r3","r4"}, "oracle_dev", "bound",
///                   "t_block_us", "t_oracle_us", "pass"}],
///    "summary": {"pass", "passed", "failed", "worst_residual", "worst_dev"}}
struct RunReport {
  std::vector<InstanceReport> instances;
  RunSummary summary;

  /// Sorts instances by id and recomputes the summary from them.
  void finalize();
};

void to_json(nlohmann::json& j, const RunReport& report);
void from_json(const nlohmann::json& j, RunReport& report);

RunReport load_report(const std::string& path);
void save_report(const std::string& path, const RunReport& report);

/// Aligned plain-text table, one line per instance plus a summary line.
std::string to_text(const RunReport& report);

}  // namespace pinvup::harness
