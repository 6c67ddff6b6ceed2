#include "pinvup/harness/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pinvup::harness {

void RunReport::finalize() {
  std::sort(instances.begin(), instances.end(),
            [](const InstanceReport& x, const InstanceReport& y) { return x.id < y.id; });
  summary = {};
  for (const auto& inst : instances) {
    (inst.pass ? summary.passed : summary.failed)++;
    summary.worst_residual = std::max(summary.worst_residual, inst.mp.max());
    summary.worst_dev = std::max(summary.worst_dev, inst.oracle_dev);
  }
  summary.pass = summary.failed == 0;
}

void to_json(nlohmann::json& j, const RunReport& report) {
  nlohmann::json instances = nlohmann::json::array();
  for (const auto& inst : report.instances) {
    nlohmann::json branches = nlohmann::json::array();
    for (const auto& b : inst.branches) {
      branches.push_back({{"tag", to_string(b.tag)}, {"k", b.k_reached}, {"delta", b.delta}});
    }
    instances.push_back({
        {"id", inst.id},
        {"shape", {{"m", inst.m}, {"n", inst.n}, {"p", inst.p}}},
        {"mode", inst.rows ? "rows" : "columns"},
        {"branches", std::move(branches)},
        {"mp", {{"r1", inst.mp.r1}, {"r2", inst.mp.r2}, {"r3", inst.mp.r3}, {"r4", inst.mp.r4}}},
        {"oracle_dev", inst.oracle_dev},
        {"bound", inst.bound},
        {"t_block_us", inst.t_block_us},
        {"t_oracle_us", inst.t_oracle_us},
        {"pass", inst.pass},
    });
  }
  j = {{"instances", std::move(instances)},
       {"summary",
        {{"pass", report.summary.pass},
         {"passed", report.summary.passed},
         {"failed", report.summary.failed},
         {"worst_residual", report.summary.worst_residual},
         {"worst_dev", report.summary.worst_dev}}}};
}

void from_json(const nlohmann::json& j, RunReport& report) {
  RunReport out;
  for (const auto& ji : j.at("instances")) {
    InstanceReport inst;
    inst.id = ji.at("id").get<std::size_t>();
    const auto& shape = ji.at("shape");
    inst.m = shape.at("m").get<std::size_t>();
    inst.n = shape.at("n").get<std::size_t>();
    inst.p = shape.at("p").get<std::size_t>();
    inst.rows = ji.value("mode", std::string("columns")) == "rows";
    for (const auto& jb : ji.at("branches")) {
      const auto name = jb.at("tag").get<std::string>();
      auto tag = branch_tag_from_string(name);
      if (!tag) throw std::invalid_argument("report: unknown branch tag '" + name + "'");
      inst.branches.push_back({*tag, jb.at("k").get<std::size_t>(), jb.at("delta").get<std::size_t>()});
    }
    const auto& mp = ji.at("mp");
    inst.mp = {mp.at("r1").get<double>(), mp.at("r2").get<double>(), mp.at("r3").get<double>(),
               mp.at("r4").get<double>()};
    inst.oracle_dev = ji.at("oracle_dev").get<double>();
    inst.bound = ji.value("bound", 0.0);
    inst.t_block_us = ji.at("t_block_us").get<double>();
    inst.t_oracle_us = ji.at("t_oracle_us").get<double>();
    inst.pass = ji.value("pass", false);
    out.instances.push_back(std::move(inst));
  }
  const auto& s = j.at("summary");
  out.summary.pass = s.at("pass").get<bool>();
  out.summary.passed = s.value("passed", std::size_t{0});
  out.summary.failed = s.value("failed", std::size_t{0});
  out.summary.worst_residual = s.at("worst_residual").get<double>();
  out.summary.worst_dev = s.at("worst_dev").get<double>();
  report = std::move(out);
}

RunReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open report '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return j.get<RunReport>();
}

void save_report(const std::string& path, const RunReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << nlohmann::json(report).dump(2) << '\n';
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string to_text(const RunReport& report) {
  std::ostringstream os;
  os << std::left << std::setw(6) << "id" << std::setw(12) << "shape" << std::setw(10) << "mode"
     << std::right << std::setw(12) << "max_mp" << std::setw(12) << "oracle_dev" << std::setw(12)
     << "t_block_us" << std::setw(12) << "t_orcl_us" << "  result  branches\n";
  for (const auto& inst : report.instances) {
    std::ostringstream shape;
    shape << inst.m << "x" << inst.n << "+" << inst.p;
    os << std::left << std::setw(6) << inst.id << std::setw(12) << shape.str() << std::setw(10)
       << (inst.rows ? "rows" : "columns") << std::right << std::scientific << std::setprecision(2)
       << std::setw(12) << inst.mp.max() << std::setw(12) << inst.oracle_dev << std::fixed
       << std::setprecision(1) << std::setw(12) << inst.t_block_us << std::setw(12) << inst.t_oracle_us
       << "  " << (inst.pass ? "pass" : "FAIL") << "    ";
    for (std::size_t b = 0; b < inst.branches.size(); ++b) {
      const auto& br = inst.branches[b];
      os << (b ? " " : "") << to_string(br.tag) << "(k=" << br.k_reached << ",d=" << br.delta << ")";
    }
    os << '\n';
  }
  os << std::scientific << std::setprecision(3) << "summary: " << (report.summary.pass ? "PASS" : "FAIL")
     << " passed=" << report.summary.passed << " failed=" << report.summary.failed
     << " worst_residual=" << report.summary.worst_residual << " worst_dev=" << report.summary.worst_dev
     << '\n';
  return os.str();
}

}  // namespace pinvup::harness
