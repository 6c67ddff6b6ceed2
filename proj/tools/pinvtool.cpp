// pinvtool: command-line front end for the block pseudoinverse update.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pinvup/block_update.hpp"
#include "pinvup/greville.hpp"
#include "pinvup/harness/bench.hpp"
#include "pinvup/harness/corpus.hpp"
#include "pinvup/harness/report.hpp"
#include "pinvup/harness/verify.hpp"
#include "pinvup/matrix_io.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

using pinvup::harness::CorpusSpec;

struct CorpusArgs {
  std::string spec_file;
  std::size_t m = 4, n = 2, p = 2, count = 1, a_rank = 0;
  std::optional<std::size_t> q;
  std::string pattern = "full";
  std::string tags;
  std::uint64_t seed = 0;
  double scale = 1.0;
  bool rows = false;

  void add_to(CLI::App& cmd, bool allow_spec_file) {
    if (allow_spec_file) cmd.add_option("--spec", spec_file, "JSON corpus spec file");
    cmd.add_option("--m", m, "Rows of the base matrix");
    cmd.add_option("--n", n, "Columns of the base matrix");
    cmd.add_option("--p", p, "Columns appended (rows appended with --rows unless --q is given)");
    cmd.add_option("--q", q, "Rows appended in row mode");
    cmd.add_option("--pattern", pattern, "full | in_range | zero_cols | mixed")
        ->check(CLI::IsMember({"full", "in_range", "zero_cols", "mixed"}));
    cmd.add_option("--tags", tags, "Per-column tags for the mixed pattern (f, r, z, d)");
    cmd.add_option("--seed", seed, "Corpus seed");
    cmd.add_option("--scale", scale, "Entry scale");
    cmd.add_option("--count", count, "Number of instances");
    cmd.add_option("--a-rank", a_rank, "Rank of the base matrix (0 = generic)");
    cmd.add_flag("--rows", rows, "Append rows instead of columns");
  }

  CorpusSpec build() const {
    if (!spec_file.empty()) {
      CorpusSpec spec = pinvup::harness::load_corpus_spec(spec_file);
      if (rows) spec.rows = true;
      spec.validate();
      return spec;
    }
    CorpusSpec spec;
    spec.m = m;
    spec.n = n;
    spec.p = p;
    spec.q = q.value_or(p);
    spec.pattern = *pinvup::harness::rank_pattern_from_string(pattern);
    spec.tags = pinvup::harness::parse_tags(tags);
    spec.seed = seed;
    spec.scale = scale;
    spec.count = count;
    spec.rows = rows;
    spec.a_rank = a_rank;
    spec.validate();
    return spec;
  }
};

struct TolArgs {
  double eps = 1e-10;
  double residual = 1e-8;
  bool relative = false;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--eps", eps, "Squared-norm threshold for a zero residual column");
    cmd.add_option("--residual", residual, "Relative acceptance threshold");
    cmd.add_flag("--relative-eps", relative, "Scale --eps by the squared norm of each new column");
  }

  pinvup::Tolerance build() const {
    pinvup::Tolerance tol{eps, residual, relative};
    tol.validate();
    return tol;
  }
};

pinvup::Backend parse_backend(const std::string& name) {
  return name == "chol" ? pinvup::Backend::LibraryCholesky : pinvup::Backend::InverseCholesky;
}

int emit_report(const pinvup::harness::RunReport& report, const std::string& json_path, bool quiet) {
  if (!json_path.empty()) pinvup::harness::save_report(json_path, report);
  if (!quiet) std::cout << pinvup::harness::to_text(report);
  return report.summary.pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental Moore-Penrose pseudoinverse updates"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "Run block updates against the Greville oracle");
  CorpusArgs verify_corpus;
  TolArgs verify_tol;
  std::string backend = "invchol";
  std::string report_path;
  std::string in_path, append_path, pinv_path;
  bool quiet = false;
  verify_corpus.add_to(*verify, true);
  verify_tol.add_to(*verify);
  verify->add_option("--backend", backend, "invchol | chol")->check(CLI::IsMember({"invchol", "chol"}));
  verify->add_option("--report", report_path, "Write the JSON report here");
  verify->add_option("--in", in_path, "Base matrix file (instead of a generated corpus)");
  verify->add_option("--append", append_path, "Block to append (with --in)");
  verify->add_option("--pinv", pinv_path, "Starting pseudoinverse of --in (default: computed)");
  verify->add_flag("--quiet", quiet, "Suppress the text table");

  // bench
  auto* bench = app.add_subcommand("bench", "Time the block update against the p-step recursion");
  CorpusArgs bench_corpus;
  TolArgs bench_tol;
  std::size_t reps = 20;
  std::string csv_path;
  bench_corpus.add_to(*bench, false);
  bench_tol.add_to(*bench);
  bench->add_option("--reps", reps, "Repetitions per method")->check(CLI::PositiveNumber);
  bench->add_option("--csv", csv_path, "Write the timing table as CSV");

  // pinv
  auto* pinv = app.add_subcommand("pinv", "One-shot update of a stored matrix");
  TolArgs pinv_tol;
  std::string pinv_in, pinv_append, pinv_out, pinv_start, pinv_backend = "invchol";
  bool pinv_rows = false;
  pinv->add_option("--in", pinv_in, "Base matrix file")->required();
  pinv->add_option("--append", pinv_append, "Block to append")->required();
  pinv->add_option("--out", pinv_out, "Output pseudoinverse file")->required();
  pinv->add_option("--pinv", pinv_start, "Starting pseudoinverse of --in (default: computed)");
  pinv->add_option("--backend", pinv_backend, "invchol | chol")->check(CLI::IsMember({"invchol", "chol"}));
  pinv->add_flag("--rows", pinv_rows, "Append rows instead of columns");
  pinv_tol.add_to(*pinv);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a generated corpus as matrix files");
  CorpusArgs gen_corpus;
  std::string out_dir;
  gen_corpus.add_to(*gen, true);
  gen->add_option("--out-dir", out_dir, "Destination directory")->required();

  // report
  auto* rep = app.add_subcommand("report", "Re-read a JSON report and print it");
  std::string rep_in;
  rep->add_option("--in", rep_in, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*verify) {
      pinvup::harness::VerifyOptions options{verify_tol.build(), parse_backend(backend)};
      if (!in_path.empty() || !append_path.empty()) {
        if (in_path.empty() || append_path.empty()) {
          std::cerr << "verify: --in and --append must be given together\n";
          return kUsage;
        }
        const pinvup::Matrix a = pinvup::read_matrix_file(in_path);
        const pinvup::Matrix block = pinvup::read_matrix_file(append_path);
        std::optional<pinvup::Matrix> a_plus;
        if (!pinv_path.empty()) a_plus = pinvup::read_matrix_file(pinv_path);
        auto report = pinvup::harness::verify_matrices(a, block, a_plus, verify_corpus.rows, options);
        return emit_report(report, report_path, quiet);
      }
      auto report = pinvup::harness::verify_corpus(verify_corpus.build(), options);
      return emit_report(report, report_path, quiet);
    }

    if (*bench) {
      auto result = pinvup::harness::bench(bench_corpus.build(), reps, bench_tol.build());
      if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot open '" + csv_path + "' for writing");
        pinvup::harness::write_bench_csv(out, result);
      }
      pinvup::harness::write_bench_csv(std::cout, result);
      return result.verification.summary.pass ? kPass : kFail;
    }

    if (*pinv) {
      const pinvup::Tolerance tol = pinv_tol.build();
      pinvup::Matrix a = pinvup::read_matrix_file(pinv_in);
      const pinvup::Matrix block = pinvup::read_matrix_file(pinv_append);
      const pinvup::PinvState base = pinv_start.empty()
                                         ? pinvup::PinvState::from_matrix(std::move(a), tol)
                                         : pinvup::PinvState(std::move(a), pinvup::read_matrix_file(pinv_start));
      const auto backend_choice = parse_backend(pinv_backend);
      auto result = pinv_rows ? pinvup::append_rows(base, block, tol, backend_choice)
                              : pinvup::append_columns(base, block, tol, backend_choice);
      pinvup::write_matrix_file(pinv_out, result.state.a_plus());
      const double bound = tol.accept_bound(pinvup::frob_norm(result.state.a()));
      std::cout << "max_mp_residual=" << result.report.mp.max() << " bound=" << bound << '\n';
      return result.report.mp.max() <= bound ? kPass : kFail;
    }

    if (*gen) {
      const CorpusSpec spec = gen_corpus.build();
      std::filesystem::create_directories(out_dir);
      for (const auto& inst : pinvup::harness::generate(spec)) {
        const std::string stem = out_dir + "/" + std::to_string(inst.id);
        pinvup::write_matrix_file(stem + "_A.mat", inst.a);
        pinvup::write_matrix_file(stem + (inst.rows ? "_Ax.mat" : "_H.mat"), inst.block);
      }
      std::ofstream(out_dir + "/corpus.json") << nlohmann::json(spec).dump(2) << '\n';
      return kPass;
    }

    if (*rep) {
      const auto report = pinvup::harness::load_report(rep_in);
      std::cout << pinvup::harness::to_text(report);
      return report.summary.pass ? kPass : kFail;
    }
  } catch (const std::exception& e) {
    std::cerr << "pinvtool: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
