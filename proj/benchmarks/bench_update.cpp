#include <benchmark/benchmark.h>

#include "pinvup/block_update.hpp"
#include "pinvup/harness/corpus.hpp"
#include "pinvup/harness/verify.hpp"

namespace {

using pinvup::harness::CorpusSpec;
using pinvup::harness::RankPattern;

struct Fixture {
  pinvup::harness::Instance inst;
  pinvup::PinvState base;
};

Fixture make_fixture(std::size_t m, std::size_t n, std::size_t p, RankPattern pattern) {
  CorpusSpec spec;
  spec.m = m;
  spec.n = n;
  spec.p = p;
  spec.pattern = pattern;
  spec.seed = 2024;
  auto inst = pinvup::harness::generate_instance(spec, 0);
  auto base = pinvup::PinvState::from_matrix(inst.a);
  return {std::move(inst), std::move(base)};
}

void BM_BlockInvChol(benchmark::State& state) {
  const auto f = make_fixture(200, 100, static_cast<std::size_t>(state.range(0)), RankPattern::Full);
  for (auto _ : state) {
    auto r = pinvup::append_columns(f.base, f.inst.block, {}, pinvup::Backend::InverseCholesky,
                                    pinvup::Verification::Off);
    benchmark::DoNotOptimize(r.state.a_plus().data().data());
  }
}

void BM_BlockLibraryChol(benchmark::State& state) {
  const auto f = make_fixture(200, 100, static_cast<std::size_t>(state.range(0)), RankPattern::Full);
  for (auto _ : state) {
    auto r = pinvup::append_columns(f.base, f.inst.block, {}, pinvup::Backend::LibraryCholesky,
                                    pinvup::Verification::Off);
    benchmark::DoNotOptimize(r.state.a_plus().data().data());
  }
}

void BM_GrevillePIter(benchmark::State& state) {
  const auto f = make_fixture(200, 100, static_cast<std::size_t>(state.range(0)), RankPattern::Full);
  for (auto _ : state) {
    auto x = pinvup::harness::greville_oracle(f.base, f.inst.block, false, {});
    benchmark::DoNotOptimize(x.data().data());
  }
}

void BM_BlockInRange(benchmark::State& state) {
  const auto f = make_fixture(200, 100, static_cast<std::size_t>(state.range(0)), RankPattern::InRange);
  for (auto _ : state) {
    auto r = pinvup::append_columns(f.base, f.inst.block, {}, pinvup::Backend::InverseCholesky,
                                    pinvup::Verification::Off);
    benchmark::DoNotOptimize(r.state.a_plus().data().data());
  }
}

}  // namespace

BENCHMARK(BM_BlockInvChol)->Arg(1)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BlockLibraryChol)->Arg(1)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GrevillePIter)->Arg(1)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BlockInRange)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
