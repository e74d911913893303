#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "okapain/cech.hpp"
#include "okapain/parser.hpp"
#include "okapain/sheaf.hpp"

using namespace okapain;

namespace {

const atlas::Atlas& fixture(const char* name) {
  static std::map<std::string, atlas::Atlas> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    std::ifstream in(std::string(OKAPAIN_DATA_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    it = cache.emplace(name, atlas::load_atlas(ss.str())).first;
  }
  return it->second;
}

void BM_polynomial_gcd(benchmark::State& state) {
  cas::Variable x("x"), y("y"), t("t");
  cas::Polynomial a = atlas::parse_rational("(x^2+y-t)^3*(x-y+1)").num();
  cas::Polynomial b = atlas::parse_rational("(x^2+y-t)^2*(x+y*t)").num();
  for (auto _ : state) benchmark::DoNotOptimize(cas::Polynomial::gcd(a, b));
}
BENCHMARK(BM_polynomial_gcd);

void BM_pushforward(benchmark::State& state) {
  const atlas::Atlas& a = fixture("e7.atlas");
  sheaf::VectorField v = sheaf::instantiate(atlas::parse_vector_field("(1-y5)/x5 d/dy5"),
                                            a.chart("U5"), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sheaf::pushforward(v, a, "U8"));
}
BENCHMARK(BM_pushforward);

void BM_extract_class(benchmark::State& state) {
  const atlas::Atlas& a = fixture("e7.atlas");
  cech::Cochain0 c0 = cech::lift(a, "Y1", 1);
  cech::Cochain1Along c1 = cech::coboundary_restricted(c0, "Y1", a);
  for (auto _ : state) benchmark::DoNotOptimize(cech::extract_class(c1, "Y1", a, {}));
}
BENCHMARK(BM_extract_class);

void BM_assemble_delta_additive(benchmark::State& state) {
  const atlas::Atlas& a = fixture("e7.atlas");
  for (auto _ : state) benchmark::DoNotOptimize(cech::assemble_delta(a, 1));
}
BENCHMARK(BM_assemble_delta_additive);

void BM_assemble_delta_twist(benchmark::State& state) {
  const atlas::Atlas& a = fixture("a8.atlas");
  for (auto _ : state)
    benchmark::DoNotOptimize(cech::assemble_delta(a, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_assemble_delta_twist)->Arg(1)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
