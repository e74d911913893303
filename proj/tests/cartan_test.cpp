#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "okapain/cartan.hpp"
#include "okapain/errors.hpp"
#include "okapain/linalg.hpp"
#include "okapain/parser.hpp"

using namespace okapain;
using cartan::AffineType;
using cas::RationalFunction;
using cas::Variable;

namespace {

atlas::Atlas load(const std::string& name) {
  std::ifstream in(std::string(OKAPAIN_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return atlas::load_atlas(ss.str());
}

// Brute-force rank oracle: integer Gaussian elimination over exact rationals,
// independent of the linalg used by the library path.
int rank_oracle(const cartan::IntMatrix& m) {
  size_t n = m.size();
  std::vector<std::vector<cas::Rational>> a(n, std::vector<cas::Rational>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = cas::Rational(m[i][j]);
  int rank = 0;
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = rank;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(a[pivot], a[rank]);
    for (size_t i = 0; i < n; ++i) {
      if (i == static_cast<size_t>(rank) || a[i][col] == 0) continue;
      cas::Rational f = a[i][col] / a[rank][col];
      for (size_t j = 0; j < n; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("labels parse and the roster is complete") {
  CHECK(cartan::parse_label("E7~") == AffineType::E7);
  CHECK(cartan::parse_label("A8~") == AffineType::A8);
  CHECK_THROWS_AS(cartan::parse_label("Z9~"), UnknownType);
  CHECK(cartan::all_types().size() == 9);
  CHECK(cartan::info(AffineType::E7).painleve_tag == std::string("P_II"));
  CHECK(cartan::info(AffineType::D4).painleve_tag == std::string("P_VI"));
  CHECK(cartan::info(AffineType::E8).painleve_tag == std::string("P_I"));
  CHECK_FALSE(cartan::info(AffineType::A8).painleve_tag.has_value());
}

TEST_CASE("E7~ library matrix is the printed matrix") {
  atlas::Atlas e7 = load("e7.atlas");
  cartan::IntMatrix m = cartan::cartan_matrix(AffineType::E7);
  CHECK(m == e7.intersection);
}

TEST_CASE("A8~ is the plain cycle") {
  cartan::IntMatrix m = cartan::cartan_matrix(AffineType::A8);
  atlas::Atlas a8 = load("a8.atlas");
  CHECK(m == a8.intersection);
}

TEST_CASE("D4~ star shape") {
  cartan::IntMatrix m = cartan::cartan_matrix(AffineType::D4);
  REQUIRE(m.size() == 5);
  // Center node 3 is adjacent to everything else.
  std::vector<long> center = {1, 1, -2, 1, 1};
  CHECK(m[2] == center);
  CHECK(m[0] == std::vector<long>{-2, 0, 1, 0, 0});
}

TEST_CASE("symmetry and diagonal for the whole roster") {
  for (AffineType type : cartan::all_types()) {
    cartan::IntMatrix m = cartan::cartan_matrix(type);
    size_t r = m.size();
    CHECK(r == static_cast<size_t>(cartan::info(type).node_count));
    for (size_t i = 0; i < r; ++i) {
      CHECK(m[i][i] == -2);
      for (size_t j = 0; j < r; ++j) CHECK(m[i][j] == m[j][i]);
    }
  }
}

TEST_CASE("affine rank check across all nine types") {
  for (AffineType type : cartan::all_types()) {
    const cartan::TypeInfo& info = cartan::info(type);
    cartan::RankReport rep = cartan::affine_rank_check(type);
    INFO(info.label);
    CHECK(rep.rank == info.node_count - 1);
    CHECK(rep.kernel_dimension == 1);
    CHECK(rep.kernel_generator == info.multiplicities);
    CHECK(rep.ok());
    for (long v : rep.kernel_generator) CHECK(v > 0);
    // Independent oracle.
    CHECK(rank_oracle(cartan::cartan_matrix(type)) == info.node_count - 1);
  }
}

TEST_CASE("deformed template determinant") {
  Variable u("u");
  RationalFunction uu = RationalFunction::variable(u);
  linalg::Matrix m = cartan::deformed_a8_template(uu);
  RationalFunction det = linalg::determinant(m);
  CHECK(det == atlas::parse_rational("(u-1)^2/u"));
}

TEST_CASE("compare against computed delta matrices") {
  atlas::Atlas e7 = load("e7.atlas");
  cech::DeltaMatrix m = cech::assemble_delta(e7, 1);
  CHECK(cartan::compare(m, AffineType::E7).equal());
  // Dimension mismatch against the wrong type.
  cartan::CompareReport mis = cartan::compare(m, AffineType::D4);
  CHECK(mis.dimension_mismatch);

  atlas::Atlas a8 = load("a8.atlas");
  for (int n : {1, 2}) {
    cech::DeltaMatrix dm = cech::assemble_delta(a8, n);
    CHECK(cartan::compare(dm, AffineType::A8).equal());
  }
  // A perturbed entry is located.
  cech::DeltaMatrix bad = cech::assemble_delta(e7, 1);
  bad.entries[2][3] = RationalFunction::constant(7);
  cartan::CompareReport rep = cartan::compare(bad, AffineType::E7);
  REQUIRE(rep.mismatched_entries.size() == 1);
  CHECK(rep.mismatched_entries[0] == std::pair<int, int>{3, 4});
}
