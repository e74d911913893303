#pragma once

#include <optional>
#include <string>
#include <vector>

#include "okapain/cech.hpp"
#include "okapain/linalg.hpp"

namespace okapain::cartan {

// The eight additive types of the Painleve correspondence plus the
// multiplicative A8~ family.
enum class AffineType { E8, E7, E6, D8, D7, D6, D5, D4, A8 };

struct TypeInfo {
  AffineType type;
  std::string label;                       // e.g. "E7~"
  int node_count;
  std::optional<std::string> painleve_tag;  // absent for A8~
  std::vector<long> multiplicities;         // positive kernel generator
};

AffineType parse_label(const std::string& label);  // UnknownType
const TypeInfo& info(AffineType type);
const std::vector<AffineType>& all_types();

using IntMatrix = std::vector<std::vector<long>>;

// Affine intersection matrix: -2 diagonal, +1 adjacency.
IntMatrix cartan_matrix(AffineType type);

struct RankReport {
  int rank = 0;
  int kernel_dimension = 0;
  std::vector<long> kernel_generator;
  bool kernel_matches_multiplicities = false;
  bool ok() const;
};

// rank = r - 1 with kernel spanned by the multiplicity vector.
RankReport affine_rank_check(AffineType type);

struct CompareReport {
  bool dimension_mismatch = false;
  std::vector<std::pair<int, int>> mismatched_entries;  // 1-based (i, j)
  bool equal() const { return !dimension_mismatch && mismatched_entries.empty(); }
};

// Entrywise comparison of a computed delta matrix against the library type;
// for A8~ the template carries (-t)^n / (-t)^-n at the deformed pair.
CompareReport compare(const cech::DeltaMatrix& m, AffineType type);

// The 9x9 cyclic matrix with the (2,3)/(3,2) pair deformed to u^-1 and u.
linalg::Matrix deformed_a8_template(const cas::RationalFunction& u);

}  // namespace okapain::cartan
