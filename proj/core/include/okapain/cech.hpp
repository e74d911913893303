#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "okapain/sheaf.hpp"

namespace okapain::cech {

// 0-cochain of the twisted log tangent sheaf: the lift of a theta generator.
using Cochain0 = sheaf::TwistedSection;

using Overlap = std::pair<std::string, std::string>;

// 1-cochain along one component: stored normal-twisted scalars, one per nerve
// overlap (j,k), written in chart k's running coordinate. The orientation is
// value = (lift on k - lift on j) restricted.
struct Cochain1Along {
  std::string component;
  int twist = 1;
  std::map<Overlap, cas::RationalFunction> values;

  bool is_zero() const {
    for (const auto& [o, v] : values)
      if (!v.is_zero()) return false;
    return true;
  }
};

// Result of reducing a 1-cocycle against the component's eta generator:
// c = lambda * eta + delta(tau) with tau the stored witness per nerve chart.
struct ClassCoefficient {
  cas::RationalFunction lambda;
  std::map<std::string, cas::RationalFunction> witness_tau;
};

struct SolverOptions {
  int degree_cap = 64;  // OKAPAIN_SOLVER_CAP overrides in the CLI
  std::optional<cas::RationalFunction> forced_lambda;
};

struct DeltaMatrix {
  std::string atlas_name;
  std::string type_label;
  int twist = 1;
  std::vector<std::string> theta_labels;  // column basis
  std::vector<std::string> eta_labels;    // row basis
  std::vector<std::vector<cas::RationalFunction>> entries;  // [row i][col j]

  int size() const { return static_cast<int>(entries.size()); }
};

struct KernelReport {
  int rank = 0;
  int kernel_dimension = 0;
  cas::RationalFunction determinant;
  std::vector<std::vector<cas::RationalFunction>> kernel_basis;
};

struct VanishingRow {
  int twist;
  cas::RationalFunction determinant;
  bool matches_closed_form;
  int kernel_dimension;  // generic, over the function field
  std::string vanishing_locus;
};

struct VanishingReport {
  std::vector<VanishingRow> rows;
  bool all_match() const {
    for (const auto& r : rows)
      if (!r.matches_closed_form) return false;
    return true;
  }
};

// Reuse the table formula verbatim on its own charts, zero elsewhere.
// MembershipViolation when a table entry fails the twisted log condition.
Cochain0 lift(const atlas::Atlas& a, const std::string& component, int n);

// Difference of lifts on each nerve overlap of the component, pushed into the
// second chart and restricted to the normal-twisted class. TangentialResidue
// when the tangential part of a difference survives restriction.
Cochain1Along coboundary_restricted(const Cochain0& c0, const std::string& component,
                                    const atlas::Atlas& a);

// The eta generator itself as a 1-cochain (stored scalars).
Cochain1Along eta_cochain(const atlas::Atlas& a, const std::string& component, int n);

// Solve c1 = lambda * eta + delta(tau) over the parameter field with tau an
// honest 0-cochain on the nerve. NoSolution when the degree cap is exhausted;
// NonUniqueLambda when the homogeneous system admits lambda != 0.
ClassCoefficient extract_class(const Cochain1Along& c1, const std::string& component,
                               const atlas::Atlas& a, const SolverOptions& opts = {});

// Entry (i, j) is the eta_i coefficient of delta(theta_j).
DeltaMatrix assemble_delta(const atlas::Atlas& a, int n, const SolverOptions& opts = {});

// Exact rank / kernel / determinant over the parameter field, cross-checked
// by rank at random rational specializations. SpecializationMismatch when a
// persistent disagreement shows up.
KernelReport kernel_report(const DeltaMatrix& m);

// Assemble delta for n = 1..n_max on a multiplicative atlas and compare every
// determinant with ((-t)^n - 1)^2 / (-t)^n. UnsupportedAtlasClass otherwise.
VanishingReport vanishing_scan(const atlas::Atlas& a, int n_max, const SolverOptions& opts = {});

}  // namespace okapain::cech
