#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "okapain/expr.hpp"
#include "okapain/laurent.hpp"

namespace okapain::atlas {

struct Chart {
  std::string id;
  cas::Variable x, y;                         // the ordered coordinate pair
  std::vector<cas::Polynomial> inverted;      // localization denominators
  // Expressions of the chart coordinates in the homogeneous-affine globals
  // X, Y, Z (present for the additive fixture only).
  std::optional<std::array<cas::RationalFunction, 2>> globals;

  bool has(const cas::Variable& v) const { return v == x || v == y; }
  cas::Variable other(const cas::Variable& v) const { return v == x ? y : x; }
};

// Coordinate formulas of the target chart in terms of the source chart.
struct Transition {
  std::string source, target;
  cas::RationalFunction fx, fy;  // target.x and target.y

  std::map<cas::Variable, cas::RationalFunction> binding(const Chart& target_chart) const {
    return {{target_chart.x, fx}, {target_chart.y, fy}};
  }
};

struct DivisorComponent {
  std::string id;
  int multiplicity = 1;
  int t_count = 0;  // number of intersections with other components
  std::vector<std::pair<std::string, cas::Variable>> local_equations;  // chart -> cutting coord
  std::vector<std::pair<std::string, std::string>> nerve;  // ordered overlaps
  std::pair<std::string, std::string> principal;           // z / 1-over-z chart pair

  bool has_chart(const std::string& chart_id) const;
  cas::Variable cutting_coordinate(const std::string& chart_id) const;
};

struct ThetaEntry {
  std::string chart;
  VectorFieldExpr field;
};

struct EtaEntry {
  std::pair<std::string, std::string> overlap;
  VectorFieldExpr field;
};

struct GeneratorTable {
  // Keyed by component id, in component order.
  std::map<std::string, std::vector<ThetaEntry>> theta;
  std::map<std::string, std::vector<EtaEntry>> eta;
};

enum class AtlasClass { additive, multiplicative };

struct Atlas {
  std::string name;
  std::string type_label;
  AtlasClass class_label = AtlasClass::additive;
  std::vector<Chart> charts;
  std::vector<Transition> transitions;
  std::vector<DivisorComponent> components;
  std::vector<std::vector<long>> intersection;
  GeneratorTable generators;

  const Chart& chart(const std::string& id) const;                   // UnknownReference
  const DivisorComponent& component(const std::string& id) const;    // UnknownReference
  int component_index(const std::string& id) const;
  const Transition* find_transition(const std::string& source, const std::string& target) const;
  bool has_formal_twist() const;

  // Product of the cutting coordinates of every component passing through
  // the chart; 1 for complement charts.
  cas::Polynomial local_divisor_equation(const std::string& chart_id) const;
  // The coordinate along the component (the non-cutting one).
  cas::Variable running_coordinate(const DivisorComponent& comp, const std::string& chart_id) const;
  // Inverted polynomials of the chart restricted to the component, constants
  // dropped; these are the allowed Laurent denominators along the component.
  std::vector<cas::Polynomial> restricted_units(const DivisorComponent& comp,
                                                const std::string& chart_id) const;
};

Atlas load_atlas(const std::string& document);
// Canonical serializer; load_atlas(render(a)) describes the same atlas.
std::string render(const Atlas& a);
bool equivalent(const Atlas& a, const Atlas& b);

// Composition source -> mid -> target of two transitions, over the source.
Transition compose(const Atlas& a, const Transition& first, const Transition& second);
Transition identity_transition(const Atlas& a, const std::string& chart_id);
// Composite transition along supplied transitions; MissingInverse if no path.
Transition transition_route(const Atlas& a, const std::string& from, const std::string& to);

// Replace every affine-in-n exponent by its value at the given twist.
Atlas instantiate_twist(const Atlas& a, int n);

struct CheckFailure {
  std::string where;
  std::string what;
};

struct Report {
  std::string title;
  std::vector<CheckFailure> failures;
  int checks_run = 0;
  bool ok() const { return failures.empty(); }
  std::string render() const;
};

// Round-trips of two-sided transitions, global-coordinate consistency and
// triple-overlap cocycle consistency on every component nerve.
Report verify_transitions(const Atlas& a);
// Intersection-matrix shape, Y . Y_i = 0 against multiplicities, t_i
// bookkeeping and the per-component degree balance.
Report okamoto_painleve_check(const Atlas& a);

}  // namespace okapain::atlas
