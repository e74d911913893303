#pragma once

#include <map>
#include <optional>
#include <string>

#include "okapain/atlas.hpp"

namespace okapain::sheaf {

// a * d/dx + b * d/dy in the chart's coordinate order.
struct VectorField {
  std::string chart;
  cas::RationalFunction a, b;

  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  const cas::RationalFunction& coefficient_of(const atlas::Chart& ch,
                                              const cas::Variable& v) const {
    return v == ch.x ? a : b;
  }
};

VectorField instantiate(const atlas::VectorFieldExpr& expr, const atlas::Chart& chart, int n);

// Chart-indexed family with declared pole order along the divisor. A chart
// without an entry carries the zero field.
struct TwistedSection {
  int twist = 1;
  std::map<std::string, VectorField> values;

  VectorField value_on(const atlas::Atlas& a, const std::string& chart_id) const;
};

enum class BundleTag { tangent_twisted, normal_twisted };

// Laurent data of a restricted section along one component, one entry per
// nerve chart, in that chart's running coordinate.
struct SectionAlongComponent {
  std::string component;
  BundleTag tag = BundleTag::normal_twisted;
  int twist = 1;
  std::map<std::string, cas::LaurentPolynomial> values;
};

// Derivation pushforward across a transition route: apply the field to the
// target coordinate formulas, then rewrite in target coordinates through the
// inverse route. MissingInverse when the atlas has no path either way.
VectorField pushforward(const VectorField& vf, const atlas::Atlas& a, const std::string& target);

// Logarithmic condition: for each component cut by a coordinate c in this
// chart, the d/dc coefficient is divisible by c.
bool is_log(const VectorField& vf, const atlas::Atlas& a);

// Pole order at most `twist` along the divisor (after clearing f^n the field
// is regular away from the chart's inverted polynomials) plus the log
// condition on the cleared field.
atlas::Report check_twisted_membership(const TwistedSection& s, const atlas::Atlas& a);

// Stored scalar of the normal-twisted class of vf along the component in
// vf's chart: (coefficient of d/dc) * f^twist / c restricted to c = 0.
// ResidualPole if a c-pole survives.
cas::RationalFunction stored_normal(const VectorField& vf, const atlas::Atlas& a,
                                    const atlas::DivisorComponent& comp, int twist);
// Stored scalar of the tangent-twisted class: (coefficient of d/dz) * f^twist
// divided by z when z also cuts the divisor, restricted to c = 0.
// TangentialResidue if a c-pole survives.
cas::RationalFunction stored_tangential(const VectorField& vf, const atlas::Atlas& a,
                                        const atlas::DivisorComponent& comp, int twist);

SectionAlongComponent restrict_to_component(const TwistedSection& s, const std::string& comp_id,
                                            const atlas::Atlas& a, BundleTag tag);

// Theta values must agree on nerve overlaps as sections of the twisted
// tangent sheaf along the component: the tangential class of the difference
// vanishes.
atlas::Report cocycle_check_theta(const atlas::Atlas& a, const std::string& comp_id, int twist);

// Transport data between two nerve charts of a component: the source running
// coordinate and the stored frame expressed over the target chart. With
// frame_j = u * frame_k, a stored coefficient T(z_j) becomes T(zeta) * u.
struct FrameTransport {
  cas::RationalFunction zeta;  // z_j as a function of z_k on the component
  cas::RationalFunction unit;  // frame ratio as a function of z_k
};

FrameTransport frame_transport(const atlas::Atlas& a, const atlas::DivisorComponent& comp,
                               const std::string& from_chart, const std::string& to_chart,
                               int twist);

}  // namespace okapain::sheaf
