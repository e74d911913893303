#include "okapain/sheaf.hpp"

#include <sstream>

#include "okapain/errors.hpp"

namespace okapain::sheaf {

using atlas::Atlas;
using atlas::Chart;
using atlas::DivisorComponent;
using atlas::Report;
using atlas::Transition;
using cas::Polynomial;
using cas::RationalFunction;
using cas::Variable;

VectorField instantiate(const atlas::VectorFieldExpr& expr, const Chart& chart, int n) {
  VectorField vf{chart.id, {}, {}};
  for (const auto& [e, coord] : expr.parts) {
    RationalFunction r = e.instantiate(n);
    if (coord == chart.x)
      vf.a = vf.a + r;
    else
      vf.b = vf.b + r;
  }
  return vf;
}

VectorField TwistedSection::value_on(const Atlas& a, const std::string& chart_id) const {
  auto it = values.find(chart_id);
  if (it != values.end()) return it->second;
  a.chart(chart_id);  // existence
  return VectorField{chart_id, {}, {}};
}

VectorField pushforward(const VectorField& vf, const Atlas& a, const std::string& target) {
  if (vf.chart == target) return vf;
  if (vf.is_zero()) return VectorField{target, {}, {}};
  // Forward formulas express target coordinates over the source; the inverse
  // route rewrites the source coordinates of the result.
  Transition forward = atlas::transition_route(a, vf.chart, target);
  Transition inverse = atlas::transition_route(a, target, vf.chart);
  const Chart& src = a.chart(vf.chart);

  auto apply_derivation = [&](const RationalFunction& formula) {
    return vf.a * formula.differentiate(src.x) + vf.b * formula.differentiate(src.y);
  };
  RationalFunction da = apply_derivation(forward.fx);
  RationalFunction db = apply_derivation(forward.fy);

  std::map<Variable, RationalFunction> rewrite{{src.x, inverse.fx}, {src.y, inverse.fy}};
  return VectorField{target, da.substitute(rewrite), db.substitute(rewrite)};
}

namespace {

// Denominator must divide a product of powers of the chart's inverted
// polynomials (up to a constant).
bool regular_on_chart(const RationalFunction& f, const Chart& ch) {
  Polynomial den = f.den();
  bool progress = true;
  while (!den.is_constant() && progress) {
    progress = false;
    for (const auto& u : ch.inverted) {
      auto q = Polynomial::try_divide(den, u);
      if (q) {
        den = *q;
        progress = true;
      }
    }
  }
  return den.is_constant();
}

std::vector<std::pair<const DivisorComponent*, Variable>> components_through(
    const Atlas& a, const std::string& chart_id) {
  std::vector<std::pair<const DivisorComponent*, Variable>> out;
  for (const auto& comp : a.components)
    for (const auto& [c, v] : comp.local_equations)
      if (c == chart_id) out.push_back({&comp, v});
  return out;
}

}  // namespace

bool is_log(const VectorField& vf, const Atlas& a) {
  const Chart& ch = a.chart(vf.chart);
  for (const auto& [comp, cut] : components_through(a, vf.chart)) {
    const RationalFunction& coeff = vf.coefficient_of(ch, cut);
    if (coeff.is_zero()) continue;
    // Divisibility in the localized ring: coeff / c must stay regular.
    RationalFunction quotient = coeff / RationalFunction::variable(cut);
    if (!regular_on_chart(quotient, ch)) return false;
  }
  return true;
}

Report check_twisted_membership(const TwistedSection& s, const Atlas& a) {
  Report rep;
  rep.title = "twisted-membership (twist " + std::to_string(s.twist) + ")";
  for (const auto& [chart_id, vf] : s.values) {
    ++rep.checks_run;
    const Chart& ch = a.chart(chart_id);
    RationalFunction fn = RationalFunction(a.local_divisor_equation(chart_id)).pow(s.twist);
    VectorField cleared{chart_id, vf.a * fn, vf.b * fn};
    if (!regular_on_chart(cleared.a, ch) || !regular_on_chart(cleared.b, ch)) {
      rep.failures.push_back({chart_id, "pole order along the divisor exceeds the twist"});
      continue;
    }
    if (!is_log(cleared, a))
      rep.failures.push_back({chart_id, "cleared field is not logarithmic"});
  }
  return rep;
}

cas::RationalFunction stored_normal(const VectorField& vf, const Atlas& a,
                                    const DivisorComponent& comp, int twist) {
  const Chart& ch = a.chart(vf.chart);
  Variable c = comp.cutting_coordinate(vf.chart);
  RationalFunction coeff = vf.coefficient_of(ch, c);
  if (coeff.is_zero()) return {};
  RationalFunction fn = RationalFunction(a.local_divisor_equation(vf.chart)).pow(twist);
  RationalFunction scaled = coeff * fn / RationalFunction::variable(c);
  auto restricted = scaled.try_at_zero(c);
  if (!restricted)
    throw ResidualPole(comp.id + " in " + vf.chart + ": " + scaled.render());
  return *restricted;
}

cas::RationalFunction stored_tangential(const VectorField& vf, const Atlas& a,
                                        const DivisorComponent& comp, int twist) {
  const Chart& ch = a.chart(vf.chart);
  Variable c = comp.cutting_coordinate(vf.chart);
  Variable z = ch.other(c);
  RationalFunction coeff = vf.coefficient_of(ch, z);
  if (coeff.is_zero()) return {};
  RationalFunction fn = RationalFunction(a.local_divisor_equation(vf.chart)).pow(twist);
  RationalFunction scaled = coeff * fn;
  // When the running coordinate cuts another component the log frame along
  // it is z d/dz, so the stored coefficient divides by z.
  for (const auto& [other, cut] : components_through(a, vf.chart))
    if (other->id != comp.id && cut == z) {
      scaled = scaled / RationalFunction::variable(z);
      break;
    }
  auto restricted = scaled.try_at_zero(c);
  if (!restricted)
    throw TangentialResidue(comp.id + " in " + vf.chart + ": " + scaled.render());
  return *restricted;
}

SectionAlongComponent restrict_to_component(const TwistedSection& s, const std::string& comp_id,
                                            const Atlas& a, BundleTag tag) {
  const DivisorComponent& comp = a.component(comp_id);
  SectionAlongComponent out;
  out.component = comp_id;
  out.tag = tag;
  out.twist = s.twist;
  for (const auto& [chart_id, cut] : comp.local_equations) {
    VectorField vf = s.value_on(a, chart_id);
    Variable z = a.running_coordinate(comp, chart_id);
    RationalFunction stored = tag == BundleTag::normal_twisted
                                  ? stored_normal(vf, a, comp, s.twist)
                                  : stored_tangential(vf, a, comp, s.twist);
    out.values.emplace(chart_id,
                       cas::laurent_normal_form(stored, z, a.restricted_units(comp, chart_id)));
  }
  return out;
}

Report cocycle_check_theta(const Atlas& a, const std::string& comp_id, int twist) {
  Report rep;
  rep.title = "theta-cocycle " + comp_id + " (twist " + std::to_string(twist) + ")";
  const DivisorComponent& comp = a.component(comp_id);
  const auto& entries = a.generators.theta.at(comp_id);

  TwistedSection section;
  section.twist = twist;
  for (const auto& e : entries)
    section.values.emplace(e.chart, instantiate(e.field, a.chart(e.chart), twist));

  // Individual membership on each chart of the cover.
  atlas::Report membership = check_twisted_membership(section, a);
  rep.checks_run += membership.checks_run;
  for (auto& f : membership.failures)
    rep.failures.push_back({comp_id + " " + f.where, f.what});

  // Tangential agreement on every nerve overlap.
  for (const auto& [j, k] : comp.nerve) {
    ++rep.checks_run;
    std::string label = comp_id + " overlap (" + j + "," + k + ")";
    try {
      VectorField vj = section.value_on(a, j);
      VectorField vk = section.value_on(a, k);
      VectorField diff_k{k, vk.a, vk.b};
      if (!vj.is_zero()) {
        VectorField moved = pushforward(vj, a, k);
        diff_k.a = diff_k.a - moved.a;
        diff_k.b = diff_k.b - moved.b;
      }
      RationalFunction tangential = stored_tangential(diff_k, a, comp, twist);
      if (!tangential.is_zero())
        rep.failures.push_back({label, "tangential classes disagree: " + tangential.render()});
    } catch (const EngineError& e) {
      rep.failures.push_back({label, e.what()});
    }
  }
  return rep;
}

FrameTransport frame_transport(const Atlas& a, const DivisorComponent& comp,
                               const std::string& from_chart, const std::string& to_chart,
                               int twist) {
  Variable cj = comp.cutting_coordinate(from_chart);
  Variable zj = a.running_coordinate(comp, from_chart);
  Variable ck = comp.cutting_coordinate(to_chart);

  if (from_chart == to_chart)
    return FrameTransport{RationalFunction::variable(zj), RationalFunction::constant(1)};

  // Route expressing the source chart's coordinates over the target chart.
  Transition into_from = atlas::transition_route(a, to_chart, from_chart);
  const Chart& from = a.chart(from_chart);
  RationalFunction cj_of_k = (cj == from.x) ? into_from.fx : into_from.fy;
  RationalFunction zj_of_k = (zj == from.x) ? into_from.fx : into_from.fy;

  auto restrict = [&](const RationalFunction& f, const std::string& what) {
    auto r = f.try_at_zero(ck);
    if (!r) throw ResidualPole(comp.id + " frame transport " + from_chart + "->" + to_chart +
                               ": " + what);
    return *r;
  };

  RationalFunction zeta = restrict(zj_of_k, "running coordinate");

  // Normal derivative of the source cutting equation along the component.
  RationalFunction normal_derivative = restrict(cj_of_k.differentiate(ck), "normal derivative");
  if (normal_derivative.is_zero())
    throw ResidualPole(comp.id + ": transition is degenerate along the component");

  // Ratio of the twisted frame factors c * f^-twist.
  Polynomial fj = a.local_divisor_equation(from_chart);
  Polynomial fk = a.local_divisor_equation(to_chart);
  std::map<Variable, RationalFunction> bind = into_from.binding(from);
  RationalFunction fj_of_k = cas::substitute(fj, bind);
  RationalFunction frame_ratio = cj_of_k * RationalFunction(fk).pow(twist) /
                                 (RationalFunction::variable(ck) * fj_of_k.pow(twist));
  RationalFunction beta = restrict(frame_ratio, "frame ratio");

  return FrameTransport{zeta, beta / normal_derivative};
}

}  // namespace okapain::sheaf
