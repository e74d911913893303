#include "okapain/cech.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "okapain/errors.hpp"
#include "okapain/laurent.hpp"
#include "okapain/linalg.hpp"

namespace okapain::cech {

using atlas::Atlas;
using atlas::DivisorComponent;
using cas::LaurentPolynomial;
using cas::Polynomial;
using cas::Rational;
using cas::RationalFunction;
using cas::Variable;
using sheaf::VectorField;

Cochain0 lift(const Atlas& a, const std::string& component, int n) {
  const DivisorComponent& comp = a.component(component);
  Cochain0 c0;
  c0.twist = n;
  for (const auto& entry : a.generators.theta.at(comp.id)) {
    VectorField vf = sheaf::instantiate(entry.field, a.chart(entry.chart), n);
    if (!vf.is_zero()) c0.values.emplace(entry.chart, vf);
  }
  atlas::Report membership = sheaf::check_twisted_membership(c0, a);
  if (!membership.ok())
    throw MembershipViolation("theta " + component + ": " + membership.failures.front().where +
                              ": " + membership.failures.front().what);
  return c0;
}

Cochain1Along coboundary_restricted(const Cochain0& c0, const std::string& component,
                                    const Atlas& a) {
  const DivisorComponent& comp = a.component(component);
  Cochain1Along c1;
  c1.component = component;
  c1.twist = c0.twist;
  for (const auto& [j, k] : comp.nerve) {
    VectorField vj = c0.value_on(a, j);
    VectorField vk = c0.value_on(a, k);
    VectorField diff{k, vk.a, vk.b};
    if (!vj.is_zero()) {
      VectorField moved = sheaf::pushforward(vj, a, k);
      diff.a = diff.a - moved.a;
      diff.b = diff.b - moved.b;
    }
    // A genuine 0-cocycle of the twisted tangent sheaf along the component
    // has tangentially matching lifts; verify before taking the normal part.
    RationalFunction tangential = sheaf::stored_tangential(diff, a, comp, c0.twist);
    if (!tangential.is_zero())
      throw TangentialResidue(component + " overlap (" + j + "," + k +
                              "): " + tangential.render());
    c1.values.emplace(Overlap{j, k}, sheaf::stored_normal(diff, a, comp, c0.twist));
  }
  return c1;
}

Cochain1Along eta_cochain(const Atlas& a, const std::string& component, int n) {
  const DivisorComponent& comp = a.component(component);
  Cochain1Along c1;
  c1.component = component;
  c1.twist = n;
  for (const auto& [j, k] : comp.nerve) c1.values[{j, k}] = RationalFunction();
  for (const auto& entry : a.generators.eta.at(comp.id)) {
    VectorField vf = sheaf::instantiate(entry.field, a.chart(entry.overlap.second), n);
    c1.values[entry.overlap] = vf.is_zero()
                                   ? RationalFunction()
                                   : sheaf::stored_normal(vf, a, comp, n);
  }
  return c1;
}

namespace {

// Linear expression over solver unknowns with rational-function coefficients.
struct LinExpr {
  std::map<int, RationalFunction> coeffs;
  RationalFunction constant;

  void add_term(int unknown, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs.try_emplace(unknown, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) coeffs.erase(it);
    }
  }
};

struct TauChart {
  std::string chart;
  Variable z;
  Polynomial crossing_factor;  // g restricted: vanishes at the crossings
  Polynomial unit;             // product of restricted inverted polynomials
  int unit_power = 0;
  int first_unknown = 0;       // unknown ids [first, first + degree_bound]
};

// Stored coefficient space of honest sections over a nerve chart:
//   crossing_factor(z) * (sum alpha_d z^d) / unit(z)^unit_power.
RationalFunction tau_shape(const TauChart& tc, int degree, const RationalFunction& z_value) {
  RationalFunction num = cas::substitute(tc.crossing_factor, {{tc.z, z_value}}) *
                         z_value.pow(degree);
  if (tc.unit_power == 0) return num;
  RationalFunction u = cas::substitute(tc.unit, {{tc.z, z_value}});
  return num / u.pow(tc.unit_power);
}

// Coarse degree estimate for the initial solver bound; 1-cochain values may
// carry overlap units like (x11 - t) that are not chart localizations, so
// plain polynomial degrees are used instead of a Laurent decomposition.
int laurent_span(const RationalFunction& value, const Variable& z) {
  if (value.is_zero()) return 0;
  return std::max(value.num().degree_in(z), value.den().degree_in(z));
}

struct AssembledSystem {
  linalg::Matrix lhs;
  linalg::Vector rhs;
};

}  // namespace

ClassCoefficient extract_class(const Cochain1Along& c1, const std::string& component,
                               const Atlas& a, const SolverOptions& opts) {
  const DivisorComponent& comp = a.component(component);
  Cochain1Along eta = eta_cochain(a, component, c1.twist);

  // Nerve charts in declaration order.
  std::vector<std::string> nerve_charts;
  for (const auto& [chart_id, v] : comp.local_equations) nerve_charts.push_back(chart_id);

  // Initial bound: largest Laurent degree in the data plus a margin.
  int base_degree = 0;
  for (const auto& [ov, val] : c1.values)
    base_degree = std::max(base_degree, laurent_span(val, a.running_coordinate(comp, ov.second)));
  for (const auto& [ov, val] : eta.values)
    base_degree = std::max(base_degree, laurent_span(val, a.running_coordinate(comp, ov.second)));
  int degree_bound = base_degree + 2;

  while (true) {
    // Unknowns: 0 = lambda, then per chart the tau coefficients.
    std::vector<TauChart> tau_charts;
    int next_unknown = 1;
    for (const auto& chart_id : nerve_charts) {
      TauChart tc{chart_id, a.running_coordinate(comp, chart_id), Polynomial::constant(1),
                  Polynomial::constant(1), 0, next_unknown};
      Variable c = comp.cutting_coordinate(chart_id);
      tc.crossing_factor =
          (*Polynomial::try_divide(a.local_divisor_equation(chart_id), Polynomial::variable(c)))
              .at_zero(c);
      for (const auto& u : a.restricted_units(comp, chart_id)) tc.unit = tc.unit * u;
      if (!tc.unit.is_one()) tc.unit_power = c1.twist;
      next_unknown += degree_bound + 1;
      tau_charts.push_back(std::move(tc));
    }
    int num_unknowns = next_unknown;

    auto tau_chart_of = [&](const std::string& id) -> const TauChart& {
      for (const auto& tc : tau_charts)
        if (tc.chart == id) return tc;
      throw UnknownReference("nerve chart " + id);
    };

    // One residual expression per nerve overlap, as a linear expression over
    // the unknowns with coefficients rational in the running coordinate.
    std::vector<std::pair<Variable, LinExpr>> residuals;
    for (const auto& [j, k] : comp.nerve) {
      Variable zk = a.running_coordinate(comp, k);
      LinExpr e;
      e.constant = c1.values.at({j, k});
      e.add_term(0, -eta.values.at({j, k}));
      const TauChart& tck = tau_chart_of(k);
      for (int d = 0; d <= degree_bound; ++d)
        e.add_term(tck.first_unknown + d, -tau_shape(tck, d, RationalFunction::variable(zk)));
      sheaf::FrameTransport ft = sheaf::frame_transport(a, comp, j, k, c1.twist);
      const TauChart& tcj = tau_chart_of(j);
      for (int d = 0; d <= degree_bound; ++d)
        e.add_term(tcj.first_unknown + d, tau_shape(tcj, d, ft.zeta) * ft.unit);
      residuals.push_back({zk, std::move(e)});
    }

    // Clear denominators and match coefficients of powers of the running
    // coordinate; the scalars live in the parameter field.
    AssembledSystem sys;
    for (auto& [zk, e] : residuals) {
      Polynomial common = Polynomial::constant(1);
      auto fold_denominator = [&](const RationalFunction& f) {
        Polynomial g = Polynomial::gcd(common, f.den());
        common = common * (*Polynomial::try_divide(f.den(), g));
      };
      fold_denominator(e.constant);
      for (const auto& [u, c] : e.coeffs) fold_denominator(c);

      auto cleared = [&](const RationalFunction& f) {
        RationalFunction scaled = f * RationalFunction(common);
        return scaled.num();  // exact: den divides common
      };
      Polynomial constant_poly = cleared(e.constant);
      std::map<int, Polynomial> coeff_polys;
      int max_deg = constant_poly.degree_in(zk);
      for (const auto& [u, c] : e.coeffs) {
        coeff_polys[u] = cleared(c);
        max_deg = std::max(max_deg, coeff_polys[u].degree_in(zk));
      }
      for (int d = 0; d <= max_deg; ++d) {
        linalg::Vector row(num_unknowns, RationalFunction());
        bool any = false;
        for (const auto& [u, p] : coeff_polys) {
          Polynomial pd = p.coefficient_of(zk, d);
          if (!pd.is_zero()) {
            row[u] = RationalFunction(pd);
            any = true;
          }
        }
        Polynomial cd = constant_poly.coefficient_of(zk, d);
        if (!any && cd.is_zero()) continue;
        sys.lhs.push_back(std::move(row));
        // residual = constant + sum coeff*u = 0  =>  sum coeff*u = -constant
        sys.rhs.push_back(-RationalFunction(cd));
      }
    }
    if (opts.forced_lambda) {
      linalg::Vector row(num_unknowns, RationalFunction());
      row[0] = RationalFunction::constant(1);
      sys.lhs.push_back(std::move(row));
      sys.rhs.push_back(*opts.forced_lambda);
    }

    auto solution = linalg::solve(sys.lhs, sys.rhs);
    if (!solution) {
      if (degree_bound * 2 > opts.degree_cap)
        throw NoSolution(component + ": no witness up to degree " +
                         std::to_string(degree_bound) + " (cap " +
                         std::to_string(opts.degree_cap) + ")");
      degree_bound *= 2;
      continue;
    }

    if (!opts.forced_lambda) {
      for (const auto& null_vec : linalg::nullspace(sys.lhs))
        if (!null_vec[0].is_zero())
          throw NonUniqueLambda(component +
                                ": eta is a coboundary on the nerve at degree bound " +
                                std::to_string(degree_bound));
    }

    ClassCoefficient result;
    result.lambda = (*solution)[0];
    for (const auto& tc : tau_charts) {
      RationalFunction tau;
      RationalFunction z = RationalFunction::variable(tc.z);
      for (int d = 0; d <= degree_bound; ++d) {
        const RationalFunction& alpha = (*solution)[tc.first_unknown + d];
        if (!alpha.is_zero()) tau = tau + alpha * tau_shape(tc, d, z);
      }
      result.witness_tau.emplace(tc.chart, tau);
    }

    // Certify the witness by re-substitution.
    for (const auto& [j, k] : comp.nerve) {
      sheaf::FrameTransport ft = sheaf::frame_transport(a, comp, j, k, c1.twist);
      RationalFunction tau_j = result.witness_tau.at(j).substitute(
          {{a.running_coordinate(comp, j), ft.zeta}});
      RationalFunction delta_tau = result.witness_tau.at(k) - tau_j * ft.unit;
      RationalFunction residual =
          c1.values.at({j, k}) - result.lambda * eta.values.at({j, k}) - delta_tau;
      if (!residual.is_zero())
        throw EngineError("internal: witness fails certification on (" + j + "," + k + ")");
    }
    return result;
  }
}

DeltaMatrix assemble_delta(const Atlas& a, int n, const SolverOptions& opts) {
  Atlas inst = a.has_formal_twist() ? atlas::instantiate_twist(a, n) : a;
  size_t r = inst.components.size();
  DeltaMatrix m;
  m.atlas_name = inst.name;
  m.type_label = inst.type_label;
  m.twist = n;
  for (const auto& comp : inst.components) {
    m.theta_labels.push_back(comp.id);
    m.eta_labels.push_back(comp.id);
  }
  m.entries.assign(r, std::vector<RationalFunction>(r, RationalFunction()));
  for (size_t j = 0; j < r; ++j) {
    Cochain0 c0 = lift(inst, inst.components[j].id, n);
    for (size_t i = 0; i < r; ++i) {
      try {
        Cochain1Along c1 = coboundary_restricted(c0, inst.components[i].id, inst);
        if (c1.is_zero()) continue;
        ClassCoefficient cc = extract_class(c1, inst.components[i].id, inst, opts);
        m.entries[i][j] = cc.lambda;
      } catch (const EngineError& e) {
        throw EngineError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                          ") [theta " + inst.components[j].id + " against eta " +
                          inst.components[i].id + "]: " + e.what());
      }
    }
  }
  return m;
}

namespace {

std::vector<std::vector<Rational>> random_regular_points(const DeltaMatrix& m, int count,
                                                         int max_tries) {
  // Deterministic seed: structured output must be byte-stable across runs.
  std::mt19937_64 rng(0x0ca9a17);
  std::uniform_int_distribution<long> num_dist(-40, 40);
  std::uniform_int_distribution<long> den_dist(1, 12);
  Variable t("t"), a0("a0"), a1("a1");
  std::vector<std::vector<Rational>> points;
  for (int tries = 0; tries < max_tries && static_cast<int>(points.size()) < count; ++tries) {
    Rational tv(num_dist(rng), den_dist(rng));
    Rational a0v(num_dist(rng), den_dist(rng));
    Rational a1v(num_dist(rng), den_dist(rng));
    tv.canonicalize();
    a0v.canonicalize();
    a1v.canonicalize();
    if (tv == 0) continue;  // t is invertible in the multiplicative family
    std::map<Variable, Rational> point{{t, tv}, {a0, a0v}, {a1, a1v}};
    bool regular = true;
    for (const auto& row : m.entries)
      for (const auto& entry : row)
        if (entry.den().evaluate(point) == 0) regular = false;
    if (regular) points.push_back({tv, a0v, a1v});
  }
  return points;
}

}  // namespace

KernelReport kernel_report(const DeltaMatrix& m) {
  KernelReport rep;
  size_t r = m.entries.size();
  rep.rank = linalg::rank(m.entries);
  rep.kernel_dimension = static_cast<int>(r) - rep.rank;
  rep.determinant = linalg::determinant(m.entries);
  rep.kernel_basis = linalg::nullspace(m.entries);

  // Normalize each kernel vector: integer-primitive when rational, else
  // leading entry one.
  for (auto& vec : rep.kernel_basis) {
    bool all_const = true;
    for (const auto& v : vec) all_const &= v.is_constant();
    if (all_const) {
      Polynomial combined;
      mpz_class den_lcm(1);
      for (const auto& v : vec)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                v.is_zero() ? mpz_class(1).get_mpz_t()
                            : v.constant_value().get_den().get_mpz_t());
      mpz_class num_gcd(0);
      for (const auto& v : vec) {
        if (v.is_zero()) continue;
        mpq_class scaled = v.constant_value() * Rational(den_lcm);
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_num().get_mpz_t());
      }
      Rational scale(den_lcm, num_gcd == 0 ? mpz_class(1) : num_gcd);
      scale.canonicalize();
      for (auto& v : vec)
        if (!v.is_zero() && v.constant_value() * scale < 0) {
          scale = -scale;
          break;
        }
      for (auto& v : vec) v = v * RationalFunction::constant(scale);
    } else {
      RationalFunction lead;
      for (const auto& v : vec)
        if (!v.is_zero()) {
          lead = v;
          break;
        }
      for (auto& v : vec) v = v / lead;
    }
  }

  // Specialization cross-check at three random regular rational points.
  auto points = random_regular_points(m, 3, 500);
  if (points.size() < 3)
    throw SpecializationMismatch("could not sample three regular parameter points");
  Variable t("t"), a0("a0"), a1("a1");
  for (const auto& pt : points) {
    std::map<Variable, Rational> point{{t, pt[0]}, {a0, pt[1]}, {a1, pt[2]}};
    int tries = 0;
    while (true) {
      linalg::Matrix specialized(r, linalg::Vector(r));
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
          specialized[i][j] = RationalFunction::constant(m.entries[i][j].evaluate(point));
      int spec_rank = linalg::rank(specialized);
      if (spec_rank == rep.rank) break;
      // The point may sit on the vanishing locus of a minor; resample.
      if (++tries > 50)
        throw SpecializationMismatch("rank " + std::to_string(rep.rank) + " vs " +
                                     std::to_string(spec_rank) + " at a specialization");
      auto more = random_regular_points(m, 1, 200);
      if (more.empty())
        throw SpecializationMismatch("could not resample a regular point");
      point = {{t, more[0][0]}, {a0, more[0][1]}, {a1, more[0][2]}};
    }
  }
  return rep;
}

VanishingReport vanishing_scan(const Atlas& a, int n_max, const SolverOptions& opts) {
  if (a.class_label != atlas::AtlasClass::multiplicative)
    throw UnsupportedAtlasClass(a.name + " is of additive type");
  VanishingReport rep;
  Variable t("t");
  RationalFunction minus_t = -RationalFunction::variable(t);
  for (int n = 1; n <= n_max; ++n) {
    DeltaMatrix dm = assemble_delta(a, n, opts);
    KernelReport kr = kernel_report(dm);
    RationalFunction u = minus_t.pow(n);
    RationalFunction closed_form =
        (u - RationalFunction::constant(1)).pow(2) / u;
    VanishingRow row;
    row.twist = n;
    row.determinant = kr.determinant;
    row.matches_closed_form = kr.determinant == closed_form;
    row.kernel_dimension = kr.kernel_dimension;
    std::ostringstream locus;
    locus << "{ t : (-t)^" << n << " = 1 }";
    if (n % 2 == 0)
      locus << " (rational points t = -1, t = 1)";
    else
      locus << " (rational point t = -1)";
    row.vanishing_locus = locus.str();
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace okapain::cech
