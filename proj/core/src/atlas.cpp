#include "okapain/atlas.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "lexer.hpp"
#include "okapain/errors.hpp"
#include "okapain/parser.hpp"

namespace okapain::atlas {

using cas::Polynomial;
using cas::RationalFunction;
using cas::Variable;

bool DivisorComponent::has_chart(const std::string& chart_id) const {
  for (const auto& [c, v] : local_equations)
    if (c == chart_id) return true;
  return false;
}

Variable DivisorComponent::cutting_coordinate(const std::string& chart_id) const {
  for (const auto& [c, v] : local_equations)
    if (c == chart_id) return v;
  throw UnknownReference("component " + id + " has no local equation in chart " + chart_id);
}

const Chart& Atlas::chart(const std::string& id) const {
  for (const auto& c : charts)
    if (c.id == id) return c;
  throw UnknownReference("chart " + id);
}

const DivisorComponent& Atlas::component(const std::string& id) const {
  for (const auto& c : components)
    if (c.id == id) return c;
  throw UnknownReference("component " + id);
}

int Atlas::component_index(const std::string& id) const {
  for (size_t i = 0; i < components.size(); ++i)
    if (components[i].id == id) return static_cast<int>(i);
  throw UnknownReference("component " + id);
}

const Transition* Atlas::find_transition(const std::string& source,
                                         const std::string& target) const {
  for (const auto& t : transitions)
    if (t.source == source && t.target == target) return &t;
  return nullptr;
}

bool Atlas::has_formal_twist() const {
  for (const auto& [comp, entries] : generators.theta)
    for (const auto& e : entries)
      if (e.field.depends_on_twist()) return true;
  for (const auto& [comp, entries] : generators.eta)
    for (const auto& e : entries)
      if (e.field.depends_on_twist()) return true;
  return false;
}

Polynomial Atlas::local_divisor_equation(const std::string& chart_id) const {
  chart(chart_id);  // existence
  Polynomial f = Polynomial::constant(1);
  for (const auto& comp : components)
    for (const auto& [c, v] : comp.local_equations)
      if (c == chart_id) f = f * Polynomial::variable(v);
  return f;
}

Variable Atlas::running_coordinate(const DivisorComponent& comp,
                                   const std::string& chart_id) const {
  const Chart& ch = chart(chart_id);
  return ch.other(comp.cutting_coordinate(chart_id));
}

std::vector<Polynomial> Atlas::restricted_units(const DivisorComponent& comp,
                                                const std::string& chart_id) const {
  const Chart& ch = chart(chart_id);
  Variable c = comp.cutting_coordinate(chart_id);
  std::vector<Polynomial> out;
  for (const auto& p : ch.inverted) {
    Polynomial r = p.at_zero(c);
    if (!r.is_constant()) out.push_back(r);
  }
  return out;
}

// ---- transition composition ----

Transition compose(const Atlas& a, const Transition& first, const Transition& second) {
  const Chart& mid = a.chart(first.target);
  auto bind = first.binding(mid);
  Transition out;
  out.source = first.source;
  out.target = second.target;
  out.fx = second.fx.substitute(bind);
  out.fy = second.fy.substitute(bind);
  return out;
}

Transition identity_transition(const Atlas& a, const std::string& chart_id) {
  const Chart& c = a.chart(chart_id);
  return Transition{chart_id, chart_id, RationalFunction::variable(c.x),
                    RationalFunction::variable(c.y)};
}

Transition transition_route(const Atlas& a, const std::string& from, const std::string& to) {
  if (from == to) return identity_transition(a, from);
  // BFS over supplied transitions.
  std::map<std::string, const Transition*> parent_edge;
  std::deque<std::string> queue{from};
  std::set<std::string> seen{from};
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    for (const auto& t : a.transitions) {
      if (t.source != cur || seen.count(t.target)) continue;
      parent_edge[t.target] = &t;
      if (t.target == to) {
        std::vector<const Transition*> path;
        std::string walk = to;
        while (walk != from) {
          path.push_back(parent_edge[walk]);
          walk = parent_edge[walk]->source;
        }
        std::reverse(path.begin(), path.end());
        Transition acc = *path.front();
        for (size_t i = 1; i < path.size(); ++i) acc = compose(a, acc, *path[i]);
        return acc;
      }
      seen.insert(t.target);
      queue.push_back(t.target);
    }
  }
  throw MissingInverse("no transition path from " + from + " to " + to);
}

// ---- document loading ----

namespace {

RationalFunction expr_to_rational(const Expr& e, Lexer& lex) {
  if (e.depends_on_twist()) lex.fail("the twist symbol is not allowed here");
  return e.instantiate(1);
}

std::pair<std::string, std::string> parse_chart_pair(Lexer& lex) {
  lex.expect_symbol("(");
  std::string a = lex.expect_ident().text;
  lex.expect_symbol(",");
  std::string b = lex.expect_ident().text;
  lex.expect_symbol(")");
  return {a, b};
}

void check_field_in_chart(const VectorFieldExpr& vf, const Chart& ch, const std::string& where) {
  for (const auto& [e, coord] : vf.parts) {
    if (!ch.has(coord))
      throw InvariantViolation(where + ": d/d" + coord.name() + " is not a direction of " +
                               ch.id);
    for (const auto& v : e.variables())
      if (!ch.has(v) && !v.is_parameter())
        throw InvariantViolation(where + ": expression uses foreign variable " + v.name() +
                                 " in chart " + ch.id);
  }
}

struct Loader {
  Lexer lex;
  Atlas a;

  explicit Loader(const std::string& text) : lex(text) {}

  Atlas run() {
    lex.expect_keyword("atlas");
    a.name = lex.expect_ident().text;
    lex.expect_keyword("type");
    a.type_label = lex.expect_ident().text;
    lex.expect_keyword("class");
    std::string cls = lex.expect_ident().text;
    if (cls == "additive")
      a.class_label = AtlasClass::additive;
    else if (cls == "multiplicative")
      a.class_label = AtlasClass::multiplicative;
    else
      lex.fail("class must be additive or multiplicative");

    section("charts");
    while (lex.peek().kind == Tok::Ident && !at_section()) parse_chart();
    if (lex.at_ident("globals")) {
      section("globals");
      while (lex.peek().kind == Tok::Ident && !at_section()) parse_global();
    }
    section("transitions");
    while (lex.peek().kind == Tok::Ident && !at_section()) parse_transition();
    section("components");
    while (lex.peek().kind == Tok::Ident && !at_section()) parse_component();
    section("intersection");
    parse_intersection();
    section("generators");
    while (lex.at_ident("theta") || lex.at_ident("eta")) parse_generator();
    if (!lex.at_end()) lex.fail("unexpected trailing content");
    validate();
    return std::move(a);
  }

  bool at_section() const {
    return lex.at_ident("globals") || lex.at_ident("transitions") || lex.at_ident("components") ||
           lex.at_ident("intersection") || lex.at_ident("generators");
  }

  void section(const std::string& name) {
    lex.expect_keyword(name);
    lex.expect_symbol(":");
  }

  void parse_chart() {
    std::string id = lex.expect_ident().text;
    lex.expect_symbol("(");
    Variable x(lex.expect_ident().text);
    lex.expect_symbol(",");
    Variable y(lex.expect_ident().text);
    lex.expect_symbol(")");
    Chart c{id, x, y, {}, std::nullopt};
    if (lex.at_ident("invert")) {
      lex.next();
      while (true) {
        RationalFunction r = expr_to_rational(detail::parse_expr_hook(lex), lex);
        if (!r.is_polynomial()) lex.fail("inverted expression must be a polynomial");
        c.inverted.push_back(r.num());
        if (lex.at_symbol(",")) {
          lex.next();
          continue;
        }
        break;
      }
    }
    a.charts.push_back(std::move(c));
  }

  void parse_global() {
    std::string id = lex.expect_ident().text;
    Chart* ch = find_chart(id);
    if (ch == nullptr) throw UnknownReference("globals for unknown chart " + id);
    lex.expect_symbol(":");
    std::array<RationalFunction, 2> g;
    for (int i = 0; i < 2; ++i) {
      std::string coord = lex.expect_ident().text;
      Variable expected = i == 0 ? ch->x : ch->y;
      if (coord != expected.name())
        lex.fail("global must define " + expected.name() + (i == 0 ? " first" : " second"));
      lex.expect_symbol("=");
      g[i] = expr_to_rational(detail::parse_expr_hook(lex), lex);
      if (i == 0) lex.expect_symbol(",");
    }
    ch->globals = g;
  }

  void parse_transition() {
    Transition t;
    t.source = lex.expect_ident().text;
    lex.expect_symbol("->");
    t.target = lex.expect_ident().text;
    lex.expect_symbol(":");
    const Chart* target = find_chart(t.target);
    if (target == nullptr) throw UnknownReference("transition target chart " + t.target);
    if (find_chart(t.source) == nullptr)
      throw UnknownReference("transition source chart " + t.source);
    for (int i = 0; i < 2; ++i) {
      std::string coord = lex.expect_ident().text;
      Variable expected = i == 0 ? target->x : target->y;
      if (coord != expected.name())
        lex.fail("transition must define " + expected.name() + (i == 0 ? " first" : " second"));
      lex.expect_symbol("=");
      RationalFunction f = expr_to_rational(detail::parse_expr_hook(lex), lex);
      (i == 0 ? t.fx : t.fy) = f;
      if (i == 0) lex.expect_symbol(",");
    }
    a.transitions.push_back(std::move(t));
  }

  void parse_component() {
    DivisorComponent c;
    c.id = lex.expect_ident().text;
    lex.expect_keyword("mult");
    c.multiplicity = static_cast<int>(lex.expect_integer());
    lex.expect_keyword("t");
    c.t_count = static_cast<int>(lex.expect_integer());
    lex.expect_keyword("eq");
    lex.expect_symbol("{");
    while (true) {
      std::string chart_id = lex.expect_ident().text;
      lex.expect_symbol(":");
      Variable v(lex.expect_ident().text);
      c.local_equations.push_back({chart_id, v});
      if (lex.at_symbol(",")) {
        lex.next();
        continue;
      }
      break;
    }
    lex.expect_symbol("}");
    lex.expect_keyword("nerve");
    lex.expect_symbol("{");
    while (true) {
      c.nerve.push_back(parse_chart_pair(lex));
      if (lex.at_symbol(",")) {
        lex.next();
        continue;
      }
      break;
    }
    lex.expect_symbol("}");
    lex.expect_keyword("principal");
    c.principal = parse_chart_pair(lex);
    a.components.push_back(std::move(c));
  }

  void parse_intersection() {
    size_t r = a.components.size();
    a.intersection.assign(r, std::vector<long>(r, 0));
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j) a.intersection[i][j] = lex.expect_integer();
  }

  void parse_generator() {
    bool is_theta = lex.at_ident("theta");
    lex.next();
    std::string comp = lex.expect_ident().text;
    lex.expect_symbol("{");
    if (is_theta) {
      auto& list = a.generators.theta[comp];
      while (true) {
        ThetaEntry e;
        e.chart = lex.expect_ident().text;
        lex.expect_symbol(":");
        e.field = detail::parse_vf_hook(lex);
        list.push_back(std::move(e));
        if (lex.at_symbol(",")) {
          lex.next();
          continue;
        }
        break;
      }
    } else {
      auto& list = a.generators.eta[comp];
      while (true) {
        EtaEntry e;
        e.overlap = parse_chart_pair(lex);
        lex.expect_symbol(":");
        e.field = detail::parse_vf_hook(lex);
        list.push_back(std::move(e));
        if (lex.at_symbol(",")) {
          lex.next();
          continue;
        }
        break;
      }
    }
    lex.expect_symbol("}");
  }

  Chart* find_chart(const std::string& id) {
    for (auto& c : a.charts)
      if (c.id == id) return &c;
    return nullptr;
  }

  void validate() const;
};

void Loader::validate() const {
  std::set<std::string> chart_ids;
  for (const auto& c : a.charts) {
    if (!chart_ids.insert(c.id).second) throw InvariantViolation("duplicate chart id " + c.id);
    if (c.x == c.y) throw InvariantViolation("chart " + c.id + " repeats a coordinate");
    for (const auto& p : c.inverted) {
      if (p.is_constant()) throw InvariantViolation("chart " + c.id + " inverts a constant");
      for (const auto& v : p.variables())
        if (!c.has(v) && !v.is_parameter())
          throw InvariantViolation("chart " + c.id + " inverts a polynomial in foreign variable " +
                                   v.name());
    }
  }
  for (const auto& t : a.transitions) {
    const Chart& src = a.chart(t.source);
    a.chart(t.target);
    for (const auto& f : {t.fx, t.fy})
      for (const auto& v : f.variables())
        if (!src.has(v) && !v.is_parameter())
          throw InvariantViolation("transition " + t.source + "->" + t.target +
                                   " uses foreign variable " + v.name());
  }
  if (a.components.size() < 2) throw InvariantViolation("an atlas needs at least two components");
  std::set<std::string> comp_ids;
  for (const auto& c : a.components) {
    if (!comp_ids.insert(c.id).second) throw InvariantViolation("duplicate component id " + c.id);
    if (c.multiplicity < 1) throw InvariantViolation(c.id + ": multiplicity must be positive");
    if (c.t_count < 1) throw InvariantViolation(c.id + ": t must be at least 1");
    std::set<std::string> eq_charts;
    for (const auto& [chart_id, v] : c.local_equations) {
      const Chart& ch = a.chart(chart_id);
      if (!ch.has(v))
        throw InvariantViolation(c.id + ": " + v.name() + " is not a coordinate of " + chart_id);
      if (!eq_charts.insert(chart_id).second)
        throw InvariantViolation(c.id + ": two local equations in " + chart_id);
    }
    if (c.nerve.empty()) throw InvariantViolation(c.id + ": empty nerve");
    std::set<std::string> nerve_charts;
    for (const auto& [p, q] : c.nerve) {
      if (p == q) throw InvariantViolation(c.id + ": degenerate overlap (" + p + "," + p + ")");
      for (const auto& id : {p, q}) {
        if (!eq_charts.count(id))
          throw InvariantViolation(c.id + ": nerve chart " + id + " has no local equation");
        nerve_charts.insert(id);
      }
    }
    if (nerve_charts != eq_charts)
      throw InvariantViolation(c.id + ": nerve does not cover the component's charts");
    std::set<std::string> reached{c.nerve.front().first};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& [p, q] : c.nerve) {
        if (reached.count(p) && !reached.count(q)) {
          reached.insert(q);
          grew = true;
        }
        if (reached.count(q) && !reached.count(p)) {
          reached.insert(p);
          grew = true;
        }
      }
    }
    if (reached != nerve_charts) throw InvariantViolation(c.id + ": nerve is not connected");
    bool principal_found = false;
    for (const auto& ov : c.nerve)
      if (ov == c.principal) principal_found = true;
    if (!principal_found)
      throw InvariantViolation(c.id + ": principal pair is not a nerve overlap");
  }
  size_t r = a.components.size();
  if (a.intersection.size() != r)
    throw InvariantViolation("intersection matrix is not " + std::to_string(r) + " x " +
                             std::to_string(r));
  for (const auto& comp : a.components) {
    if (!a.generators.theta.count(comp.id))
      throw InvariantViolation("no theta generator for " + comp.id);
    if (!a.generators.eta.count(comp.id))
      throw InvariantViolation("no eta generator for " + comp.id);
  }
  for (const auto& [comp_id, entries] : a.generators.theta) {
    const DivisorComponent& c = a.component(comp_id);
    for (const auto& e : entries) {
      if (!c.has_chart(e.chart))
        throw InvariantViolation("theta " + comp_id + " uses chart " + e.chart +
                                 " outside the component cover");
      check_field_in_chart(e.field, a.chart(e.chart), "theta " + comp_id);
    }
  }
  for (const auto& [comp_id, entries] : a.generators.eta) {
    const DivisorComponent& c = a.component(comp_id);
    for (const auto& e : entries) {
      bool in_nerve = false;
      for (const auto& ov : c.nerve)
        if (ov == e.overlap) in_nerve = true;
      if (!in_nerve)
        throw InvariantViolation("eta " + comp_id + " uses overlap (" + e.overlap.first + "," +
                                 e.overlap.second + ") outside the nerve");
      check_field_in_chart(e.field, a.chart(e.overlap.second), "eta " + comp_id);
    }
  }
}

}  // namespace

Atlas load_atlas(const std::string& document) {
  Loader loader(document);
  return loader.run();
}

// ---- rendering and equivalence ----

std::string render(const Atlas& a) {
  std::ostringstream out;
  out << "atlas " << a.name << "\n";
  out << "type " << a.type_label << "\n";
  out << "class " << (a.class_label == AtlasClass::additive ? "additive" : "multiplicative")
      << "\n\n";
  out << "charts:\n";
  for (const auto& c : a.charts) {
    out << "  " << c.id << " (" << c.x.name() << ", " << c.y.name() << ")";
    if (!c.inverted.empty()) {
      out << " invert ";
      for (size_t i = 0; i < c.inverted.size(); ++i) {
        if (i) out << ", ";
        out << c.inverted[i].render();
      }
    }
    out << "\n";
  }
  bool any_globals = false;
  for (const auto& c : a.charts) any_globals |= c.globals.has_value();
  if (any_globals) {
    out << "\nglobals:\n";
    for (const auto& c : a.charts) {
      if (!c.globals) continue;
      out << "  " << c.id << ": " << c.x.name() << " = " << (*c.globals)[0].render() << ", "
          << c.y.name() << " = " << (*c.globals)[1].render() << "\n";
    }
  }
  out << "\ntransitions:\n";
  for (const auto& t : a.transitions) {
    const Chart& target = a.chart(t.target);
    out << "  " << t.source << " -> " << t.target << ": " << target.x.name() << " = "
        << t.fx.render() << ", " << target.y.name() << " = " << t.fy.render() << "\n";
  }
  out << "\ncomponents:\n";
  for (const auto& c : a.components) {
    out << "  " << c.id << " mult " << c.multiplicity << " t " << c.t_count << " eq { ";
    for (size_t i = 0; i < c.local_equations.size(); ++i) {
      if (i) out << ", ";
      out << c.local_equations[i].first << ": " << c.local_equations[i].second.name();
    }
    out << " } nerve { ";
    for (size_t i = 0; i < c.nerve.size(); ++i) {
      if (i) out << ", ";
      out << "(" << c.nerve[i].first << "," << c.nerve[i].second << ")";
    }
    out << " } principal (" << c.principal.first << "," << c.principal.second << ")\n";
  }
  out << "\nintersection:\n";
  for (const auto& row : a.intersection) {
    out << " ";
    for (long v : row) out << " " << v;
    out << "\n";
  }
  out << "\ngenerators:\n";
  for (const auto& c : a.components) {
    const auto& entries = a.generators.theta.at(c.id);
    out << "  theta " << c.id << " { ";
    for (size_t i = 0; i < entries.size(); ++i) {
      if (i) out << ", ";
      out << entries[i].chart << ": " << entries[i].field.render();
    }
    out << " }\n";
  }
  for (const auto& c : a.components) {
    const auto& entries = a.generators.eta.at(c.id);
    out << "  eta " << c.id << " { ";
    for (size_t i = 0; i < entries.size(); ++i) {
      if (i) out << ", ";
      out << "(" << entries[i].overlap.first << "," << entries[i].overlap.second
          << "): " << entries[i].field.render();
    }
    out << " }\n";
  }
  return out.str();
}

namespace {

bool vf_equivalent(const VectorFieldExpr& u, const VectorFieldExpr& v) {
  if (u.parts.size() != v.parts.size()) return false;
  std::vector<int> twists = (u.depends_on_twist() || v.depends_on_twist())
                                ? std::vector<int>{1, 2, 3}
                                : std::vector<int>{1};
  for (size_t i = 0; i < u.parts.size(); ++i) {
    if (u.parts[i].second != v.parts[i].second) return false;
    for (int n : twists)
      if (u.parts[i].first.instantiate(n) != v.parts[i].first.instantiate(n)) return false;
  }
  return true;
}

}  // namespace

bool equivalent(const Atlas& a, const Atlas& b) {
  if (a.name != b.name || a.type_label != b.type_label || a.class_label != b.class_label)
    return false;
  if (a.charts.size() != b.charts.size() || a.transitions.size() != b.transitions.size() ||
      a.components.size() != b.components.size())
    return false;
  for (size_t i = 0; i < a.charts.size(); ++i) {
    const Chart &ca = a.charts[i], &cb = b.charts[i];
    if (ca.id != cb.id || ca.x != cb.x || ca.y != cb.y || ca.inverted != cb.inverted)
      return false;
    if (ca.globals.has_value() != cb.globals.has_value()) return false;
    if (ca.globals && *ca.globals != *cb.globals) return false;
  }
  for (size_t i = 0; i < a.transitions.size(); ++i) {
    const Transition &ta = a.transitions[i], &tb = b.transitions[i];
    if (ta.source != tb.source || ta.target != tb.target || ta.fx != tb.fx || ta.fy != tb.fy)
      return false;
  }
  for (size_t i = 0; i < a.components.size(); ++i) {
    const DivisorComponent &ca = a.components[i], &cb = b.components[i];
    if (ca.id != cb.id || ca.multiplicity != cb.multiplicity || ca.t_count != cb.t_count ||
        ca.local_equations != cb.local_equations || ca.nerve != cb.nerve ||
        ca.principal != cb.principal)
      return false;
  }
  if (a.intersection != b.intersection) return false;
  for (const auto& [comp, ea] : a.generators.theta) {
    auto it = b.generators.theta.find(comp);
    if (it == b.generators.theta.end() || it->second.size() != ea.size()) return false;
    for (size_t i = 0; i < ea.size(); ++i)
      if (ea[i].chart != it->second[i].chart || !vf_equivalent(ea[i].field, it->second[i].field))
        return false;
  }
  for (const auto& [comp, ea] : a.generators.eta) {
    auto it = b.generators.eta.find(comp);
    if (it == b.generators.eta.end() || it->second.size() != ea.size()) return false;
    for (size_t i = 0; i < ea.size(); ++i)
      if (ea[i].overlap != it->second[i].overlap ||
          !vf_equivalent(ea[i].field, it->second[i].field))
        return false;
  }
  return true;
}

// ---- twist instantiation ----

namespace {

VectorFieldExpr instantiate_vf(const VectorFieldExpr& vf, int n) {
  VectorFieldExpr out;
  for (const auto& [e, v] : vf.parts) {
    RationalFunction r = e.instantiate(n);
    if (r.is_zero()) continue;
    // Literal tree of the concrete value; the canonical rendering stays in
    // the expression grammar.
    out.parts.push_back({parse_expression(r.render()), v});
  }
  return out;
}

}  // namespace

Atlas instantiate_twist(const Atlas& a, int n) {
  if (n < 1) throw InvariantViolation("twist must be at least 1");
  Atlas out = a;
  for (auto& [comp, entries] : out.generators.theta)
    for (auto& e : entries) e.field = instantiate_vf(e.field, n);
  for (auto& [comp, entries] : out.generators.eta)
    for (auto& e : entries) e.field = instantiate_vf(e.field, n);
  return out;
}

// ---- reports ----

std::string Report::render() const {
  std::ostringstream out;
  out << title << ": " << (ok() ? "pass" : "FAIL") << " (" << checks_run << " checks";
  if (!ok()) out << ", " << failures.size() << " failures";
  out << ")\n";
  for (const auto& f : failures) out << "  FAIL " << f.where << ": " << f.what << "\n";
  return out.str();
}

namespace {

bool is_identity(const Atlas& a, const Transition& t) {
  const Chart& src = a.chart(t.source);
  return t.fx == RationalFunction::variable(src.x) && t.fy == RationalFunction::variable(src.y);
}

}  // namespace

Report verify_transitions(const Atlas& a) {
  Report rep;
  rep.title = "verify-transitions " + a.name;

  // Round trips for every supplied two-sided pair.
  for (const auto& t : a.transitions) {
    const Transition* back = a.find_transition(t.target, t.source);
    if (back == nullptr) continue;
    ++rep.checks_run;
    try {
      if (!is_identity(a, compose(a, t, *back)))
        rep.failures.push_back(
            {t.source + "->" + t.target + "->" + t.source, "round trip is not the identity"});
    } catch (const EngineError& e) {
      rep.failures.push_back({t.source + "->" + t.target + "->" + t.source, e.what()});
    }
  }

  // Agreement with the global coordinate formulas where present.
  for (const auto& t : a.transitions) {
    const Chart& src = a.chart(t.source);
    const Chart& dst = a.chart(t.target);
    if (!src.globals || !dst.globals) continue;
    std::map<Variable, RationalFunction> bind{{src.x, (*src.globals)[0]},
                                              {src.y, (*src.globals)[1]}};
    struct Case {
      const RationalFunction& formula;
      const RationalFunction& global;
      Variable coord;
    } cases[2] = {{t.fx, (*dst.globals)[0], dst.x}, {t.fy, (*dst.globals)[1], dst.y}};
    for (const auto& c : cases) {
      ++rep.checks_run;
      try {
        if (c.formula.substitute(bind) != c.global)
          rep.failures.push_back({t.source + "->" + t.target,
                                  "formula for " + c.coord.name() +
                                      " disagrees with the global coordinates"});
      } catch (const EngineError& e) {
        rep.failures.push_back({t.source + "->" + t.target, e.what()});
      }
    }
  }

  // Triple-overlap cocycle condition on every three-chart nerve: the two
  // derived legs between the non-hub charts must compose to the identity.
  for (const auto& comp : a.components) {
    std::set<std::string> chart_set;
    for (const auto& [p, q] : comp.nerve) {
      chart_set.insert(p);
      chart_set.insert(q);
    }
    if (chart_set.size() != 3 || comp.nerve.size() < 2) continue;
    const auto& [a1, b1] = comp.nerve[0];
    const auto& [a2, b2] = comp.nerve[1];
    std::string hub;
    for (const std::string& h : {a1, b1})
      if (h == a2 || h == b2) hub = h;
    if (hub.empty()) continue;
    std::string left = (a1 == hub) ? b1 : a1;
    std::string right = (a2 == hub) ? b2 : a2;
    std::string label = comp.id + " triple (" + left + "," + hub + "," + right + ")";
    ++rep.checks_run;
    try {
      Transition lr = transition_route(a, left, right);
      Transition rl = transition_route(a, right, left);
      if (!is_identity(a, compose(a, lr, rl)))
        rep.failures.push_back({label, "cocycle composition does not close"});
    } catch (const EngineError& e) {
      rep.failures.push_back({label, e.what()});
    }
  }

  // The principal pair must be a z / 1-over-z pair on the component.
  for (const auto& comp : a.components) {
    ++rep.checks_run;
    const auto& [j, k] = comp.principal;
    std::string label = comp.id + " principal (" + j + "," + k + ")";
    try {
      Transition t = transition_route(a, j, k);
      Variable cj = comp.cutting_coordinate(j);
      Variable zj = a.chart(j).other(cj);
      Variable zk = a.running_coordinate(comp, k);
      const RationalFunction& formula = (zk == a.chart(k).x) ? t.fx : t.fy;
      auto restricted = formula.try_at_zero(cj);
      if (!restricted || *restricted != RationalFunction::variable(zj).pow(-1))
        rep.failures.push_back({label, "running coordinates are not reciprocal"});
    } catch (const EngineError& e) {
      rep.failures.push_back({label, e.what()});
    }
  }
  return rep;
}

Report okamoto_painleve_check(const Atlas& a) {
  Report rep;
  rep.title = "okamoto-painleve " + a.name;
  size_t r = a.components.size();
  const auto& m = a.intersection;

  for (size_t i = 0; i < r; ++i) {
    ++rep.checks_run;
    if (m[i][i] != -2) rep.failures.push_back({a.components[i].id, "diagonal entry is not -2"});
    for (size_t j = i + 1; j < r; ++j) {
      ++rep.checks_run;
      if (m[i][j] != m[j][i])
        rep.failures.push_back(
            {a.components[i].id + "," + a.components[j].id, "intersection matrix is not symmetric"});
      if (m[i][j] != 0 && m[i][j] != 1)
        rep.failures.push_back(
            {a.components[i].id + "," + a.components[j].id, "off-diagonal entry is not 0 or 1"});
    }
  }

  // Y . Y_i = sum_j m_j (Y_j . Y_i) = 0: the anti-canonical condition.
  for (size_t i = 0; i < r; ++i) {
    ++rep.checks_run;
    long sum = 0;
    for (size_t j = 0; j < r; ++j) sum += a.components[j].multiplicity * m[i][j];
    if (sum != 0)
      rep.failures.push_back(
          {a.components[i].id, "Y . Y_i = " + std::to_string(sum) + ", expected 0"});
  }

  // t_i bookkeeping and the degree balance deg Theta_{Y_i}(-t_i) + deg N_D|_{Y_i}
  // = (2 - t_i) + (t_i - 2) = 0, with D . Y_i read off the reduced row sum.
  for (size_t i = 0; i < r; ++i) {
    ++rep.checks_run;
    long ti = 0;
    for (size_t j = 0; j < r; ++j)
      if (j != i) ti += m[i][j];
    if (ti != a.components[i].t_count)
      rep.failures.push_back({a.components[i].id,
                              "t = " + std::to_string(a.components[i].t_count) +
                                  " but the matrix row counts " + std::to_string(ti) +
                                  " intersections"});
    long row_sum = ti + m[i][i];  // = D . Y_i
    if ((2 - ti) + row_sum != 0 && m[i][i] == -2)
      rep.failures.push_back({a.components[i].id, "degree balance is broken"});
  }

  // Adjacency must match the shared-chart pattern of the local equations.
  for (size_t i = 0; i < r; ++i)
    for (size_t j = i + 1; j < r; ++j) {
      ++rep.checks_run;
      long shared = 0;
      for (const auto& [ci, vi] : a.components[i].local_equations)
        for (const auto& [cj, vj] : a.components[j].local_equations)
          if (ci == cj) ++shared;
      if (shared != m[i][j])
        rep.failures.push_back({a.components[i].id + "," + a.components[j].id,
                                "local equations share " + std::to_string(shared) +
                                    " charts but the matrix says " + std::to_string(m[i][j])});
    }
  return rep;
}

}  // namespace okapain::atlas
