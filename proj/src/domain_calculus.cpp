#include "zenolab/domain_calculus.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace zenolab {

namespace {

std::string exp_str(const Rational& r) {
  if (r.denominator() == 1 && r.numerator() >= 0) return to_string(r);
  return "(" + to_string(r) + ")";
}

std::string space_str(const DomainDescriptor& d) {
  if (d.is_whole_space()) return "the whole space";
  return "D(k^" + exp_str(d.weight) + ")";
}

std::string op_str(const ComposedOp& c) {
  return "diag(k^" + exp_str(c.symbol_exponent) + ") on " + space_str(c.domain);
}

Hypothesis automatic(std::string name) {
  return {std::move(name), true, "holds (model-automatic)"};
}

Hypothesis containment(std::string name, const std::string& big_name,
                       const DomainDescriptor& big, const std::string& small_name,
                       const DomainDescriptor& small) {
  const bool ok = big.contains(small);
  std::ostringstream os;
  os << big_name << " = " << space_str(big) << ", " << small_name << " = "
     << space_str(small) << ": " << (ok ? "contains" : "does not contain");
  return {std::move(name), ok, os.str()};
}

Hypothesis equality(std::string name, const std::string& lhs_name,
                    const DomainDescriptor& l, const std::string& rhs_name,
                    const DomainDescriptor& r) {
  const bool ok = l == r;
  std::ostringstream os;
  os << lhs_name << " = " << space_str(l) << ", " << rhs_name << " = " << space_str(r)
     << ": " << (ok ? "equal" : "not equal");
  return {std::move(name), ok, os.str()};
}

void finish(HypothesisReport& rep) {
  rep.hypotheses_hold = true;
  for (const Hypothesis& h : rep.hypotheses) rep.hypotheses_hold &= h.holds;
  if (rep.lhs.symbol_exponent != rep.rhs.symbol_exponent)
    throw std::logic_error("check_rule: symbol mismatch between lhs and rhs");
  if (rep.lhs_desc.empty()) rep.lhs_desc = op_str(rep.lhs);
  if (rep.rhs_desc.empty()) rep.rhs_desc = op_str(rep.rhs);
  const Rational ql = rep.lhs.domain.weight, qr = rep.rhs.domain.weight;
  if (ql == qr) {
    rep.verdict = Verdict::Equal;
  } else if (ql < qr) {
    rep.verdict = Verdict::LhsProperlyExtendsRhs;
    rep.witness = witness_sequence(ql, qr);
  } else {
    rep.verdict = Verdict::RhsProperlyExtendsLhs;
    rep.witness = witness_sequence(qr, ql);
  }
}

// the uniform scheme for product rules: lhs = (product)*, rhs = the reversed
// composition of the (maximal) factor adjoints
void product_sides(HypothesisReport& rep, const std::vector<Rational>& factors) {
  std::vector<PowerScaleOp> fwd, rev;
  for (const Rational& a : factors) fwd.push_back({a});
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) rev.push_back({*it});
  rep.lhs = adjoint_of(compose(fwd));
  rep.rhs = compose(rev);
}

HypothesisReport check_lemma_3_1(const Rational& a, const Rational& b) {
  HypothesisReport rep;
  rep.rule_id = "lemma-3-1";
  rep.exponents = {{"a", a}, {"b", b}};
  const DomainDescriptor dom_a{pos_part(a)};
  const DomainDescriptor ran_b{pos_part(-b)};
  const DomainDescriptor dom_bstar{pos_part(b)};
  const DomainDescriptor ran_astar{pos_part(-a)};
  rep.hypotheses.push_back(automatic("D(AB) dense"));
  rep.hypotheses.push_back(containment("R(B) contains D(A)", "R(B)", ran_b, "D(A)", dom_a));
  rep.hypotheses.push_back(
      containment("D(B*) contains R(A*)", "D(B*)", dom_bstar, "R(A*)", ran_astar));
  rep.hypotheses.push_back(automatic("B is 1-1"));
  product_sides(rep, {a, b});
  rep.lhs_desc = "(AB)* = " + op_str(rep.lhs);
  rep.rhs_desc = "B*A* = " + op_str(rep.rhs);
  finish(rep);
  return rep;
}

HypothesisReport check_theorem_3_1(const Rational& a, const Rational& h) {
  HypothesisReport rep;
  rep.rule_id = "theorem-3-1";
  rep.exponents = {{"a", a}, {"h", h}};
  const bool bounded = a <= Rational(0);
  rep.hypotheses.push_back(
      {"A = A* bounded", bounded,
       "exponent a = " + to_string(a) + (bounded ? " <= 0: bounded" : " > 0: unbounded")});
  rep.hypotheses.push_back(containment("R(A) contains D(H)", "R(A)",
                                       {pos_part(-a)}, "D(H)", {pos_part(h)}));
  rep.hypotheses.push_back(automatic("D(HA) dense"));
  product_sides(rep, {a, h, a});
  rep.lhs_desc = "(AHA)* = " + op_str(rep.lhs) +
                 (rep.lhs.is_maximal() ? " [maximal, selfadjoint]" : "");
  rep.rhs_desc = "A*H*A* = " + op_str(rep.rhs);
  finish(rep);
  return rep;
}

HypothesisReport check_theorem_4_1(const Rational& a, const Rational& b, const Rational& c) {
  HypothesisReport rep;
  rep.rule_id = "theorem-4-1";
  rep.exponents = {{"a", a}, {"b", b}, {"c", c}};
  const ComposedOp bc = compose({{b}, {c}});
  rep.hypotheses.push_back(automatic("D(BC) dense"));
  rep.hypotheses.push_back(automatic("D(ABC) dense"));
  rep.hypotheses.push_back(
      containment("R(BC) contains D(A)", "R(BC)", range_of(bc), "D(A)", {pos_part(a)}));
  rep.hypotheses.push_back(
      equality("R(C) = D(B)", "R(C)", {pos_part(-c)}, "D(B)", {pos_part(b)}));
  rep.hypotheses.push_back(containment("D((BC)*) contains R(A*)", "D((BC)*)",
                                       {pos_part(b + c)}, "R(A*)", {pos_part(-a)}));
  rep.hypotheses.push_back(
      containment("D(C*) contains R(B*)", "D(C*)", {pos_part(c)}, "R(B*)", {pos_part(-b)}));
  rep.hypotheses.push_back(automatic("C is 1-1"));
  rep.hypotheses.push_back(automatic("BC is 1-1"));
  product_sides(rep, {a, b, c});
  rep.lhs_desc = "(ABC)* = " + op_str(rep.lhs);
  rep.rhs_desc = "C*B*A* = " + op_str(rep.rhs);
  finish(rep);
  return rep;
}

HypothesisReport check_corollary_4_1(const Rational& a, const Rational& h) {
  HypothesisReport rep;
  rep.rule_id = "corollary-4-1";
  rep.exponents = {{"a", a}, {"h", h}};
  const ComposedOp ha = compose({{h}, {a}});
  rep.hypotheses.push_back(automatic("D(HA) dense"));
  rep.hypotheses.push_back(automatic("D(AHA) dense"));
  rep.hypotheses.push_back(
      containment("R(HA) contains D(A)", "R(HA)", range_of(ha), "D(A)", {pos_part(a)}));
  rep.hypotheses.push_back(
      containment("R(A) contains D(H)", "R(A)", {pos_part(-a)}, "D(H)", {pos_part(h)}));
  rep.hypotheses.push_back(containment("D((HA)*) contains R(A)", "D((HA)*)",
                                       {pos_part(h + a)}, "R(A)", {pos_part(-a)}));
  rep.hypotheses.push_back(
      containment("D(A) contains R(H)", "D(A)", {pos_part(a)}, "R(H)", {pos_part(-h)}));
  product_sides(rep, {a, h, a});
  rep.lhs_desc = "(AHA)* = " + op_str(rep.lhs);
  rep.rhs_desc = "AHA = " + op_str(rep.rhs);
  finish(rep);
  return rep;
}

// necessity check: R(H) = D(A) forces the exponent a = (-h)^+, bounded A iff
// the forced exponent is zero
HypothesisReport check_corollary_4_2(const Rational& h) {
  HypothesisReport rep;
  rep.rule_id = "corollary-4-2";
  const Rational forced = pos_part(-h);
  rep.exponents = {{"h", h}, {"a", forced}};
  const DomainDescriptor ran_h{pos_part(-h)};
  {
    std::ostringstream os;
    os << "R(H) = " << space_str(ran_h) << " forces D(A) = " << space_str(ran_h)
       << ", i.e. exponent a = " << to_string(forced);
    rep.hypotheses.push_back({"R(H) = D(A) necessity", true, os.str()});
  }
  if (forced == Rational(0)) {
    rep.hypotheses.push_back({"boundedness dichotomy", true,
                              "R(H) is the whole space, so A is everywhere-defined and "
                              "hence bounded (a = 0)"});
  } else {
    rep.hypotheses.push_back({"boundedness dichotomy", true,
                              "R(H) = " + space_str(ran_h) + " is properly dense, so A = "
                              "diag(k^" + exp_str(forced) + ") is unbounded"});
  }
  rep.lhs = compose({PowerScaleOp{forced}});
  rep.rhs = ComposedOp{forced, ran_h};
  rep.lhs_desc = "D(A) = " + space_str(rep.lhs.domain) + " (forced)";
  rep.rhs_desc = "R(H) = " + space_str(ran_h);
  finish(rep);
  return rep;
}

}  // namespace

DomainDescriptor domain_of(const PowerScaleOp& op) { return {pos_part(op.exponent)}; }

DomainDescriptor range_of(const PowerScaleOp& op) { return {pos_part(-op.exponent)}; }

DomainDescriptor range_of(const ComposedOp& op) {
  return {op.domain.weight - op.symbol_exponent};
}

ComposedOp compose(const std::vector<PowerScaleOp>& ops) {
  if (ops.empty()) throw std::invalid_argument("compose: empty factor list");
  Rational suffix(0), weight(0);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    suffix += it->exponent;
    const Rational p = pos_part(suffix);
    if (p > weight) weight = p;
  }
  return {suffix, {weight}};
}

ComposedOp adjoint_of(const ComposedOp& c) {
  return {c.symbol_exponent, {pos_part(c.symbol_exponent)}};
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::LhsProperlyExtendsRhs: return "lhs-properly-extends-rhs";
    case Verdict::RhsProperlyExtendsLhs: return "rhs-properly-extends-lhs";
  }
  return "?";
}

WitnessSequence witness_sequence(const Rational& s_in, const Rational& s_out) {
  if (s_in < Rational(0))
    throw std::invalid_argument("witness_sequence: member weight must be >= 0");
  if (!(s_out > s_in))
    throw std::invalid_argument(
        "witness_sequence: no witness exists, D(k^s_out) contains D(k^s_in)");
  WitnessSequence w;
  w.member_weight = s_in;
  w.excluded_weight = s_out;
  w.decay = s_in + Rational(1, 2) + (s_out - s_in) / 2;
  w.convergent_exponent = 2 * (s_in - w.decay);   // = -1 - (s_out - s_in)
  w.divergent_exponent = 2 * (s_out - w.decay);   // = (s_out - s_in) - 1
  return w;
}

double p_series_partial_sum(const Rational& exponent, long long terms) {
  if (terms < 0) throw std::invalid_argument("p_series_partial_sum: negative count");
  const double e = to_double(exponent);
  double sum = 0.0;
  for (long long k = 1; k <= terms; ++k) sum += std::pow(double(k), e);
  return sum;
}

const std::vector<std::string>& known_rules() {
  static const std::vector<std::string> rules = {
      "lemma-3-1", "theorem-3-1", "theorem-4-1", "corollary-4-1", "corollary-4-2"};
  return rules;
}

const std::vector<std::string>& rule_roles(const std::string& rule_id) {
  static const std::vector<std::string> ab = {"a", "b"};
  static const std::vector<std::string> ah = {"a", "h"};
  static const std::vector<std::string> abc = {"a", "b", "c"};
  static const std::vector<std::string> h_only = {"h"};
  if (rule_id == "lemma-3-1") return ab;
  if (rule_id == "theorem-3-1" || rule_id == "corollary-4-1") return ah;
  if (rule_id == "theorem-4-1") return abc;
  if (rule_id == "corollary-4-2") return h_only;
  std::string msg = "unknown rule \"" + rule_id + "\"; known rules:";
  for (const auto& r : known_rules()) msg += " " + r;
  throw std::invalid_argument(msg);
}

HypothesisReport check_rule(const std::string& rule_id,
                            const std::map<std::string, Rational>& exponents) {
  const std::vector<std::string>& roles = rule_roles(rule_id);
  for (const std::string& r : roles)
    if (!exponents.count(r)) {
      std::string msg = "check_rule: " + rule_id + " needs roles {";
      for (std::size_t i = 0; i < roles.size(); ++i)
        msg += (i ? ", " : "") + roles[i];
      msg += "}; missing \"" + r + "\"";
      throw std::invalid_argument(msg);
    }
  for (const auto& [k, v] : exponents) {
    (void)v;
    bool found = false;
    for (const std::string& r : roles) found |= (r == k);
    if (!found)
      throw std::invalid_argument("check_rule: " + rule_id + " has no role \"" + k + "\"");
  }
  if (rule_id == "lemma-3-1")
    return check_lemma_3_1(exponents.at("a"), exponents.at("b"));
  if (rule_id == "theorem-3-1")
    return check_theorem_3_1(exponents.at("a"), exponents.at("h"));
  if (rule_id == "theorem-4-1")
    return check_theorem_4_1(exponents.at("a"), exponents.at("b"), exponents.at("c"));
  if (rule_id == "corollary-4-1")
    return check_corollary_4_1(exponents.at("a"), exponents.at("h"));
  return check_corollary_4_2(exponents.at("h"));
}

const std::vector<Rational>& default_sweep_grid() {
  static const std::vector<Rational> grid = {
      Rational(-3), Rational(-2), Rational(-1), Rational(-1, 2), Rational(0),
      Rational(1, 2), Rational(1), Rational(2), Rational(3)};
  return grid;
}

std::vector<HypothesisReport> sweep_rule(const std::string& rule_id,
                                         const std::vector<Rational>& grid) {
  if (grid.empty()) throw std::invalid_argument("sweep_rule: empty grid");
  const std::vector<std::string>& roles = rule_roles(rule_id);
  const std::size_t dims = roles.size();
  std::vector<std::size_t> idx(dims, 0);
  std::vector<HypothesisReport> out;
  for (;;) {
    std::map<std::string, Rational> point;
    for (std::size_t d = 0; d < dims; ++d) point[roles[d]] = grid[idx[d]];
    out.push_back(check_rule(rule_id, point));
    std::size_t d = dims;
    while (d > 0) {
      --d;
      if (++idx[d] < grid.size()) break;
      idx[d] = 0;
      if (d == 0) return out;
    }
  }
}

}  // namespace zenolab
