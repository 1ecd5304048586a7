#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zenolab/rational.hpp"

namespace zenolab {

// Exact model for the adjoint identities: every operator is a real diagonal
// power scale diag(k^a), k = 1, 2, 3, ... acting on square-summable sequences
// with its natural maximal domain. Domain and range questions reduce to
// rational exponent arithmetic, so hypotheses are decided exactly.

struct PowerScaleOp {
  Rational exponent;  // diag(k^a); bounded iff a <= 0, always injective
};

// the weighted space D(k^s) = { psi : sum k^{2s} |psi_k|^2 < inf }, s >= 0
struct DomainDescriptor {
  Rational weight{0};

  bool is_whole_space() const { return weight == Rational(0); }
  // chain: D(k^s) contains D(k^t) iff s <= t
  bool contains(const DomainDescriptor& other) const { return weight <= other.weight; }
  bool operator==(const DomainDescriptor&) const = default;
};

// diag(k^p) restricted to the composition domain D(k^q); q >= p^+ always
struct ComposedOp {
  Rational symbol_exponent{0};
  DomainDescriptor domain;

  bool is_maximal() const { return domain.weight == pos_part(symbol_exponent); }
  bool operator==(const ComposedOp&) const = default;
};

DomainDescriptor domain_of(const PowerScaleOp& op);  // weight a^+
DomainDescriptor range_of(const PowerScaleOp& op);   // weight (-a)^+
DomainDescriptor range_of(const ComposedOp& op);     // weight q - p

// ordered list, rightmost factor applied first; domain weight is the max of
// (a_m + ... + a_j)^+ over all suffixes
ComposedOp compose(const std::vector<PowerScaleOp>& ops);

// adjoint of a densely defined diagonal operator is the maximal operator with
// the same real symbol: p on D(k^{p^+})
ComposedOp adjoint_of(const ComposedOp& c);

enum class Verdict { Equal, LhsProperlyExtendsRhs, RhsProperlyExtendsLhs };
const char* to_string(Verdict v);

// psi_k = k^{-decay} lies in D(k^{member_weight}) but not D(k^{excluded_weight});
// the defining series are p-series with the recorded exact exponents
struct WitnessSequence {
  Rational decay;
  Rational member_weight;
  Rational excluded_weight;
  Rational convergent_exponent;  // sum k^{2 member - 2 decay}, < -1
  Rational divergent_exponent;   // sum k^{2 excluded - 2 decay}, > -1
};

// requires s_out > s_in >= 0 (otherwise no witness exists, chain containment)
WitnessSequence witness_sequence(const Rational& s_in, const Rational& s_out);

// sum_{k=1}^{terms} k^exponent
double p_series_partial_sum(const Rational& exponent, long long terms);

struct Hypothesis {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct HypothesisReport {
  std::string rule_id;
  std::map<std::string, Rational> exponents;  // includes derived roles
  std::vector<Hypothesis> hypotheses;
  bool hypotheses_hold = false;  // conjunction of the list
  ComposedOp lhs;
  ComposedOp rhs;
  std::string lhs_desc;
  std::string rhs_desc;
  Verdict verdict = Verdict::Equal;
  std::optional<WitnessSequence> witness;  // present iff verdict != Equal
};

const std::vector<std::string>& known_rules();
const std::vector<std::string>& rule_roles(const std::string& rule_id);

// evaluates the rule's hypotheses at the given exponents and compares
// lhs = adjoint_of(compose(factors)) against rhs = compose(adjoints in
// reverse); discrepancies are reported, never thrown
HypothesisReport check_rule(const std::string& rule_id,
                            const std::map<std::string, Rational>& exponents);

const std::vector<Rational>& default_sweep_grid();  // {-3,...,3} with halves

// cartesian sweep over all role tuples drawn from the grid, first role slowest
std::vector<HypothesisReport> sweep_rule(const std::string& rule_id,
                                         const std::vector<Rational>& grid);

}  // namespace zenolab
