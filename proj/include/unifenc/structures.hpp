#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "unifenc/formula.hpp"
#include "unifenc/pell.hpp"
#include "unifenc/poly.hpp"

namespace unifenc {

// The interpreted structures. The integer ones share the base set Z (N for
// NatP), QPell lives on Z x mu_2, the ring ones on F_p, F_p[z] and the
// subring of F_p(z) regular at 0. CSquares is (Z; 0,+,R2) with R2(x) read as
// "x is a square not divisible by r"; it reuses the p slot for r, which need
// not be prime.
enum class StructKind { NatP, ZStar, DStar, QPell, PrimeField, PolyRingT, PolyRingZ, RatField, CSquares };

struct StructureDescriptor {
  StructKind kind;
  std::int64_t p;
  Signature sig;

  static StructureDescriptor make(StructKind kind, std::int64_t p);
  static StructureDescriptor from_json(const std::string& text);
  std::string json() const;
  std::string kind_name() const;
  std::string to_string() const { return kind_name() + "(" + std::to_string(p) + ")"; }
};

StructKind struct_kind_from_name(const std::string& name);

struct Element {
  std::variant<bigint, PolyFp, RatFp, ZxMu2> v;

  Element() : v(bigint(0)) {}
  Element(bigint n) : v(std::move(n)) {}
  Element(long long n) : v(bigint(n)) {}
  Element(PolyFp p) : v(std::move(p)) {}
  Element(RatFp r) : v(std::move(r)) {}
  Element(ZxMu2 g) : v(std::move(g)) {}

  bool is_int() const { return std::holds_alternative<bigint>(v); }
  bool is_poly() const { return std::holds_alternative<PolyFp>(v); }
  bool is_rat() const { return std::holds_alternative<RatFp>(v); }
  bool is_pair() const { return std::holds_alternative<ZxMu2>(v); }
  const bigint& as_int() const;
  const PolyFp& as_poly() const;
  const RatFp& as_rat() const;
  const ZxMu2& as_pair() const;

  bool operator==(const Element& o) const { return v == o.v; }
  bool operator!=(const Element& o) const { return !(*this == o); }
  std::string to_string() const;
};

using Assignment = std::map<std::string, Element>;

// True when the element belongs to the structure's universe (sort and
// modulus match, naturals are nonnegative, prime field residues reduced).
bool element_in_universe(const StructureDescriptor& s, const Element& e);

Element eval_term(const StructureDescriptor& s, const Term& t, const Assignment& asg);

// Interpretation of a signature relation on a ground tuple.
bool eval_relation(const StructureDescriptor& s, const std::string& rel, const std::vector<Element>& args);

// Quantifier-free evaluation; Not is allowed on atoms only.
bool eval_qf(const StructureDescriptor& s, const Formula& f, const Assignment& asg);

// Directly computed semantic relations, independent of any formula. These are
// the ground truths the catalog formulas are checked against.
//   mul, square, pdiv, div, frob, Mp, CO, P, P0, powsq_gt, powsq_pm,
//   theta_bar_gt, theta_bar_pm, co_square, mulCP, zeta, geq0, nonzero, neq,
//   square_mod_p, eta_pell, ord_eq, T, pos, ord, R2
bool oracle_relation(const StructureDescriptor& s, const std::string& name, const std::vector<Element>& args);

// x |_p y: y = +- x p^s for some integer s (both directions of scaling).
bool pdivides(const bigint& x, const bigint& y, std::int64_t p);

struct WitnessSchedule {
  long long B = 200;  // small range bound
  int S = 64;         // exponent bound for signed p-powers
  int D = 2;          // polynomial degree bound

  static WitnessSchedule from_json(const std::string& text);
  std::string json() const;
};

struct EvalOutcome {
  enum class Status { Satisfied, NoWitnessWithinBound, QuantifierFreeValue };
  Status status = Status::NoWitnessWithinBound;
  bool qfValue = false;
  // The search budget ran out before the schedule was exhausted; a
  // NoWitnessWithinBound with this flag says even less than usual.
  bool truncated = false;
  Assignment witness;

  bool satisfied() const { return status == Status::Satisfied || (status == Status::QuantifierFreeValue && qfValue); }
};

// Bounded witness search for positive existential sentences. Sound: a
// Satisfied outcome carries a witness that re-checks under eval_qf.
// NoWitnessWithinBound is not a refutation. Deterministic for fixed inputs.
EvalOutcome eval_pe_bounded(const StructureDescriptor& s, const Formula& f, const WitnessSchedule& sched);
// Same, with the formula's free variables fixed in advance.
EvalOutcome eval_pe_bounded(const StructureDescriptor& s, const Formula& f, const Assignment& fixed,
                            const WitnessSchedule& sched);

}  // namespace unifenc
