#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace unifenc {

// Language descriptor. Equality "=" is always present as a binary relation.
struct Signature {
  std::string name;
  std::vector<std::string> constants;
  std::vector<std::pair<std::string, int>> functions;
  std::vector<std::pair<std::string, int>> relations;

  Signature() { relations.push_back({"=", 2}); }
  Signature(std::string n, std::vector<std::string> cs,
            std::vector<std::pair<std::string, int>> fs,
            std::vector<std::pair<std::string, int>> rs);

  bool has_constant(const std::string& s) const;
  std::optional<int> function_arity(const std::string& s) const;
  std::optional<int> relation_arity(const std::string& s) const;
  bool has_symbol(const std::string& s) const;

  Signature with_relation(const std::string& r, int arity) const;
  Signature without_symbol(const std::string& s) const;
};

// The languages used throughout. Ring languages carry binary "-"; the purely
// additive ones do not (subtraction is desugared with an existential there).
Signature sig_LA();          // {0,1,+,*}
Signature sig_LT();          // {0,1,+,*,T}
Signature sig_Lz();          // {0,1,+,*,-,z}
Signature sig_LzOrdNeq();    // {0,1,+,*,-,z,ord,!=}
Signature sig_LTstar();      // {0,1,+,|,R,T}
Signature sig_LstarPlus();   // {0,1,+,R}
Signature sig_Lstar();       // {0,1,+,pos,R}
Signature sig_L0();          // {1,z,*,R}
Signature sig_L1();          // {1,z,*,R,S}
Signature sig_CR();          // {0,+,R2}
Signature sig_ZeroOnePlus(); // {0,1,+}
const Signature& builtin_signature(const std::string& name);
std::vector<std::string> builtin_signature_names();

struct Term {
  enum class Kind { Var, Const, App };
  Kind kind = Kind::Var;
  std::string sym;
  std::vector<Term> args;

  static Term var(std::string name) { return {Kind::Var, std::move(name), {}}; }
  static Term cst(std::string sym) { return {Kind::Const, std::move(sym), {}}; }
  static Term app(std::string fn, std::vector<Term> as) { return {Kind::App, std::move(fn), std::move(as)}; }

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
};

struct Formula {
  enum class Kind { Atom, And, Or, Not, Implies, Exists, Forall, True, False };
  Kind kind = Kind::True;
  std::string sym;             // Atom: relation symbol; Exists/Forall: bound variable
  std::vector<Term> args;      // Atom arguments
  std::vector<Formula> kids;   // subformulas

  static Formula atom(std::string rel, std::vector<Term> ts) { return {Kind::Atom, std::move(rel), std::move(ts), {}}; }
  static Formula conj(std::vector<Formula> ks);
  static Formula disj(std::vector<Formula> ks);
  static Formula lnot(Formula f) { return {Kind::Not, "", {}, {std::move(f)}}; }
  static Formula implies(Formula a, Formula b) { return {Kind::Implies, "", {}, {std::move(a), std::move(b)}}; }
  static Formula exists(std::string v, Formula body) { return {Kind::Exists, std::move(v), {}, {std::move(body)}}; }
  static Formula forall(std::string v, Formula body) { return {Kind::Forall, std::move(v), {}, {std::move(body)}}; }
  static Formula truec() { return {Kind::True, "", {}, {}}; }
  static Formula falsec() { return {Kind::False, "", {}, {}}; }

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }
};

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

// S-expression grammar:
//   form := atom | "(and" form+ ")" | "(or" form+ ")" | "(not" form ")"
//         | "(exists (" var+ ")" form ")" | "(forall (" var+ ")" form ")"
//   atom := "(" relsym term+ ")"
//   term := var | constsym | integer-literal | "(" funsym term+ ")"
// Nonnegative integer literals desugar to 1+1+...+1; negative ones to
// (- 0 k) when the signature has "-". Multi-variable binders desugar to
// nested single-variable ones; n-ary "+"/"*" to left-nested binary.
Formula parse_formula(const std::string& text, const Signature& sig);
Term parse_term(const std::string& text, const Signature& sig);

// Canonical printer; parse_formula(print_formula(f)) == f structurally.
// Runs of the same quantifier print in collapsed multi-variable form.
std::string print_formula(const Formula& f);
std::string print_term(const Term& t);

bool is_positive_existential(const Formula& f);
bool is_quantifier_free(const Formula& f);
// Quantifier-free and Not applied to atoms only.
bool is_qf_literal_form(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> all_vars(const Formula& f);
std::set<std::string> term_vars(const Term& t);
std::set<std::string> used_symbols(const Formula& f);  // constants, functions, relations

// Throws std::domain_error naming the offending symbol or arity.
void check_well_formed(const Formula& f, const Signature& sig);

// Deterministic fresh-name source: base, then base#0, base#1, ... skipping
// names in the avoid set. One instance per transform keeps outputs stable.
class FreshGen {
 public:
  explicit FreshGen(std::set<std::string> avoid = {}) : used_(std::move(avoid)) {}
  void reserve(const std::string& name) { used_.insert(name); }
  void reserve_all(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }
  std::string fresh(const std::string& base);

 private:
  std::set<std::string> used_;
  std::map<std::string, int> counters_;
};

// Capture-avoiding substitution of terms for free variables.
Term substitute_term(const Term& t, const std::map<std::string, Term>& sub);
Formula substitute_free(const Formula& f, const std::map<std::string, Term>& sub, FreshGen& fresh);

// Rename every bound variable so that binders are pairwise distinct and
// disjoint from free variables. Deterministic.
Formula standardize_apart(const Formula& f, FreshGen& fresh);

// Prenex form for positive existential input: Q1 u1 ... Qn un . G with G
// quantifier-free, pulling binders left to right. Throws on non-pe input.
Formula prenex_pe(const Formula& f);

}  // namespace unifenc
