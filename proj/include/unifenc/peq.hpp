#pragma once

#include "unifenc/formula.hpp"

namespace unifenc {

// Formal signed polynomial expression over terms: a sum of monomials
// c * t1 * ... * tk with integer c. Used to build ring equations as atoms in
// languages without subtraction: negative monomials move across "=".
struct PExpr {
  struct Mono {
    long long coef = 1;
    std::vector<Term> factors;  // empty: the constant monomial
  };
  std::vector<Mono> ms;

  static PExpr of(Term t) { return PExpr{{Mono{1, {std::move(t)}}}}; }
  static PExpr var(const std::string& v) { return of(Term::var(v)); }
  static PExpr constant(long long c) {
    if (c == 0) return PExpr{};
    return PExpr{{Mono{c, {}}}};
  }

  PExpr operator+(const PExpr& o) const;
  PExpr operator-(const PExpr& o) const;
  PExpr operator-() const;
  PExpr operator*(const PExpr& o) const;
};

// lhs = rhs with negative monomials shifted to the other side. Both sides of
// the emitted atom are sums of products of the given terms and 0/1.
Formula peq_atom(const PExpr& lhs, const PExpr& rhs);

// The sum-of-positive-monomials term for an expression with no negative
// monomials (throws otherwise). Empty sums print as 0.
Term pexpr_term(const PExpr& e);

}  // namespace unifenc
