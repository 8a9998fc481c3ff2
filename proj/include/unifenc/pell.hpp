#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "unifenc/poly.hpp"

namespace unifenc {

using bigint = boost::multiprecision::cpp_int;

// Element of Z x mu_2 with the twisted law (m,v) + (n,w) = (wm+vn, vw).
struct ZxMu2 {
  bigint n;
  int eps = 1;  // +1 or -1

  ZxMu2() = default;
  ZxMu2(bigint n_, int eps_) : n(std::move(n_)), eps(eps_) {
    if (eps != 1 && eps != -1) throw std::domain_error("ZxMu2: sign must be +-1");
  }
  static ZxMu2 zero() { return {0, 1}; }
  static ZxMu2 one() { return {1, 1}; }

  ZxMu2 oplus(const ZxMu2& o) const { return {bigint(o.eps * n + eps * o.n), eps * o.eps}; }
  ZxMu2 inverse() const { return {bigint(-eps * n), eps}; }
  bool operator==(const ZxMu2& o) const { return n == o.n && eps == o.eps; }
  bool operator!=(const ZxMu2& o) const { return !(*this == o); }
  std::string to_string() const;
};

// Solution (x, y) of X^2 - (a^2-1) Y^2 = 1 over F_p[z] with non-constant
// parameter a. The invariant is checked on every construction.
struct PellPoint {
  PolyFp x, y, a;

  PellPoint(PolyFp x_, PolyFp y_, PolyFp a_);
  bool operator==(const PellPoint& o) const { return x == o.x && y == o.y && a == o.a; }
};

// (x_n(a), y_n(a)): x_0=1, y_0=0, x_1=a, y_1=1, and
// x_{n+1} = a x_n + (a^2-1) y_n, y_{n+1} = x_n + a y_n.
// Negative indices via x_{-n} = x_n, y_{-n} = -y_n.
PellPoint pell_xy(const PolyFp& a, const bigint& n);

// Group law on the solution set: (x,y)+(x',y') = (xx' + (a^2-1) yy', xy' + x'y).
// The plus sign is forced: it is the one under which doubling (a,1) lands back
// on the solution set, and it matches the index recurrence (see tests).
PellPoint pell_add(const PellPoint& P, const PellPoint& Q);

// Isomorphism (Z x mu_2, +) -> solutions: (n, e) |-> (e x_n, y_n).
PellPoint xi_iso(const PolyFp& a, const ZxMu2& g);

bool frobenius_related(const PolyFp& x, const PolyFp& y, int sMax);
bool frobenius_related(const RatFp& x, const RatFp& y, int sMax);
int default_frobenius_smax(std::int64_t p, int maxDegree);

// x_n = (f+n)^((p^s+1)/2) for n = 1..M, so that x_n^2 = (f+n)^(p^s+1).
// Requires odd characteristic and M >= 3.
std::vector<PolyFp> buchi_sequence(const PolyFp& f, int s, int M);

// (x_{n+2}^2 - 2 x_{n+1}^2 + x_n^2) for n = 1..len-2. Requires length >= 3.
std::vector<PolyFp> second_difference_of_squares(const std::vector<PolyFp>& seq);

}  // namespace unifenc
