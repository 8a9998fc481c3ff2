#include "unifenc/pell.hpp"

#include <sstream>

namespace unifenc {

namespace {
constexpr std::int64_t kMaxPellDegree = 200000;
}

std::string ZxMu2::to_string() const {
  std::ostringstream os;
  os << "(" << n << "," << (eps > 0 ? "+1" : "-1") << ")";
  return os.str();
}

PellPoint::PellPoint(PolyFp x_, PolyFp y_, PolyFp a_)
    : x(std::move(x_)), y(std::move(y_)), a(std::move(a_)) {
  if (a.is_constant()) throw std::domain_error("PellPoint: parameter must be non-constant");
  PolyFp d = a * a - PolyFp::one(a.modulus());
  if (x * x - d * (y * y) != PolyFp::one(a.modulus()))
    throw std::domain_error("PellPoint: not a solution of the Pell equation");
}

PellPoint pell_xy(const PolyFp& a, const bigint& n) {
  if (a.is_constant()) throw std::domain_error("pell_xy: parameter must be non-constant");
  if (a.modulus() == 2) throw std::domain_error("pell_xy: characteristic 2 not supported");
  bigint absn = n < 0 ? -n : n;
  if (absn * a.degree() > kMaxPellDegree)
    throw std::domain_error("pell_xy: index exceeds the degree budget");
  std::int64_t m = absn.convert_to<std::int64_t>();
  std::int64_t p = a.modulus();
  PolyFp x = PolyFp::one(p), y = PolyFp::zero(p);
  PolyFp d = a * a - PolyFp::one(p);
  for (std::int64_t i = 0; i < m; ++i) {
    PolyFp nx = a * x + d * y;
    PolyFp ny = x + a * y;
    x = std::move(nx);
    y = std::move(ny);
  }
  if (n < 0) y = -y;
  return PellPoint(x, y, a);
}

PellPoint pell_add(const PellPoint& P, const PellPoint& Q) {
  if (!(P.a == Q.a)) throw std::domain_error("pell_add: parameter mismatch");
  PolyFp d = P.a * P.a - PolyFp::one(P.a.modulus());
  return PellPoint(P.x * Q.x + d * (P.y * Q.y), P.x * Q.y + Q.x * P.y, P.a);
}

PellPoint xi_iso(const PolyFp& a, const ZxMu2& g) {
  PellPoint P = pell_xy(a, g.n);
  if (g.eps < 0) return PellPoint(-P.x, P.y, a);
  return P;
}

bool frobenius_related(const PolyFp& x, const PolyFp& y, int sMax) {
  if (sMax < 0) throw std::domain_error("frobenius_related: sMax must be >= 0");
  if (x == y) return true;  // s = 0; covers fixed points of Frobenius
  std::int64_t p = x.modulus();
  // Degree arithmetic prunes s: raising a non-constant multiplies its degree
  // by p^s, so the exponent is determined by the degree ratio when it exists.
  auto reaches = [&](const PolyFp& base, const PolyFp& target) {
    if (base.degree() == target.degree()) return false;  // only s=0 could work
    if (base.degree() < 1 || target.degree() < 1) return false;
    bigint q = 1;
    for (int s = 1; s <= sMax; ++s) {
      q *= p;
      bigint want = bigint(base.degree()) * q;
      if (want > target.degree()) return false;
      if (want == target.degree()) return base.frobenius_pow(s) == target;
    }
    return false;
  };
  return reaches(x, y) || reaches(y, x);
}

bool frobenius_related(const RatFp& x, const RatFp& y, int sMax) {
  if (sMax < 0) throw std::domain_error("frobenius_related: sMax must be >= 0");
  if (x == y) return true;
  auto raise = [](const RatFp& v, int s) { return RatFp(v.num().frobenius_pow(s), v.den().frobenius_pow(s)); };
  for (int s = 1; s <= sMax; ++s) {
    if (raise(x, s) == y) return true;
    if (raise(y, s) == x) return true;
  }
  return false;
}

int default_frobenius_smax(std::int64_t p, int maxDegree) {
  int s = 1;
  std::int64_t q = p;
  while (q < 1 + maxDegree) {
    q *= p;
    ++s;
  }
  return s + 1;
}

std::vector<PolyFp> buchi_sequence(const PolyFp& f, int s, int M) {
  std::int64_t p = f.modulus();
  if (p == 2) throw std::domain_error("buchi_sequence: characteristic must be odd");
  if (M < 3) throw std::domain_error("buchi_sequence: need at least three terms");
  if (s < 0) throw std::domain_error("buchi_sequence: s must be >= 0");
  std::uint64_t q = 1;
  for (int i = 0; i < s; ++i) q *= static_cast<std::uint64_t>(p);
  std::uint64_t e = (q + 1) / 2;
  std::vector<PolyFp> out;
  out.reserve(M);
  for (int n = 1; n <= M; ++n)
    out.push_back((f + PolyFp::constant(p, n)).pow(e));
  return out;
}

std::vector<PolyFp> second_difference_of_squares(const std::vector<PolyFp>& seq) {
  if (seq.size() < 3) throw std::domain_error("second_difference_of_squares: need at least three terms");
  std::vector<PolyFp> out;
  out.reserve(seq.size() - 2);
  for (std::size_t n = 0; n + 2 < seq.size(); ++n) {
    PolyFp a = seq[n] * seq[n], b = seq[n + 1] * seq[n + 1], c = seq[n + 2] * seq[n + 2];
    out.push_back(c - b - b + a);
  }
  return out;
}

}  // namespace unifenc
