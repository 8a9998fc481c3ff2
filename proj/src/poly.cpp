#include "unifenc/poly.hpp"

#include <algorithm>
#include <sstream>

namespace unifenc {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {
std::int64_t norm_mod(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  // Fermat; p is prime and a != 0 mod p.
  std::int64_t r = 1, b = norm_mod(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}
}  // namespace

void PolyFp::check_modulus() const {
  if (!is_prime(p_)) throw std::domain_error("PolyFp: modulus must be prime, got " + std::to_string(p_));
}

PolyFp::PolyFp(std::int64_t p, std::vector<std::int64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  check_modulus();
  for (auto& c : c_) c = norm_mod(c, p_);
  normalize();
}

void PolyFp::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyFp PolyFp::monomial(std::int64_t p, std::int64_t c, int k) {
  std::vector<std::int64_t> v(k + 1, 0);
  v[k] = c;
  return PolyFp(p, std::move(v));
}

int PolyFp::low_degree() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

PolyFp PolyFp::operator+(const PolyFp& o) const {
  if (p_ != o.p_) throw std::domain_error("PolyFp: mixed moduli");
  std::vector<std::int64_t> v(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = norm_mod(coeff(i) + o.coeff(i), p_);
  PolyFp r(p_);
  r.c_ = std::move(v);
  r.normalize();
  return r;
}

PolyFp PolyFp::operator-(const PolyFp& o) const { return *this + (-o); }

PolyFp PolyFp::operator-() const {
  PolyFp r(*this);
  for (auto& c : r.c_) c = norm_mod(-c, p_);
  return r;
}

PolyFp PolyFp::operator*(const PolyFp& o) const {
  if (p_ != o.p_) throw std::domain_error("PolyFp: mixed moduli");
  if (is_zero() || o.is_zero()) return PolyFp(p_);
  std::vector<std::int64_t> v(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      v[i + j] = (v[i + j] + c_[i] * o.c_[j]) % p_;
  }
  PolyFp r(p_);
  r.c_ = std::move(v);
  r.normalize();
  return r;
}

PolyFp PolyFp::scaled(std::int64_t c) const {
  PolyFp r(*this);
  c = norm_mod(c, p_);
  for (auto& x : r.c_) x = x * c % p_;
  r.normalize();
  return r;
}

std::pair<PolyFp, PolyFp> PolyFp::divrem(const PolyFp& d) const {
  if (d.is_zero()) throw std::domain_error("PolyFp: division by zero");
  PolyFp q(p_), r(*this);
  if (degree() < d.degree()) return {q, r};
  q.c_.assign(degree() - d.degree() + 1, 0);
  std::int64_t dinv = inv_mod(d.leading(), p_);
  while (!r.is_zero() && r.degree() >= d.degree()) {
    int k = r.degree() - d.degree();
    std::int64_t f = r.leading() * dinv % p_;
    q.c_[k] = f;
    for (int i = 0; i <= d.degree(); ++i)
      r.c_[k + i] = norm_mod(r.c_[k + i] - f * d.c_[i], p_);
    r.normalize();
  }
  q.normalize();
  return {q, r};
}

bool PolyFp::divides(const PolyFp& multiple) const {
  if (is_zero()) return multiple.is_zero();
  return multiple.divrem(*this).second.is_zero();
}

std::optional<PolyFp> PolyFp::exact_div(const PolyFp& d) const {
  if (d.is_zero()) return std::nullopt;
  auto [q, r] = divrem(d);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

PolyFp PolyFp::pow(std::uint64_t e) const {
  PolyFp r = one(p_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

PolyFp PolyFp::frobenius_pow(int s) const {
  if (s < 0) throw std::domain_error("PolyFp: negative Frobenius exponent");
  std::uint64_t q = 1;
  for (int i = 0; i < s; ++i) {
    if (q > (1ull << 40) / static_cast<std::uint64_t>(p_)) throw std::domain_error("PolyFp: Frobenius exponent too large");
    q *= static_cast<std::uint64_t>(p_);
  }
  if (is_zero()) return *this;
  if (static_cast<std::uint64_t>(degree()) * q > 4'000'000)
    throw std::domain_error("PolyFp: Frobenius power exceeds the degree budget");
  std::vector<std::int64_t> v(static_cast<std::size_t>(degree()) * q + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) v[i * q] = c_[i];  // c^(p^s) = c in F_p
  PolyFp r(p_);
  r.c_ = std::move(v);
  r.normalize();
  return r;
}

std::optional<PolyFp> PolyFp::sqrt() const {
  if (is_zero()) return PolyFp(p_);
  if (degree() % 2 != 0) return std::nullopt;
  // Leading coefficient must be a square in F_p.
  std::int64_t lead = leading(), rlead = -1;
  for (std::int64_t t = 0; t < p_; ++t)
    if (t * t % p_ == lead) { rlead = t; break; }
  if (rlead < 0) return std::nullopt;
  int m = degree() / 2;
  std::vector<std::int64_t> r(m + 1, 0);
  r[m] = rlead;
  std::int64_t inv2r = inv_mod(2 * rlead % p_, p_);
  // Solve top-down: the z^(m+i) coefficient of r^2 is 2 r_m r_i plus cross
  // terms in already-known coefficients.
  for (int i = m - 1; i >= 0; --i) {
    std::int64_t cross = 0;
    for (int j = i + 1; j <= m; ++j) {
      int k = m + i - j;
      if (k > i && k <= m) cross = (cross + r[j] * r[k]) % p_;
    }
    r[i] = norm_mod((coeff(m + i) - cross) * inv2r, p_);
  }
  PolyFp cand(p_);
  cand.c_ = std::move(r);
  cand.normalize();
  if (cand * cand == *this) return cand;
  return std::nullopt;
}

PolyFp PolyFp::monic() const {
  if (is_zero()) return *this;
  return scaled(inv_mod(leading(), p_));
}

PolyFp PolyFp::gcd(PolyFp a, PolyFp b) {
  while (!b.is_zero()) {
    PolyFp r = a.divrem(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyFp PolyFp::compose(const PolyFp& inner) const {
  PolyFp r(p_);
  for (int i = degree(); i >= 0; --i) r = r * inner + constant(p_, coeff(i));
  return r;
}

std::string PolyFp::to_string() const {
  std::ostringstream os;
  if (is_zero()) {
    os << "0";
  } else {
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0) os << c_[i];
      else {
        if (c_[i] != 1) os << c_[i] << "*";
        os << "z";
        if (i > 1) os << "^" << i;
      }
    }
  }
  os << " (mod " << p_ << ")";
  return os.str();
}

std::string PolyFp::json() const {
  std::ostringstream os;
  os << "{\"p\":" << p_ << ",\"coeffs\":[";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << "]}";
  return os.str();
}

bool PolyFp::lex_less(const PolyFp& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  return c_ < o.c_;
}

RatFp::RatFp(PolyFp num, PolyFp den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.modulus() != den_.modulus()) throw std::domain_error("RatFp: mixed moduli");
  if (den_.is_zero()) throw std::domain_error("RatFp: zero denominator");
  PolyFp g = PolyFp::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = *num_.exact_div(g);
    den_ = *den_.exact_div(g);
  }
  if (den_.coeff(0) == 0) throw std::domain_error("RatFp: fraction not regular at 0");
  PolyFp m = den_.monic();
  if (!(m == den_)) {
    std::int64_t lead = den_.leading();
    den_ = m;
    num_ = num_.scaled(inv_mod(lead, num_.modulus()));
  }
}

RatFp RatFp::operator+(const RatFp& o) const {
  return RatFp(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFp RatFp::operator-(const RatFp& o) const { return *this + (-o); }

RatFp RatFp::operator-() const {
  RatFp r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFp RatFp::operator*(const RatFp& o) const {
  return RatFp(num_ * o.num_, den_ * o.den_);
}

RatFp RatFp::operator/(const RatFp& o) const {
  if (o.is_zero()) throw std::domain_error("RatFp: division by zero");
  return RatFp(num_ * o.den_, den_ * o.num_);
}

std::optional<RatFp> RatFp::sqrt() const {
  auto n = num_.sqrt();
  auto d = den_.sqrt();
  if (!n || !d) return std::nullopt;
  return RatFp(*n, *d);
}

std::optional<int> RatFp::ord_at_zero() const {
  if (num_.is_zero()) return std::nullopt;
  return num_.low_degree();  // denominator has nonzero constant term
}

std::string RatFp::to_string() const {
  if (den_ == PolyFp::one(modulus())) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

}  // namespace unifenc
