#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace unifenc {

// Dense polynomial over the prime field F_p. Coefficients are stored low to
// high degree and kept normalized: the zero polynomial has an empty vector,
// anything else has a nonzero top coefficient. degree() of zero is -1.
class PolyFp {
 public:
  PolyFp() = default;
  explicit PolyFp(std::int64_t p) : p_(p) { check_modulus(); }
  PolyFp(std::int64_t p, std::vector<std::int64_t> coeffs);

  static PolyFp zero(std::int64_t p) { return PolyFp(p); }
  static PolyFp constant(std::int64_t p, std::int64_t c) { return PolyFp(p, {c}); }
  static PolyFp one(std::int64_t p) { return constant(p, 1); }
  static PolyFp var(std::int64_t p) { return PolyFp(p, {0, 1}); }  // z
  static PolyFp monomial(std::int64_t p, std::int64_t c, int k);

  std::int64_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  std::int64_t coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
  }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  std::int64_t leading() const { return c_.empty() ? 0 : c_.back(); }
  // Index of the lowest nonzero coefficient, i.e. the valuation at z = 0.
  // Returns -1 for the zero polynomial.
  int low_degree() const;

  PolyFp operator+(const PolyFp& o) const;
  PolyFp operator-(const PolyFp& o) const;
  PolyFp operator-() const;
  PolyFp operator*(const PolyFp& o) const;
  PolyFp scaled(std::int64_t c) const;
  bool operator==(const PolyFp& o) const { return p_ == o.p_ && c_ == o.c_; }
  bool operator!=(const PolyFp& o) const { return !(*this == o); }

  // Quotient and remainder; divisor must be nonzero.
  std::pair<PolyFp, PolyFp> divrem(const PolyFp& d) const;
  bool divides(const PolyFp& multiple) const;
  // Exact quotient, or nullopt when the division leaves a remainder.
  std::optional<PolyFp> exact_div(const PolyFp& d) const;

  PolyFp pow(std::uint64_t e) const;
  // x^(p^s) via the Frobenius: coefficients are fixed, exponents multiply.
  PolyFp frobenius_pow(int s) const;
  std::optional<PolyFp> sqrt() const;

  PolyFp monic() const;
  static PolyFp gcd(PolyFp a, PolyFp b);

  PolyFp compose(const PolyFp& inner) const;

  std::string to_string() const;   // "c0 + c1*z + ... (mod p)"
  std::string json() const;        // {"p":5,"coeffs":[0,1]}

  // Total order used for deterministic witness enumeration: by degree, then by
  // the coefficient vector read low to high.
  bool lex_less(const PolyFp& o) const;

 private:
  void check_modulus() const;
  void normalize();
  std::int64_t p_ = 0;
  std::vector<std::int64_t> c_;
};

// Reduced fraction of polynomials over F_p, regular at z = 0: the denominator
// is monic with nonzero constant term. Constructing a fraction whose reduced
// denominator vanishes at 0 throws std::domain_error.
class RatFp {
 public:
  RatFp() = default;
  RatFp(PolyFp num, PolyFp den);
  explicit RatFp(PolyFp num) : RatFp(num, PolyFp::one(num.modulus())) {}

  static RatFp zero(std::int64_t p) { return RatFp(PolyFp::zero(p)); }
  static RatFp one(std::int64_t p) { return RatFp(PolyFp::one(p)); }
  static RatFp var(std::int64_t p) { return RatFp(PolyFp::var(p)); }

  const PolyFp& num() const { return num_; }
  const PolyFp& den() const { return den_; }
  std::int64_t modulus() const { return num_.modulus(); }
  bool is_zero() const { return num_.is_zero(); }

  RatFp operator+(const RatFp& o) const;
  RatFp operator-(const RatFp& o) const;
  RatFp operator-() const;
  RatFp operator*(const RatFp& o) const;
  // Division may leave the ring of fractions regular at 0; in that case the
  // constructor throws and callers treat the quotient as undefined.
  RatFp operator/(const RatFp& o) const;
  bool operator==(const RatFp& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFp& o) const { return !(*this == o); }

  std::optional<RatFp> sqrt() const;

  // Order of vanishing at z = 0. Undefined (nullopt) for zero.
  std::optional<int> ord_at_zero() const;

  std::string to_string() const;

 private:
  PolyFp num_, den_;
};

bool is_prime(std::int64_t n);

}  // namespace unifenc
