#include "unifenc/peq.hpp"

namespace unifenc {

PExpr PExpr::operator+(const PExpr& o) const {
  PExpr r = *this;
  r.ms.insert(r.ms.end(), o.ms.begin(), o.ms.end());
  return r;
}

PExpr PExpr::operator-() const {
  PExpr r = *this;
  for (auto& m : r.ms) m.coef = -m.coef;
  return r;
}

PExpr PExpr::operator-(const PExpr& o) const { return *this + (-o); }

PExpr PExpr::operator*(const PExpr& o) const {
  PExpr r;
  for (auto& a : ms)
    for (auto& b : o.ms) {
      PExpr::Mono m;
      m.coef = a.coef * b.coef;
      m.factors = a.factors;
      m.factors.insert(m.factors.end(), b.factors.begin(), b.factors.end());
      r.ms.push_back(std::move(m));
    }
  return r;
}

namespace {

Term mono_product(const PExpr::Mono& m) {
  if (m.factors.empty()) {
    // |coef| copies of 1 are emitted by the caller; here coef==+-1 constant
    return Term::cst("1");
  }
  Term t = m.factors[0];
  for (std::size_t i = 1; i < m.factors.size(); ++i) t = Term::app("*", {std::move(t), m.factors[i]});
  return t;
}

Term sum_or_zero(std::vector<Term> ts) {
  if (ts.empty()) return Term::cst("0");
  Term t = std::move(ts[0]);
  for (std::size_t i = 1; i < ts.size(); ++i) t = Term::app("+", {std::move(t), std::move(ts[i])});
  return t;
}

void emit(const PExpr& e, std::vector<Term>& pos, std::vector<Term>& neg) {
  for (auto& m : e.ms) {
    if (m.coef == 0) continue;
    auto& side = m.coef > 0 ? pos : neg;
    long long k = m.coef > 0 ? m.coef : -m.coef;
    for (long long i = 0; i < k; ++i) side.push_back(mono_product(m));
  }
}

}  // namespace

Formula peq_atom(const PExpr& lhs, const PExpr& rhs) {
  std::vector<Term> left, right;
  emit(lhs, left, right);   // negatives of lhs go right
  emit(rhs, right, left);   // negatives of rhs come left
  return Formula::atom("=", {sum_or_zero(std::move(left)), sum_or_zero(std::move(right))});
}

Term pexpr_term(const PExpr& e) {
  std::vector<Term> pos, neg;
  emit(e, pos, neg);
  if (!neg.empty()) throw std::domain_error("pexpr_term: expression has negative monomials");
  return sum_or_zero(std::move(pos));
}

}  // namespace unifenc
