#include "unifenc/structures.hpp"

#include <json.hpp>

namespace unifenc {

namespace {
const char* kKindNames[] = {"NatP", "ZStar", "DStar", "QPell", "PrimeField",
                            "PolyRingT", "PolyRingZ", "RatField", "CSquares"};
}

StructKind struct_kind_from_name(const std::string& name) {
  for (int i = 0; i < 9; ++i)
    if (name == kKindNames[i]) return static_cast<StructKind>(i);
  throw std::domain_error("unknown structure kind: " + name);
}

std::string StructureDescriptor::kind_name() const { return kKindNames[static_cast<int>(kind)]; }

StructureDescriptor StructureDescriptor::make(StructKind kind, std::int64_t p) {
  if (kind == StructKind::CSquares) {
    if (p < 2) throw std::domain_error("CSquares: modulus must be >= 2");
  } else if (!is_prime(p)) {
    throw std::domain_error("structure: p must be prime, got " + std::to_string(p));
  }
  Signature sig;
  switch (kind) {
    case StructKind::NatP: sig = sig_LstarPlus(); break;
    case StructKind::ZStar: sig = sig_Lstar(); break;
    case StructKind::DStar: sig = sig_LTstar(); break;
    case StructKind::QPell: sig = sig_LTstar(); break;
    case StructKind::PrimeField: sig = sig_ZeroOnePlus(); break;
    case StructKind::PolyRingT: sig = sig_LT(); break;
    case StructKind::PolyRingZ: sig = sig_Lz().with_relation("!=", 2); break;
    case StructKind::RatField: sig = sig_LzOrdNeq(); break;
    case StructKind::CSquares: sig = sig_CR(); break;
  }
  return {kind, p, std::move(sig)};
}

StructureDescriptor StructureDescriptor::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  return make(struct_kind_from_name(j.at("kind").get<std::string>()), j.at("p").get<std::int64_t>());
}

std::string StructureDescriptor::json() const {
  nlohmann::json j;
  j["kind"] = kind_name();
  j["p"] = p;
  return j.dump();
}

const bigint& Element::as_int() const {
  if (!is_int()) throw std::domain_error("Element: not an integer");
  return std::get<bigint>(v);
}
const PolyFp& Element::as_poly() const {
  if (!is_poly()) throw std::domain_error("Element: not a polynomial");
  return std::get<PolyFp>(v);
}
const RatFp& Element::as_rat() const {
  if (!is_rat()) throw std::domain_error("Element: not a fraction");
  return std::get<RatFp>(v);
}
const ZxMu2& Element::as_pair() const {
  if (!is_pair()) throw std::domain_error("Element: not a pair");
  return std::get<ZxMu2>(v);
}

std::string Element::to_string() const {
  if (is_int()) return as_int().str();
  if (is_poly()) return as_poly().to_string();
  if (is_rat()) return as_rat().to_string();
  return as_pair().to_string();
}

bool element_in_universe(const StructureDescriptor& s, const Element& e) {
  switch (s.kind) {
    case StructKind::NatP: return e.is_int() && e.as_int() >= 0;
    case StructKind::ZStar:
    case StructKind::DStar:
    case StructKind::CSquares: return e.is_int();
    case StructKind::PrimeField: return e.is_int() && e.as_int() >= 0 && e.as_int() < s.p;
    case StructKind::QPell: return e.is_pair();
    case StructKind::PolyRingT:
    case StructKind::PolyRingZ: return e.is_poly() && e.as_poly().modulus() == s.p;
    case StructKind::RatField: return e.is_rat() && e.as_rat().modulus() == s.p;
  }
  return false;
}

namespace {

bigint bigmod(const bigint& a, std::int64_t p) {
  bigint r = a % p;
  if (r < 0) r += p;
  return r;
}

bool is_p_power(bigint q, std::int64_t p) {
  if (q <= 0) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

}  // namespace

bool pdivides(const bigint& x, const bigint& y, std::int64_t p) {
  if (x == 0 || y == 0) return x == 0 && y == 0;
  bigint a = abs(x), b = abs(y);
  if (a == b) return true;
  if (b > a) return b % a == 0 && is_p_power(b / a, p);
  return a % b == 0 && is_p_power(a / b, p);
}

Element eval_term(const StructureDescriptor& s, const Term& t, const Assignment& asg) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = asg.find(t.sym);
      if (it == asg.end()) throw std::domain_error("unassigned variable '" + t.sym + "'");
      return it->second;
    }
    case Term::Kind::Const:
      switch (s.kind) {
        case StructKind::NatP:
        case StructKind::ZStar:
        case StructKind::DStar:
        case StructKind::CSquares:
        case StructKind::PrimeField:
          if (t.sym == "0") return Element(bigint(0));
          if (t.sym == "1") return Element(bigint(1));
          break;
        case StructKind::QPell:
          if (t.sym == "0") return Element(ZxMu2::zero());
          if (t.sym == "1") return Element(ZxMu2::one());
          break;
        case StructKind::PolyRingT:
        case StructKind::PolyRingZ:
          if (t.sym == "0") return Element(PolyFp::zero(s.p));
          if (t.sym == "1") return Element(PolyFp::one(s.p));
          if (t.sym == "z") return Element(PolyFp::var(s.p));
          break;
        case StructKind::RatField:
          if (t.sym == "0") return Element(RatFp::zero(s.p));
          if (t.sym == "1") return Element(RatFp::one(s.p));
          if (t.sym == "z") return Element(RatFp::var(s.p));
          break;
      }
      throw std::domain_error("constant '" + t.sym + "' has no interpretation in " + s.to_string());
    case Term::Kind::App: {
      std::vector<Element> as;
      as.reserve(t.args.size());
      for (auto& a : t.args) as.push_back(eval_term(s, a, asg));
      if (t.sym == "+") {
        if (as[0].is_int()) {
          bigint r = as[0].as_int() + as[1].as_int();
          return Element(s.kind == StructKind::PrimeField ? bigmod(r, s.p) : r);
        }
        if (as[0].is_poly()) return Element(as[0].as_poly() + as[1].as_poly());
        if (as[0].is_rat()) return Element(as[0].as_rat() + as[1].as_rat());
        return Element(as[0].as_pair().oplus(as[1].as_pair()));
      }
      if (t.sym == "*") {
        if (as[0].is_int()) {
          bigint r = as[0].as_int() * as[1].as_int();
          return Element(s.kind == StructKind::PrimeField ? bigmod(r, s.p) : r);
        }
        if (as[0].is_poly()) return Element(as[0].as_poly() * as[1].as_poly());
        if (as[0].is_rat()) return Element(as[0].as_rat() * as[1].as_rat());
        throw std::domain_error("'*' has no interpretation in " + s.to_string());
      }
      if (t.sym == "-") {
        if (as[0].is_int()) {
          bigint r = as[0].as_int() - as[1].as_int();
          return Element(s.kind == StructKind::PrimeField ? bigmod(r, s.p) : r);
        }
        if (as[0].is_poly()) return Element(as[0].as_poly() - as[1].as_poly());
        if (as[0].is_rat()) return Element(as[0].as_rat() - as[1].as_rat());
        throw std::domain_error("'-' has no interpretation in " + s.to_string());
      }
      throw std::domain_error("function '" + t.sym + "' has no interpretation");
    }
  }
  throw std::logic_error("eval_term: unreachable");
}

namespace {

bool perfect_square_int(const bigint& n, bigint* root = nullptr) {
  if (n < 0) return false;
  bigint r = sqrt(n);
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r == n) {
    if (root) *root = r;
    return true;
  }
  return false;
}

}  // namespace

bool eval_relation(const StructureDescriptor& s, const std::string& rel, const std::vector<Element>& args) {
  if (rel == "=") return args[0] == args[1];
  if (rel == "!=") return args[0] != args[1];
  switch (s.kind) {
    case StructKind::NatP:
    case StructKind::ZStar:
    case StructKind::DStar:
      if (rel == "R") return pdivides(args[0].as_int(), args[1].as_int(), s.p);
      if (rel == "|") {
        const bigint &a = args[0].as_int(), &b = args[1].as_int();
        return a == 0 ? b == 0 : b % a == 0;
      }
      if (rel == "T") return abs(args[0].as_int()) > 1;
      if (rel == "pos") return args[0].as_int() >= 0;
      break;
    case StructKind::QPell: {
      if (rel == "R") return pdivides(args[0].as_pair().n, args[1].as_pair().n, s.p);
      if (rel == "|") {
        const bigint &a = args[0].as_pair().n, &b = args[1].as_pair().n;
        return a == 0 ? b == 0 : b % a == 0;
      }
      if (rel == "T") return abs(args[0].as_pair().n) > 1;
      break;
    }
    case StructKind::PrimeField:
      break;
    case StructKind::PolyRingT:
      if (rel == "T") return !args[0].as_poly().is_constant();
      break;
    case StructKind::PolyRingZ:
      break;
    case StructKind::RatField:
      if (rel == "ord") {
        // every element of the base ring is regular at 0, so this holds
        // everywhere; kept as a relation for language fidelity
        return true;
      }
      break;
    case StructKind::CSquares:
      if (rel == "R2") {
        const bigint& x = args[0].as_int();
        return perfect_square_int(x) && x % s.p != 0;
      }
      break;
  }
  throw std::domain_error("relation '" + rel + "' has no interpretation in " + s.to_string());
}

bool eval_qf(const StructureDescriptor& s, const Formula& f, const Assignment& asg) {
  switch (f.kind) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Atom: {
      std::vector<Element> args;
      args.reserve(f.args.size());
      for (auto& t : f.args) args.push_back(eval_term(s, t, asg));
      return eval_relation(s, f.sym, args);
    }
    case Formula::Kind::And:
      for (auto& k : f.kids)
        if (!eval_qf(s, k, asg)) return false;
      return true;
    case Formula::Kind::Or:
      for (auto& k : f.kids)
        if (eval_qf(s, k, asg)) return true;
      return false;
    case Formula::Kind::Not:
      if (f.kids[0].kind != Formula::Kind::Atom)
        throw std::domain_error("eval_qf: Not is allowed on atoms only");
      return !eval_qf(s, f.kids[0], asg);
    default:
      throw std::domain_error("eval_qf: formula is not quantifier-free");
  }
}

bool oracle_relation(const StructureDescriptor& s, const std::string& name, const std::vector<Element>& args) {
  std::int64_t p = s.p;
  if (name == "neq") return args[0] != args[1];
  if (name == "nonzero") {
    if (args[0].is_int()) return args[0].as_int() != 0;
    if (args[0].is_poly()) return !args[0].as_poly().is_zero();
    if (args[0].is_rat()) return !args[0].as_rat().is_zero();
    return args[0].as_pair() != ZxMu2::zero();
  }
  if (name == "T" || name == "pos" || name == "ord" || name == "R2") return eval_relation(s, name, args);
  if (name == "mul") {
    if (args[0].is_int()) return args[0].as_int() * args[1].as_int() == args[2].as_int();
    if (args[0].is_poly()) return args[0].as_poly() * args[1].as_poly() == args[2].as_poly();
    return args[0].as_rat() * args[1].as_rat() == args[2].as_rat();
  }
  if (name == "square") {
    if (args[0].is_int()) return args[0].as_int() * args[0].as_int() == args[1].as_int();
    if (args[0].is_poly()) return args[0].as_poly() * args[0].as_poly() == args[1].as_poly();
    return args[0].as_rat() * args[0].as_rat() == args[1].as_rat();
  }
  if (name == "pdiv") {
    if (args[0].is_pair()) return pdivides(args[0].as_pair().n, args[1].as_pair().n, p);
    return pdivides(args[0].as_int(), args[1].as_int(), p);
  }
  if (name == "div") {
    const bigint &a = args[0].is_pair() ? args[0].as_pair().n : args[0].as_int();
    const bigint &b = args[1].is_pair() ? args[1].as_pair().n : args[1].as_int();
    return a == 0 ? b == 0 : b % a == 0;
  }
  if (name == "frob") {
    if (args[0].is_poly()) {
      int maxDeg = std::max(args[0].as_poly().degree(), args[1].as_poly().degree());
      return frobenius_related(args[0].as_poly(), args[1].as_poly(), default_frobenius_smax(p, std::max(maxDeg, 0)));
    }
    int maxDeg = std::max({args[0].as_rat().num().degree(), args[0].as_rat().den().degree(),
                           args[1].as_rat().num().degree(), args[1].as_rat().den().degree(), 0});
    return frobenius_related(args[0].as_rat(), args[1].as_rat(), default_frobenius_smax(p, maxDeg));
  }
  if (name == "Mp") {
    const bigint &x = args[0].as_int(), &y = args[1].as_int(), &z = args[2].as_int();
    return x >= 0 && is_p_power(y, p) && z == x * y;
  }
  if (name == "CO") return args[0].as_int() % p != 0;
  if (name == "P") {
    const bigint& n = args[0].as_int();
    if (s.kind == StructKind::NatP) return is_p_power(n, p);
    return is_p_power(abs(n), p);
  }
  if (name == "P0") {
    const bigint& n = args[0].as_int();
    if (s.kind == StructKind::NatP) return n >= p && is_p_power(n, p);
    return abs(n) >= p && is_p_power(abs(n), p);
  }
  if (name == "powsq_gt") {
    const bigint &m = args[0].as_int(), &n = args[1].as_int();
    return is_p_power(m, p) && n == m * m;
  }
  if (name == "powsq_pm") {
    const bigint &m = args[0].as_int(), &n = args[1].as_int();
    return is_p_power(abs(m), p) && n == m * m;
  }
  if (name == "theta_bar_gt") {
    const bigint &m = args[0].as_int(), &n = args[1].as_int();
    return m >= p && is_p_power(m, p) && n == m * m;
  }
  if (name == "theta_bar_pm") {
    const bigint &m = args[0].as_int(), &n = args[1].as_int();
    if (abs(m) >= p && is_p_power(abs(m), p) && n == m * m) return true;
    if (p == 2)
      return (m == -2 && n == -8) || (m == 2 && n == -2) || (m == 4 && n == -2) || (m == 4 && n == -8);
    if (p == 3) return m == 3 && n == -3;
    return false;
  }
  if (name == "co_square") {
    const bigint &m = args[0].as_int(), &n = args[1].as_int();
    return m % p != 0 && n == m * m;
  }
  if (name == "mulCP") {
    const bigint &x = args[0].as_int(), &y = args[1].as_int(), &z = args[2].as_int();
    return x % p != 0 && is_p_power(abs(y), p) && z == x * y;
  }
  if (name == "zeta") return args[0].as_pair().eps == 1;
  if (name == "geq0") return args[0].as_int() >= 0;
  if (name == "square_mod_p") {
    bigint x = bigmod(args[0].as_int(), p);
    for (std::int64_t k = 0; k <= p / 2; ++k)
      if (bigint(k) * k % p == x) return true;
    return false;
  }
  if (name == "eta_pell") {
    // (alpha, v, w): v = x_n(alpha) and w = y_n(alpha) for some n in Z.
    const PolyFp &alpha = args[0].as_poly(), &v = args[1].as_poly(), &w = args[2].as_poly();
    if (alpha.is_constant()) throw std::domain_error("eta_pell oracle: parameter must be non-constant");
    if (v == PolyFp::one(p) && w.is_zero()) return true;  // n = 0
    if (v.degree() < 1 || v.degree() % alpha.degree() != 0) return false;
    int n = v.degree() / alpha.degree();
    PellPoint P = pell_xy(alpha, n);
    return (P.x == v && P.y == w) || (P.x == v && -P.y == w);
  }
  if (name == "ord_eq") {
    auto a = args[0].as_rat().ord_at_zero(), b = args[1].as_rat().ord_at_zero();
    return a == b;  // both nullopt means both zero
  }
  throw std::domain_error("unsupported oracle relation '" + name + "' for " + s.to_string());
}

WitnessSchedule WitnessSchedule::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  WitnessSchedule w;
  if (j.contains("B")) w.B = j["B"].get<long long>();
  if (j.contains("S")) w.S = j["S"].get<int>();
  if (j.contains("D")) w.D = j["D"].get<int>();
  if (w.B < 1 || w.S < 0 || w.D < 0) throw std::domain_error("WitnessSchedule: bounds out of range");
  return w;
}

std::string WitnessSchedule::json() const {
  nlohmann::json j;
  j["B"] = B;
  j["S"] = S;
  j["D"] = D;
  return j.dump();
}

}  // namespace unifenc
