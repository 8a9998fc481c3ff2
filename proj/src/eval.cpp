// Bounded witness search for positive existential formulas.
//
// The search walks the formula left to right, branching at disjunctions, and
// keeps a set of deferred atoms. Deterministic steps run first: ground atoms
// are checked, equalities with a single unknown are solved (linearly over the
// additive structures, up to quadratics with polynomial square roots over the
// ring structures). When nothing is determined, atoms R(a,x) and a|x act as
// candidate generators (signed p-power multiples, bounded multiples,
// divisors), and as a last resort the first registered variable still at
// large is enumerated over the schedule domain: small range, then signed
// p-powers, then polynomials by degree.
#include <algorithm>

#include "unifenc/structures.hpp"

namespace unifenc {

namespace {

constexpr long long kDefaultBudget = 400'000'000;
constexpr long long kDivisorCap = 20'000'000;

bool int_sort(const StructureDescriptor& s) {
  switch (s.kind) {
    case StructKind::NatP:
    case StructKind::ZStar:
    case StructKind::DStar:
    case StructKind::PrimeField:
    case StructKind::CSquares:
      return true;
    default:
      return false;
  }
}

bool poly_sort(const StructureDescriptor& s) {
  return s.kind == StructKind::PolyRingT || s.kind == StructKind::PolyRingZ;
}

// ---------------------------------------------------------------- linear view

struct LinInt {
  std::map<std::string, bigint> co;
  bigint cst = 0;
};

std::optional<LinInt> lin_int(const Term& t, const Assignment& env) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = env.find(t.sym);
      LinInt r;
      if (it != env.end())
        r.cst = it->second.as_int();
      else
        r.co[t.sym] = 1;
      return r;
    }
    case Term::Kind::Const: {
      LinInt r;
      if (t.sym == "0") r.cst = 0;
      else if (t.sym == "1") r.cst = 1;
      else return std::nullopt;
      return r;
    }
    case Term::Kind::App: {
      if (t.sym != "+" && t.sym != "-") return std::nullopt;
      auto a = lin_int(t.args[0], env), b = lin_int(t.args[1], env);
      if (!a || !b) return std::nullopt;
      int sgn = t.sym == "+" ? 1 : -1;
      for (auto& [v, c] : b->co) {
        a->co[v] += sgn * c;
        if (a->co[v] == 0) a->co.erase(v);
      }
      a->cst += sgn * b->cst;
      return a;
    }
  }
  return std::nullopt;
}

struct QLin {
  std::map<std::string, int> mult;
  ZxMu2 cst = ZxMu2::zero();
};

std::optional<QLin> lin_pair(const Term& t, const Assignment& env) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = env.find(t.sym);
      QLin r;
      if (it != env.end())
        r.cst = it->second.as_pair();
      else
        r.mult[t.sym] = 1;
      return r;
    }
    case Term::Kind::Const: {
      QLin r;
      if (t.sym == "0") r.cst = ZxMu2::zero();
      else if (t.sym == "1") r.cst = ZxMu2::one();
      else return std::nullopt;
      return r;
    }
    case Term::Kind::App: {
      if (t.sym != "+") return std::nullopt;
      auto a = lin_pair(t.args[0], env), b = lin_pair(t.args[1], env);
      if (!a || !b) return std::nullopt;
      for (auto& [v, k] : b->mult) a->mult[v] += k;
      a->cst = a->cst.oplus(b->cst);
      return a;
    }
  }
  return std::nullopt;
}


// Polynomial in one unknown with ring coefficients; var empty means ground.

struct PolyCtx {
  std::int64_t p;
  PolyFp zero() const { return PolyFp::zero(p); }
  PolyFp one() const { return PolyFp::one(p); }
  PolyFp z() const { return PolyFp::var(p); }
  static bool is0(const PolyFp& v) { return v.is_zero(); }
};
struct RatCtx {
  std::int64_t p;
  RatFp zero() const { return RatFp::zero(p); }
  RatFp one() const { return RatFp::one(p); }
  RatFp z() const { return RatFp::var(p); }
  static bool is0(const RatFp& v) { return v.is_zero(); }
};

template <class Ctx>
struct XP {
  using C = decltype(std::declval<Ctx>().zero());
  std::string var;
  std::vector<C> c;

  static std::optional<XP> make(const Ctx& cx, const Term& t, const Assignment& env) {
    switch (t.kind) {
      case Term::Kind::Var: {
        auto it = env.find(t.sym);
        XP r;
        if (it != env.end()) {
          r.c = {get_val(cx, it->second)};
        } else {
          r.var = t.sym;
          r.c = {cx.zero(), cx.one()};
        }
        return r;
      }
      case Term::Kind::Const: {
        XP r;
        if (t.sym == "0") r.c = {cx.zero()};
        else if (t.sym == "1") r.c = {cx.one()};
        else if (t.sym == "z") r.c = {cx.z()};
        else return std::nullopt;
        return r;
      }
      case Term::Kind::App: {
        if (t.sym != "+" && t.sym != "-" && t.sym != "*") return std::nullopt;
        auto a = make(cx, t.args[0], env), b = make(cx, t.args[1], env);
        if (!a || !b) return std::nullopt;
        if (!a->var.empty() && !b->var.empty() && a->var != b->var) return std::nullopt;
        std::string v = !a->var.empty() ? a->var : b->var;
        XP r;
        r.var = v;
        if (t.sym == "+" || t.sym == "-") {
          std::size_t n = std::max(a->c.size(), b->c.size());
          for (std::size_t i = 0; i < n; ++i) {
            C x = i < a->c.size() ? a->c[i] : cx.zero();
            C y = i < b->c.size() ? b->c[i] : cx.zero();
            r.c.push_back(t.sym == "+" ? x + y : x - y);
          }
          return r;
        }
        if (t.sym == "*") {
          if (a->c.size() + b->c.size() > 6) return std::nullopt;  // degree cap 4
          r.c.assign(a->c.size() + b->c.size() - 1, cx.zero());
          for (std::size_t i = 0; i < a->c.size(); ++i)
            for (std::size_t j = 0; j < b->c.size(); ++j)
              r.c[i + j] = r.c[i + j] + a->c[i] * b->c[j];
          return r;
        }
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  static C get_val(const Ctx&, const Element& e);

  int deg() const {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
      if (!Ctx::is0(c[i])) return i;
    return -1;
  }
};

template <>
PolyFp XP<PolyCtx>::get_val(const PolyCtx&, const Element& e) { return e.as_poly(); }
template <>
RatFp XP<RatCtx>::get_val(const RatCtx&, const Element& e) { return e.as_rat(); }

// ------------------------------------------------------------- atom solving

struct Solved {
  bool applies = false;        // an equality rule fired
  std::string var;
  std::vector<Element> values; // may be empty: contradiction
};

}  // namespace

namespace detail {

// Solutions of the ground-coefficient equation sum_i c_i X^i = 0 over F_p[z]
// (or the regular-at-0 fractions), up to degree 2.
template <class Ctx>
static std::optional<std::vector<typename XP<Ctx>::C>> roots_upto_quadratic(const Ctx& cx,
                                                                            std::vector<typename XP<Ctx>::C> c) {
  using C = typename XP<Ctx>::C;
  int d = -1;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (!Ctx::is0(c[i])) { d = i; break; }
  std::vector<C> out;
  if (d <= 0) return std::nullopt;  // handled by caller as ground
  if (d == 1) {
    // c1 X = -c0
    if constexpr (std::is_same_v<C, PolyFp>) {
      auto q = (-c[0]).exact_div(c[1]);
      if (q) out.push_back(*q);
    } else {
      try {
        out.push_back((-c[0]) / c[1]);
      } catch (const std::domain_error&) {
      }
    }
    return out;
  }
  if (d == 2) {
    // complete the square: (2 c2 X + c1)^2 = c1^2 - 4 c2 c0
    C disc = c[1] * c[1] - (c[2] * c[0] + c[2] * c[0] + c[2] * c[0] + c[2] * c[0]);
    auto r = disc.sqrt();
    if (!r) return out;
    for (int sgn : {1, -1}) {
      C rhs = sgn > 0 ? *r : -*r;
      C num = rhs - c[1];
      C den = c[2] + c[2];
      if constexpr (std::is_same_v<C, PolyFp>) {
        auto q = num.exact_div(den);
        if (q && std::find(out.begin(), out.end(), *q) == out.end()) out.push_back(*q);
      } else {
        try {
          C q = num / den;
          if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
        } catch (const std::domain_error&) {
        }
      }
      if (Ctx::is0(*r)) break;
    }
    return out;
  }
  return std::nullopt;  // degree too high for a closed rule
}

}  // namespace detail

namespace {

class PeSolver {
 public:
  PeSolver(const StructureDescriptor& s, const WitnessSchedule& sched, long long budget)
      : s_(s), sched_(sched), budget_(budget) {}

  std::optional<Assignment> solve(const Formula& root, const Assignment& fixed) {
    std::vector<const Formula*> agenda{&root};
    std::vector<const Formula*> deferred;
    if (run(agenda, 0, fixed, deferred)) return witness_;
    return std::nullopt;
  }

  bool truncated() const { return truncated_; }

 private:
  const StructureDescriptor& s_;
  WitnessSchedule sched_;
  long long budget_;
  bool truncated_ = false;
  std::vector<std::string> order_;
  Assignment witness_;
  std::vector<Element> domain_;
  bool domainBuilt_ = false;

  bool tick() {
    if (--budget_ <= 0) {
      truncated_ = true;
      return false;
    }
    return true;
  }

  // ---------------------------------------------------------- the domain

  const std::vector<Element>& domain() {
    if (domainBuilt_) return domain_;
    domainBuilt_ = true;
    std::int64_t p = s_.p;
    switch (s_.kind) {
      case StructKind::NatP:
      case StructKind::ZStar:
      case StructKind::DStar:
      case StructKind::CSquares: {
        bool natural = s_.kind == StructKind::NatP;
        domain_.push_back(Element(bigint(0)));
        for (long long v = 1; v <= sched_.B; ++v) {
          domain_.push_back(Element(bigint(v)));
          if (!natural) domain_.push_back(Element(bigint(-v)));
        }
        if (s_.kind != StructKind::CSquares) {
          bigint q = 1;
          for (int k = 1; k <= sched_.S; ++k) {
            q *= p;
            if (q <= sched_.B) continue;
            domain_.push_back(Element(q));
            if (!natural) domain_.push_back(Element(bigint(-q)));
          }
        }
        break;
      }
      case StructKind::PrimeField:
        for (std::int64_t v = 0; v < p; ++v) domain_.push_back(Element(bigint(v)));
        break;
      case StructKind::QPell: {
        auto push4 = [&](const bigint& n) {
          domain_.push_back(Element(ZxMu2(n, 1)));
          domain_.push_back(Element(ZxMu2(n, -1)));
          if (n != 0) {
            domain_.push_back(Element(ZxMu2(-n, 1)));
            domain_.push_back(Element(ZxMu2(-n, -1)));
          }
        };
        for (long long v = 0; v <= sched_.B; ++v) push4(bigint(v));
        bigint q = 1;
        for (int k = 1; k <= sched_.S; ++k) {
          q *= p;
          if (q <= sched_.B) continue;
          push4(q);
        }
        break;
      }
      case StructKind::PolyRingT:
      case StructKind::PolyRingZ:
      case StructKind::RatField: {
        double count = 1;
        for (int i = 0; i <= sched_.D; ++i) count *= p;
        if (count > 2'000'000)
          throw std::domain_error("polynomial witness domain exceeds the enumeration budget; lower D");
        auto push = [&](const PolyFp& q) {
          if (s_.kind == StructKind::RatField)
            domain_.push_back(Element(RatFp(q)));
          else
            domain_.push_back(Element(q));
        };
        push(PolyFp::zero(p));
        for (int d = 0; d <= sched_.D; ++d) {
          std::vector<std::int64_t> cs(d + 1, 0);
          cs[d] = 1;
          while (true) {
            if (cs[d] != 0) push(PolyFp(p, cs));
            int i = 0;
            for (; i <= d; ++i) {
              if (++cs[i] < p) break;
              cs[i] = 0;
            }
            if (i > d) break;
          }
        }
        break;
      }
    }
    return domain_;
  }

  // ------------------------------------------------------- atom utilities

  bool atom_ground(const Formula& f, const Assignment& env) const {
    for (auto& t : f.args)
      for (auto& v : term_vars(t))
        if (!env.count(v)) return false;
    return true;
  }

  bool atom_check(const Formula& f, const Assignment& env) const {
    bool neg = f.kind == Formula::Kind::Not;
    const Formula& a = neg ? f.kids[0] : f;
    std::vector<Element> args;
    args.reserve(a.args.size());
    for (auto& t : a.args) args.push_back(eval_term(s_, t, env));
    bool v = eval_relation(s_, a.sym, args);
    return neg ? !v : v;
  }

  Solved solve_equality(const Formula& atom, const Assignment& env) {
    Solved out;
    const Term &lhs = atom.args[0], &rhs = atom.args[1];
    if (int_sort(s_)) {
      auto a = lin_int(lhs, env), b = lin_int(rhs, env);
      if (!a || !b) return out;
      for (auto& [v, c] : b->co) {
        a->co[v] -= c;
        if (a->co[v] == 0) a->co.erase(v);
      }
      a->cst -= b->cst;
      if (a->co.size() != 1) return out;
      out.applies = true;
      auto [v, c] = *a->co.begin();
      out.var = v;
      bigint target = -a->cst;
      if (s_.kind == StructKind::PrimeField) {
        bigint cm = c % s_.p;
        if (cm < 0) cm += s_.p;
        bigint tm = target % s_.p;
        if (tm < 0) tm += s_.p;
        if (cm == 0) {
          if (tm == 0) out.applies = false;  // every residue works; enumerate
          return out;
        }
        // field inverse by scan; p is small
        for (std::int64_t x = 0; x < s_.p; ++x)
          if (cm * x % s_.p == tm) {
            out.values.push_back(Element(bigint(x)));
            break;
          }
        return out;
      }
      if (target % c != 0) return out;  // applies, no solution
      bigint val = target / c;
      Element e(val);
      if (element_in_universe(s_, e)) out.values.push_back(std::move(e));
      return out;
    }
    if (s_.kind == StructKind::QPell) {
      auto a = lin_pair(lhs, env), b = lin_pair(rhs, env);
      if (!a || !b) return out;
      std::map<std::string, int> mult = a->mult;
      for (auto& [v, k] : b->mult) mult[v] -= k;
      std::erase_if(mult, [](auto& kv) { return kv.second == 0; });
      if (mult.size() != 1) return out;
      out.applies = true;
      auto [v, k] = *mult.begin();
      out.var = v;
      ZxMu2 t = b->cst.oplus(a->cst.inverse());  // k (x) X = t
      if (k < 0) {
        k = -k;
        t = t.inverse();
      }
      if (k % 2 == 1) {
        if (t.n % k == 0) out.values.push_back(Element(ZxMu2(t.n / k, t.eps)));
      } else {
        if (t.eps == 1 && t.n % k == 0) {
          bigint n = t.n / k;
          out.values.push_back(Element(ZxMu2(n, 1)));
          if (ZxMu2(n, 1) != ZxMu2(-n, -1)) out.values.push_back(Element(ZxMu2(-n, -1)));
        }
      }
      return out;
    }
    if (poly_sort(s_)) return solve_equality_ring<PolyCtx>(PolyCtx{s_.p}, lhs, rhs, env);
    if (s_.kind == StructKind::RatField) return solve_equality_ring<RatCtx>(RatCtx{s_.p}, lhs, rhs, env);
    return out;
  }

  template <class Ctx>
  Solved solve_equality_ring(const Ctx& cx, const Term& lhs, const Term& rhs, const Assignment& env) {
    Solved out;
    auto a = XP<Ctx>::make(cx, lhs, env), b = XP<Ctx>::make(cx, rhs, env);
    if (!a || !b) return out;
    if (!a->var.empty() && !b->var.empty() && a->var != b->var) return out;
    std::string v = !a->var.empty() ? a->var : b->var;
    if (v.empty()) return out;  // ground, handled elsewhere
    std::vector<typename XP<Ctx>::C> c;
    std::size_t n = std::max(a->c.size(), b->c.size());
    for (std::size_t i = 0; i < n; ++i) {
      auto x = i < a->c.size() ? a->c[i] : cx.zero();
      auto y = i < b->c.size() ? b->c[i] : cx.zero();
      c.push_back(x - y);
    }
    auto roots = detail::roots_upto_quadratic<Ctx>(cx, std::move(c));
    if (!roots) return out;
    out.applies = true;
    out.var = v;
    for (auto& r : *roots) out.values.push_back(Element(r));
    return out;
  }

  // Candidate values V for the other side of R(a, .) / R(., a): +-a p^k and
  // the exact quotients +-a / p^k, small exponents first.
  std::vector<bigint> pdiv_family(const bigint& a) {
    std::vector<bigint> out;
    if (a == 0) {
      out.push_back(0);
      return out;
    }
    bigint q = 1;
    for (int k = 0; k <= sched_.S; ++k) {
      out.push_back(a * q);
      out.push_back(-a * q);
      q *= s_.p;
    }
    bigint b = a;
    while (b % s_.p == 0) {
      b /= s_.p;
      out.push_back(b);
      out.push_back(-b);
    }
    return out;
  }

  struct Gen {
    std::string var;
    std::vector<Element> values;
  };

  // Generator from a deferred R / | atom with exactly one unknown.
  std::optional<Gen> generator(const Formula& atom, const Assignment& env) {
    if (atom.kind != Formula::Kind::Atom) return std::nullopt;
    if (atom.sym != "R" && atom.sym != "|") return std::nullopt;
    if (int_sort(s_)) {
      auto a = lin_int(atom.args[0], env), b = lin_int(atom.args[1], env);
      if (!a || !b) return std::nullopt;
      const LinInt *ground = nullptr, *open = nullptr;
      bool openIsRight = false;
      if (a->co.empty() && b->co.size() == 1) {
        ground = &*a;
        open = &*b;
        openIsRight = true;
      } else if (b->co.empty() && a->co.size() == 1) {
        ground = &*b;
        open = &*a;
      } else {
        return std::nullopt;
      }
      std::vector<bigint> termVals;
      if (atom.sym == "R") {
        termVals = pdiv_family(ground->cst);
      } else if (openIsRight) {  // ground | open: multiples
        if (ground->cst == 0) {
          termVals.push_back(0);
        } else {
          for (long long j = 0; j <= sched_.B; ++j) {
            termVals.push_back(ground->cst * j);
            if (j > 0) termVals.push_back(-ground->cst * j);
          }
        }
      } else {  // open | ground: divisors
        bigint g = abs(ground->cst);
        if (g == 0 || g > kDivisorCap) return std::nullopt;
        for (bigint d = 1; d * d <= g; ++d) {
          if (g % d != 0) continue;
          bigint e = g / d;
          termVals.push_back(d);
          termVals.push_back(-d);
          termVals.push_back(e);
          termVals.push_back(-e);
        }
        std::sort(termVals.begin(), termVals.end(), [](const bigint& x, const bigint& y) {
          return abs(x) == abs(y) ? x > y : abs(x) < abs(y);
        });
        termVals.erase(std::unique(termVals.begin(), termVals.end()), termVals.end());
      }
      Gen gen;
      auto [v, c] = *open->co.begin();
      gen.var = v;
      for (auto& w : termVals) {
        bigint t = w - open->cst;
        if (t % c != 0) continue;
        Element e(t / c);
        if (element_in_universe(s_, e)) gen.values.push_back(std::move(e));
      }
      return gen;
    }
    if (s_.kind == StructKind::QPell) {
      auto a = lin_pair(atom.args[0], env), b = lin_pair(atom.args[1], env);
      if (!a || !b) return std::nullopt;
      const QLin *ground = nullptr, *open = nullptr;
      bool openIsRight = false;
      if (a->mult.empty() && b->mult.size() == 1) {
        ground = &*a;
        open = &*b;
        openIsRight = true;
      } else if (b->mult.empty() && a->mult.size() == 1) {
        ground = &*b;
        open = &*a;
      } else {
        return std::nullopt;
      }
      std::vector<bigint> firsts;
      if (atom.sym == "R") {
        firsts = pdiv_family(ground->cst.n);
      } else if (openIsRight) {
        if (ground->cst.n == 0) {
          firsts.push_back(0);
        } else {
          for (long long j = 0; j <= sched_.B; ++j) {
            firsts.push_back(ground->cst.n * j);
            if (j > 0) firsts.push_back(-ground->cst.n * j);
          }
        }
      } else {
        bigint g = abs(ground->cst.n);
        if (g == 0 || g > kDivisorCap) return std::nullopt;
        for (bigint d = 1; d * d <= g; ++d) {
          if (g % d != 0) continue;
          firsts.push_back(d);
          firsts.push_back(-d);
          firsts.push_back(g / d);
          firsts.push_back(-g / d);
        }
      }
      Gen gen;
      auto [v, k] = *open->mult.begin();
      gen.var = v;
      for (auto& n : firsts)
        for (int e : {1, -1}) {
          // term value (n, e); solve k (x) X = value - cst
          ZxMu2 t = ZxMu2(n, e).oplus(open->cst.inverse());
          int kk = k;
          if (kk < 0) {
            kk = -kk;
            t = t.inverse();
          }
          if (kk % 2 == 1) {
            if (t.n % kk == 0) gen.values.push_back(Element(ZxMu2(t.n / kk, t.eps)));
          } else if (t.eps == 1 && t.n % kk == 0) {
            gen.values.push_back(Element(ZxMu2(t.n / kk, 1)));
            gen.values.push_back(Element(ZxMu2(-t.n / kk, -1)));
          }
        }
      return gen;
    }
    return std::nullopt;
  }

  // ------------------------------------------------------------ the search

  bool propagate(Assignment& env, std::vector<const Formula*>& deferred) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < deferred.size(); ++i) {
        if (!tick()) return false;
        const Formula* f = deferred[i];
        if (atom_ground(*f, env)) {
          if (!atom_check(*f, env)) return false;
          deferred.erase(deferred.begin() + i);
          changed = true;
          break;
        }
        if (f->kind == Formula::Kind::Atom && f->sym == "=") {
          Solved sv = solve_equality(*f, env);
          if (!sv.applies) continue;
          if (sv.values.empty()) return false;
          if (sv.values.size() == 1) {
            env[sv.var] = sv.values[0];
            deferred.erase(deferred.begin() + i);
            changed = true;
            break;
          }
        }
      }
    }
    return true;
  }

  bool assign_and_finish(Assignment env, std::vector<const Formula*> deferred, const std::string& var,
                         const Element& val) {
    env[var] = val;
    return finish(std::move(env), std::move(deferred));
  }

  bool finish(Assignment env, std::vector<const Formula*> deferred) {
    if (!tick()) return false;
    if (!propagate(env, deferred)) return false;
    if (deferred.empty()) {
      for (auto& v : order_)
        if (!env.count(v)) env[v] = domain().at(0);
      witness_ = std::move(env);
      return true;
    }
    // 1. equality with finitely many closed-form solutions
    for (std::size_t i = 0; i < deferred.size(); ++i) {
      const Formula* f = deferred[i];
      if (f->kind != Formula::Kind::Atom || f->sym != "=") continue;
      Solved sv = solve_equality(*f, env);
      if (!sv.applies) continue;
      auto rest = deferred;
      rest.erase(rest.begin() + i);
      for (auto& val : sv.values)
        if (assign_and_finish(env, rest, sv.var, val)) return true;
      return false;  // the solutions were exhaustive for this atom
    }
    // 2. R-atom, then |-atom, as candidate generators
    for (const char* relWanted : {"R", "|"}) {
      for (std::size_t i = 0; i < deferred.size(); ++i) {
        const Formula* f = deferred[i];
        if (f->kind != Formula::Kind::Atom || f->sym != std::string(relWanted)) continue;
        auto gen = generator(*f, env);
        if (!gen) continue;
        // keep the atom: candidates satisfy it by construction, but the
        // ground check is cheap and guards the generator's algebra
        for (auto& val : gen->values) {
          if (!tick()) return false;
          if (assign_and_finish(env, deferred, gen->var, val)) return true;
        }
        return false;
      }
    }
    // 3. enumerate the first registered variable that is still open
    for (auto& v : order_) {
      if (env.count(v)) continue;
      bool occurs = false;
      for (auto f : deferred)
        for (auto& t : f->args)
          if (term_vars(t).count(v)) occurs = true;
      if (!occurs) continue;
      for (auto& val : domain()) {
        if (!tick()) return false;
        if (assign_and_finish(env, deferred, v, val)) return true;
      }
      return false;
    }
    return false;  // deferred atoms left but no open variable: unreachable
  }

  bool run(std::vector<const Formula*> agenda, std::size_t gi, Assignment env,
           std::vector<const Formula*> deferred) {
    if (!tick()) return false;
    if (gi == agenda.size()) return finish(std::move(env), std::move(deferred));
    const Formula* f = agenda[gi];
    switch (f->kind) {
      case Formula::Kind::True:
        return run(std::move(agenda), gi + 1, std::move(env), std::move(deferred));
      case Formula::Kind::False:
        return false;
      case Formula::Kind::And: {
        std::vector<const Formula*> next(agenda.begin(), agenda.begin() + gi);
        for (auto& k : f->kids) next.push_back(&k);
        next.insert(next.end(), agenda.begin() + gi + 1, agenda.end());
        return run(std::move(next), gi, std::move(env), std::move(deferred));
      }
      case Formula::Kind::Exists: {
        order_.push_back(f->sym);
        auto next = agenda;
        next[gi] = &f->kids[0];
        bool r = run(std::move(next), gi, std::move(env), std::move(deferred));
        order_.pop_back();
        return r;
      }
      case Formula::Kind::Or: {
        for (auto& k : f->kids) {
          auto next = agenda;
          next[gi] = &k;
          if (run(std::move(next), gi, env, deferred)) return true;
          if (truncated_) return false;
        }
        return false;
      }
      case Formula::Kind::Atom:
      case Formula::Kind::Not: {
        if (atom_ground(*f, env)) {
          if (!atom_check(*f, env)) return false;
          return run(std::move(agenda), gi + 1, std::move(env), std::move(deferred));
        }
        deferred.push_back(f);
        return run(std::move(agenda), gi + 1, std::move(env), std::move(deferred));
      }
      default:
        throw std::domain_error("eval_pe_bounded: unexpected connective");
    }
  }
};

Formula strip_quantifiers(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return strip_quantifiers(f.kids[0]);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      Formula r = f;
      for (auto& k : r.kids) k = strip_quantifiers(k);
      return r;
    }
    default:
      return f;
  }
}

}  // namespace

EvalOutcome eval_pe_bounded(const StructureDescriptor& s, const Formula& f, const Assignment& fixed,
                            const WitnessSchedule& sched) {
  if (!is_positive_existential(f))
    throw std::domain_error("eval_pe_bounded: input is not positive existential");
  for (auto& v : free_vars(f))
    if (!fixed.count(v)) throw std::domain_error("eval_pe_bounded: unbound free variable '" + v + "'");
  EvalOutcome out;
  if (is_quantifier_free(f)) {
    out.status = EvalOutcome::Status::QuantifierFreeValue;
    out.qfValue = eval_qf(s, f, fixed);
    out.witness = fixed;
    return out;
  }
  FreshGen fresh;
  for (auto& [k, v] : fixed) fresh.reserve(k);
  Formula g = standardize_apart(f, fresh);
  PeSolver solver(s, sched, kDefaultBudget);
  auto w = solver.solve(g, fixed);
  if (w) {
    // soundness: the reported witness must re-check under eval_qf
    if (!eval_qf(s, strip_quantifiers(g), *w))
      throw std::logic_error("eval_pe_bounded: witness failed the quantifier-free re-check");
    out.status = EvalOutcome::Status::Satisfied;
    out.witness = std::move(*w);
    return out;
  }
  out.status = EvalOutcome::Status::NoWitnessWithinBound;
  out.truncated = solver.truncated();
  return out;
}

EvalOutcome eval_pe_bounded(const StructureDescriptor& s, const Formula& f, const WitnessSchedule& sched) {
  return eval_pe_bounded(s, f, Assignment{}, sched);
}

}  // namespace unifenc
