#include "unifenc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace unifenc {

Signature::Signature(std::string n, std::vector<std::string> cs,
                     std::vector<std::pair<std::string, int>> fs,
                     std::vector<std::pair<std::string, int>> rs)
    : name(std::move(n)), constants(std::move(cs)), functions(std::move(fs)), relations(std::move(rs)) {
  bool hasEq = false;
  std::set<std::string> seen;
  for (auto& c : constants)
    if (!seen.insert(c).second) throw std::domain_error("Signature: duplicate symbol " + c);
  for (auto& [f, a] : functions) {
    if (!seen.insert(f).second) throw std::domain_error("Signature: duplicate symbol " + f);
    if (a < 1) throw std::domain_error("Signature: function arity must be >= 1");
  }
  for (auto& [r, a] : relations) {
    if (r == "=") hasEq = true;
    if (!seen.insert(r).second) throw std::domain_error("Signature: duplicate symbol " + r);
    if (a < 1) throw std::domain_error("Signature: relation arity must be >= 1");
  }
  if (!hasEq) relations.insert(relations.begin(), {"=", 2});
}

bool Signature::has_constant(const std::string& s) const {
  return std::find(constants.begin(), constants.end(), s) != constants.end();
}
std::optional<int> Signature::function_arity(const std::string& s) const {
  for (auto& [f, a] : functions)
    if (f == s) return a;
  return std::nullopt;
}
std::optional<int> Signature::relation_arity(const std::string& s) const {
  for (auto& [r, a] : relations)
    if (r == s) return a;
  return std::nullopt;
}
bool Signature::has_symbol(const std::string& s) const {
  return has_constant(s) || function_arity(s) || relation_arity(s);
}

Signature Signature::with_relation(const std::string& r, int arity) const {
  Signature s = *this;
  if (!s.relation_arity(r)) {
    s.relations.push_back({r, arity});
    s.name += "+" + r;
  }
  return s;
}

Signature Signature::without_symbol(const std::string& sym) const {
  Signature s = *this;
  std::erase(s.constants, sym);
  std::erase_if(s.functions, [&](auto& f) { return f.first == sym; });
  std::erase_if(s.relations, [&](auto& r) { return r.first == sym && sym != "="; });
  s.name += "-" + sym;
  return s;
}

Signature sig_LA() { return Signature("LA", {"0", "1"}, {{"+", 2}, {"*", 2}}, {{"=", 2}}); }
Signature sig_LT() { return Signature("LT", {"0", "1"}, {{"+", 2}, {"*", 2}}, {{"=", 2}, {"T", 1}}); }
Signature sig_Lz() { return Signature("Lz", {"0", "1", "z"}, {{"+", 2}, {"*", 2}, {"-", 2}}, {{"=", 2}}); }
Signature sig_LzOrdNeq() {
  return Signature("LzOrdNeq", {"0", "1", "z"}, {{"+", 2}, {"*", 2}, {"-", 2}},
                   {{"=", 2}, {"ord", 1}, {"!=", 2}});
}
Signature sig_LTstar() {
  return Signature("LTstar", {"0", "1"}, {{"+", 2}}, {{"=", 2}, {"|", 2}, {"R", 2}, {"T", 1}});
}
Signature sig_LstarPlus() { return Signature("LstarPlus", {"0", "1"}, {{"+", 2}}, {{"=", 2}, {"R", 2}}); }
Signature sig_Lstar() {
  return Signature("Lstar", {"0", "1"}, {{"+", 2}}, {{"=", 2}, {"pos", 1}, {"R", 2}});
}
Signature sig_L0() { return Signature("L0", {"1", "z"}, {{"*", 2}}, {{"=", 2}, {"R", 2}}); }
Signature sig_L1() { return Signature("L1", {"1", "z"}, {{"*", 2}}, {{"=", 2}, {"R", 2}, {"S", 2}}); }
Signature sig_CR() { return Signature("CR", {"0"}, {{"+", 2}}, {{"=", 2}, {"R2", 1}}); }
Signature sig_ZeroOnePlus() { return Signature("ZeroOnePlus", {"0", "1"}, {{"+", 2}}, {{"=", 2}}); }

const Signature& builtin_signature(const std::string& name) {
  static const std::vector<Signature> all = {
      sig_LA(), sig_LT(), sig_Lz(), sig_LzOrdNeq(), sig_LTstar(), sig_LstarPlus(),
      sig_Lstar(), sig_L0(), sig_L1(), sig_CR(), sig_ZeroOnePlus()};
  for (auto& s : all)
    if (s.name == name) return s;
  throw std::domain_error("unknown signature: " + name);
}

std::vector<std::string> builtin_signature_names() {
  return {"LA", "LT", "Lz", "LzOrdNeq", "LTstar", "LstarPlus", "Lstar", "L0", "L1", "CR", "ZeroOnePlus"};
}

bool Term::operator==(const Term& o) const {
  return kind == o.kind && sym == o.sym && args == o.args;
}

bool Formula::operator==(const Formula& o) const {
  return kind == o.kind && sym == o.sym && args == o.args && kids == o.kids;
}

Formula Formula::conj(std::vector<Formula> ks) {
  if (ks.empty()) return truec();
  if (ks.size() == 1) return std::move(ks[0]);
  return {Kind::And, "", {}, std::move(ks)};
}
Formula Formula::disj(std::vector<Formula> ks) {
  if (ks.empty()) return falsec();
  if (ks.size() == 1) return std::move(ks[0]);
  return {Kind::Or, "", {}, std::move(ks)};
}

// ---------------------------------------------------------------- parsing

namespace {

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    if (pos >= s.size()) throw ParseError("unexpected end of input", pos);
    return s[pos];
  }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  }
  std::string symbol() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' && s[pos] != ')')
      ++pos;
    if (pos == start) throw ParseError("expected a symbol", pos);
    return s.substr(start, pos - start);
  }
};

bool is_integer_literal(const std::string& t) {
  std::size_t i = (t.size() > 1 && t[0] == '-') ? 1 : 0;
  if (i >= t.size()) return false;
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  return true;
}

Term literal_term(long long v, const Signature& sig, std::size_t pos) {
  if (v < 0) {
    if (!sig.function_arity("-"))
      throw ParseError("negative literal needs '-' in the signature", pos);
    return Term::app("-", {literal_term(0, sig, pos), literal_term(-v, sig, pos)});
  }
  if (v == 0) {
    if (!sig.has_constant("0")) throw ParseError("signature has no 0", pos);
    return Term::cst("0");
  }
  if (!sig.has_constant("1")) throw ParseError("signature has no 1", pos);
  Term t = Term::cst("1");
  for (long long i = 1; i < v; ++i) t = Term::app("+", {std::move(t), Term::cst("1")});
  return t;
}

struct Parser {
  Lexer lx;
  const Signature& sig;

  Term term() {
    if (lx.peek() == '(') {
      std::size_t open = lx.pos;
      lx.expect('(');
      std::string fn = lx.symbol();
      auto ar = sig.function_arity(fn);
      if (!ar) throw ParseError("unknown function symbol '" + fn + "'", open);
      std::vector<Term> args;
      while (lx.peek() != ')') args.push_back(term());
      lx.expect(')');
      if (static_cast<int>(args.size()) < *ar)
        throw ParseError("function '" + fn + "' expects " + std::to_string(*ar) + " arguments", open);
      if (static_cast<int>(args.size()) > *ar) {
        if (*ar != 2)
          throw ParseError("function '" + fn + "' expects " + std::to_string(*ar) + " arguments", open);
        // n-ary sugar for binary functions: left-nested
        Term t = std::move(args[0]);
        for (std::size_t i = 1; i < args.size(); ++i) t = Term::app(fn, {std::move(t), std::move(args[i])});
        return t;
      }
      return Term::app(fn, std::move(args));
    }
    std::size_t at = lx.pos;
    std::string s = lx.symbol();
    if (is_integer_literal(s)) return literal_term(std::stoll(s), sig, at);
    if (sig.has_constant(s)) return Term::cst(s);
    if (sig.function_arity(s) || sig.relation_arity(s))
      throw ParseError("symbol '" + s + "' used as a term", at);
    return Term::var(s);
  }

  std::vector<std::string> var_list() {
    std::size_t open = lx.pos;
    lx.expect('(');
    std::vector<std::string> vs;
    while (lx.peek() != ')') {
      std::size_t at = lx.pos;
      std::string v = lx.symbol();
      if (sig.has_symbol(v) || is_integer_literal(v))
        throw ParseError("'" + v + "' cannot be bound: it is not a variable", at);
      vs.push_back(v);
    }
    lx.expect(')');
    if (vs.empty()) throw ParseError("empty variable list", open);
    return vs;
  }

  Formula formula() {
    std::size_t open = lx.pos;
    lx.expect('(');
    std::string head = lx.symbol();
    if (head == "and" || head == "or") {
      std::vector<Formula> ks;
      while (lx.peek() != ')') ks.push_back(formula());
      lx.expect(')');
      if (ks.empty()) throw ParseError("'" + head + "' needs at least one subformula", open);
      Formula f;
      f.kind = head == "and" ? Formula::Kind::And : Formula::Kind::Or;
      f.kids = std::move(ks);
      if (f.kids.size() == 1) return std::move(f.kids[0]);
      return f;
    }
    if (head == "not") {
      Formula body = formula();
      lx.expect(')');
      return Formula::lnot(std::move(body));
    }
    if (head == "exists" || head == "forall") {
      auto vs = var_list();
      Formula body = formula();
      lx.expect(')');
      for (auto it = vs.rbegin(); it != vs.rend(); ++it)
        body = head == "exists" ? Formula::exists(*it, std::move(body)) : Formula::forall(*it, std::move(body));
      return body;
    }
    if (head == "true") {
      lx.expect(')');
      return Formula::truec();
    }
    if (head == "false") {
      lx.expect(')');
      return Formula::falsec();
    }
    auto ar = sig.relation_arity(head);
    if (!ar) throw ParseError("unknown relation symbol '" + head + "'", open);
    std::vector<Term> args;
    while (lx.peek() != ')') args.push_back(term());
    lx.expect(')');
    if (static_cast<int>(args.size()) != *ar)
      throw ParseError("relation '" + head + "' expects " + std::to_string(*ar) + " arguments", open);
    return Formula::atom(head, std::move(args));
  }
};

}  // namespace

Formula parse_formula(const std::string& text, const Signature& sig) {
  Parser p{Lexer{text}, sig};
  Formula f = p.formula();
  if (!p.lx.at_end()) throw ParseError("trailing input after formula", p.lx.pos);
  check_well_formed(f, sig);
  return f;
}

Term parse_term(const std::string& text, const Signature& sig) {
  Parser p{Lexer{text}, sig};
  Term t = p.term();
  if (!p.lx.at_end()) throw ParseError("trailing input after term", p.lx.pos);
  return t;
}

// ---------------------------------------------------------------- printing

std::string print_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return t.sym;
    case Term::Kind::App: {
      std::string s = "(" + t.sym;
      for (auto& a : t.args) s += " " + print_term(a);
      return s + ")";
    }
  }
  return {};
}

std::string print_formula(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::True:
      return "(true)";
    case Formula::Kind::False:
      return "(false)";
    case Formula::Kind::Atom: {
      std::string s = "(" + f.sym;
      for (auto& a : f.args) s += " " + print_term(a);
      return s + ")";
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::string s = f.kind == Formula::Kind::And ? "(and" : "(or";
      for (auto& k : f.kids) s += " " + print_formula(k);
      return s + ")";
    }
    case Formula::Kind::Not:
      return "(not " + print_formula(f.kids[0]) + ")";
    case Formula::Kind::Implies:
      return "(implies " + print_formula(f.kids[0]) + " " + print_formula(f.kids[1]) + ")";
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool ex = f.kind == Formula::Kind::Exists;
      std::string s = ex ? "(exists (" : "(forall (";
      s += f.sym;
      const Formula* body = &f.kids[0];
      while (body->kind == f.kind) {
        s += " " + body->sym;
        body = &body->kids[0];
      }
      return s + ") " + print_formula(*body) + ")";
    }
  }
  return {};
}

// ---------------------------------------------------------------- queries

bool is_positive_existential(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Not:
    case Formula::Kind::Implies:
    case Formula::Kind::Forall:
      return false;
    default:
      return std::all_of(f.kids.begin(), f.kids.end(), [](const Formula& k) { return is_positive_existential(k); });
  }
}

bool is_quantifier_free(const Formula& f) {
  if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) return false;
  return std::all_of(f.kids.begin(), f.kids.end(), [](const Formula& k) { return is_quantifier_free(k); });
}

bool is_qf_literal_form(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
    case Formula::Kind::Implies:
      return false;
    case Formula::Kind::Not:
      return f.kids[0].kind == Formula::Kind::Atom;
    default:
      return std::all_of(f.kids.begin(), f.kids.end(), [](const Formula& k) { return is_qf_literal_form(k); });
  }
}

std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> out;
  if (t.kind == Term::Kind::Var) out.insert(t.sym);
  for (auto& a : t.args) {
    auto sub = term_vars(a);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

namespace {
void free_vars_rec(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      for (auto& t : f.args)
        for (auto& v : term_vars(t))
          if (!bound.count(v)) out.insert(v);
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool wasBound = bound.count(f.sym) > 0;
      bound.insert(f.sym);
      free_vars_rec(f.kids[0], bound, out);
      if (!wasBound) bound.erase(f.sym);
      break;
    }
    default:
      for (auto& k : f.kids) free_vars_rec(k, bound, out);
  }
}
}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) out.insert(f.sym);
  for (auto& t : f.args)
    for (auto& v : term_vars(t)) out.insert(v);
  for (auto& k : f.kids) {
    auto sub = all_vars(k);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

namespace {
void used_symbols_term(const Term& t, std::set<std::string>& out) {
  if (t.kind != Term::Kind::Var) out.insert(t.sym);
  for (auto& a : t.args) used_symbols_term(a, out);
}
}  // namespace

std::set<std::string> used_symbols(const Formula& f) {
  std::set<std::string> out;
  if (f.kind == Formula::Kind::Atom) {
    out.insert(f.sym);
    for (auto& t : f.args) used_symbols_term(t, out);
  }
  for (auto& k : f.kids) {
    auto sub = used_symbols(k);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

namespace {
void check_term(const Term& t, const Signature& sig) {
  switch (t.kind) {
    case Term::Kind::Var:
      if (sig.has_symbol(t.sym)) throw std::domain_error("variable '" + t.sym + "' clashes with a signature symbol");
      break;
    case Term::Kind::Const:
      if (!sig.has_constant(t.sym)) throw std::domain_error("unknown constant '" + t.sym + "'");
      break;
    case Term::Kind::App: {
      auto ar = sig.function_arity(t.sym);
      if (!ar) throw std::domain_error("unknown function '" + t.sym + "'");
      if (static_cast<int>(t.args.size()) != *ar)
        throw std::domain_error("arity mismatch for '" + t.sym + "'");
      for (auto& a : t.args) check_term(a, sig);
      break;
    }
  }
}
}  // namespace

void check_well_formed(const Formula& f, const Signature& sig) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      auto ar = sig.relation_arity(f.sym);
      if (!ar) throw std::domain_error("unknown relation '" + f.sym + "'");
      if (static_cast<int>(f.args.size()) != *ar)
        throw std::domain_error("arity mismatch for '" + f.sym + "'");
      for (auto& t : f.args) check_term(t, sig);
      break;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      if (sig.has_symbol(f.sym))
        throw std::domain_error("bound variable '" + f.sym + "' clashes with a signature symbol");
      [[fallthrough]];
    default:
      for (auto& k : f.kids) check_well_formed(k, sig);
  }
}

// ----------------------------------------------------------- substitution

std::string FreshGen::fresh(const std::string& base) {
  if (!used_.count(base)) {
    used_.insert(base);
    return base;
  }
  int& k = counters_[base];
  while (true) {
    std::string cand = base + "#" + std::to_string(k++);
    if (used_.insert(cand).second) return cand;
  }
}

Term substitute_term(const Term& t, const std::map<std::string, Term>& sub) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = sub.find(t.sym);
      return it == sub.end() ? t : it->second;
    }
    case Term::Kind::Const:
      return t;
    case Term::Kind::App: {
      Term r = t;
      for (auto& a : r.args) a = substitute_term(a, sub);
      return r;
    }
  }
  return t;
}

Formula substitute_free(const Formula& f, const std::map<std::string, Term>& sub, FreshGen& fresh) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      Formula r = f;
      for (auto& t : r.args) t = substitute_term(t, sub);
      return r;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      std::map<std::string, Term> inner = sub;
      inner.erase(f.sym);
      // avoid capturing variables of substituted terms
      bool capture = false;
      for (auto& [v, t] : inner)
        if (term_vars(t).count(f.sym)) capture = true;
      Formula r = f;
      if (capture) {
        std::string nv = fresh.fresh(f.sym);
        inner[f.sym] = Term::var(nv);
        r.sym = nv;
      }
      r.kids[0] = substitute_free(f.kids[0], inner, fresh);
      return r;
    }
    default: {
      Formula r = f;
      for (auto& k : r.kids) k = substitute_free(k, sub, fresh);
      return r;
    }
  }
}

Formula standardize_apart(const Formula& f, FreshGen& fresh) {
  fresh.reserve_all(free_vars(f));
  std::map<std::string, Term> ren;
  struct Walk {
    FreshGen& fresh;
    Formula run(const Formula& g, std::map<std::string, Term>& ren) {
      switch (g.kind) {
        case Formula::Kind::Atom: {
          Formula r = g;
          for (auto& t : r.args) t = substitute_term(t, ren);
          return r;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
          std::string nv = fresh.fresh(g.sym);
          auto it = ren.find(g.sym);
          std::optional<Term> saved;
          if (it != ren.end()) saved = it->second;
          ren[g.sym] = Term::var(nv);
          Formula r = g;
          r.sym = nv;
          r.kids[0] = run(g.kids[0], ren);
          if (saved)
            ren[g.sym] = *saved;
          else
            ren.erase(g.sym);
          return r;
        }
        default: {
          Formula r = g;
          for (auto& k : r.kids) k = run(k, ren);
          return r;
        }
      }
    }
  } walk{fresh};
  return walk.run(f, ren);
}

Formula prenex_pe(const Formula& f) {
  if (!is_positive_existential(f)) throw std::domain_error("prenex_pe: input is not positive existential");
  // Standardize first so pulled binders cannot collide; original names are
  // kept when they do not clash.
  FreshGen nameSrc;
  nameSrc.reserve_all(free_vars(f));
  Formula g = standardize_apart(f, nameSrc);
  std::vector<std::string> prefix;
  struct Pull {
    std::vector<std::string>& prefix;
    Formula run(const Formula& h) {
      switch (h.kind) {
        case Formula::Kind::Exists:
          prefix.push_back(h.sym);
          return run(h.kids[0]);
        case Formula::Kind::And:
        case Formula::Kind::Or: {
          Formula r = h;
          for (auto& k : r.kids) k = run(k);
          return r;
        }
        default:
          return h;
      }
    }
  } pull{prefix};
  Formula matrix = pull.run(g);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    matrix = Formula::exists(*it, std::move(matrix));
  return matrix;
}

}  // namespace unifenc
