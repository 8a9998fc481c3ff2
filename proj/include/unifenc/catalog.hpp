#pragma once

#include <functional>

#include "unifenc/peq.hpp"
#include "unifenc/structures.hpp"

namespace unifenc {

// A named defining formula paired with the semantic relation it is supposed
// to define, so the check driver can compare the two by brute force.
struct CatalogEntry {
  std::string name;
  std::map<std::string, long long> params;
  Formula formula;
  Signature sig;
  std::vector<std::string> freeVars;  // argument order of the relation
  std::string oracle;                 // oracle_relation name
  std::string note;                   // one-line description for `catalog show`
  std::string strategy;               // "", "phi", "delta", "squares_dp"
  std::function<bool(const StructureDescriptor&)> applies;
  std::string appliesNote;

  bool applicable(const StructureDescriptor& s) const { return !applies || applies(s); }
};

std::vector<std::string> catalog_names();
CatalogEntry catalog_build(const std::string& name, const std::map<std::string, long long>& params = {});

// mul_nat is an external gap: the catalog ships the registration gate only.
// A candidate is accepted after passing the oracle check against
// multiplication on NatP p in {3,5,7}, box [0,30]^3, and rejection reports a
// counterexample tuple.
CatalogEntry register_mul_nat(const Formula& f);
bool mul_nat_registered();
void clear_mul_nat();  // test hook

struct CheckReport {
  std::string entry;
  std::string structure;
  long long cases = 0;
  long long agreements = 0;
  std::vector<std::string> hardFailures;  // formula satisfied, oracle false
  std::vector<std::string> escalations;   // no witness within bound, oracle true
  double wallMs = 0;

  bool ok() const { return hardFailures.empty(); }
  std::string json() const;
};

// Compares the formula against its oracle on the cartesian product of the
// per-argument value lists. Satisfied outcomes are witness re-checked.
CheckReport catalog_check(const CatalogEntry& e, const StructureDescriptor& s,
                          const std::vector<std::vector<Element>>& box, const WitnessSchedule& sched);

std::string catalog_show(const CatalogEntry& e);

// Shared builders for the Pell-coordinate formulas; the expression arguments
// let callers pass signed sums without leaving subtraction in the output.
Formula delta_formula(const PExpr& alpha, const PExpr& v, const PExpr& w);
Formula eta_formula(FreshGen& fresh, const PExpr& alpha, const PExpr& v, const PExpr& w);
Formula Delta_formula(FreshGen& fresh, const PExpr& alpha, const PExpr& x, const PExpr& xp);

// Decides phi_1(x,y) over F_p[z] by the square-chain reduction and returns
// the bound-variable witness values on success.
std::optional<std::vector<PolyFp>> phi1_witness(int M, const PolyFp& x, const PolyFp& y);

// Integer square-chain witnesses used when transporting multiplication
// witnesses; a = p^{v_p(m)}, u = m / a, and the theta_CO power.
std::optional<bigint> theta_co_power(const bigint& m, const bigint& n, std::int64_t p, int sMax);

}  // namespace unifenc
