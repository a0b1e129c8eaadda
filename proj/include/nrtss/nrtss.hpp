#ifndef NRTSS_NRTSS_HPP
#define NRTSS_NRTSS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nrtss/freshness.hpp"
#include "nrtss/syntax.hpp"
#include "nrtss/terms.hpp"

namespace nrtss {

// Atom metavariables in rule schemas are represented by reserved placeholder
// atoms; concrete atoms below this index are rejected in rules.
inline constexpr std::uint32_t kSchemaAtomBase = 1'000'000;

inline bool is_schema_atom(const Atom& a) { return a.index >= kSchemaAtomBase; }

struct ResidualSignature {
  Signature sig;
  Sort state_sort;
  Sort residual_sort;
};

struct AtomParam {
  std::string name;
  std::string sort;
};

// One allowed instantiation template for an action parameter: a head symbol
// plus the rule atom params its arguments are pinned to. An empty arg list
// leaves the instance arguments unconstrained.
struct ActionHeadCase {
  std::string head;
  std::vector<std::string> args;
};

struct ActionParam {
  std::string name;
  std::vector<ActionHeadCase> allowed;  // nonempty: ranges over these
  std::set<std::string> forbidden;      // otherwise: any head not in here
};

struct Formula {
  RawTerm source;
  RawTerm residual;
};

// A parameterised inference rule. Placeholder atoms stand for the atom
// metavariables; action metavariables are variables of the action sort
// listed in action_params.
class RuleSchema {
 public:
  std::string id;
  std::vector<AtomParam> atom_params;
  std::vector<ActionParam> action_params;
  std::vector<Formula> premisses;
  FreshnessEnv env;
  Formula conclusion;

  Atom placeholder(const std::string& name) const;
  std::optional<std::string> param_name(const Atom& placeholder) const;
  const ActionParam* find_action_param(const std::string& name) const;

  // Printing helper: placeholder atoms render as their parameter names.
  AtomNamer namer() const;
};

class Nrtss {
 public:
  Nrtss() = default;
  Nrtss(ResidualSignature sig, std::vector<RuleSchema> rules);

  const ResidualSignature& signature() const { return sig_; }
  const std::vector<RuleSchema>& rules() const { return rules_; }
  const RuleSchema* rule(const std::string& id) const;

  // For NTS-shaped signatures: the action sort and residual style.
  bool abstraction_style() const;
  std::optional<Sort> action_sort() const;

 private:
  ResidualSignature sig_;
  std::vector<RuleSchema> rules_;
};

// Parses the rule-spec text format (see docs/rule-grammar.md). Throws
// ParseError with position info.
Nrtss parse_ruleset(const std::string& text);
std::string print_ruleset(const Nrtss& n);

// A rule with atoms and actions fixed; term variables remain.
struct ConcreteRule {
  std::string id;
  std::vector<Formula> premisses;
  FreshnessEnv env;
  Formula conclusion;
};

// Instantiates every atom and action parameter. Throws std::invalid_argument
// on missing/ill-sorted assignments or violated head constraints.
ConcreteRule rule_instantiate(const Nrtss& n, const RuleSchema& r,
                              const std::map<std::string, Atom>& atom_env,
                              const std::map<std::string, RawTerm>& action_env);

ConcreteRule rule_perm(const Permutation& p, const ConcreteRule& r);
std::set<Atom> rule_support(const ConcreteRule& r);

// Applies partial atom/variable assignments to one schema term. Variables
// cover both term variables and action metavariables; unassigned parameters
// stay in place.
RawTerm schema_bind(const RuleSchema& r, const RawTerm& t,
                    const std::map<std::string, Atom>& atom_env,
                    const std::map<Variable, RawTerm>& var_env);

// Atom params of `r` whose placeholders occur in `t` (including renamings
// and freshness subjects).
std::set<std::string> schema_atom_params_in(const RuleSchema& r,
                                            const RawTerm& t);

struct ValidationReport {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

ValidationReport validate(const Nrtss& n);

}  // namespace nrtss

#endif  // NRTSS_NRTSS_HPP
