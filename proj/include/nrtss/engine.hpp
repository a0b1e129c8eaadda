#ifndef NRTSS_ENGINE_HPP
#define NRTSS_ENGINE_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "nrtss/nominal.hpp"
#include "nrtss/nrtss.hpp"

namespace nrtss {

// Finite per-sort atom sets bounding rule instantiation. Always contains the
// support of the query state plus `fresh_slack` fresh atoms per sort.
struct AtomPool {
  std::map<std::string, std::set<Atom>> per_sort;

  static AtomPool for_support(const Signature& sig, const std::set<Atom>& supp,
                              unsigned fresh_slack);
  static AtomPool for_state(const Signature& sig, const NominalTerm& state,
                            unsigned fresh_slack);

  const std::set<Atom>& of_sort(const std::string& sort) const;
  bool contains(const Atom& a) const;
  void add(const Atom& a) { per_sort[a.sort].insert(a); }
  std::set<Atom> all() const;
  // Every transposition of two pool atoms of the same sort.
  std::vector<Permutation> transpositions() const;
};

struct Transition {
  NominalTerm source;
  NominalTerm residual;

  friend bool operator==(const Transition& a, const Transition& b) {
    return a.source == b.source && a.residual == b.residual;
  }
  friend bool operator<(const Transition& a, const Transition& b) {
    if (!(a.source == b.source)) return a.source < b.source;
    return a.residual < b.residual;
  }
};

// Atom-parameter and variable assignments produced by matching. Action
// metavariables are recorded as variables of the action sort.
struct Bindings {
  std::map<std::string, Atom> atoms;
  std::map<Variable, NominalTerm> vars;

  friend bool operator==(const Bindings&, const Bindings&) = default;
  friend bool operator<(const Bindings& a, const Bindings& b) {
    if (a.atoms != b.atoms) return a.atoms < b.atoms;
    return a.vars < b.vars;
  }
};

struct ProofTree {
  Transition root;
  std::string rule_id;
  Bindings binds;
  std::vector<ProofTree> children;
  std::vector<FreshAssertion> discharged;  // ground assertions checked

  friend bool operator==(const ProofTree& a, const ProofTree& b);
  friend bool operator<(const ProofTree& a, const ProofTree& b);
  unsigned height() const;
};

struct Derivation {
  Transition transition;
  ProofTree proof;
};

struct DeriveResult {
  std::vector<Derivation> derivations;  // sorted by (transition, proof)
  bool complete = true;                 // false iff fuel ran out somewhere

  std::set<Transition> transitions() const;
};

// All matches of a rule-source pattern against a state. Abstraction patterns
// concrete at each pool atom that is the canonical binder or fresh for the
// body.
std::vector<Bindings> match_state(const RuleSchema& schema,
                                  const RawTerm& pattern,
                                  const NominalTerm& state,
                                  const AtomPool& pool);

// Sound and pool/fuel-complete transition derivation.
DeriveResult derive(const Nrtss& n, const NominalTerm& state,
                    const AtomPool& pool, unsigned fuel = 16);

// Revalidates a proof tree bottom-up against the ruleset.
bool check_proof(const Nrtss& n, const ProofTree& pt);

}  // namespace nrtss

#endif  // NRTSS_ENGINE_HPP
