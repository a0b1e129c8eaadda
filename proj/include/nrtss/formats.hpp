#ifndef NRTSS_FORMATS_HPP
#define NRTSS_FORMATS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nrtss/engine.hpp"
#include "nrtss/nrtss.hpp"

namespace nrtss {

// Binding-names function given by binding argument positions (1-based) per
// action head symbol.
struct BnSpec {
  std::map<std::string, std::set<unsigned>> positions;

  std::set<Atom> bn(const RawTerm& ground_action) const;
  bool binds(const RawTerm& ground_action, const Atom& a) const;
};

// (source head, action head) classes claimed order-defined, plus an optional
// empirical measure. "*" matches any source head.
struct StratSpec {
  std::set<std::pair<std::string, std::string>> defined_shapes;
  // (ground state, ground action or action abstraction) -> order
  std::function<std::optional<std::uint64_t>(const NominalTerm&,
                                             const NominalTerm&)>
      measure;

  bool defined(const std::string& source_head,
               const std::string& action_head) const;
};

struct Obligation {
  std::string rule;
  std::string case_head;  // instantiated action head(s) for this case
  std::string atom;       // candidate atom (rendered)
  std::string kind;       // "i" | "ii" | "iii" | "ba" | "equivariant" | "strat"
  bool pass = false;
  std::string detail;     // the two environments compared, or the violation
};

struct FormatReport {
  std::vector<Obligation> obligations;
  std::vector<std::string> errors;

  bool pass() const {
    if (!errors.empty()) return false;
    for (const Obligation& o : obligations)
      if (!o.pass) return false;
    return true;
  }
  std::string to_text() const;
};

// Equivariant format: no concrete atom occurs in any rule schema.
FormatReport check_equivariant(const Nrtss& n);

struct AcrOptions {
  // The candidate-atom filter nf({a # source}) != {}; disabling it
  // reproduces the Res/(i) diagnostic failure.
  bool nf_filter = true;
};

// Alpha-conversion-of-residuals format obligations, case-split per action
// head, candidate atoms finitized to the rule's atoms plus one fresh.
FormatReport check_acr(const Nrtss& n, const BnSpec& bn, const StratSpec& s,
                       const std::map<Sort, RawTerm>& gamma_inert,
                       const AcrOptions& opts = {});

// Binding-actions format obligations for abstraction-residual rulesets.
FormatReport check_ba(const Nrtss& n, const StratSpec& s);

// Empirical validation of a partial strict stratification: enumerates small
// ground states over the pool, derives, and checks conditions (i)/(ii) on
// every proof-tree node; also cross-checks measure definedness against
// defined_shapes.
struct StratTestOptions {
  unsigned depth = 3;
  unsigned fuel = 8;
  std::size_t max_states = 120;
};

FormatReport test_stratification(const Nrtss& n,
                                 const std::optional<BnSpec>& bn,
                                 const StratSpec& s, const AtomPool& pool,
                                 const StratTestOptions& opts = {});

// Deterministic enumeration of ground terms of `sort` with tree depth
// <= depth over the pool atoms (shared with tests).
std::vector<RawTerm> enumerate_ground_terms(const Signature& sig,
                                            const Sort& sort,
                                            const AtomPool& pool,
                                            unsigned depth,
                                            std::size_t max_count);

}  // namespace nrtss

#endif  // NRTSS_FORMATS_HPP
