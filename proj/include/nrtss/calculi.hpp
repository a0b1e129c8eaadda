#ifndef NRTSS_CALCULI_HPP
#define NRTSS_CALCULI_HPP

#include <map>
#include <optional>
#include <string>

#include "nrtss/formats.hpp"
#include "nrtss/nrtss.hpp"
#include "nrtss/translate.hpp"

namespace nrtss {

// A built-in ruleset bundled with its binding-names spec, stratification
// and inert terms for the ACR checker.
struct CalculusBundle {
  std::string name;
  ResidualStyle style = ResidualStyle::Plain;
  Nrtss nrtss;
  std::optional<BnSpec> bn;
  StratSpec strat;
  std::map<Sort, RawTerm> inert;
};

const CalculusBundle& early_pi();
const CalculusBundle& late_pi();
const CalculusBundle& early_pi_abs();
const CalculusBundle& late_pi_abs();

// Lookup by CLI name: early, late, early-abs, late-abs.
const CalculusBundle* find_calculus(const std::string& name);

// The shipped rule-spec fixture text for a calculus.
const std::string& calculus_fixture_text(const std::string& name);

// Stratification measures transcribing the displayed clauses (exposed for
// direct testing; the bundles' StratSpec.measure calls these).
std::optional<std::uint64_t> strat_measure_early(const NominalTerm& state,
                                                 const NominalTerm& action);
std::optional<std::uint64_t> strat_measure_late(const NominalTerm& state,
                                                const NominalTerm& action);
std::optional<std::uint64_t> strat_measure_early_abs(
    const NominalTerm& state, const NominalTerm& abs_action);
std::optional<std::uint64_t> strat_measure_late_abs(
    const NominalTerm& state, const NominalTerm& abs_action);

}  // namespace nrtss

#endif  // NRTSS_CALCULI_HPP
