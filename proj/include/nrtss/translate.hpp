#ifndef NRTSS_TRANSLATE_HPP
#define NRTSS_TRANSLATE_HPP

#include <set>
#include <string>
#include <vector>

#include "nrtss/engine.hpp"
#include "nrtss/formats.hpp"

namespace nrtss {

enum class ResidualStyle { Plain, Abstraction };

struct TransitionSet {
  ResidualStyle style = ResidualStyle::Plain;
  std::set<Transition> items;
};

// p -> (l,p')  ==>  p ->[ch] [a](l,p') with a the binding name of l, or a
// fresh atom when bn(l) is empty. Throws std::invalid_argument when
// |bn(l)| > 1 or the input is not plain-style.
TransitionSet trans_abs(const TransitionSet& ts, const BnSpec& bn,
                        const AtomPool& pool,
                        const std::string& abs_sort = "ch");

struct TransConcResult {
  TransitionSet plain;
  BnSpec observed_bn;
  // Transitions [a](l,p') with a # l but a in supp(p'), rendered.
  std::vector<std::string> ba_violations;
};

// p ->[ch] [a](l,p')  ==>  p -> (b a).(l,p') for b = a and each pool atom b
// fresh in (l,p'); observed bn collects the positions at which the
// abstracted atom occurs in its action.
TransConcResult trans_conc(const TransitionSet& ts, const AtomPool& pool);

// Pool-bounded closure under alpha-conversion of residuals.
TransitionSet close_alpha_residuals(const TransitionSet& ts, const BnSpec& bn,
                                    const AtomPool& pool);

struct RoundtripReport {
  std::vector<Transition> missing;  // in input, not in round-trip
  std::vector<Transition> extra;    // in round-trip, not in input
  std::vector<std::string> notes;   // bn mismatches, BA violations

  bool ok() const { return missing.empty() && extra.empty() && notes.empty(); }
};

// Trans(TransAbs(close(ts))) == close(ts), including the observed bn.
RoundtripReport roundtrip_plain(const TransitionSet& ts, const BnSpec& bn,
                                const AtomPool& pool,
                                const std::string& abs_sort = "ch");

// TransAbs(Trans(ts)) == ts, under the BA precondition (violations are
// reported, not swallowed).
RoundtripReport roundtrip_abs(const TransitionSet& ts, const AtomPool& pool,
                              const std::string& abs_sort = "ch");

}  // namespace nrtss

#endif  // NRTSS_TRANSLATE_HPP
