#ifndef NRTSS_FRESHNESS_HPP
#define NRTSS_FRESHNESS_HPP

#include <optional>
#include <set>
#include <vector>

#include "nrtss/nominal.hpp"
#include "nrtss/terms.hpp"

namespace nrtss {

// A freshness assertion a # t over raw terms.
struct FreshAssertion {
  Atom atom;
  RawTerm term;

  friend bool operator==(const FreshAssertion& x, const FreshAssertion& y) {
    return x.atom == y.atom && x.term == y.term;
  }
  friend bool operator<(const FreshAssertion& x, const FreshAssertion& y) {
    if (x.atom != y.atom) return x.atom < y.atom;
    return x.term < y.term;
  }
};

// A finite set of freshness assertions.
class FreshnessEnv {
 public:
  FreshnessEnv() = default;
  FreshnessEnv(std::initializer_list<FreshAssertion> items)
      : items_(items) {}
  explicit FreshnessEnv(std::set<FreshAssertion> items)
      : items_(std::move(items)) {}

  void insert(FreshAssertion a) { items_.insert(std::move(a)); }
  void merge(const FreshnessEnv& other) {
    items_.insert(other.items_.begin(), other.items_.end());
  }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::set<FreshAssertion>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  friend bool operator==(const FreshnessEnv& x, const FreshnessEnv& y) {
    return x.items_ == y.items_;
  }
  friend bool operator<(const FreshnessEnv& x, const FreshnessEnv& y) {
    return x.items_ < y.items_;
  }

 private:
  std::set<FreshAssertion> items_;
};

// Reduced assertions are a#a, a#x and a#x[rho].
bool is_reduced(const FreshAssertion& a);
bool is_normal_form(const FreshnessEnv& env);

// One simplification step on a single assertion; nullopt when reduced.
std::optional<std::vector<FreshAssertion>> simplify_step(
    const FreshAssertion& a);

// The unique normal form nf(env). Cached per environment value.
FreshnessEnv simplify(const FreshnessEnv& env);

// Consistent iff nf(env) contains no a#a.
bool is_consistent(const FreshnessEnv& env);

// nf~(env): every bare-variable assertion a#x gains an explicit identity
// moderation a#x[id]. Input must be a normal form.
FreshnessEnv widen(const FreshnessEnv& env);

// A sort-preserving finite permutation pi with pi(a1) = a2 and r1;pi = r2
// (the latter for all atoms), when one exists.
std::optional<Permutation> find_mediator(const Atom& a1, const Renaming& r1,
                                         const Atom& a2, const Renaming& r2);

// Syntactic entailment between environments per the mediator criterion.
bool entails(const FreshnessEnv& env1, const FreshnessEnv& env2);

// Ground truth: a # NT(t). Throws std::invalid_argument on non-ground t.
bool holds_ground(const Atom& a, const RawTerm& t);
bool holds_ground(const FreshnessEnv& env);  // all assertions ground

}  // namespace nrtss

#endif  // NRTSS_FRESHNESS_HPP
