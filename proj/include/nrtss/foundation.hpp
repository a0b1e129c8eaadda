#ifndef NRTSS_FOUNDATION_HPP
#define NRTSS_FOUNDATION_HPP

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nrtss {

// Sorted atoms. Distinct sort ids denote disjoint atom universes; the
// universe per sort is unbounded and totally ordered by index.
struct Atom {
  std::string sort;
  std::uint32_t index = 0;

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

std::string atom_to_text(const Atom& a);

// Smallest atom of `sort` not in `avoid`, skipping `k` candidates first.
Atom fresh_atom(const std::string& sort, const std::set<Atom>& avoid,
                unsigned k = 0);

// Finite sort-preserving permutation of atoms. Only non-identity entries are
// stored; the inverse map is maintained eagerly.
class Permutation {
 public:
  Permutation() = default;

  static Permutation transposition(const Atom& a, const Atom& b);
  // Builds a permutation from (from -> to) pairs; throws std::invalid_argument
  // unless the pairs form a sort-preserving bijection.
  static Permutation from_pairs(std::vector<std::pair<Atom, Atom>> pairs);

  Atom operator()(const Atom& a) const;
  Atom inverse_apply(const Atom& a) const;

  // (p1.compose(p2))(a) == p1(p2(a)).
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;

  bool is_identity() const { return fwd_.empty(); }
  // {a | p(a) != a}
  std::set<Atom> support() const;
  const std::vector<std::pair<Atom, Atom>>& pairs() const { return fwd_; }

  friend auto operator<=>(const Permutation& x, const Permutation& y) {
    return x.fwd_ <=> y.fwd_;
  }
  friend bool operator==(const Permutation& x, const Permutation& y) {
    return x.fwd_ == y.fwd_;
  }

 private:
  // Both sorted by first component; no identity entries.
  std::vector<std::pair<Atom, Atom>> fwd_;
  std::vector<std::pair<Atom, Atom>> inv_;
};

// Finitely supported, sort-preserving renaming of atoms. Need not be
// injective. Only non-identity entries are stored.
class Renaming {
 public:
  Renaming() = default;
  // Every permutation is a renaming.
  Renaming(const Permutation& p);  // NOLINT: deliberate implicit embedding

  // The replacement [to/from]: sends `from` to `to`, fixes everything else.
  static Renaming replacement(const Atom& from, const Atom& to);
  // Throws std::invalid_argument on cross-sort or duplicate-key entries.
  static Renaming from_pairs(std::vector<std::pair<Atom, Atom>> pairs);

  Atom operator()(const Atom& a) const;

  // Diagrammatic composition: (r1.then(r2))(a) == r2(r1(a)).
  Renaming then(const Renaming& r2) const;

  // supp(r) = {a, r(a) | r(a) != a}
  std::set<Atom> support() const;
  bool is_identity() const { return map_.empty(); }
  const std::vector<std::pair<Atom, Atom>>& pairs() const { return map_; }

  friend auto operator<=>(const Renaming& x, const Renaming& y) {
    return x.map_ <=> y.map_;
  }
  friend bool operator==(const Renaming& x, const Renaming& y) {
    return x.map_ == y.map_;
  }

 private:
  std::vector<std::pair<Atom, Atom>> map_;  // sorted by key, no identities
};

// p . r = p^-1 ; r ; p, i.e. a |-> p(r(p^-1(a))).
Renaming perm_conjugate_renaming(const Permutation& p, const Renaming& r);

}  // namespace nrtss

#endif  // NRTSS_FOUNDATION_HPP
