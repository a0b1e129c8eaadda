#ifndef NRTSS_NOMINAL_HPP
#define NRTSS_NOMINAL_HPP

#include <set>

#include "nrtss/terms.hpp"

namespace nrtss {

// A nominal term: the canonical representative of the alpha-equivalence
// class of a ground raw term. Canonical forms contain no moderated nodes and
// every binder is the least atom of its sort not free in the body (minus the
// binder itself), chosen top-down, which makes alpha-equality structural.
class NominalTerm {
 public:
  NominalTerm() = default;

  // Discharges all moderations, then canonicalizes binders. Throws
  // std::invalid_argument on non-ground input.
  static NominalTerm interpret(const RawTerm& ground);

  bool null() const { return canon_.null(); }
  const RawTerm& canonical() const { return canon_; }
  const Sort& sort() const { return canon_.sort(); }
  const std::set<Atom>& support() const { return supp_; }

  friend bool operator==(const NominalTerm& a, const NominalTerm& b) {
    return a.canon_ == b.canon_;
  }
  friend bool operator<(const NominalTerm& a, const NominalTerm& b) {
    return a.canon_ < b.canon_;
  }

  // Internal: wraps an already-canonical tree.
  static NominalTerm from_canonical(RawTerm t);

 private:
  RawTerm canon_;
  std::set<Atom> supp_;
};

bool nominal_eq(const NominalTerm& a, const NominalTerm& b);
bool is_fresh(const Atom& a, const NominalTerm& t);
NominalTerm nominal_perm(const Permutation& p, const NominalTerm& t);

// Concretion of an abstraction <a>s at atom b: requires b = a or b # s;
// throws std::invalid_argument otherwise ("unsound concretion").
NominalTerm concrete(const NominalTerm& abs, const Atom& b);

// Canonical abstraction and pairing helpers.
NominalTerm nominal_abs(const Atom& binder, const NominalTerm& body);
NominalTerm nominal_pair(const NominalTerm& a, const NominalTerm& b);

}  // namespace nrtss

#endif  // NRTSS_NOMINAL_HPP
