#include "nrtss/nominal.hpp"

#include <stdexcept>

namespace nrtss {

namespace {

// Pushes every delayed renaming through; result is moderation-free.
RawTerm discharge(const RawTerm& t) {
  switch (t.kind()) {
    case RawTerm::Kind::Var:
    case RawTerm::Kind::Atom:
      return t;
    case RawTerm::Kind::Moderated:
      return discharge(ren_act_term(t.mod_term(), t.mod_renaming()));
    case RawTerm::Kind::Abs:
      return RawTerm::abs(t.abs_binder(), discharge(t.abs_body()));
    case RawTerm::Kind::Tuple: {
      std::vector<RawTerm> items;
      items.reserve(t.tuple_items().size());
      for (const RawTerm& c : t.tuple_items()) items.push_back(discharge(c));
      return RawTerm::tuple(std::move(items));
    }
    case RawTerm::Kind::App:
      return RawTerm::app_raw(t.app_fun(), discharge(t.app_arg()), t.sort());
  }
  return t;
}

// Canonical form of pending . t for a moderation-free ground t. Binders are
// chosen top-down: at <a>s the binder becomes the least atom of its sort not
// in pending(fa(s)) \ {pending(a)}.
RawTerm canon(const RawTerm& t, const Permutation& pending) {
  switch (t.kind()) {
    case RawTerm::Kind::Atom:
      return RawTerm::atom(pending(t.as_atom()));
    case RawTerm::Kind::Abs: {
      Atom a = pending(t.abs_binder());
      std::set<Atom> avoid;
      for (const Atom& x : free_atoms(t.abs_body()))
        avoid.insert(pending(x));
      avoid.erase(a);
      Atom b = fresh_atom(a.sort, avoid);
      Permutation inner =
          b == a ? pending : Permutation::transposition(b, a).compose(pending);
      return RawTerm::abs(b, canon(t.abs_body(), inner));
    }
    case RawTerm::Kind::Tuple: {
      std::vector<RawTerm> items;
      items.reserve(t.tuple_items().size());
      for (const RawTerm& c : t.tuple_items()) items.push_back(canon(c, pending));
      return RawTerm::tuple(std::move(items));
    }
    case RawTerm::Kind::App:
      return RawTerm::app_raw(t.app_fun(), canon(t.app_arg(), pending),
                              t.sort());
    case RawTerm::Kind::Var:
    case RawTerm::Kind::Moderated:
      throw std::logic_error("canon: non-ground or moderated input");
  }
  return t;
}

}  // namespace

NominalTerm NominalTerm::interpret(const RawTerm& ground) {
  if (ground.null()) throw std::invalid_argument("interpret: null term");
  if (!is_ground(ground))
    throw std::invalid_argument("interpret: term is not ground");
  return from_canonical(canon(discharge(ground), Permutation()));
}

NominalTerm NominalTerm::from_canonical(RawTerm t) {
  NominalTerm n;
  n.supp_ = free_atoms(t);
  n.canon_ = std::move(t);
  return n;
}

bool nominal_eq(const NominalTerm& a, const NominalTerm& b) {
  if (!(a.sort() == b.sort()))
    throw std::invalid_argument("nominal_eq: sort mismatch");
  return a == b;
}

bool is_fresh(const Atom& a, const NominalTerm& t) {
  return t.support().count(a) == 0;
}

NominalTerm nominal_perm(const Permutation& p, const NominalTerm& t) {
  if (p.is_identity()) return t;
  return NominalTerm::from_canonical(canon(t.canonical(), p));
}

NominalTerm concrete(const NominalTerm& abs, const Atom& b) {
  if (abs.null() || abs.canonical().kind() != RawTerm::Kind::Abs)
    throw std::invalid_argument("concrete: not an abstraction");
  const RawTerm& tree = abs.canonical();
  const Atom& a = tree.abs_binder();
  if (b == a) return NominalTerm::from_canonical(tree.abs_body());
  std::set<Atom> body_fa = free_atoms(tree.abs_body());
  if (body_fa.count(b))
    throw std::invalid_argument("unsound concretion: atom " + atom_to_text(b) +
                                " is in the support of the body");
  return NominalTerm::from_canonical(
      canon(tree.abs_body(), Permutation::transposition(b, a)));
}

NominalTerm nominal_abs(const Atom& binder, const NominalTerm& body) {
  return NominalTerm::from_canonical(
      canon(RawTerm::abs(binder, body.canonical()), Permutation()));
}

NominalTerm nominal_pair(const NominalTerm& a, const NominalTerm& b) {
  return NominalTerm::from_canonical(
      RawTerm::tuple({a.canonical(), b.canonical()}));
}

}  // namespace nrtss
