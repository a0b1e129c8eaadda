#include "nrtss/foundation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nrtss {

namespace {

Atom lookup(const std::vector<std::pair<Atom, Atom>>& table, const Atom& a) {
  auto it = std::lower_bound(
      table.begin(), table.end(), a,
      [](const std::pair<Atom, Atom>& e, const Atom& k) { return e.first < k; });
  if (it != table.end() && it->first == a) return it->second;
  return a;
}

}  // namespace

std::string atom_to_text(const Atom& a) {
  if (a.sort == "ch" && a.index < 26)
    return std::string(1, static_cast<char>('a' + a.index));
  return a.sort + ":" + std::to_string(a.index);
}

Atom fresh_atom(const std::string& sort, const std::set<Atom>& avoid,
                unsigned k) {
  std::uint32_t i = 0;
  for (;;) {
    Atom cand{sort, i};
    if (!avoid.count(cand)) {
      if (k == 0) return cand;
      --k;
    }
    ++i;
  }
}

Permutation Permutation::transposition(const Atom& a, const Atom& b) {
  if (a.sort != b.sort)
    throw std::invalid_argument("transposition: atoms of different sorts");
  Permutation p;
  if (a == b) return p;
  p.fwd_ = {{std::min(a, b), std::max(a, b)}, {std::max(a, b), std::min(a, b)}};
  p.inv_ = p.fwd_;
  return p;
}

Permutation Permutation::from_pairs(std::vector<std::pair<Atom, Atom>> pairs) {
  std::map<Atom, Atom> fwd, inv;
  for (const auto& [k, v] : pairs) {
    if (k.sort != v.sort)
      throw std::invalid_argument("permutation: cross-sort entry");
    auto [it, fresh] = fwd.emplace(k, v);
    if (!fresh && it->second != v)
      throw std::invalid_argument("permutation: conflicting entries");
    auto [jt, ifresh] = inv.emplace(v, k);
    if (!ifresh && jt->second != k)
      throw std::invalid_argument("permutation: not injective");
  }
  // Domain and range must coincide for a finite bijection.
  for (const auto& [k, v] : fwd)
    if (v != k && !fwd.count(v))
      throw std::invalid_argument("permutation: domain/range mismatch");
  Permutation p;
  for (const auto& [k, v] : fwd)
    if (k != v) p.fwd_.emplace_back(k, v);
  for (const auto& [k, v] : p.fwd_) p.inv_.emplace_back(v, k);
  std::sort(p.inv_.begin(), p.inv_.end());
  return p;
}

Atom Permutation::operator()(const Atom& a) const { return lookup(fwd_, a); }

Atom Permutation::inverse_apply(const Atom& a) const { return lookup(inv_, a); }

Permutation Permutation::compose(const Permutation& other) const {
  std::vector<std::pair<Atom, Atom>> pairs;
  std::set<Atom> keys;
  for (const auto& [k, v] : other.fwd_) keys.insert(k);
  for (const auto& [k, v] : fwd_) keys.insert(k);
  for (const Atom& k : keys) pairs.emplace_back(k, (*this)(other(k)));
  return from_pairs(std::move(pairs));
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.fwd_ = inv_;
  p.inv_ = fwd_;
  std::sort(p.inv_.begin(), p.inv_.end());
  return p;
}

std::set<Atom> Permutation::support() const {
  std::set<Atom> s;
  for (const auto& [k, v] : fwd_) s.insert(k);
  return s;
}

Renaming::Renaming(const Permutation& p) {
  map_ = p.pairs();
}

Renaming Renaming::replacement(const Atom& from, const Atom& to) {
  if (from.sort != to.sort)
    throw std::invalid_argument("replacement: atoms of different sorts");
  Renaming r;
  if (from != to) r.map_ = {{from, to}};
  return r;
}

Renaming Renaming::from_pairs(std::vector<std::pair<Atom, Atom>> pairs) {
  std::map<Atom, Atom> m;
  for (const auto& [k, v] : pairs) {
    if (k.sort != v.sort)
      throw std::invalid_argument("renaming: cross-sort entry");
    auto [it, fresh] = m.emplace(k, v);
    if (!fresh && it->second != v)
      throw std::invalid_argument("renaming: conflicting entries");
  }
  Renaming r;
  for (const auto& [k, v] : m)
    if (k != v) r.map_.emplace_back(k, v);
  return r;
}

Atom Renaming::operator()(const Atom& a) const { return lookup(map_, a); }

Renaming Renaming::then(const Renaming& r2) const {
  std::set<Atom> keys;
  for (const auto& [k, v] : map_) keys.insert(k);
  for (const auto& [k, v] : r2.map_) keys.insert(k);
  std::vector<std::pair<Atom, Atom>> pairs;
  for (const Atom& k : keys) pairs.emplace_back(k, r2((*this)(k)));
  return from_pairs(std::move(pairs));
}

std::set<Atom> Renaming::support() const {
  std::set<Atom> s;
  for (const auto& [k, v] : map_) {
    s.insert(k);
    s.insert(v);
  }
  return s;
}

Renaming perm_conjugate_renaming(const Permutation& p, const Renaming& r) {
  std::set<Atom> keys;
  for (const auto& [k, v] : r.pairs()) keys.insert(p(k));
  std::vector<std::pair<Atom, Atom>> pairs;
  for (const Atom& k : keys) pairs.emplace_back(k, p(r(p.inverse_apply(k))));
  return Renaming::from_pairs(std::move(pairs));
}

}  // namespace nrtss
