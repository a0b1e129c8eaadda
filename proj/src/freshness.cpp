#include "nrtss/freshness.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace nrtss {

bool is_reduced(const FreshAssertion& a) {
  switch (a.term.kind()) {
    case RawTerm::Kind::Var:
      return true;
    case RawTerm::Kind::Atom:
      return a.term.as_atom() == a.atom;  // a#a stays, a#b simplifies away
    case RawTerm::Kind::Moderated:
      return a.term.mod_term().kind() == RawTerm::Kind::Var;
    default:
      return false;
  }
}

bool is_normal_form(const FreshnessEnv& env) {
  for (const FreshAssertion& a : env)
    if (!is_reduced(a)) return false;
  return true;
}

std::optional<std::vector<FreshAssertion>> simplify_step(
    const FreshAssertion& a) {
  const Atom& at = a.atom;
  const RawTerm& t = a.term;
  switch (t.kind()) {
    case RawTerm::Kind::Var:
      return std::nullopt;
    case RawTerm::Kind::Atom:
      if (t.as_atom() == at) return std::nullopt;  // inconsistent, reduced
      return std::vector<FreshAssertion>{};        // a#b with a != b: drop
    case RawTerm::Kind::Moderated: {
      const RawTerm& inner = t.mod_term();
      const Renaming& rho = t.mod_renaming();
      switch (inner.kind()) {
        case RawTerm::Kind::Var:
          return std::nullopt;
        case RawTerm::Kind::Atom:
          return std::vector<FreshAssertion>{
              {at, RawTerm::atom(rho(inner.as_atom()))}};
        case RawTerm::Kind::Moderated:
          return std::vector<FreshAssertion>{
              {at, RawTerm::moderated(inner.mod_term(),
                                      inner.mod_renaming().then(rho))}};
        case RawTerm::Kind::Abs:
          return std::vector<FreshAssertion>{
              {at, RawTerm::abs(rho(inner.abs_binder()),
                                RawTerm::moderated(inner.abs_body(), rho))}};
        case RawTerm::Kind::Tuple: {
          std::vector<FreshAssertion> out;
          for (const RawTerm& c : inner.tuple_items())
            out.push_back({at, RawTerm::moderated(c, rho)});
          return out;
        }
        case RawTerm::Kind::App:
          return std::vector<FreshAssertion>{
              {at, RawTerm::moderated(inner.app_arg(), rho)}};
      }
      return std::nullopt;
    }
    case RawTerm::Kind::Abs:
      if (t.abs_binder() == at) return std::vector<FreshAssertion>{};
      return std::vector<FreshAssertion>{{at, t.abs_body()}};
    case RawTerm::Kind::Tuple: {
      std::vector<FreshAssertion> out;
      for (const RawTerm& c : t.tuple_items()) out.push_back({at, c});
      return out;
    }
    case RawTerm::Kind::App:
      return std::vector<FreshAssertion>{{at, t.app_arg()}};
  }
  return std::nullopt;
}

FreshnessEnv simplify(const FreshnessEnv& env) {
  static std::mutex mu;
  static std::map<FreshnessEnv, FreshnessEnv> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(env);
    if (it != cache.end()) return it->second;
  }

  std::set<FreshAssertion> done;
  std::vector<FreshAssertion> work(env.begin(), env.end());
  while (!work.empty()) {
    FreshAssertion a = work.back();
    work.pop_back();
    if (auto next = simplify_step(a)) {
      work.insert(work.end(), next->begin(), next->end());
    } else {
      done.insert(std::move(a));
    }
  }
  FreshnessEnv nf{std::move(done)};
  {
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(env, nf);
  }
  return nf;
}

bool is_consistent(const FreshnessEnv& env) {
  for (const FreshAssertion& a : simplify(env))
    if (a.term.kind() == RawTerm::Kind::Atom && a.term.as_atom() == a.atom)
      return false;
  return true;
}

FreshnessEnv widen(const FreshnessEnv& env) {
  if (!is_normal_form(env))
    throw std::invalid_argument("widen: input is not a normal form");
  FreshnessEnv out;
  for (const FreshAssertion& a : env) {
    if (a.term.kind() == RawTerm::Kind::Var)
      out.insert({a.atom, RawTerm::moderated(a.term, Renaming())});
    else
      out.insert(a);
  }
  return out;
}

std::optional<Permutation> find_mediator(const Atom& a1, const Renaming& r1,
                                         const Atom& a2, const Renaming& r2) {
  if (a1.sort != a2.sort) return std::nullopt;

  // r1;pi = r2 pins pi at every atom: pi(r1(c)) = r2(c), and pi is the
  // identity outside supp(r1) u supp(r2). Including a1, a2 in the probed set
  // realizes the identity constraint for them via functionality.
  std::set<Atom> probe = r1.support();
  probe.merge(r2.support());
  probe.insert(a1);
  probe.insert(a2);

  std::map<Atom, Atom> fwd;
  std::map<Atom, Atom> bwd;
  auto constrain = [&](const Atom& from, const Atom& to) -> bool {
    if (from.sort != to.sort) return false;
    auto [it, fresh] = fwd.emplace(from, to);
    if (!fresh && it->second != to) return false;
    auto [jt, jfresh] = bwd.emplace(to, from);
    if (!jfresh && jt->second != from) return false;
    return true;
  };
  for (const Atom& c : probe)
    if (!constrain(r1(c), r2(c))) return std::nullopt;
  if (!constrain(a1, a2)) return std::nullopt;

  // Close the partial injection into a permutation of `probe`: unmatched
  // domain and range atoms are paired per sort in order.
  std::map<std::string, std::vector<Atom>> open_from, open_to;
  for (const Atom& c : probe) {
    if (!fwd.count(c)) open_from[c.sort].push_back(c);
    if (!bwd.count(c)) open_to[c.sort].push_back(c);
  }
  std::vector<std::pair<Atom, Atom>> pairs(fwd.begin(), fwd.end());
  for (auto& [sort, froms] : open_from) {
    auto& tos = open_to[sort];
    if (froms.size() != tos.size()) return std::nullopt;
    for (size_t i = 0; i < froms.size(); ++i)
      pairs.emplace_back(froms[i], tos[i]);
  }
  try {
    return Permutation::from_pairs(std::move(pairs));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

namespace {

// a # x[rho] decomposition of a widened reduced assertion.
struct WidenedAssertion {
  Atom atom;
  Variable var;
  Renaming ren;
};

std::optional<WidenedAssertion> as_widened(const FreshAssertion& a) {
  if (a.term.kind() == RawTerm::Kind::Moderated &&
      a.term.mod_term().kind() == RawTerm::Kind::Var)
    return WidenedAssertion{a.atom, a.term.mod_term().as_var(),
                            a.term.mod_renaming()};
  return std::nullopt;
}

}  // namespace

bool entails(const FreshnessEnv& env1, const FreshnessEnv& env2) {
  if (!is_consistent(env1)) return true;
  FreshnessEnv lhs = widen(simplify(env1));
  FreshnessEnv rhs = widen(simplify(env2));
  for (const FreshAssertion& goal : rhs) {
    auto g = as_widened(goal);
    if (!g) return false;  // an a#a in nf(env2); env1 is consistent
    bool found = false;
    for (const FreshAssertion& have : lhs) {
      auto h = as_widened(have);
      if (!h || !(h->var == g->var)) continue;
      if (find_mediator(g->atom, g->ren, h->atom, h->ren)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool holds_ground(const Atom& a, const RawTerm& t) {
  return is_fresh(a, NominalTerm::interpret(t));
}

bool holds_ground(const FreshnessEnv& env) {
  for (const FreshAssertion& a : env)
    if (!holds_ground(a.atom, a.term)) return false;
  return true;
}

}  // namespace nrtss
