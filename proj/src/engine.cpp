#include "nrtss/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace nrtss {

AtomPool AtomPool::for_support(const Signature& sig,
                               const std::set<Atom>& supp,
                               unsigned fresh_slack) {
  AtomPool pool;
  for (const std::string& s : sig.atom_sorts()) pool.per_sort[s];
  for (const Atom& a : supp) pool.per_sort[a.sort].insert(a);
  for (auto& [sort, atoms] : pool.per_sort) {
    std::set<Atom> avoid = atoms;
    for (unsigned k = 0; k < fresh_slack; ++k) {
      Atom f = fresh_atom(sort, avoid);
      avoid.insert(f);
      atoms.insert(f);
    }
  }
  return pool;
}

AtomPool AtomPool::for_state(const Signature& sig, const NominalTerm& state,
                             unsigned fresh_slack) {
  return for_support(sig, state.support(), fresh_slack);
}

const std::set<Atom>& AtomPool::of_sort(const std::string& sort) const {
  static const std::set<Atom> empty;
  auto it = per_sort.find(sort);
  return it == per_sort.end() ? empty : it->second;
}

bool AtomPool::contains(const Atom& a) const {
  return of_sort(a.sort).count(a) > 0;
}

std::set<Atom> AtomPool::all() const {
  std::set<Atom> out;
  for (const auto& [sort, atoms] : per_sort) out.insert(atoms.begin(), atoms.end());
  return out;
}

std::vector<Permutation> AtomPool::transpositions() const {
  std::vector<Permutation> out;
  for (const auto& [sort, atoms] : per_sort) {
    std::vector<Atom> v(atoms.begin(), atoms.end());
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j)
        out.push_back(Permutation::transposition(v[i], v[j]));
  }
  return out;
}

unsigned ProofTree::height() const {
  unsigned h = 0;
  for (const ProofTree& c : children) h = std::max(h, c.height());
  return h + 1;
}

namespace {

int cmp_proof(const ProofTree& a, const ProofTree& b) {
  if (!(a.root == b.root)) return a.root < b.root ? -1 : 1;
  if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id ? -1 : 1;
  if (!(a.binds == b.binds)) return a.binds < b.binds ? -1 : 1;
  if (a.children.size() != b.children.size())
    return a.children.size() < b.children.size() ? -1 : 1;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (int c = cmp_proof(a.children[i], b.children[i]); c != 0) return c;
  if (a.discharged != b.discharged) return a.discharged < b.discharged ? -1 : 1;
  return 0;
}

}  // namespace

bool operator==(const ProofTree& a, const ProofTree& b) {
  return cmp_proof(a, b) == 0;
}
bool operator<(const ProofTree& a, const ProofTree& b) {
  return cmp_proof(a, b) < 0;
}

std::set<Transition> DeriveResult::transitions() const {
  std::set<Transition> out;
  for (const Derivation& d : derivations) out.insert(d.transition);
  return out;
}

// ---------------------------------------------------------------------------
// Matching

namespace {

// Raw-term view of variable bindings for schema_bind.
std::map<Variable, RawTerm> raw_vars(const Bindings& b) {
  std::map<Variable, RawTerm> out;
  for (const auto& [v, val] : b.vars) out.emplace(v, val.canonical());
  return out;
}

class Matcher {
 public:
  Matcher(const RuleSchema& schema, const AtomPool& pool)
      : schema_(schema), pool_(pool) {}

  // Appends to `out` every extension of `binds` matching pattern = value.
  // `value` is a subtree of a canonical nominal term.
  void match(const RawTerm& pattern, const RawTerm& value, Bindings binds,
             std::vector<Bindings>& out) {
    switch (pattern.kind()) {
      case RawTerm::Kind::Var: {
        const Variable& v = pattern.as_var();
        if (const ActionParam* ap = schema_.find_action_param(v.name)) {
          match_action_var(*ap, v, value, std::move(binds), out);
          return;
        }
        NominalTerm val = NominalTerm::from_canonical(value);
        auto it = binds.vars.find(v);
        if (it != binds.vars.end()) {
          if (it->second == val) out.push_back(std::move(binds));
          return;
        }
        if (!(v.sort == value.sort())) return;
        binds.vars.emplace(v, std::move(val));
        out.push_back(std::move(binds));
        return;
      }
      case RawTerm::Kind::Atom: {
        if (value.kind() != RawTerm::Kind::Atom) return;
        match_atom_param(pattern.as_atom(), value.as_atom(), std::move(binds),
                         out);
        return;
      }
      case RawTerm::Kind::Abs: {
        if (value.kind() != RawTerm::Kind::Abs) return;
        const Atom& bparam = pattern.abs_binder();
        NominalTerm vabs = NominalTerm::from_canonical(value);
        const Atom& canon_binder = value.abs_binder();
        std::set<Atom> body_fa = free_atoms(value.abs_body());
        auto try_at = [&](const Atom& delta, const Bindings& b0) {
          if (!(delta == canon_binder) && body_fa.count(delta)) return;
          NominalTerm body = concrete(vabs, delta);
          std::vector<Bindings> here;
          match_atom_param(bparam, delta, b0, here);
          for (Bindings& b1 : here)
            match(pattern.abs_body(), body.canonical(), std::move(b1), out);
        };
        // A bound binder param pins the concretion atom.
        if (auto name = schema_.param_name(bparam)) {
          auto it = binds.atoms.find(*name);
          if (it != binds.atoms.end()) {
            try_at(it->second, binds);
            return;
          }
        }
        std::set<Atom> candidates = pool_.of_sort(canon_binder.sort);
        candidates.insert(canon_binder);
        for (const Atom& delta : candidates) try_at(delta, binds);
        return;
      }
      case RawTerm::Kind::Tuple: {
        if (value.kind() != RawTerm::Kind::Tuple) return;
        const auto& ps = pattern.tuple_items();
        const auto& vs = value.tuple_items();
        if (ps.size() != vs.size()) return;
        std::vector<Bindings> acc{std::move(binds)};
        for (size_t i = 0; i < ps.size(); ++i) {
          std::vector<Bindings> next;
          for (Bindings& b : acc) match(ps[i], vs[i], std::move(b), next);
          acc = std::move(next);
          if (acc.empty()) return;
        }
        for (Bindings& b : acc) out.push_back(std::move(b));
        return;
      }
      case RawTerm::Kind::App: {
        if (value.kind() != RawTerm::Kind::App ||
            value.app_fun() != pattern.app_fun())
          return;
        match(pattern.app_arg(), value.app_arg(), std::move(binds), out);
        return;
      }
      case RawTerm::Kind::Moderated:
        throw std::logic_error(
            "match: moderated pattern (rejected at ruleset load)");
    }
  }

  // Atom-position match: pattern atom is a schema placeholder (or, after
  // instantiation through bindings, must equal the value).
  void match_atom_param(const Atom& pattern, const Atom& value, Bindings binds,
                        std::vector<Bindings>& out) {
    if (auto name = schema_.param_name(pattern)) {
      auto it = binds.atoms.find(*name);
      if (it != binds.atoms.end()) {
        if (it->second == value) out.push_back(std::move(binds));
        return;
      }
      if (pattern.sort != value.sort) return;
      binds.atoms.emplace(*name, value);
      out.push_back(std::move(binds));
      return;
    }
    if (pattern == value) out.push_back(std::move(binds));
  }

 private:
  void match_action_var(const ActionParam& ap, const Variable& v,
                        const RawTerm& value, Bindings binds,
                        std::vector<Bindings>& out) {
    if (!(v.sort == value.sort())) return;
    if (value.kind() != RawTerm::Kind::App) return;
    auto bind_value = [&](Bindings b) {
      auto it = b.vars.find(v);
      NominalTerm val = NominalTerm::from_canonical(value);
      if (it != b.vars.end()) {
        if (it->second == val) out.push_back(std::move(b));
        return;
      }
      b.vars.emplace(v, std::move(val));
      out.push_back(std::move(b));
    };
    if (ap.allowed.empty()) {
      if (ap.forbidden.count(value.app_fun())) return;
      bind_value(std::move(binds));
      return;
    }
    std::vector<RawTerm> args;
    if (value.app_arg().kind() == RawTerm::Kind::Tuple)
      args = value.app_arg().tuple_items();
    else
      args = {value.app_arg()};
    for (const ActionHeadCase& c : ap.allowed) {
      if (c.head != value.app_fun()) continue;
      if (c.args.empty()) {
        bind_value(binds);
        continue;
      }
      if (c.args.size() != args.size()) continue;
      // Pin the named atom params to the action's arguments.
      std::vector<Bindings> acc{binds};
      bool dead = false;
      for (size_t i = 0; i < c.args.size() && !dead; ++i) {
        if (args[i].kind() != RawTerm::Kind::Atom) {
          dead = true;
          break;
        }
        std::vector<Bindings> next;
        for (Bindings& b : acc)
          match_atom_param(schema_.placeholder(c.args[i]), args[i].as_atom(),
                           std::move(b), next);
        acc = std::move(next);
        if (acc.empty()) dead = true;
      }
      if (!dead)
        for (Bindings& b : acc) bind_value(std::move(b));
    }
  }

  const RuleSchema& schema_;
  const AtomPool& pool_;
};

// Enumerates pool assignments for the given unbound atom params.
void enumerate_atom_params(const RuleSchema& schema,
                           const std::set<std::string>& params,
                           const AtomPool& pool, const Bindings& binds,
                           std::vector<Bindings>& out) {
  std::vector<std::string> todo;
  for (const std::string& p : params)
    if (!binds.atoms.count(p)) todo.push_back(p);
  std::vector<Bindings> acc{binds};
  for (const std::string& name : todo) {
    std::string sort;
    for (const AtomParam& p : schema.atom_params)
      if (p.name == name) sort = p.sort;
    const std::set<Atom>& atoms = pool.of_sort(sort);
    std::vector<Bindings> next;
    for (const Bindings& b : acc)
      for (const Atom& a : atoms) {
        Bindings b2 = b;
        b2.atoms.emplace(name, a);
        next.push_back(std::move(b2));
      }
    acc = std::move(next);
  }
  out.insert(out.end(), acc.begin(), acc.end());
}

std::set<std::string> all_atom_params(const RuleSchema& r) {
  std::set<std::string> out;
  for (const AtomParam& p : r.atom_params) out.insert(p.name);
  return out;
}

class DeriveContext {
 public:
  DeriveContext(const Nrtss& n, const AtomPool& pool) : n_(n), pool_(pool) {}

  DeriveResult run(const NominalTerm& state, unsigned fuel) {
    auto key = std::make_pair(state, fuel);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    DeriveResult res;
    if (fuel == 0) {
      res.complete = false;
      cache_.emplace(key, res);
      return res;
    }
    std::vector<Derivation> all;
    for (const RuleSchema& r : n_.rules()) {
      Matcher m(r, pool_);
      std::vector<Bindings> starts;
      m.match(r.conclusion.source, state.canonical(), Bindings{}, starts);
      for (Bindings& b0 : starts)
        derive_rule(r, state, std::move(b0), fuel, all, res.complete);
    }
    std::sort(all.begin(), all.end(), [](const Derivation& a, const Derivation& b) {
      if (!(a.transition == b.transition)) return a.transition < b.transition;
      return a.proof < b.proof;
    });
    all.erase(std::unique(all.begin(), all.end(),
                          [](const Derivation& a, const Derivation& b) {
                            return a.transition == b.transition &&
                                   a.proof == b.proof;
                          }),
              all.end());
    res.derivations = std::move(all);
    cache_.emplace(key, res);
    return res;
  }

 private:
  struct Partial {
    Bindings binds;
    std::vector<ProofTree> children;
  };

  void derive_rule(const RuleSchema& r, const NominalTerm& state,
                   Bindings binds, unsigned fuel, std::vector<Derivation>& out,
                   bool& complete) {
    std::vector<Partial> acc{Partial{std::move(binds), {}}};
    Matcher m(r, pool_);

    for (const Formula& premiss : r.premisses) {
      std::vector<Partial> next;
      for (Partial& part : acc) {
        // Premiss-source atom params not yet bound range over the pool.
        std::vector<Bindings> ready;
        enumerate_atom_params(r, schema_atom_params_in(r, premiss.source),
                              pool_, part.binds, ready);
        for (const Bindings& b : ready) {
          RawTerm src = schema_bind(r, premiss.source, b.atoms, raw_vars(b));
          if (!is_ground(src)) continue;  // validate() rules this out
          NominalTerm substate = NominalTerm::interpret(src);
          DeriveResult sub = run(substate, fuel - 1);
          if (!sub.complete) complete = false;
          // One representative proof per premiss transition.
          std::map<Transition, const ProofTree*> reps;
          for (const Derivation& d : sub.derivations)
            reps.emplace(d.transition, &d.proof);
          for (const auto& [trans, proof] : reps) {
            std::vector<Bindings> matched;
            m.match(premiss.residual, trans.residual.canonical(), b, matched);
            for (Bindings& b2 : matched) {
              Partial p2;
              p2.binds = std::move(b2);
              p2.children = part.children;
              p2.children.push_back(*proof);
              next.push_back(std::move(p2));
            }
          }
        }
      }
      acc = std::move(next);
      if (acc.empty()) return;
    }

    for (Partial& part : acc) {
      std::vector<Bindings> full;
      enumerate_atom_params(r, all_atom_params(r), pool_, part.binds, full);
      for (const Bindings& b : full) {
        std::map<Variable, RawTerm> vars = raw_vars(b);
        // Discharge the freshness environment on ground instances.
        std::vector<FreshAssertion> discharged;
        bool ok = true;
        for (const FreshAssertion& a : r.env) {
          Atom at = a.atom;
          if (auto name = r.param_name(at)) at = b.atoms.at(*name);
          RawTerm t = schema_bind(r, a.term, b.atoms, vars);
          if (!is_ground(t) || !holds_ground(at, t)) {
            ok = false;
            break;
          }
          discharged.push_back(FreshAssertion{at, t});
        }
        if (!ok) continue;
        RawTerm res_raw = schema_bind(r, r.conclusion.residual, b.atoms, vars);
        if (!is_ground(res_raw)) continue;
        Transition tr{state, NominalTerm::interpret(res_raw)};
        ProofTree pt{tr, r.id, b, part.children, std::move(discharged)};
        out.push_back(Derivation{tr, std::move(pt)});
      }
    }
  }

  const Nrtss& n_;
  const AtomPool& pool_;
  std::map<std::pair<NominalTerm, unsigned>, DeriveResult> cache_;
};

}  // namespace

std::vector<Bindings> match_state(const RuleSchema& schema,
                                  const RawTerm& pattern,
                                  const NominalTerm& state,
                                  const AtomPool& pool) {
  std::vector<Bindings> out;
  Matcher m(schema, pool);
  m.match(pattern, state.canonical(), Bindings{}, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DeriveResult derive(const Nrtss& n, const NominalTerm& state,
                    const AtomPool& pool, unsigned fuel) {
  if (fuel == 0) throw std::invalid_argument("derive: fuel must be >= 1");
  DeriveContext ctx(n, pool);
  return ctx.run(state, fuel);
}

bool check_proof(const Nrtss& n, const ProofTree& pt) {
  const RuleSchema* r = n.rule(pt.rule_id);
  if (!r) return false;

  // Reassemble the concrete rule from the recorded assignments.
  std::map<std::string, Atom> atom_env = pt.binds.atoms;
  for (const AtomParam& p : r->atom_params)
    if (!atom_env.count(p.name)) return false;
  std::map<std::string, RawTerm> action_env;
  std::optional<Sort> as = n.action_sort();
  for (const ActionParam& p : r->action_params) {
    if (!as) return false;
    auto it = pt.binds.vars.find(Variable{p.name, *as});
    if (it == pt.binds.vars.end()) return false;
    action_env.emplace(p.name, it->second.canonical());
  }
  ConcreteRule concrete;
  try {
    concrete = rule_instantiate(n, *r, atom_env, action_env);
  } catch (const std::invalid_argument&) {
    return false;
  }

  Substitution phi;
  for (const auto& [v, val] : pt.binds.vars) {
    if (as && r->find_action_param(v.name) && v.sort == *as) continue;
    try {
      phi.set(v, val.canonical());
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
  if (!phi.is_ground()) return false;

  auto instantiates = [&phi](const Formula& f, const Transition& t) {
    RawTerm s = phi(f.source);
    RawTerm r2 = phi(f.residual);
    if (!is_ground(s) || !is_ground(r2)) return false;
    return NominalTerm::interpret(s) == t.source &&
           NominalTerm::interpret(r2) == t.residual;
  };

  if (!instantiates(concrete.conclusion, pt.root)) return false;
  if (pt.children.size() != concrete.premisses.size()) return false;
  for (size_t i = 0; i < pt.children.size(); ++i) {
    if (!instantiates(concrete.premisses[i], pt.children[i].root)) return false;
    if (!check_proof(n, pt.children[i])) return false;
  }
  for (const FreshAssertion& a : concrete.env) {
    RawTerm t = phi(a.term);
    if (!is_ground(t) || !holds_ground(a.atom, t)) return false;
  }
  return true;
}

}  // namespace nrtss
