#include "nrtss/formats.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "nrtss/syntax.hpp"

namespace nrtss {

std::set<Atom> BnSpec::bn(const RawTerm& ground_action) const {
  std::set<Atom> out;
  if (ground_action.kind() != RawTerm::Kind::App) return out;
  auto it = positions.find(ground_action.app_fun());
  if (it == positions.end()) return out;
  std::vector<RawTerm> args;
  if (ground_action.app_arg().kind() == RawTerm::Kind::Tuple)
    args = ground_action.app_arg().tuple_items();
  else
    args = {ground_action.app_arg()};
  for (unsigned pos : it->second)
    if (pos >= 1 && pos <= args.size() &&
        args[pos - 1].kind() == RawTerm::Kind::Atom)
      out.insert(args[pos - 1].as_atom());
  return out;
}

bool BnSpec::binds(const RawTerm& ground_action, const Atom& a) const {
  return bn(ground_action).count(a) > 0;
}

bool StratSpec::defined(const std::string& source_head,
                        const std::string& action_head) const {
  return defined_shapes.count({source_head, action_head}) > 0 ||
         defined_shapes.count({"*", action_head}) > 0;
}

std::string FormatReport::to_text() const {
  std::ostringstream os;
  for (const std::string& e : errors) os << "ERROR " << e << "\n";
  for (const Obligation& o : obligations) {
    os << o.rule;
    if (!o.case_head.empty()) os << " case=" << o.case_head;
    if (!o.atom.empty()) os << " atom=" << o.atom;
    os << " ob=" << o.kind << " -> " << (o.pass ? "PASS" : "FAIL");
    if (!o.pass && !o.detail.empty()) os << "  [" << o.detail << "]";
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Equivariant format

namespace {

void collect_concrete(const RawTerm& t, std::set<Atom>& out) {
  switch (t.kind()) {
    case RawTerm::Kind::Var:
      return;
    case RawTerm::Kind::Atom:
      if (!is_schema_atom(t.as_atom())) out.insert(t.as_atom());
      return;
    case RawTerm::Kind::Moderated:
      for (const auto& [k, v] : t.mod_renaming().pairs()) {
        if (!is_schema_atom(k)) out.insert(k);
        if (!is_schema_atom(v)) out.insert(v);
      }
      collect_concrete(t.mod_term(), out);
      return;
    case RawTerm::Kind::Abs:
      if (!is_schema_atom(t.abs_binder())) out.insert(t.abs_binder());
      collect_concrete(t.abs_body(), out);
      return;
    case RawTerm::Kind::Tuple:
      for (const RawTerm& c : t.tuple_items()) collect_concrete(c, out);
      return;
    case RawTerm::Kind::App:
      collect_concrete(t.app_arg(), out);
      return;
  }
}

}  // namespace

FormatReport check_equivariant(const Nrtss& n) {
  FormatReport rep;
  for (const RuleSchema& r : n.rules()) {
    std::set<Atom> found;
    for (const Formula& f : r.premisses) {
      collect_concrete(f.source, found);
      collect_concrete(f.residual, found);
    }
    collect_concrete(r.conclusion.source, found);
    collect_concrete(r.conclusion.residual, found);
    for (const FreshAssertion& a : r.env) {
      if (!is_schema_atom(a.atom)) found.insert(a.atom);
      collect_concrete(a.term, found);
    }
    Obligation o;
    o.rule = r.id;
    o.kind = "equivariant";
    o.pass = found.empty();
    if (!found.empty()) {
      std::string atoms;
      for (const Atom& a : found) atoms += atom_to_text(a) + " ";
      o.detail = "concrete atoms in rule: " + atoms;
    }
    rep.obligations.push_back(std::move(o));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Shared case-splitting machinery

namespace {

// The action component of an NTS-shaped residual term, plus (for the
// abstraction style) the abstracted atom and the target component.
struct ResidualParts {
  std::optional<Atom> binder;
  RawTerm action;
  RawTerm target;
};

std::optional<ResidualParts> residual_parts(bool abs_style,
                                            const RawTerm& residual) {
  ResidualParts out;
  const RawTerm* pair = &residual;
  if (abs_style) {
    if (residual.kind() != RawTerm::Kind::Abs) return std::nullopt;
    out.binder = residual.abs_binder();
    pair = &residual.abs_body();
  }
  if (pair->kind() != RawTerm::Kind::Tuple || pair->tuple_items().size() != 2)
    return std::nullopt;
  out.action = pair->tuple_items()[0];
  out.target = pair->tuple_items()[1];
  return out;
}

// Number of atom-sorted arguments of an action head.
std::vector<std::string> action_arg_sorts(const Signature& sig,
                                          const std::string& head) {
  const FunDecl& d = sig.fun(head);
  std::vector<std::string> out;
  if (d.arg.is_atom()) {
    out.push_back(d.arg.id());
  } else if (d.arg.is_product()) {
    for (const Sort& s : d.arg.components())
      out.push_back(s.is_atom() ? s.id() : "");
  }
  return out;
}

// One instantiation case of a rule: all action params fixed to ground
// actions over the instantiated atoms plus case-fresh atoms.
struct RuleCase {
  std::string label;  // action head(s)
  ConcreteRule rule;
  std::set<Atom> atoms;  // all atoms occurring in the instance
};

// Instantiates the atom params of `r` with distinct concrete atoms and
// case-splits every action param over its allowed heads.
std::vector<RuleCase> split_cases(const Nrtss& n, const RuleSchema& r,
                                  std::vector<std::string>* errors) {
  // Distinct concrete atoms per declaration order, per sort.
  std::map<std::string, Atom> atom_env;
  std::map<std::string, std::uint32_t> next_index;
  for (const AtomParam& p : r.atom_params)
    atom_env[p.name] = Atom{p.sort, next_index[p.sort]++};

  std::optional<Sort> action_sort = n.action_sort();
  std::string ac_base =
      action_sort && action_sort->is_base() ? action_sort->id() : "";

  // All action heads of the signature.
  std::vector<std::string> heads;
  for (const auto& [id, d] : n.signature().sig.funs())
    if (d.result == ac_base) heads.push_back(id);

  struct PartialCase {
    std::string label;
    std::map<std::string, RawTerm> action_env;
    std::map<std::string, std::uint32_t> next;  // fresh-index per sort
  };
  PartialCase init;
  init.next = next_index;
  std::vector<PartialCase> acc{init};

  for (const ActionParam& p : r.action_params) {
    std::vector<PartialCase> step;
    for (const PartialCase& pc : acc) {
      std::vector<ActionHeadCase> cases;
      if (!p.allowed.empty()) {
        cases = p.allowed;
      } else {
        for (const std::string& h : heads)
          if (!p.forbidden.count(h)) cases.push_back(ActionHeadCase{h, {}});
      }
      for (const ActionHeadCase& c : cases) {
        PartialCase next = pc;
        std::vector<std::string> sorts =
            action_arg_sorts(n.signature().sig, c.head);
        std::vector<RawTerm> args;
        bool ok = true;
        for (size_t i = 0; i < sorts.size(); ++i) {
          if (!c.args.empty()) {
            if (i >= c.args.size()) {
              ok = false;
              break;
            }
            args.push_back(RawTerm::atom(atom_env.at(c.args[i])));
          } else if (!sorts[i].empty()) {
            args.push_back(RawTerm::atom(Atom{sorts[i], next.next[sorts[i]]++}));
          } else {
            ok = false;  // non-atom action argument: unsupported shape
            break;
          }
        }
        if (!ok) {
          if (errors)
            errors->push_back("rule " + r.id + ": action head " + c.head +
                              " has a non-atom argument");
          continue;
        }
        RawTerm arg = args.size() == 1 && n.signature().sig.fun(c.head).arg.is_atom()
                          ? args[0]
                          : RawTerm::tuple(args);
        RawTerm act;
        try {
          act = RawTerm::app(n.signature().sig, c.head, arg);
        } catch (const std::invalid_argument& e) {
          if (errors) errors->push_back(e.what());
          continue;
        }
        next.action_env[p.name] = act;
        next.label += (next.label.empty() ? "" : "+") + c.head;
        step.push_back(std::move(next));
      }
    }
    acc = std::move(step);
  }

  std::vector<RuleCase> out;
  for (const PartialCase& pc : acc) {
    RuleCase rc;
    try {
      rc.rule = rule_instantiate(n, r, atom_env, pc.action_env);
    } catch (const std::invalid_argument& e) {
      if (errors) errors->push_back(e.what());
      continue;
    }
    rc.label = pc.label;
    if (rc.label.empty()) {
      // Ground action in the rule itself: label by the conclusion's head.
      auto parts = residual_parts(n.abstraction_style(), rc.rule.conclusion.residual);
      if (parts && parts->action.kind() == RawTerm::Kind::App)
        rc.label = parts->action.app_fun();
    }
    rc.atoms = rule_support(rc.rule);
    for (const auto& [name, a] : atom_env) rc.atoms.insert(a);
    out.push_back(std::move(rc));
  }
  return out;
}

std::string head_of(const RawTerm& t) {
  return t.kind() == RawTerm::Kind::App ? t.app_fun() : "";
}

}  // namespace

// ---------------------------------------------------------------------------
// ACR format

FormatReport check_acr(const Nrtss& n, const BnSpec& bn, const StratSpec& s,
                       const std::map<Sort, RawTerm>& gamma_inert,
                       const AcrOptions& opts) {
  FormatReport rep;
  if (n.abstraction_style()) {
    rep.errors.push_back("check_acr: ruleset has abstraction-sort residuals");
    return rep;
  }
  for (const RuleSchema& r : n.rules()) {
    for (const RuleCase& rc : split_cases(n, r, &rep.errors)) {
      auto conc = residual_parts(false, rc.rule.conclusion.residual);
      if (!conc) {
        rep.errors.push_back("rule " + r.id + ": residual is not (action, target)");
        continue;
      }
      if (!s.defined(head_of(rc.rule.conclusion.source), head_of(conc->action)))
        continue;  // order undefined: rule cannot join binding proof trees

      // D: variables of the source dropped everywhere else.
      std::set<Variable> dropped = term_vars(rc.rule.conclusion.source);
      auto erase_vars = [&dropped](const RawTerm& t) {
        for (const Variable& v : term_vars(t)) dropped.erase(v);
      };
      for (const Formula& f : rc.rule.premisses) {
        erase_vars(f.source);
        erase_vars(f.residual);
      }
      for (const FreshAssertion& a : rc.rule.env) erase_vars(a.term);
      erase_vars(conc->target);
      erase_vars(conc->action);

      Substitution gamma;
      for (const Variable& v : dropped) {
        auto it = gamma_inert.find(v.sort);
        if (it == gamma_inert.end())
          throw std::invalid_argument(
              "check_acr: no inert term for dropped variable sort " +
              v.sort.to_text());
        gamma.set(v, it->second);
      }
      RawTerm gamma_source = gamma(rc.rule.conclusion.source);

      // Candidate atoms: the instance's atoms plus one fresh per atom sort,
      // filtered by nf({a # source}) != {}.
      std::set<Atom> candidates = rc.atoms;
      for (const std::string& as : n.signature().sig.atom_sorts())
        candidates.insert(fresh_atom(as, rc.atoms));
      for (const Atom& a : candidates) {
        if (opts.nf_filter) {
          FreshnessEnv probe{FreshAssertion{a, rc.rule.conclusion.source}};
          if (simplify(probe).empty()) continue;  // certainly fresh
        }
        FreshnessEnv base;
        base.insert(FreshAssertion{a, rc.rule.conclusion.residual});
        base.merge(rc.rule.env);

        Obligation ob1;
        ob1.rule = r.id;
        ob1.case_head = rc.label;
        ob1.atom = atom_to_text(a);
        ob1.kind = "i";
        FreshnessEnv rhs1;
        for (const Formula& f : rc.rule.premisses)
          rhs1.insert(FreshAssertion{a, f.residual});
        ob1.pass = entails(base, rhs1);
        if (!ob1.pass)
          ob1.detail = "{a # conclusion residual} u env does not entail "
                       "freshness in every premiss residual";
        rep.obligations.push_back(std::move(ob1));

        Obligation ob2;
        ob2.rule = r.id;
        ob2.case_head = rc.label;
        ob2.atom = atom_to_text(a);
        ob2.kind = "ii";
        FreshnessEnv lhs2 = base;
        for (const Formula& f : rc.rule.premisses)
          lhs2.insert(FreshAssertion{a, f.source});
        FreshnessEnv rhs2{FreshAssertion{a, gamma_source}};
        ob2.pass = entails(lhs2, rhs2);
        if (!ob2.pass)
          ob2.detail = "freshness in the source is not entailed";
        rep.obligations.push_back(std::move(ob2));
      }

      for (const Atom& b : bn.bn(conc->action)) {
        Obligation ob3;
        ob3.rule = r.id;
        ob3.case_head = rc.label;
        ob3.atom = atom_to_text(b);
        ob3.kind = "iii";
        FreshnessEnv lhs = rc.rule.env;
        for (const Formula& f : rc.rule.premisses) {
          auto parts = residual_parts(false, f.residual);
          if (parts && bn.binds(parts->action, b))
            lhs.insert(FreshAssertion{b, f.source});
        }
        FreshnessEnv rhs{FreshAssertion{b, gamma(rc.rule.conclusion.source)}};
        ob3.pass = entails(lhs, rhs);
        if (!ob3.pass)
          ob3.detail = "binding name not entailed fresh in the source";
        rep.obligations.push_back(std::move(ob3));
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// BA format

FormatReport check_ba(const Nrtss& n, const StratSpec& s) {
  FormatReport rep;
  if (!n.abstraction_style()) {
    rep.errors.push_back("check_ba: residual sort is not an abstraction sort");
    return rep;
  }
  for (const RuleSchema& r : n.rules()) {
    for (const RuleCase& rc : split_cases(n, r, &rep.errors)) {
      auto conc = residual_parts(true, rc.rule.conclusion.residual);
      if (!conc || !conc->binder) {
        rep.errors.push_back("rule " + r.id +
                             ": residual is not [a](action, target)");
        continue;
      }
      Obligation ob;
      ob.rule = r.id;
      ob.case_head = rc.label;
      ob.atom = atom_to_text(*conc->binder);
      ob.kind = "ba";
      if (term_support(conc->action).count(*conc->binder)) {
        ob.pass = true;  // binder occurs in the action
        rep.obligations.push_back(std::move(ob));
        continue;
      }
      if (!s.defined(head_of(rc.rule.conclusion.source), head_of(conc->action)))
        continue;
      FreshnessEnv lhs = rc.rule.env;
      for (const Formula& f : rc.rule.premisses) {
        auto parts = residual_parts(true, f.residual);
        if (!parts || !parts->binder) continue;
        if (!term_support(parts->action).count(*parts->binder))
          lhs.insert(FreshAssertion{*parts->binder, parts->target});
      }
      FreshnessEnv rhs{FreshAssertion{*conc->binder, conc->target}};
      ob.pass = entails(lhs, rhs);
      if (!ob.pass)
        ob.detail = "abstracted atom not entailed fresh in the target";
      rep.obligations.push_back(std::move(ob));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Stratification testing

std::vector<RawTerm> enumerate_ground_terms(const Signature& sig,
                                            const Sort& sort,
                                            const AtomPool& pool,
                                            unsigned depth,
                                            std::size_t max_count) {
  std::vector<RawTerm> out;
  if (max_count == 0) return out;
  switch (sort.kind()) {
    case Sort::Kind::Atom:
      if (depth == 0) return out;
      for (const Atom& a : pool.of_sort(sort.id())) {
        out.push_back(RawTerm::atom(a));
        if (out.size() >= max_count) return out;
      }
      return out;
    case Sort::Kind::Abs: {
      if (depth == 0) return out;
      for (const Atom& a : pool.of_sort(sort.id())) {
        for (const RawTerm& b :
             enumerate_ground_terms(sig, sort.abs_inner(), pool, depth - 1,
                                    max_count)) {
          out.push_back(RawTerm::abs(a, b));
          if (out.size() >= max_count) return out;
        }
      }
      return out;
    }
    case Sort::Kind::Product: {
      if (sort.components().empty()) {
        out.push_back(RawTerm::tuple({}));
        return out;
      }
      if (depth == 0) return out;
      std::vector<std::vector<RawTerm>> comp;
      for (const Sort& c : sort.components())
        comp.push_back(
            enumerate_ground_terms(sig, c, pool, depth - 1, max_count));
      std::vector<std::vector<RawTerm>> tuples{{}};
      for (const auto& options : comp) {
        std::vector<std::vector<RawTerm>> next;
        for (const auto& partial : tuples)
          for (const RawTerm& o : options) {
            auto t = partial;
            t.push_back(o);
            next.push_back(std::move(t));
            if (next.size() > max_count) break;
          }
        tuples = std::move(next);
      }
      for (auto& t : tuples) {
        out.push_back(RawTerm::tuple(std::move(t)));
        if (out.size() >= max_count) return out;
      }
      return out;
    }
    case Sort::Kind::Base: {
      if (depth == 0) return out;
      for (const auto& [id, d] : sig.funs()) {
        if (d.result != sort.id()) continue;
        for (const RawTerm& arg :
             enumerate_ground_terms(sig, d.arg, pool, depth - 1, max_count)) {
          out.push_back(RawTerm::app_raw(id, arg, Sort::base(d.result)));
          if (out.size() >= max_count) return out;
        }
      }
      return out;
    }
  }
  return out;
}

namespace {

// Measure arguments for a proof node: (source, action) in plain mode,
// (source, [a]action) in abstraction mode. nullopt when the node's residual
// does not require and does not admit an order (see conditions below).
struct NodeView {
  NominalTerm source;
  NominalTerm measure_arg;
  bool binding = false;  // plain: bn nonempty; abs: abstracted atom # action
  std::string source_head;
  std::string action_head;
};

std::optional<NodeView> node_view(bool abs_style,
                                  const std::optional<BnSpec>& bn,
                                  const Transition& t) {
  const RawTerm& res = t.residual.canonical();
  NodeView v;
  v.source = t.source;
  v.source_head = head_of(t.source.canonical());
  if (abs_style) {
    if (res.kind() != RawTerm::Kind::Abs) return std::nullopt;
    const RawTerm& pair = res.abs_body();
    if (pair.kind() != RawTerm::Kind::Tuple || pair.tuple_items().size() != 2)
      return std::nullopt;
    const RawTerm& act = pair.tuple_items()[0];
    v.action_head = head_of(act);
    v.binding = term_support(act).count(res.abs_binder()) == 0;
    // Re-canonicalize: the pair's binder need not be canonical for the
    // action alone.
    v.measure_arg = nominal_abs(res.abs_binder(),
                                NominalTerm::from_canonical(act));
    return v;
  }
  if (res.kind() != RawTerm::Kind::Tuple || res.tuple_items().size() != 2)
    return std::nullopt;
  const RawTerm& act = res.tuple_items()[0];
  v.action_head = head_of(act);
  v.binding = bn && !bn->bn(act).empty();
  v.measure_arg = NominalTerm::from_canonical(act);
  return v;
}

void check_node(const ProofTree& pt, bool abs_style,
                const std::optional<BnSpec>& bn, const StratSpec& s,
                FormatReport& rep) {
  auto view = node_view(abs_style, bn, pt.root);
  if (!view) return;
  auto order = s.measure(view->source, view->measure_arg);
  if (view->binding && !order) {
    Obligation o;
    o.rule = pt.rule_id;
    o.kind = "strat";
    o.pass = false;
    o.detail = "condition (i): binding conclusion has undefined order";
    rep.obligations.push_back(std::move(o));
  }
  if (order && !s.defined(view->source_head, view->action_head)) {
    Obligation o;
    o.rule = pt.rule_id;
    o.kind = "strat";
    o.pass = false;
    o.detail = "measure defined outside defined_shapes: (" +
               view->source_head + ", " + view->action_head + ")";
    rep.obligations.push_back(std::move(o));
  }
  if (order) {
    for (const ProofTree& child : pt.children) {
      auto cview = node_view(abs_style, bn, child.root);
      if (!cview) continue;
      if (abs_style && !cview->binding)
        continue;  // (ii) only constrains premisses with a_i # l_i
      auto corder = s.measure(cview->source, cview->measure_arg);
      if (!corder || *corder >= *order) {
        Obligation o;
        o.rule = pt.rule_id;
        o.kind = "strat";
        o.pass = false;
        o.detail = "condition (ii): premiss order not strictly below "
                   "conclusion order";
        rep.obligations.push_back(std::move(o));
      }
    }
  }
  for (const ProofTree& child : pt.children)
    check_node(child, abs_style, bn, s, rep);
}

}  // namespace

FormatReport test_stratification(const Nrtss& n,
                                 const std::optional<BnSpec>& bn,
                                 const StratSpec& s, const AtomPool& pool,
                                 const StratTestOptions& opts) {
  FormatReport rep;
  if (!s.measure) {
    rep.errors.push_back("test_stratification: no measure supplied");
    return rep;
  }
  std::vector<RawTerm> states =
      enumerate_ground_terms(n.signature().sig, n.signature().state_sort, pool,
                             opts.depth, opts.max_states);
  std::size_t checked = 0;
  for (const RawTerm& sraw : states) {
    NominalTerm state = NominalTerm::interpret(sraw);
    DeriveResult res = derive(n, state, pool, opts.fuel);
    for (const Derivation& d : res.derivations)
      check_node(d.proof, n.abstraction_style(), bn, s, rep);
    ++checked;
  }
  Obligation summary;
  summary.rule = "-";
  summary.kind = "strat";
  summary.pass = true;
  summary.detail = "checked " + std::to_string(checked) + " states";
  rep.obligations.push_back(std::move(summary));
  return rep;
}

}  // namespace nrtss
