#include "nrtss/translate.hpp"

#include <stdexcept>

#include "nrtss/syntax.hpp"

namespace nrtss {

namespace {

struct PairParts {
  NominalTerm action;
  NominalTerm target;
  NominalTerm pair;
};

PairParts split_pair(const NominalTerm& residual) {
  const RawTerm& t = residual.canonical();
  if (t.kind() != RawTerm::Kind::Tuple || t.tuple_items().size() != 2)
    throw std::invalid_argument("residual is not an (action, target) pair");
  PairParts out;
  out.action = NominalTerm::from_canonical(t.tuple_items()[0]);
  out.target = NominalTerm::from_canonical(t.tuple_items()[1]);
  out.pair = residual;
  return out;
}

}  // namespace

TransitionSet trans_abs(const TransitionSet& ts, const BnSpec& bn,
                        const AtomPool& pool, const std::string& abs_sort) {
  (void)pool;
  if (ts.style != ResidualStyle::Plain)
    throw std::invalid_argument("trans_abs: input is not plain style");
  TransitionSet out;
  out.style = ResidualStyle::Abstraction;
  for (const Transition& t : ts.items) {
    PairParts parts = split_pair(t.residual);
    std::set<Atom> names = bn.bn(parts.action.canonical());
    if (names.size() > 1)
      throw std::invalid_argument("trans_abs: |bn(action)| > 1");
    Atom a = names.size() == 1
                 ? *names.begin()
                 : fresh_atom(abs_sort, t.residual.support());
    out.items.insert(Transition{t.source, nominal_abs(a, parts.pair)});
  }
  return out;
}

TransConcResult trans_conc(const TransitionSet& ts, const AtomPool& pool) {
  if (ts.style != ResidualStyle::Abstraction)
    throw std::invalid_argument("trans_conc: input is not abstraction style");
  TransConcResult out;
  out.plain.style = ResidualStyle::Plain;
  for (const Transition& t : ts.items) {
    const RawTerm& res = t.residual.canonical();
    if (res.kind() != RawTerm::Kind::Abs)
      throw std::invalid_argument("trans_conc: residual is not an abstraction");
    Atom a = res.abs_binder();
    NominalTerm pair = NominalTerm::from_canonical(res.abs_body());
    PairParts parts = split_pair(pair);

    if (parts.action.support().count(a)) {
      // Observed bn: the positions at which the abstracted atom occurs.
      const RawTerm& act = parts.action.canonical();
      if (act.kind() == RawTerm::Kind::App) {
        std::vector<RawTerm> args;
        if (act.app_arg().kind() == RawTerm::Kind::Tuple)
          args = act.app_arg().tuple_items();
        else
          args = {act.app_arg()};
        for (size_t i = 0; i < args.size(); ++i)
          if (args[i].kind() == RawTerm::Kind::Atom && args[i].as_atom() == a)
            out.observed_bn.positions[act.app_fun()].insert(
                static_cast<unsigned>(i + 1));
      }
    } else if (parts.target.support().count(a)) {
      out.ba_violations.push_back(
          term_to_text(t.source.canonical()) + " -> " +
          term_to_text(res) +
          " (abstracted atom fresh in the action but not in the target)");
    }

    std::set<Atom> bs = pool.of_sort(a.sort);
    bs.insert(a);
    for (const Atom& b : bs) {
      if (!(b == a) && pair.support().count(b)) continue;
      NominalTerm moved = nominal_perm(Permutation::transposition(b, a), pair);
      out.plain.items.insert(Transition{t.source, moved});
    }
  }
  return out;
}

TransitionSet close_alpha_residuals(const TransitionSet& ts, const BnSpec& bn,
                                    const AtomPool& pool) {
  if (ts.style != ResidualStyle::Plain)
    throw std::invalid_argument("close_alpha_residuals: not plain style");
  TransitionSet out = ts;
  std::vector<Transition> work(ts.items.begin(), ts.items.end());
  while (!work.empty()) {
    Transition t = work.back();
    work.pop_back();
    PairParts parts = split_pair(t.residual);
    for (const Atom& a : bn.bn(parts.action.canonical())) {
      for (const Atom& b : pool.of_sort(a.sort)) {
        if (t.residual.support().count(b)) continue;
        NominalTerm moved =
            nominal_perm(Permutation::transposition(a, b), t.residual);
        Transition t2{t.source, moved};
        if (out.items.insert(t2).second) work.push_back(t2);
      }
    }
  }
  return out;
}

RoundtripReport roundtrip_plain(const TransitionSet& ts, const BnSpec& bn,
                                const AtomPool& pool,
                                const std::string& abs_sort) {
  RoundtripReport rep;
  TransitionSet closed = close_alpha_residuals(ts, bn, pool);
  TransitionSet abs = trans_abs(closed, bn, pool, abs_sort);
  TransConcResult back = trans_conc(abs, pool);
  for (const Transition& t : closed.items)
    if (!back.plain.items.count(t)) rep.missing.push_back(t);
  for (const Transition& t : back.plain.items)
    if (!closed.items.count(t)) rep.extra.push_back(t);
  // The recovered binding-names function must agree with bn on every action
  // head that occurs with a binding name.
  for (const auto& [head, pos] : back.observed_bn.positions) {
    auto it = bn.positions.find(head);
    if (it == bn.positions.end() || it->second != pos)
      rep.notes.push_back("observed bn for " + head + " differs from input");
  }
  for (const std::string& v : back.ba_violations)
    rep.notes.push_back("ba violation: " + v);
  return rep;
}

RoundtripReport roundtrip_abs(const TransitionSet& ts, const AtomPool& pool,
                              const std::string& abs_sort) {
  RoundtripReport rep;
  TransConcResult conc = trans_conc(ts, pool);
  for (const std::string& v : conc.ba_violations)
    rep.notes.push_back("ba violation: " + v);
  TransitionSet again = trans_abs(conc.plain, conc.observed_bn, pool, abs_sort);
  for (const Transition& t : ts.items)
    if (!again.items.count(t)) rep.missing.push_back(t);
  for (const Transition& t : again.items)
    if (!ts.items.count(t)) rep.extra.push_back(t);
  return rep;
}

}  // namespace nrtss
