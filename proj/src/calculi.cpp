#include "nrtss/calculi.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace nrtss {

namespace {

const char* kSignaturePlain = R"(
signature {
  atomsort ch;
  basesort pr;
  basesort ac;
  fun null : 1 -> pr;
  fun tau : pr -> pr;
  fun in : (ch * [ch] pr) -> pr;
  fun out : (ch * ch * pr) -> pr;
  fun par : (pr * pr) -> pr;
  fun sum : (pr * pr) -> pr;
  fun rep : pr -> pr;
  fun new : [ch] pr -> pr;
  fun tauA : 1 -> ac;
  fun inA : (ch * ch) -> ac;
  fun outA : (ch * ch) -> ac;
  fun boutA : (ch * ch) -> ac;
  fun binA : (ch * ch) -> ac;
  state pr;
  residual (ac * pr);
}
)";

const char* kSignatureAbs = R"(
signature {
  atomsort ch;
  basesort pr;
  basesort ac;
  fun null : 1 -> pr;
  fun tau : pr -> pr;
  fun in : (ch * [ch] pr) -> pr;
  fun out : (ch * ch * pr) -> pr;
  fun par : (pr * pr) -> pr;
  fun sum : (pr * pr) -> pr;
  fun rep : pr -> pr;
  fun new : [ch] pr -> pr;
  fun tauA : 1 -> ac;
  fun inA : (ch * ch) -> ac;
  fun outA : (ch * ch) -> ac;
  fun boutA : (ch * ch) -> ac;
  fun binA : (ch * ch) -> ac;
  state pr;
  residual [ch] (ac * pr);
}
)";

// Rules shared by the early and late systems.
const char* kRulesCommonPlain = R"(
rule Out [forall a b : ch] {
  conclusion (out a b $x:pr) -> (tuple (outA a b) $x:pr);
}

rule Tau {
  conclusion (tau $x:pr) -> (tuple (tauA) $x:pr);
}

rule SumL [forall L : action] {
  premise $x1:pr -> (tuple L $y1:pr);
  conclusion (sum $x1:pr $x2:pr) -> (tuple L $y1:pr);
}

rule SumR [forall L : action] {
  premise $x2:pr -> (tuple L $y2:pr);
  conclusion (sum $x1:pr $x2:pr) -> (tuple L $y2:pr);
}

rule Rep [forall L : action] {
  premise $x:pr -> (tuple L $y:pr);
  conclusion (rep $x:pr) -> (tuple L (par $y:pr (rep $x:pr)));
}

rule Open [forall a b : ch] {
  premise $x:pr -> (tuple (outA a b) $y:pr);
  fresh b # a;
  conclusion (new ([b] $x:pr)) -> (tuple (boutA a b) $y:pr);
}

rule Res [forall b : ch] [forall L : action] {
  premise $x:pr -> (tuple L $y:pr);
  fresh b # L;
  conclusion (new ([b] $x:pr)) -> (tuple L (new ([b] $y:pr)));
}
)";

const char* kRulesEarly = R"(
rule EIn [forall a b c : ch] {
  conclusion (in a ([b] $x:pr)) -> (tuple (inA a c) (@ $x:pr {b->c,}));
}

rule EParL [forall L : action \ {boutA}] {
  premise $x1:pr -> (tuple L $y1:pr);
  conclusion (par $x1:pr $x2:pr) -> (tuple L (par $y1:pr $x2:pr));
}

rule EParR [forall L : action \ {boutA}] {
  premise $x2:pr -> (tuple L $y2:pr);
  conclusion (par $x1:pr $x2:pr) -> (tuple L (par $x1:pr $y2:pr));
}

rule EParResL [forall a b : ch] {
  premise $x1:pr -> (tuple (boutA a b) $y1:pr);
  fresh b # $x2:pr;
  conclusion (par $x1:pr $x2:pr) -> (tuple (boutA a b) (par $y1:pr $x2:pr));
}

rule EParResR [forall a b : ch] {
  premise $x2:pr -> (tuple (boutA a b) $y2:pr);
  fresh b # $x1:pr;
  conclusion (par $x1:pr $x2:pr) -> (tuple (boutA a b) (par $x1:pr $y2:pr));
}

rule ECommL [forall a b : ch] {
  premise $x1:pr -> (tuple (outA a b) $y1:pr);
  premise $x2:pr -> (tuple (inA a b) $y2:pr);
  conclusion (par $x1:pr $x2:pr) -> (tuple (tauA) (par $y1:pr $y2:pr));
}

rule ECommR [forall a b : ch] {
  premise $x1:pr -> (tuple (inA a b) $y1:pr);
  premise $x2:pr -> (tuple (outA a b) $y2:pr);
  conclusion (par $x1:pr $x2:pr) -> (tuple (tauA) (par $y1:pr $y2:pr));
}

rule ECloseL [forall a b : ch] {
  premise $x1:pr -> (tuple (boutA a b) $y1:pr);
  premise $x2:pr -> (tuple (inA a b) $y2:pr);
  fresh b # $x2:pr;
  conclusion (par $x1:pr $x2:pr) -> (tuple (tauA) (new ([b] (par $y1:pr $y2:pr))));
}

rule ECloseR [forall a b : ch] {
  premise $x1:pr -> (tuple (inA a b) $y1:pr);
  premise $x2:pr -> (tuple (boutA a b) $y2:pr);
  fresh b # $x1:pr;
  conclusion (par $x1:pr $x2:pr) -> (tuple (tauA) (new ([b] (par $y1:pr $y2:pr))));
}

rule ERepComm [forall a b : ch] {
  premise $x:pr -> (tuple (outA a b) $y1:pr);
  premise $x:pr -> (tuple (inA a b) $y2:pr);
  conclusion (rep $x:pr) -> (tuple (tauA) (par (par $y1:pr $y2:pr) (rep $x:pr)));
}

rule ERepClose [forall a b : ch] {
  premise $x:pr -> (tuple (boutA a b) $y1:pr);
  premise $x:pr -> (tuple (inA a b) $y2:pr);
  fresh b # $x:pr;
  conclusion (rep $x:pr) -> (tuple (tauA) (par (new ([b] (par $y1:pr $y2:pr))) (rep $x:pr)));
}
)";

const char* kRulesLate = R"(
rule LIn [forall a b : ch] {
  fresh b # a;
  conclusion (in a ([b] $x:pr)) -> (tuple (binA a b) $x:pr);
}

rule LParL [forall L : action \ {boutA, binA}] {
  premise $x1:pr -> (tuple L $y1:pr);
  conclusion (par $x1:pr $x2:pr) -> (tuple L (par $y1:pr $x2:pr));
}

rule LParR [forall L : action \ {boutA, binA}] {
  premise $x2:pr -> (tuple L $y2:pr);
  conclusion (par $x1:pr $x2:pr) -> (tuple L (par $x1:pr $y2:pr));
}

rule LParResL [forall a b : ch] [forall L : action in {boutA(a b), binA(a b)}] {
  premise $x1:pr -> (tuple L $y1:pr);
  fresh b # $x2:pr;
  conclusion (par $x1:pr $x2:pr) -> (tuple L (par $y1:pr $x2:pr));
}

rule LParResR [forall a b : ch] [forall L : action in {boutA(a b), binA(a b)}] {
  premise $x2:pr -> (tuple L $y2:pr);
  fresh b # $x1:pr;
  conclusion (par $x1:pr $x2:pr) -> (tuple L (par $x1:pr $y2:pr));
}

rule LCommL [forall a b c : ch] {
  premise $x1:pr -> (tuple (outA a b) $y1:pr);
  premise $x2:pr -> (tuple (binA a c) $y2:pr);
  conclusion (par $x1:pr $x2:pr) -> (tuple (tauA) (par $y1:pr (@ $y2:pr {c->b,})));
}

rule LCommR [forall a b c : ch] {
  premise $x1:pr -> (tuple (binA a c) $y1:pr);
  premise $x2:pr -> (tuple (outA a b) $y2:pr);
  conclusion (par $x1:pr $x2:pr) -> (tuple (tauA) (par (@ $y1:pr {c->b,}) $y2:pr));
}

rule LCloseL [forall a b : ch] {
  premise $x1:pr -> (tuple (boutA a b) $y1:pr);
  premise $x2:pr -> (tuple (binA a b) $y2:pr);
  conclusion (par $x1:pr $x2:pr) -> (tuple (tauA) (new ([b] (par $y1:pr $y2:pr))));
}

rule LCloseR [forall a b : ch] {
  premise $x1:pr -> (tuple (binA a b) $y1:pr);
  premise $x2:pr -> (tuple (boutA a b) $y2:pr);
  conclusion (par $x1:pr $x2:pr) -> (tuple (tauA) (new ([b] (par $y1:pr $y2:pr))));
}

rule LRepComm [forall a b c : ch] {
  premise $x:pr -> (tuple (outA a b) $y1:pr);
  premise $x:pr -> (tuple (binA a c) $y2:pr);
  conclusion (rep $x:pr) -> (tuple (tauA) (par (par $y1:pr (@ $y2:pr {c->b,})) (rep $x:pr)));
}

rule LRepClose [forall a b : ch] {
  premise $x:pr -> (tuple (boutA a b) $y1:pr);
  premise $x:pr -> (tuple (binA a b) $y2:pr);
  conclusion (rep $x:pr) -> (tuple (tauA) (par (new ([b] (par $y1:pr $y2:pr))) (rep $x:pr)));
}
)";

// Rules shared by the two abstraction-residual systems.
const char* kRulesCommonAbs = R"(
rule AOut [forall a b c : ch] {
  fresh c # (tuple a b $x:pr);
  conclusion (out a b $x:pr) -> ([c] (tuple (outA a b) $x:pr));
}

rule ATau [forall a : ch] {
  fresh a # $x:pr;
  conclusion (tau $x:pr) -> ([a] (tuple (tauA) $x:pr));
}

rule AParL [forall a : ch] [forall L : action] {
  premise $x1:pr -> ([a] (tuple L $y1:pr));
  fresh a # $x2:pr;
  conclusion (par $x1:pr $x2:pr) -> ([a] (tuple L (par $y1:pr $x2:pr)));
}

rule AParR [forall a : ch] [forall L : action] {
  premise $x2:pr -> ([a] (tuple L $y2:pr));
  fresh a # $x1:pr;
  conclusion (par $x1:pr $x2:pr) -> ([a] (tuple L (par $x1:pr $y2:pr)));
}

rule ASumL [forall a : ch] [forall L : action] {
  premise $x1:pr -> ([a] (tuple L $y1:pr));
  conclusion (sum $x1:pr $x2:pr) -> ([a] (tuple L $y1:pr));
}

rule ASumR [forall a : ch] [forall L : action] {
  premise $x2:pr -> ([a] (tuple L $y2:pr));
  conclusion (sum $x1:pr $x2:pr) -> ([a] (tuple L $y2:pr));
}

rule ARep [forall a : ch] [forall L : action] {
  premise $x:pr -> ([a] (tuple L $y:pr));
  fresh a # $x:pr;
  conclusion (rep $x:pr) -> ([a] (tuple L (par $y:pr (rep $x:pr))));
}

rule AOpen [forall a b c : ch] {
  premise $x:pr -> ([c] (tuple (outA a b) $y:pr));
  fresh b # a;
  conclusion (new ([b] $x:pr)) -> ([b] (tuple (boutA a b) $y:pr));
}

rule ARes [forall a b : ch] [forall L : action] {
  premise $x:pr -> ([a] (tuple L $y:pr));
  fresh b # L;
  conclusion (new ([b] $x:pr)) -> ([a] (tuple L (new ([b] $y:pr))));
}
)";

const char* kRulesEarlyAbs = R"(
rule AEIn [forall a b c d : ch] {
  fresh d # (tuple a c (@ $x:pr {b->c,}));
  conclusion (in a ([b] $x:pr)) -> ([d] (tuple (inA a c) (@ $x:pr {b->c,})));
}

rule AECommL [forall a b c : ch] {
  premise $x1:pr -> ([c] (tuple (outA a b) $y1:pr));
  premise $x2:pr -> ([c] (tuple (inA a b) $y2:pr));
  conclusion (par $x1:pr $x2:pr) -> ([c] (tuple (tauA) (par $y1:pr $y2:pr)));
}

rule AECommR [forall a b c : ch] {
  premise $x1:pr -> ([c] (tuple (inA a b) $y1:pr));
  premise $x2:pr -> ([c] (tuple (outA a b) $y2:pr));
  conclusion (par $x1:pr $x2:pr) -> ([c] (tuple (tauA) (par $y1:pr $y2:pr)));
}

rule AECloseL [forall a b c : ch] {
  premise $x1:pr -> ([b] (tuple (boutA a b) $y1:pr));
  premise $x2:pr -> ([c] (tuple (inA a b) $y2:pr));
  fresh b # $x2:pr;
  fresh c # $y1:pr;
  conclusion (par $x1:pr $x2:pr) -> ([c] (tuple (tauA) (new ([b] (par $y1:pr $y2:pr)))));
}

rule AECloseR [forall a b c : ch] {
  premise $x1:pr -> ([c] (tuple (inA a b) $y1:pr));
  premise $x2:pr -> ([b] (tuple (boutA a b) $y2:pr));
  fresh b # $x1:pr;
  fresh c # $y2:pr;
  conclusion (par $x1:pr $x2:pr) -> ([c] (tuple (tauA) (new ([b] (par $y1:pr $y2:pr)))));
}

rule AERepComm [forall a b c : ch] {
  premise $x:pr -> ([c] (tuple (outA a b) $y1:pr));
  premise $x:pr -> ([c] (tuple (inA a b) $y2:pr));
  fresh c # $x:pr;
  conclusion (rep $x:pr) -> ([c] (tuple (tauA) (par (par $y1:pr $y2:pr) (rep $x:pr))));
}

rule AERepClose [forall a b c : ch] {
  premise $x:pr -> ([b] (tuple (boutA a b) $y1:pr));
  premise $x:pr -> ([c] (tuple (inA a b) $y2:pr));
  fresh b # $x:pr;
  fresh c # (tuple $x:pr $y1:pr);
  conclusion (rep $x:pr) -> ([c] (tuple (tauA) (par (new ([b] (par $y1:pr $y2:pr))) (rep $x:pr))));
}
)";

const char* kRulesLateAbs = R"(
rule ALIn [forall a b : ch] {
  fresh b # a;
  conclusion (in a ([b] $x:pr)) -> ([b] (tuple (binA a b) $x:pr));
}

rule ALCommL [forall a b c d : ch] {
  premise $x1:pr -> ([d] (tuple (outA a b) $y1:pr));
  premise $x2:pr -> ([c] (tuple (binA a c) $y2:pr));
  fresh d # (@ $y2:pr {c->b,});
  conclusion (par $x1:pr $x2:pr) -> ([d] (tuple (tauA) (par $y1:pr (@ $y2:pr {c->b,}))));
}

rule ALCommR [forall a b c d : ch] {
  premise $x1:pr -> ([c] (tuple (binA a c) $y1:pr));
  premise $x2:pr -> ([d] (tuple (outA a b) $y2:pr));
  fresh d # (@ $y1:pr {c->b,});
  conclusion (par $x1:pr $x2:pr) -> ([d] (tuple (tauA) (par (@ $y1:pr {c->b,}) $y2:pr)));
}

rule ALCloseL [forall a b c : ch] {
  premise $x1:pr -> ([b] (tuple (boutA a b) $y1:pr));
  premise $x2:pr -> ([b] (tuple (binA a b) $y2:pr));
  fresh c # ([b] (tuple $y1:pr $y2:pr));
  conclusion (par $x1:pr $x2:pr) -> ([c] (tuple (tauA) (new ([b] (par $y1:pr $y2:pr)))));
}

rule ALCloseR [forall a b c : ch] {
  premise $x1:pr -> ([b] (tuple (binA a b) $y1:pr));
  premise $x2:pr -> ([b] (tuple (boutA a b) $y2:pr));
  fresh c # ([b] (tuple $y1:pr $y2:pr));
  conclusion (par $x1:pr $x2:pr) -> ([c] (tuple (tauA) (new ([b] (par $y1:pr $y2:pr)))));
}

rule ALRepComm [forall a b c d : ch] {
  premise $x:pr -> ([d] (tuple (outA a b) $y1:pr));
  premise $x:pr -> ([c] (tuple (binA a c) $y2:pr));
  fresh d # (tuple $x:pr (@ $y2:pr {c->b,}));
  conclusion (rep $x:pr) -> ([d] (tuple (tauA) (par (par $y1:pr (@ $y2:pr {c->b,})) (rep $x:pr))));
}

rule ALRepClose [forall a b c : ch] {
  premise $x:pr -> ([b] (tuple (boutA a b) $y1:pr));
  premise $x:pr -> ([b] (tuple (binA a b) $y2:pr));
  fresh c # (tuple $x:pr ([b] (tuple $y1:pr $y2:pr)));
  conclusion (rep $x:pr) -> ([c] (tuple (tauA) (par (new ([b] (par $y1:pr $y2:pr))) (rep $x:pr))));
}
)";

std::string fixture_text(const std::string& name) {
  if (name == "early")
    return std::string(kSignaturePlain) + kRulesEarly + kRulesCommonPlain;
  if (name == "late")
    return std::string(kSignaturePlain) + kRulesLate + kRulesCommonPlain;
  if (name == "early-abs")
    return std::string(kSignatureAbs) + kRulesEarlyAbs + kRulesCommonAbs;
  if (name == "late-abs")
    return std::string(kSignatureAbs) + kRulesLateAbs + kRulesCommonAbs;
  throw std::invalid_argument("unknown calculus " + name);
}

// ---------------------------------------------------------------------------
// Stratification measures

const Sort& ac_sort() {
  static const Sort s = Sort::base("ac");
  return s;
}

std::vector<Atom> atom_args(const RawTerm& action) {
  std::vector<Atom> out;
  if (action.kind() != RawTerm::Kind::App) return out;
  const RawTerm& arg = action.app_arg();
  if (arg.kind() == RawTerm::Kind::Atom) {
    out.push_back(arg.as_atom());
  } else if (arg.kind() == RawTerm::Kind::Tuple) {
    for (const RawTerm& c : arg.tuple_items())
      if (c.kind() == RawTerm::Kind::Atom) out.push_back(c.as_atom());
  }
  return out;
}

RawTerm make_action(const std::string& head, const std::vector<Atom>& args) {
  std::vector<RawTerm> items;
  items.reserve(args.size());
  for (const Atom& a : args) items.push_back(RawTerm::atom(a));
  return RawTerm::app_raw(head, RawTerm::tuple(std::move(items)), ac_sort());
}

// Whether the abstraction class <c>body admits binder b.
bool admits_binder(const RawTerm& abs, const Atom& b) {
  return abs.abs_binder() == b || free_atoms(abs.abs_body()).count(b) == 0;
}

NominalTerm concrete_at(const RawTerm& abs, const Atom& b) {
  return concrete(NominalTerm::from_canonical(abs), b);
}

// The partial strict stratifications for the plain early and late systems.
class PlainMeasure {
 public:
  explicit PlainMeasure(bool late) : late_(late) {}

  std::optional<std::uint64_t> eval(const RawTerm& state,
                                    const RawTerm& action) {
    auto key = std::make_pair(state, action);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::optional<std::uint64_t> best;
    auto push = [&best](std::optional<std::uint64_t> v) {
      if (v && (!best || *v > *best)) best = v;
    };
    std::string h =
        action.kind() == RawTerm::Kind::App ? action.app_fun() : "";
    std::vector<Atom> args = atom_args(action);
    bool ranged = h == "outA" || h == "boutA" || (late_ && h == "binA");

    if (state.kind() == RawTerm::Kind::App) {
      const std::string& f = state.app_fun();
      const RawTerm& arg = state.app_arg();
      if (f == "out" && h == "outA" && args.size() == 2) {
        const auto& items = arg.tuple_items();
        if (items[0].as_atom() == args[0] && items[1].as_atom() == args[1])
          push(0);
      }
      if (late_ && f == "in" && h == "binA" && args.size() == 2) {
        const auto& items = arg.tuple_items();
        if (items[0].as_atom() == args[0] && admits_binder(items[1], args[1]))
          push(0);
      }
      if ((f == "par" || f == "sum") && ranged) {
        const auto& items = arg.tuple_items();
        auto l = eval(items[0], action);
        auto r = eval(items[1], action);
        if (l || r) push(1 + std::max(l.value_or(0), r.value_or(0)));
      }
      if (f == "rep" && ranged) {
        if (auto v = eval(arg, action)) push(1 + *v);
      }
      if (f == "new" && ranged && arg.kind() == RawTerm::Kind::Abs) {
        // Binder avoiding the action: always possible.
        std::set<Atom> avoid = free_atoms(arg.abs_body());
        avoid.merge(term_support(action));
        avoid.insert(arg.abs_binder());
        Atom delta = fresh_atom(arg.abs_binder().sort, avoid);
        if (auto v = eval(concrete_at(arg, delta).canonical(), action))
          push(1 + *v);
        // new([b]p) at boutA(a,b): open towards outA(a,b).
        if (h == "boutA" && args.size() == 2 && admits_binder(arg, args[1])) {
          RawTerm inner = make_action("outA", args);
          if (auto v = eval(concrete_at(arg, args[1]).canonical(), inner))
            push(1 + *v);
        }
      }
    }
    memo_.emplace(key, best);
    return best;
  }

 private:
  bool late_;
  std::map<std::pair<RawTerm, RawTerm>, std::optional<std::uint64_t>> memo_;
};

// The stratifications with atom-abstractions for the early-abs and late-abs
// systems. The comm entries of the par and rep clauses range over atoms; two
// fresh representatives per sort stand in for all fresh choices.
class AbsMeasure {
 public:
  explicit AbsMeasure(bool late) : late_(late) {}

  std::optional<std::uint64_t> eval(const RawTerm& state,
                                    const RawTerm& abs_action) {
    auto key = std::make_pair(state, abs_action);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::optional<std::uint64_t> best;
    auto push = [&best](std::optional<std::uint64_t> v) {
      if (v && (!best || *v > *best)) best = v;
    };
    if (abs_action.kind() != RawTerm::Kind::Abs) {
      memo_.emplace(key, best);
      return best;
    }
    const RawTerm& act = abs_action.abs_body();
    std::string h = act.kind() == RawTerm::Kind::App ? act.app_fun() : "";
    std::vector<Atom> args = atom_args(act);
    bool ranged =
        h == "outA" || h == "tauA" || (!late_ && h == "inA");

    if (state.kind() == RawTerm::Kind::App) {
      const std::string& f = state.app_fun();
      const RawTerm& arg = state.app_arg();
      if (!late_ && f == "in" && h == "inA" && args.size() == 2) {
        if (arg.tuple_items()[0].as_atom() == args[0]) push(0);
      }
      if (f == "out" && h == "outA" && args.size() == 2) {
        const auto& items = arg.tuple_items();
        if (items[0].as_atom() == args[0] && items[1].as_atom() == args[1])
          push(0);
      }
      if (f == "tau" && h == "tauA") push(0);
      if ((f == "par" || f == "sum" || f == "rep") && ranged) {
        std::vector<const RawTerm*> subs;
        if (f == "rep")
          subs = {&arg};
        else
          subs = {&arg.tuple_items()[0], &arg.tuple_items()[1]};
        for (const RawTerm* p : subs)
          if (auto v = eval(*p, abs_action)) push(1 + *v);
        if (f != "sum") {
          // Communication entries over atom choices.
          std::set<Atom> probe = term_support(state);
          probe.merge(term_support(abs_action));
          Atom f1 = fresh_atom("ch", probe);
          probe.insert(f1);
          Atom f2 = fresh_atom("ch", probe);
          probe.insert(f2);
          const RawTerm* left = subs[0];
          const RawTerm* right = subs.size() > 1 ? subs[1] : subs[0];
          for (const Atom& alpha : probe)
            for (const Atom& beta : probe) {
              std::vector<Atom> gammas{alpha, beta};
              std::set<Atom> avoid{alpha, beta};
              gammas.push_back(fresh_atom("ch", avoid));
              for (const Atom& gamma : gammas) {
                RawTerm oact = RawTerm::abs(gamma, make_action("outA", {alpha, beta}));
                RawTerm iact = RawTerm::abs(gamma, make_action("inA", {alpha, beta}));
                NominalTerm on = NominalTerm::interpret(oact);
                NominalTerm in = NominalTerm::interpret(iact);
                if (auto v = eval(*left, on.canonical())) push(1 + *v);
                if (auto v = eval(*right, in.canonical())) push(1 + *v);
              }
            }
        }
      }
      if (f == "new" && ranged && arg.kind() == RawTerm::Kind::Abs) {
        std::set<Atom> avoid = free_atoms(arg.abs_body());
        avoid.merge(term_support(abs_action));
        avoid.insert(arg.abs_binder());
        Atom delta = fresh_atom(arg.abs_binder().sort, avoid);
        if (auto v = eval(concrete_at(arg, delta).canonical(), abs_action))
          push(1 + *v);
      }
    }
    memo_.emplace(key, best);
    return best;
  }

 private:
  bool late_;
  std::map<std::pair<RawTerm, RawTerm>, std::optional<std::uint64_t>> memo_;
};

std::optional<std::uint64_t> plain_measure(bool late, const NominalTerm& state,
                                           const NominalTerm& action) {
  static std::mutex mu;
  static PlainMeasure early_m{false};
  static PlainMeasure late_m{true};
  std::lock_guard<std::mutex> lock(mu);
  return (late ? late_m : early_m).eval(state.canonical(), action.canonical());
}

std::optional<std::uint64_t> abs_measure(bool late, const NominalTerm& state,
                                         const NominalTerm& abs_action) {
  static std::mutex mu;
  static AbsMeasure early_m{false};
  static AbsMeasure late_m{true};
  std::lock_guard<std::mutex> lock(mu);
  return (late ? late_m : early_m)
      .eval(state.canonical(), abs_action.canonical());
}

// ---------------------------------------------------------------------------
// Bundles

std::set<std::pair<std::string, std::string>> shapes_over(
    const std::vector<std::string>& sources,
    const std::vector<std::string>& actions) {
  std::set<std::pair<std::string, std::string>> out;
  for (const std::string& s : sources)
    for (const std::string& a : actions) out.emplace(s, a);
  return out;
}

CalculusBundle make_bundle(const std::string& name) {
  CalculusBundle b;
  b.name = name;
  b.nrtss = parse_ruleset(fixture_text(name));
  b.style = b.nrtss.abstraction_style() ? ResidualStyle::Abstraction
                                        : ResidualStyle::Plain;
  RawTerm inert_pr =
      RawTerm::app(b.nrtss.signature().sig, "null", RawTerm::tuple({}));
  b.inert.emplace(Sort::base("pr"), inert_pr);

  BnSpec bn;
  bn.positions["boutA"] = {2};
  if (name == "late" || name == "late-abs") bn.positions["binA"] = {2};
  if (b.style == ResidualStyle::Plain) b.bn = bn;

  if (name == "early") {
    b.strat.defined_shapes = shapes_over({"out"}, {"outA"});
    auto more = shapes_over({"par", "sum", "rep", "new"}, {"outA", "boutA"});
    b.strat.defined_shapes.insert(more.begin(), more.end());
    b.strat.measure = [](const NominalTerm& s, const NominalTerm& a) {
      return plain_measure(false, s, a);
    };
  } else if (name == "late") {
    b.strat.defined_shapes = shapes_over({"out"}, {"outA"});
    auto in = shapes_over({"in"}, {"binA"});
    b.strat.defined_shapes.insert(in.begin(), in.end());
    auto more =
        shapes_over({"par", "sum", "rep", "new"}, {"outA", "boutA", "binA"});
    b.strat.defined_shapes.insert(more.begin(), more.end());
    b.strat.measure = [](const NominalTerm& s, const NominalTerm& a) {
      return plain_measure(true, s, a);
    };
  } else if (name == "early-abs") {
    b.strat.defined_shapes =
        shapes_over({"in"}, {"inA"});
    auto out_shape = shapes_over({"out"}, {"outA"});
    b.strat.defined_shapes.insert(out_shape.begin(), out_shape.end());
    auto tau = shapes_over({"tau"}, {"tauA"});
    b.strat.defined_shapes.insert(tau.begin(), tau.end());
    auto more = shapes_over({"par", "sum", "rep", "new"},
                            {"inA", "outA", "tauA"});
    b.strat.defined_shapes.insert(more.begin(), more.end());
    b.strat.measure = [](const NominalTerm& s, const NominalTerm& a) {
      return abs_measure(false, s, a);
    };
  } else if (name == "late-abs") {
    b.strat.defined_shapes = shapes_over({"out"}, {"outA"});
    auto tau = shapes_over({"tau"}, {"tauA"});
    b.strat.defined_shapes.insert(tau.begin(), tau.end());
    auto more = shapes_over({"par", "sum", "rep", "new"}, {"outA", "tauA"});
    b.strat.defined_shapes.insert(more.begin(), more.end());
    b.strat.measure = [](const NominalTerm& s, const NominalTerm& a) {
      return abs_measure(true, s, a);
    };
  }
  return b;
}

}  // namespace

const CalculusBundle& early_pi() {
  static const CalculusBundle b = make_bundle("early");
  return b;
}

const CalculusBundle& late_pi() {
  static const CalculusBundle b = make_bundle("late");
  return b;
}

const CalculusBundle& early_pi_abs() {
  static const CalculusBundle b = make_bundle("early-abs");
  return b;
}

const CalculusBundle& late_pi_abs() {
  static const CalculusBundle b = make_bundle("late-abs");
  return b;
}

const CalculusBundle* find_calculus(const std::string& name) {
  if (name == "early") return &early_pi();
  if (name == "late") return &late_pi();
  if (name == "early-abs") return &early_pi_abs();
  if (name == "late-abs") return &late_pi_abs();
  return nullptr;
}

const std::string& calculus_fixture_text(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, std::string> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, fixture_text(name)).first;
  return it->second;
}

std::optional<std::uint64_t> strat_measure_early(const NominalTerm& state,
                                                 const NominalTerm& action) {
  return plain_measure(false, state, action);
}

std::optional<std::uint64_t> strat_measure_late(const NominalTerm& state,
                                                const NominalTerm& action) {
  return plain_measure(true, state, action);
}

std::optional<std::uint64_t> strat_measure_early_abs(
    const NominalTerm& state, const NominalTerm& abs_action) {
  return abs_measure(false, state, abs_action);
}

std::optional<std::uint64_t> strat_measure_late_abs(
    const NominalTerm& state, const NominalTerm& abs_action) {
  return abs_measure(true, state, abs_action);
}

}  // namespace nrtss
