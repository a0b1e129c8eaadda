#include "nrtss/nrtss.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "lexer.hpp"

namespace nrtss {

Atom RuleSchema::placeholder(const std::string& name) const {
  for (size_t i = 0; i < atom_params.size(); ++i)
    if (atom_params[i].name == name)
      return Atom{atom_params[i].sort,
                  kSchemaAtomBase + static_cast<std::uint32_t>(i)};
  throw std::invalid_argument("rule " + id + ": unknown atom param " + name);
}

std::optional<std::string> RuleSchema::param_name(const Atom& a) const {
  if (!is_schema_atom(a)) return std::nullopt;
  size_t i = a.index - kSchemaAtomBase;
  if (i >= atom_params.size() || atom_params[i].sort != a.sort)
    return std::nullopt;
  return atom_params[i].name;
}

const ActionParam* RuleSchema::find_action_param(
    const std::string& name) const {
  for (const ActionParam& p : action_params)
    if (p.name == name) return &p;
  return nullptr;
}

AtomNamer RuleSchema::namer() const {
  return [this](const Atom& a) { return param_name(a); };
}

Nrtss::Nrtss(ResidualSignature sig, std::vector<RuleSchema> rules)
    : sig_(std::move(sig)), rules_(std::move(rules)) {}

const RuleSchema* Nrtss::rule(const std::string& id) const {
  for (const RuleSchema& r : rules_)
    if (r.id == id) return &r;
  return nullptr;
}

bool Nrtss::abstraction_style() const {
  return !sig_.residual_sort.null() && sig_.residual_sort.is_abs();
}

std::optional<Sort> Nrtss::action_sort() const {
  Sort res = sig_.residual_sort;
  if (res.null()) return std::nullopt;
  if (res.is_abs()) res = res.abs_inner();
  if (res.is_product() && res.components().size() == 2)
    return res.components()[0];
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using detail::Lexer;
using detail::Token;

class RulesetParser {
 public:
  explicit RulesetParser(const std::string& text) : lx_(text, true) {}

  Nrtss parse() {
    parse_signature();
    std::vector<RuleSchema> rules;
    while (!lx_.done()) {
      if (!lx_.at_ident("rule")) lx_.fail("expected 'rule'");
      rules.push_back(parse_rule());
    }
    for (size_t i = 0; i < rules.size(); ++i)
      for (size_t j = i + 1; j < rules.size(); ++j)
        if (rules[i].id == rules[j].id)
          throw ParseError("duplicate rule id " + rules[i].id, 1, 1);
    return Nrtss(std::move(rsig_), std::move(rules));
  }

 private:
  void parse_signature() {
    if (!lx_.at_ident("signature")) lx_.fail("expected 'signature'");
    lx_.next();
    lx_.expect_punct("{");
    bool have_state = false, have_residual = false;
    std::string state_text, residual_text;
    std::vector<std::tuple<std::string, std::string, std::string>> funs;
    // Sort declarations may come in any order relative to funs; funs are
    // resolved after the block closes.
    while (!lx_.at_punct("}")) {
      std::string kw = lx_.expect_ident("signature item");
      if (kw == "atomsort") {
        rsig_.sig.add_atom_sort(lx_.expect_ident("atom sort id"));
      } else if (kw == "basesort") {
        rsig_.sig.add_base_sort(lx_.expect_ident("base sort id"));
      } else if (kw == "fun") {
        std::string id = lx_.expect_ident("function symbol");
        lx_.expect_punct(":");
        std::string arg = collect_sort_text();
        lx_.expect_punct("->");
        std::string res = lx_.expect_ident("result base sort");
        funs.emplace_back(id, arg, res);
      } else if (kw == "state") {
        state_text = collect_sort_text();
        have_state = true;
      } else if (kw == "residual") {
        residual_text = collect_sort_text();
        have_residual = true;
      } else {
        lx_.fail("unknown signature item '" + kw + "'");
      }
      lx_.expect_punct(";");
    }
    lx_.next();  // '}'
    for (const auto& [id, arg, res] : funs) {
      try {
        rsig_.sig.add_fun(id, parse_sort(arg, rsig_.sig), res);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1, 1);
      }
    }
    if (!have_state || !have_residual)
      throw ParseError("signature must declare state and residual sorts", 1, 1);
    rsig_.state_sort = parse_sort(state_text, rsig_.sig);
    rsig_.residual_sort = parse_sort(residual_text, rsig_.sig);
  }

  // Collects the raw tokens of a sort expression up to ';' or '->'.
  std::string collect_sort_text() {
    std::string out;
    for (;;) {
      const Token& t = lx_.peek();
      if (t.kind == Token::Kind::End) lx_.fail("unterminated sort");
      if (t.kind == Token::Kind::Punct && (t.text == ";" || t.text == "->"))
        break;
      out += lx_.next().text;
      out += " ";
    }
    return out;
  }

  RuleSchema parse_rule() {
    lx_.next();  // 'rule'
    RuleSchema r;
    r.id = lx_.expect_ident("rule id");
    while (lx_.at_punct("[")) parse_quantifier(r);
    lx_.expect_punct("{");
    bool have_conclusion = false;
    while (!lx_.at_punct("}")) {
      std::string kw = lx_.expect_ident("rule statement");
      if (kw == "premise") {
        RawTerm s = parse_rule_term(r);
        lx_.expect_punct("->");
        RawTerm t = parse_rule_term(r);
        r.premisses.push_back(Formula{s, t});
      } else if (kw == "fresh") {
        RawTerm a = parse_rule_term(r);
        if (a.kind() != RawTerm::Kind::Atom)
          lx_.fail("freshness subject must be an atom parameter");
        lx_.expect_punct("#");
        RawTerm t = parse_rule_term(r);
        r.env.insert(FreshAssertion{a.as_atom(), t});
      } else if (kw == "conclusion") {
        if (have_conclusion) lx_.fail("duplicate conclusion");
        RawTerm s = parse_rule_term(r);
        lx_.expect_punct("->");
        RawTerm t = parse_rule_term(r);
        r.conclusion = Formula{s, t};
        have_conclusion = true;
      } else {
        lx_.fail("unknown rule statement '" + kw + "'");
      }
      lx_.expect_punct(";");
    }
    lx_.next();  // '}'
    if (!have_conclusion)
      throw ParseError("rule " + r.id + " has no conclusion", 1, 1);
    check_rule_sorts(r);
    return r;
  }

  void parse_quantifier(RuleSchema& r) {
    lx_.next();  // '['
    if (!lx_.at_ident("forall")) lx_.fail("expected 'forall'");
    lx_.next();
    std::vector<std::string> names;
    while (lx_.peek().kind == Token::Kind::Ident && !lx_.at_punct(":"))
      names.push_back(lx_.next().text);
    if (names.empty()) lx_.fail("expected parameter names");
    lx_.expect_punct(":");
    if (lx_.at_ident("action")) {
      lx_.next();
      ActionParam ap;
      if (lx_.at_punct("\\")) {
        lx_.next();
        lx_.expect_punct("{");
        while (!lx_.at_punct("}")) {
          ap.forbidden.insert(lx_.expect_ident("forbidden head"));
          if (lx_.at_punct(",")) lx_.next();
        }
        lx_.next();
      } else if (lx_.at_ident("in")) {
        lx_.next();
        lx_.expect_punct("{");
        while (!lx_.at_punct("}")) {
          ActionHeadCase c;
          c.head = lx_.expect_ident("action head");
          lx_.expect_punct("(");
          while (!lx_.at_punct(")"))
            c.args.push_back(lx_.expect_ident("atom param"));
          lx_.next();
          ap.allowed.push_back(std::move(c));
          if (lx_.at_punct(",")) lx_.next();
        }
        lx_.next();
      }
      for (const std::string& n : names) {
        ActionParam p = ap;
        p.name = n;
        r.action_params.push_back(std::move(p));
      }
    } else {
      std::string sort = lx_.expect_ident("atom sort");
      if (!rsig_.sig.has_atom_sort(sort))
        lx_.fail("unknown atom sort '" + sort + "'");
      for (const std::string& n : names)
        r.atom_params.push_back(AtomParam{n, sort});
    }
    lx_.expect_punct("]");
  }

  RawTerm parse_rule_term(RuleSchema& r) {
    TermSyntax syn;
    syn.sig = &rsig_.sig;
    syn.allow_atom_literals = false;
    std::optional<Sort> action_sort = current_action_sort();
    syn.ident = [&r, action_sort](
                    const std::string& id) -> std::optional<RawTerm> {
      for (const AtomParam& p : r.atom_params)
        if (p.name == id) return RawTerm::atom(r.placeholder(id));
      if (r.find_action_param(id) && action_sort)
        return RawTerm::var(Variable{id, *action_sort});
      return std::nullopt;
    };
    return detail::parse_term_at(lx_, syn);
  }

  std::optional<Sort> current_action_sort() const {
    Sort res = rsig_.residual_sort;
    if (res.null()) return std::nullopt;
    if (res.is_abs()) res = res.abs_inner();
    if (res.is_product() && res.components().size() == 2)
      return res.components()[0];
    return std::nullopt;
  }

  void check_rule_sorts(const RuleSchema& r) {
    auto check = [&](const Formula& f, const std::string& what) {
      if (!(f.source.sort() == rsig_.state_sort))
        throw ParseError("rule " + r.id + ": " + what + " source has sort " +
                             f.source.sort().to_text() + ", want " +
                             rsig_.state_sort.to_text(),
                         1, 1);
      if (!(f.residual.sort() == rsig_.residual_sort))
        throw ParseError("rule " + r.id + ": " + what + " residual has sort " +
                             f.residual.sort().to_text() + ", want " +
                             rsig_.residual_sort.to_text(),
                         1, 1);
    };
    for (const Formula& f : r.premisses) check(f, "premise");
    check(r.conclusion, "conclusion");
  }

  Lexer lx_;
  ResidualSignature rsig_;
};

}  // namespace

Nrtss parse_ruleset(const std::string& text) {
  return RulesetParser(text).parse();
}

// ---------------------------------------------------------------------------
// Printing

std::string print_ruleset(const Nrtss& n) {
  std::ostringstream os;
  const ResidualSignature& rs = n.signature();
  os << "signature {\n";
  for (const std::string& s : rs.sig.atom_sorts())
    os << "  atomsort " << s << ";\n";
  for (const std::string& s : rs.sig.base_sorts())
    os << "  basesort " << s << ";\n";
  for (const auto& [id, d] : rs.sig.funs())
    os << "  fun " << id << " : " << d.arg.to_text() << " -> " << d.result
       << ";\n";
  os << "  state " << rs.state_sort.to_text() << ";\n";
  os << "  residual " << rs.residual_sort.to_text() << ";\n";
  os << "}\n";

  for (const RuleSchema& r : n.rules()) {
    os << "\nrule " << r.id;
    for (size_t i = 0; i < r.atom_params.size();) {
      size_t j = i;
      os << " [forall";
      while (j < r.atom_params.size() &&
             r.atom_params[j].sort == r.atom_params[i].sort)
        os << " " << r.atom_params[j++].name;
      os << " : " << r.atom_params[i].sort << "]";
      i = j;
    }
    for (const ActionParam& p : r.action_params) {
      os << " [forall " << p.name << " : action";
      if (!p.allowed.empty()) {
        os << " in {";
        for (size_t i = 0; i < p.allowed.size(); ++i) {
          if (i) os << ", ";
          os << p.allowed[i].head << "(";
          for (size_t k = 0; k < p.allowed[i].args.size(); ++k)
            os << (k ? " " : "") << p.allowed[i].args[k];
          os << ")";
        }
        os << "}";
      } else if (!p.forbidden.empty()) {
        os << " \\ {";
        bool first = true;
        for (const std::string& h : p.forbidden) {
          if (!first) os << ", ";
          first = false;
          os << h;
        }
        os << "}";
      }
      os << "]";
    }
    os << " {\n";
    AtomNamer nm = r.namer();
    for (const Formula& f : r.premisses)
      os << "  premise " << term_to_text(f.source, nm) << " -> "
         << term_to_text(f.residual, nm) << ";\n";
    for (const FreshAssertion& a : r.env) {
      std::string name = r.param_name(a.atom).value_or(atom_to_text(a.atom));
      os << "  fresh " << name << " # " << term_to_text(a.term, nm) << ";\n";
    }
    os << "  conclusion " << term_to_text(r.conclusion.source, nm) << " -> "
       << term_to_text(r.conclusion.residual, nm) << ";\n";
    os << "}\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Instantiation and concrete rules

namespace {

RawTerm subst_schema(const RawTerm& t, const std::map<Atom, Atom>& atom_map,
                     const std::map<Variable, RawTerm>& action_map) {
  switch (t.kind()) {
    case RawTerm::Kind::Var: {
      auto it = action_map.find(t.as_var());
      return it == action_map.end() ? t : it->second;
    }
    case RawTerm::Kind::Atom: {
      auto it = atom_map.find(t.as_atom());
      return it == atom_map.end() ? t : RawTerm::atom(it->second);
    }
    case RawTerm::Kind::Moderated: {
      std::vector<std::pair<Atom, Atom>> pairs;
      for (const auto& [k, v] : t.mod_renaming().pairs()) {
        Atom mk = atom_map.count(k) ? atom_map.at(k) : k;
        Atom mv = atom_map.count(v) ? atom_map.at(v) : v;
        pairs.emplace_back(mk, mv);
      }
      return RawTerm::moderated(
          subst_schema(t.mod_term(), atom_map, action_map),
          Renaming::from_pairs(std::move(pairs)));
    }
    case RawTerm::Kind::Abs: {
      Atom b = t.abs_binder();
      if (auto it = atom_map.find(b); it != atom_map.end()) b = it->second;
      return RawTerm::abs(b, subst_schema(t.abs_body(), atom_map, action_map));
    }
    case RawTerm::Kind::Tuple: {
      std::vector<RawTerm> items;
      items.reserve(t.tuple_items().size());
      for (const RawTerm& c : t.tuple_items())
        items.push_back(subst_schema(c, atom_map, action_map));
      return RawTerm::tuple(std::move(items));
    }
    case RawTerm::Kind::App:
      return RawTerm::app_raw(
          t.app_fun(), subst_schema(t.app_arg(), atom_map, action_map),
          t.sort());
  }
  return t;
}

std::vector<RawTerm> action_args(const RawTerm& action) {
  if (action.kind() != RawTerm::Kind::App) return {};
  const RawTerm& arg = action.app_arg();
  if (arg.kind() == RawTerm::Kind::Tuple) return arg.tuple_items();
  return {arg};
}

}  // namespace

ConcreteRule rule_instantiate(const Nrtss& n, const RuleSchema& r,
                              const std::map<std::string, Atom>& atom_env,
                              const std::map<std::string, RawTerm>& action_env) {
  std::map<Atom, Atom> atom_map;
  for (const AtomParam& p : r.atom_params) {
    auto it = atom_env.find(p.name);
    if (it == atom_env.end())
      throw std::invalid_argument("rule " + r.id + ": atom param " + p.name +
                                  " not assigned");
    if (it->second.sort != p.sort)
      throw std::invalid_argument("rule " + r.id + ": atom param " + p.name +
                                  " assigned an atom of sort " +
                                  it->second.sort + ", want " + p.sort);
    atom_map[r.placeholder(p.name)] = it->second;
  }
  std::map<Variable, RawTerm> action_map;
  std::optional<Sort> as = n.action_sort();
  for (const ActionParam& p : r.action_params) {
    auto it = action_env.find(p.name);
    if (it == action_env.end())
      throw std::invalid_argument("rule " + r.id + ": action param " + p.name +
                                  " not assigned");
    const RawTerm& act = it->second;
    if (!is_ground(act) || act.kind() != RawTerm::Kind::App)
      throw std::invalid_argument("rule " + r.id + ": action param " + p.name +
                                  " must be a ground action");
    if (!p.allowed.empty()) {
      bool ok = false;
      for (const ActionHeadCase& c : p.allowed) {
        if (c.head != act.app_fun()) continue;
        if (!c.args.empty()) {
          std::vector<RawTerm> args = action_args(act);
          if (args.size() != c.args.size()) continue;
          bool match = true;
          for (size_t i = 0; i < args.size(); ++i) {
            Atom want = atom_map.at(r.placeholder(c.args[i]));
            if (args[i].kind() != RawTerm::Kind::Atom ||
                !(args[i].as_atom() == want)) {
              match = false;
              break;
            }
          }
          if (!match) continue;
        }
        ok = true;
        break;
      }
      if (!ok)
        throw std::invalid_argument("rule " + r.id + ": action param " +
                                    p.name +
                                    " instantiated outside its allowed cases");
    } else if (p.forbidden.count(act.app_fun())) {
      throw std::invalid_argument("rule " + r.id + ": action param " + p.name +
                                  " instantiated with forbidden head " +
                                  act.app_fun());
    }
    if (as) action_map[Variable{p.name, *as}] = act;
  }

  ConcreteRule out;
  out.id = r.id;
  for (const Formula& f : r.premisses)
    out.premisses.push_back(
        Formula{subst_schema(f.source, atom_map, action_map),
                subst_schema(f.residual, atom_map, action_map)});
  for (const FreshAssertion& a : r.env) {
    Atom at = a.atom;
    if (auto it = atom_map.find(at); it != atom_map.end()) at = it->second;
    out.env.insert(
        FreshAssertion{at, subst_schema(a.term, atom_map, action_map)});
  }
  out.conclusion =
      Formula{subst_schema(r.conclusion.source, atom_map, action_map),
              subst_schema(r.conclusion.residual, atom_map, action_map)};
  return out;
}

ConcreteRule rule_perm(const Permutation& p, const ConcreteRule& r) {
  ConcreteRule out;
  out.id = r.id;
  for (const Formula& f : r.premisses)
    out.premisses.push_back(
        Formula{perm_act_term(p, f.source), perm_act_term(p, f.residual)});
  for (const FreshAssertion& a : r.env)
    out.env.insert(FreshAssertion{p(a.atom), perm_act_term(p, a.term)});
  out.conclusion = Formula{perm_act_term(p, r.conclusion.source),
                           perm_act_term(p, r.conclusion.residual)};
  return out;
}

std::set<Atom> rule_support(const ConcreteRule& r) {
  std::set<Atom> s;
  auto add_formula = [&s](const Formula& f) {
    s.merge(term_support(f.source));
    s.merge(term_support(f.residual));
  };
  for (const Formula& f : r.premisses) add_formula(f);
  add_formula(r.conclusion);
  for (const FreshAssertion& a : r.env) {
    s.insert(a.atom);
    s.merge(term_support(a.term));
  }
  return s;
}

RawTerm schema_bind(const RuleSchema& r, const RawTerm& t,
                    const std::map<std::string, Atom>& atom_env,
                    const std::map<Variable, RawTerm>& var_env) {
  std::map<Atom, Atom> atom_map;
  for (const auto& [name, a] : atom_env) atom_map[r.placeholder(name)] = a;
  return subst_schema(t, atom_map, var_env);
}

std::set<std::string> schema_atom_params_in(const RuleSchema& r,
                                            const RawTerm& t) {
  std::set<std::string> out;
  std::set<Atom> atoms = term_support(t);
  for (const Atom& a : atoms)
    if (auto n = r.param_name(a)) out.insert(*n);
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void collect_concrete_atoms(const RawTerm& t, std::set<Atom>& out) {
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
      collect_concrete_atoms(t.mod_term(), out);
      return;
    case RawTerm::Kind::Abs:
      if (!is_schema_atom(t.abs_binder())) out.insert(t.abs_binder());
      collect_concrete_atoms(t.abs_body(), out);
      return;
    case RawTerm::Kind::Tuple:
      for (const RawTerm& c : t.tuple_items()) collect_concrete_atoms(c, out);
      return;
    case RawTerm::Kind::App:
      collect_concrete_atoms(t.app_arg(), out);
      return;
  }
}

bool has_moderation(const RawTerm& t) {
  switch (t.kind()) {
    case RawTerm::Kind::Var:
    case RawTerm::Kind::Atom:
      return false;
    case RawTerm::Kind::Moderated:
      return true;
    case RawTerm::Kind::Abs:
      return has_moderation(t.abs_body());
    case RawTerm::Kind::Tuple:
      for (const RawTerm& c : t.tuple_items())
        if (has_moderation(c)) return true;
      return false;
    case RawTerm::Kind::App:
      return has_moderation(t.app_arg());
  }
  return false;
}

void collect_var_occurrences(const RawTerm& t, std::vector<Variable>& out) {
  switch (t.kind()) {
    case RawTerm::Kind::Var:
      out.push_back(t.as_var());
      return;
    case RawTerm::Kind::Atom:
      return;
    case RawTerm::Kind::Moderated:
      collect_var_occurrences(t.mod_term(), out);
      return;
    case RawTerm::Kind::Abs:
      collect_var_occurrences(t.abs_body(), out);
      return;
    case RawTerm::Kind::Tuple:
      for (const RawTerm& c : t.tuple_items()) collect_var_occurrences(c, out);
      return;
    case RawTerm::Kind::App:
      collect_var_occurrences(t.app_arg(), out);
      return;
  }
}

const RawTerm* action_of_residual(const Nrtss& n, const RawTerm& residual) {
  const RawTerm* pair = &residual;
  if (n.abstraction_style()) {
    if (residual.kind() != RawTerm::Kind::Abs) return nullptr;
    pair = &residual.abs_body();
  }
  if (pair->kind() != RawTerm::Kind::Tuple || pair->tuple_items().size() != 2)
    return nullptr;
  return &pair->tuple_items()[0];
}

}  // namespace

ValidationReport validate(const Nrtss& n) {
  ValidationReport rep;
  auto err = [&rep](const std::string& m) { rep.errors.push_back(m); };

  std::set<std::string> ids;
  for (const RuleSchema& r : n.rules())
    if (!ids.insert(r.id).second) err("duplicate rule id " + r.id);

  std::optional<Sort> action_sort = n.action_sort();

  for (const RuleSchema& r : n.rules()) {
    auto check_formula = [&](const Formula& f, const std::string& what) {
      if (!(f.source.sort() == n.signature().state_sort))
        err("rule " + r.id + ": " + what + " source sort mismatch");
      if (!(f.residual.sort() == n.signature().residual_sort))
        err("rule " + r.id + ": " + what + " residual sort mismatch");
    };
    for (const Formula& f : r.premisses) check_formula(f, "premise");
    check_formula(r.conclusion, "conclusion");

    std::set<Atom> concrete;
    for (const Formula& f : r.premisses) {
      collect_concrete_atoms(f.source, concrete);
      collect_concrete_atoms(f.residual, concrete);
    }
    collect_concrete_atoms(r.conclusion.source, concrete);
    collect_concrete_atoms(r.conclusion.residual, concrete);
    for (const FreshAssertion& a : r.env) {
      if (!is_schema_atom(a.atom)) concrete.insert(a.atom);
      collect_concrete_atoms(a.term, concrete);
    }
    for (const Atom& a : concrete)
      err("rule " + r.id + ": concrete atom " + atom_to_text(a) + " in rule");

    const RawTerm& src = r.conclusion.source;
    if (src.kind() == RawTerm::Kind::Var)
      err("rule " + r.id + ": conclusion source is a bare variable");
    if (has_moderation(src))
      err("rule " + r.id + ": conclusion source contains a moderated term");
    std::vector<Variable> occ;
    collect_var_occurrences(src, occ);
    std::set<Variable> seen;
    for (const Variable& v : occ)
      if (!seen.insert(v).second)
        err("rule " + r.id + ": variable " + v.name +
            " occurs twice in the conclusion source");

    std::set<Variable> bound = term_vars(src);
    for (const Formula& f : r.premisses) {
      for (const Variable& v : term_vars(f.source))
        if (!bound.count(v) &&
            !(action_sort && r.find_action_param(v.name) &&
              v.sort == *action_sort))
          err("rule " + r.id + ": premise source variable " + v.name +
              " is not bound by the conclusion source or earlier premisses");
      bound.merge(term_vars(f.residual));
    }

    if (action_sort) {
      auto check_action = [&](const RawTerm* act, const std::string& what) {
        if (!act) return;
        if (act->kind() == RawTerm::Kind::Var) {
          if (!r.find_action_param(act->as_var().name))
            err("rule " + r.id + ": " + what +
                " action is an unknown metavariable " + act->as_var().name);
          return;
        }
        for (const Variable& v : term_vars(*act))
          err("rule " + r.id + ": term variable " + v.name + " inside " +
              what + " action");
      };
      for (const Formula& f : r.premisses)
        check_action(action_of_residual(n, f.residual), "premise");
      check_action(action_of_residual(n, r.conclusion.residual), "conclusion");
    }
  }
  return rep;
}

}  // namespace nrtss
