#include "nrtss/terms.hpp"

#include <stdexcept>

namespace nrtss {

void Signature::add_base_sort(const std::string& id) {
  if (atoms_.count(id))
    throw std::invalid_argument("sort id already used as atom sort: " + id);
  bases_.insert(id);
}

void Signature::add_atom_sort(const std::string& id) {
  if (bases_.count(id))
    throw std::invalid_argument("sort id already used as base sort: " + id);
  atoms_.insert(id);
}

void Signature::add_fun(const std::string& id, Sort arg,
                        const std::string& result) {
  if (funs_.count(id)) throw std::invalid_argument("duplicate fun symbol: " + id);
  if (!bases_.count(result))
    throw std::invalid_argument("fun result is not a base sort: " + id);
  if (!sort_ok(arg))
    throw std::invalid_argument("fun arg sort mentions undeclared sort: " + id);
  funs_.emplace(id, FunDecl{std::move(arg), result});
}

const FunDecl& Signature::fun(const std::string& id) const {
  auto it = funs_.find(id);
  if (it == funs_.end())
    throw std::invalid_argument("unknown fun symbol: " + id);
  return it->second;
}

bool Signature::sort_ok(const Sort& s) const {
  switch (s.kind()) {
    case Sort::Kind::Base:
      return bases_.count(s.id()) > 0;
    case Sort::Kind::Atom:
      return atoms_.count(s.id()) > 0;
    case Sort::Kind::Abs:
      return atoms_.count(s.id()) > 0 && sort_ok(s.abs_inner());
    case Sort::Kind::Product:
      for (const Sort& c : s.components())
        if (!sort_ok(c)) return false;
      return true;
  }
  return false;
}

RawTerm RawTerm::var(Variable v) {
  Node n;
  n.kind = Kind::Var;
  n.sort = v.sort;
  n.var = std::move(v);
  return RawTerm(std::make_shared<Node>(std::move(n)));
}

RawTerm RawTerm::atom(Atom a) {
  Node n;
  n.kind = Kind::Atom;
  n.sort = Sort::atom(a.sort);
  n.atom = std::move(a);
  return RawTerm(std::make_shared<Node>(std::move(n)));
}

RawTerm RawTerm::moderated(RawTerm t, Renaming r) {
  Node n;
  n.kind = Kind::Moderated;
  n.sort = t.sort();
  n.renaming = std::move(r);
  n.children = {std::move(t)};
  return RawTerm(std::make_shared<Node>(std::move(n)));
}

RawTerm RawTerm::abs(Atom binder, RawTerm body) {
  Node n;
  n.kind = Kind::Abs;
  n.sort = Sort::abs(binder.sort, body.sort());
  n.atom = std::move(binder);
  n.children = {std::move(body)};
  return RawTerm(std::make_shared<Node>(std::move(n)));
}

RawTerm RawTerm::tuple(std::vector<RawTerm> items) {
  Node n;
  n.kind = Kind::Tuple;
  std::vector<Sort> ss;
  ss.reserve(items.size());
  for (const RawTerm& t : items) ss.push_back(t.sort());
  n.sort = Sort::product(std::move(ss));
  n.children = std::move(items);
  return RawTerm(std::make_shared<Node>(std::move(n)));
}

RawTerm RawTerm::app(const Signature& sig, const std::string& fun,
                     RawTerm arg) {
  const FunDecl& d = sig.fun(fun);
  if (!(d.arg == arg.sort()))
    throw std::invalid_argument("ill-sorted application of " + fun + ": got " +
                                arg.sort().to_text() + ", want " +
                                d.arg.to_text());
  return app_raw(fun, std::move(arg), Sort::base(d.result));
}

RawTerm RawTerm::app_raw(std::string fun, RawTerm arg, Sort result) {
  Node n;
  n.kind = Kind::App;
  n.sort = std::move(result);
  n.fun = std::move(fun);
  n.children = {std::move(arg)};
  return RawTerm(std::make_shared<Node>(std::move(n)));
}

int RawTerm::compare(const RawTerm& a, const RawTerm& b) {
  if (a.n_ == b.n_) return 0;
  if (a.null() || b.null()) return a.null() ? -1 : 1;
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Kind::Var: {
      if (a.as_var() == b.as_var()) return 0;
      return a.as_var() < b.as_var() ? -1 : 1;
    }
    case Kind::Atom: {
      auto c = a.as_atom() <=> b.as_atom();
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Kind::Moderated: {
      auto c = a.mod_renaming() <=> b.mod_renaming();
      if (c != 0) return c < 0 ? -1 : 1;
      return compare(a.mod_term(), b.mod_term());
    }
    case Kind::Abs: {
      auto c = a.abs_binder() <=> b.abs_binder();
      if (c != 0) return c < 0 ? -1 : 1;
      return compare(a.abs_body(), b.abs_body());
    }
    case Kind::Tuple: {
      const auto& xs = a.tuple_items();
      const auto& ys = b.tuple_items();
      if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
      for (size_t i = 0; i < xs.size(); ++i)
        if (int c = compare(xs[i], ys[i]); c != 0) return c;
      return 0;
    }
    case Kind::App: {
      if (int c = a.app_fun().compare(b.app_fun()); c != 0)
        return c < 0 ? -1 : 1;
      return compare(a.app_arg(), b.app_arg());
    }
  }
  return 0;
}

RawTerm perm_act_term(const Permutation& p, const RawTerm& t) {
  if (p.is_identity()) return t;
  switch (t.kind()) {
    case RawTerm::Kind::Var:
      return t;
    case RawTerm::Kind::Atom:
      return RawTerm::atom(p(t.as_atom()));
    case RawTerm::Kind::Moderated:
      return RawTerm::moderated(perm_act_term(p, t.mod_term()),
                                perm_conjugate_renaming(p, t.mod_renaming()));
    case RawTerm::Kind::Abs:
      return RawTerm::abs(p(t.abs_binder()), perm_act_term(p, t.abs_body()));
    case RawTerm::Kind::Tuple: {
      std::vector<RawTerm> items;
      items.reserve(t.tuple_items().size());
      for (const RawTerm& c : t.tuple_items())
        items.push_back(perm_act_term(p, c));
      return RawTerm::tuple(std::move(items));
    }
    case RawTerm::Kind::App:
      return RawTerm::app_raw(t.app_fun(), perm_act_term(p, t.app_arg()),
                              t.sort());
  }
  return t;
}

RawTerm ren_act_term(const RawTerm& t, const Renaming& r) {
  switch (t.kind()) {
    case RawTerm::Kind::Var:
      return t;
    case RawTerm::Kind::Atom:
      return RawTerm::atom(r(t.as_atom()));
    case RawTerm::Kind::Moderated:
      return RawTerm::moderated(t.mod_term(), t.mod_renaming().then(r));
    case RawTerm::Kind::Abs:
      return RawTerm::abs(r(t.abs_binder()), ren_act_term(t.abs_body(), r));
    case RawTerm::Kind::Tuple: {
      std::vector<RawTerm> items;
      items.reserve(t.tuple_items().size());
      for (const RawTerm& c : t.tuple_items())
        items.push_back(ren_act_term(c, r));
      return RawTerm::tuple(std::move(items));
    }
    case RawTerm::Kind::App:
      return RawTerm::app_raw(t.app_fun(), ren_act_term(t.app_arg(), r),
                              t.sort());
  }
  return t;
}

std::set<Atom> free_atoms(const RawTerm& t) {
  switch (t.kind()) {
    case RawTerm::Kind::Var:
      return {};
    case RawTerm::Kind::Atom:
      return {t.as_atom()};
    case RawTerm::Kind::Moderated:
      return free_atoms(ren_act_term(t.mod_term(), t.mod_renaming()));
    case RawTerm::Kind::Abs: {
      std::set<Atom> s = free_atoms(t.abs_body());
      s.erase(t.abs_binder());
      return s;
    }
    case RawTerm::Kind::Tuple: {
      std::set<Atom> s;
      for (const RawTerm& c : t.tuple_items()) s.merge(free_atoms(c));
      return s;
    }
    case RawTerm::Kind::App:
      return free_atoms(t.app_arg());
  }
  return {};
}

std::set<Atom> term_support(const RawTerm& t) {
  switch (t.kind()) {
    case RawTerm::Kind::Var:
      return {};
    case RawTerm::Kind::Atom:
      return {t.as_atom()};
    case RawTerm::Kind::Moderated: {
      std::set<Atom> s = term_support(t.mod_term());
      s.merge(t.mod_renaming().support());
      return s;
    }
    case RawTerm::Kind::Abs: {
      std::set<Atom> s = term_support(t.abs_body());
      s.insert(t.abs_binder());
      return s;
    }
    case RawTerm::Kind::Tuple: {
      std::set<Atom> s;
      for (const RawTerm& c : t.tuple_items()) s.merge(term_support(c));
      return s;
    }
    case RawTerm::Kind::App:
      return term_support(t.app_arg());
  }
  return {};
}

std::size_t term_size(const RawTerm& t) {
  switch (t.kind()) {
    case RawTerm::Kind::Var:
    case RawTerm::Kind::Atom:
      return 1;
    case RawTerm::Kind::Moderated:
      return 1 + term_size(t.mod_term());
    case RawTerm::Kind::Abs:
      return 1 + term_size(t.abs_body());
    case RawTerm::Kind::Tuple: {
      std::size_t n = 1;
      for (const RawTerm& c : t.tuple_items()) n += term_size(c);
      return n;
    }
    case RawTerm::Kind::App:
      return 1 + term_size(t.app_arg());
  }
  return 0;
}

bool is_ground(const RawTerm& t) {
  switch (t.kind()) {
    case RawTerm::Kind::Var:
      return false;
    case RawTerm::Kind::Atom:
      return true;
    case RawTerm::Kind::Moderated:
      return is_ground(t.mod_term());
    case RawTerm::Kind::Abs:
      return is_ground(t.abs_body());
    case RawTerm::Kind::Tuple:
      for (const RawTerm& c : t.tuple_items())
        if (!is_ground(c)) return false;
      return true;
    case RawTerm::Kind::App:
      return is_ground(t.app_arg());
  }
  return false;
}

std::set<Variable> term_vars(const RawTerm& t) {
  switch (t.kind()) {
    case RawTerm::Kind::Var:
      return {t.as_var()};
    case RawTerm::Kind::Atom:
      return {};
    case RawTerm::Kind::Moderated:
      return term_vars(t.mod_term());
    case RawTerm::Kind::Abs:
      return term_vars(t.abs_body());
    case RawTerm::Kind::Tuple: {
      std::set<Variable> s;
      for (const RawTerm& c : t.tuple_items()) s.merge(term_vars(c));
      return s;
    }
    case RawTerm::Kind::App:
      return term_vars(t.app_arg());
  }
  return {};
}

void Substitution::set(const Variable& x, RawTerm t) {
  if (!(t.sort() == x.sort))
    throw std::invalid_argument("substitution sort mismatch for " + x.name +
                                ": " + t.sort().to_text() + " vs " +
                                x.sort.to_text());
  m_[x] = std::move(t);
}

bool Substitution::is_ground() const {
  for (const auto& [x, t] : m_)
    if (!nrtss::is_ground(t)) return false;
  return true;
}

RawTerm Substitution::operator()(const RawTerm& t) const {
  if (m_.empty()) return t;
  switch (t.kind()) {
    case RawTerm::Kind::Var: {
      auto it = m_.find(t.as_var());
      return it == m_.end() ? t : it->second;
    }
    case RawTerm::Kind::Atom:
      return t;
    case RawTerm::Kind::Moderated:
      return RawTerm::moderated((*this)(t.mod_term()), t.mod_renaming());
    case RawTerm::Kind::Abs:
      return RawTerm::abs(t.abs_binder(), (*this)(t.abs_body()));
    case RawTerm::Kind::Tuple: {
      std::vector<RawTerm> items;
      items.reserve(t.tuple_items().size());
      for (const RawTerm& c : t.tuple_items()) items.push_back((*this)(c));
      return RawTerm::tuple(std::move(items));
    }
    case RawTerm::Kind::App:
      return RawTerm::app_raw(t.app_fun(), (*this)(t.app_arg()), t.sort());
  }
  return t;
}

Substitution Substitution::compose_after(const Substitution& inner) const {
  Substitution out;
  for (const auto& [x, t] : inner.m_) out.set(x, (*this)(t));
  for (const auto& [x, t] : m_)
    if (!out.m_.count(x)) out.set(x, t);
  return out;
}

}  // namespace nrtss
