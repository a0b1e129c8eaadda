#ifndef NRTSS_TERMS_HPP
#define NRTSS_TERMS_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nrtss/foundation.hpp"
#include "nrtss/sorts.hpp"

namespace nrtss {

struct FunDecl {
  Sort arg;
  std::string result;  // a base sort id
};

// A nominal signature: base sorts, atom sorts and function symbols whose
// results are base sorts.
class Signature {
 public:
  void add_base_sort(const std::string& id);
  void add_atom_sort(const std::string& id);
  void add_fun(const std::string& id, Sort arg, const std::string& result);

  bool has_base_sort(const std::string& id) const { return bases_.count(id); }
  bool has_atom_sort(const std::string& id) const { return atoms_.count(id); }
  bool has_fun(const std::string& id) const { return funs_.count(id); }
  const FunDecl& fun(const std::string& id) const;

  const std::set<std::string>& base_sorts() const { return bases_; }
  const std::set<std::string>& atom_sorts() const { return atoms_; }
  const std::map<std::string, FunDecl>& funs() const { return funs_; }

  // All sort ids mentioned by `s` are declared and abstraction binders are
  // declared atom sorts.
  bool sort_ok(const Sort& s) const;

 private:
  std::set<std::string> bases_;
  std::set<std::string> atoms_;
  std::map<std::string, FunDecl> funs_;
};

struct Variable {
  std::string name;
  Sort sort;

  friend bool operator==(const Variable& a, const Variable& b) {
    return a.name == b.name && a.sort == b.sort;
  }
  friend bool operator<(const Variable& a, const Variable& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.sort < b.sort;
  }
};

// Raw terms: variables, atoms, moderated terms t[rho], abstractions [a]t,
// tuples and function applications. Immutable trees with shared subterms;
// equality is plain structural equality (alpha lives in the nominal module).
class RawTerm {
 public:
  enum class Kind { Var, Atom, Moderated, Abs, Tuple, App };

  RawTerm() = default;

  static RawTerm var(Variable v);
  static RawTerm atom(Atom a);
  static RawTerm moderated(RawTerm t, Renaming r);
  static RawTerm abs(Atom binder, RawTerm body);
  static RawTerm tuple(std::vector<RawTerm> items);
  static RawTerm app(const Signature& sig, const std::string& fun, RawTerm arg);
  // Trusts the caller for the result sort; used where the sort is already
  // established (term actions, substitution, instantiation).
  static RawTerm app_raw(std::string fun, RawTerm arg, Sort result);

  bool null() const { return !n_; }
  Kind kind() const { return n_->kind; }
  const Sort& sort() const { return n_->sort; }

  const Variable& as_var() const { return n_->var; }
  const Atom& as_atom() const { return n_->atom; }
  const RawTerm& mod_term() const { return n_->children.front(); }
  const Renaming& mod_renaming() const { return n_->renaming; }
  const Atom& abs_binder() const { return n_->atom; }
  const RawTerm& abs_body() const { return n_->children.front(); }
  const std::vector<RawTerm>& tuple_items() const { return n_->children; }
  const std::string& app_fun() const { return n_->fun; }
  const RawTerm& app_arg() const { return n_->children.front(); }

  friend bool operator==(const RawTerm& a, const RawTerm& b) {
    return compare(a, b) == 0;
  }
  friend bool operator<(const RawTerm& a, const RawTerm& b) {
    return compare(a, b) < 0;
  }
  static int compare(const RawTerm& a, const RawTerm& b);

 private:
  struct Node {
    Kind kind;
    Sort sort;
    Variable var;
    Atom atom;
    Renaming renaming;
    std::string fun;
    std::vector<RawTerm> children;
  };

  explicit RawTerm(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Permutation action: variables fixed, binders renamed, delayed renamings
// conjugated.
RawTerm perm_act_term(const Permutation& p, const RawTerm& t);

// Renaming action: replaces free atoms, renames binders, composes into
// delayed renamings. Preserves term size.
RawTerm ren_act_term(const RawTerm& t, const Renaming& r);

std::set<Atom> free_atoms(const RawTerm& t);
std::set<Atom> term_support(const RawTerm& t);
std::size_t term_size(const RawTerm& t);
bool is_ground(const RawTerm& t);
std::set<Variable> term_vars(const RawTerm& t);

// Sort-preserving substitution of raw terms for variables. Passes under
// binders and moderations unchanged.
class Substitution {
 public:
  Substitution() = default;

  // Throws std::invalid_argument on sort mismatch.
  void set(const Variable& x, RawTerm t);
  const std::map<Variable, RawTerm>& mapping() const { return m_; }
  bool is_ground() const;

  RawTerm operator()(const RawTerm& t) const;
  Substitution compose_after(const Substitution& inner) const;  // this of inner

 private:
  std::map<Variable, RawTerm> m_;
};

}  // namespace nrtss

#endif  // NRTSS_TERMS_HPP
