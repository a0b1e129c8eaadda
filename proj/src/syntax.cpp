#include "nrtss/syntax.hpp"

#include <sstream>

#include "lexer.hpp"

namespace nrtss {

namespace {

using detail::Lexer;
using detail::Token;

Sort parse_sort_expr(Lexer& lx, const Signature& sig) {
  if (lx.at_punct("[")) {
    lx.next();
    std::string a = lx.expect_ident("atom sort");
    if (!sig.has_atom_sort(a)) lx.fail("unknown atom sort '" + a + "'");
    lx.expect_punct("]");
    return Sort::abs(a, parse_sort_expr(lx, sig));
  }
  if (lx.at_punct("(")) {
    lx.next();
    std::vector<Sort> comps;
    if (!lx.at_punct(")")) {
      comps.push_back(parse_sort_expr(lx, sig));
      while (lx.at_punct("*")) {
        lx.next();
        comps.push_back(parse_sort_expr(lx, sig));
      }
    }
    lx.expect_punct(")");
    return Sort::product(std::move(comps));
  }
  if (lx.peek().kind == Token::Kind::Int && lx.peek().text == "1") {
    lx.next();
    return Sort::unit();
  }
  std::string id = lx.expect_ident("sort");
  if (sig.has_base_sort(id)) return Sort::base(id);
  if (sig.has_atom_sort(id)) return Sort::atom(id);
  lx.fail("unknown sort '" + id + "'");
}

// Default bare-identifier resolution: letters a..z for ch:0..25.
std::optional<RawTerm> default_ident(const Signature& sig,
                                     const std::string& id) {
  if (id.size() == 1 && id[0] >= 'a' && id[0] <= 'z' &&
      sig.has_atom_sort("ch"))
    return RawTerm::atom(Atom{"ch", static_cast<std::uint32_t>(id[0] - 'a')});
  return std::nullopt;
}

class TermParser {
 public:
  TermParser(Lexer& lx, const TermSyntax& syn) : lx_(lx), syn_(syn) {}

  RawTerm parse() {
    // Atom literal `sort:index`.
    if (lx_.peek().kind == Token::Kind::Ident && lx_.peek(1).kind == Token::Kind::Punct &&
        lx_.peek(1).text == ":" && lx_.peek(2).kind == Token::Kind::Int) {
      if (!syn_.allow_atom_literals) lx_.fail("concrete atom in rule");
      std::string s = lx_.next().text;
      lx_.next();
      unsigned idx = lx_.expect_int();
      if (!syn_.sig->has_atom_sort(s)) lx_.fail("unknown atom sort '" + s + "'");
      return RawTerm::atom(Atom{s, idx});
    }
    if (lx_.at_punct("$")) {
      if (!syn_.allow_variables) lx_.fail("variables not allowed here");
      lx_.next();
      std::string name = lx_.expect_ident("variable name");
      lx_.expect_punct(":");
      Sort s = parse_sort_expr(lx_, *syn_.sig);
      return RawTerm::var(Variable{name, s});
    }
    if (lx_.at_punct("(")) {
      lx_.next();
      RawTerm t = parse_parenthesized();
      lx_.expect_punct(")");
      return t;
    }
    return ident_term(lx_.expect_ident("term"));
  }

  Renaming parse_renaming() {
    lx_.expect_punct("{");
    std::vector<std::pair<Atom, Atom>> pairs;
    while (!lx_.at_punct("}")) {
      Atom from = parse_atomref();
      lx_.expect_punct("->");
      Atom to = parse_atomref();
      pairs.emplace_back(from, to);
      if (lx_.at_punct(","))
        lx_.next();
      else
        break;
    }
    lx_.expect_punct("}");
    try {
      return Renaming::from_pairs(std::move(pairs));
    } catch (const std::invalid_argument& e) {
      lx_.fail(e.what());
    }
  }

  Atom parse_atomref() {
    RawTerm t = parse();
    if (t.kind() != RawTerm::Kind::Atom) lx_.fail("expected an atom");
    return t.as_atom();
  }

 private:
  RawTerm parse_parenthesized() {
    if (lx_.at_punct("@")) {
      lx_.next();
      RawTerm t = parse();
      Renaming r = parse_renaming();
      return RawTerm::moderated(t, r);
    }
    if (lx_.at_punct("[")) {
      lx_.next();
      Atom binder = parse_atomref();
      lx_.expect_punct("]");
      RawTerm body = parse();
      return RawTerm::abs(binder, body);
    }
    std::string head = lx_.expect_ident("function symbol or 'tuple'");
    std::vector<RawTerm> args;
    while (!lx_.at_punct(")")) args.push_back(parse());
    if (head == "tuple") return RawTerm::tuple(std::move(args));
    if (!syn_.sig->has_fun(head)) lx_.fail("unknown function symbol '" + head + "'");
    const FunDecl& d = syn_.sig->fun(head);
    RawTerm arg;
    if (args.size() == 1 && args[0].sort() == d.arg)
      arg = args[0];
    else
      arg = RawTerm::tuple(std::move(args));
    try {
      return RawTerm::app(*syn_.sig, head, arg);
    } catch (const std::invalid_argument& e) {
      lx_.fail(e.what());
    }
  }

  RawTerm ident_term(const std::string& id) {
    if (syn_.ident) {
      if (auto t = syn_.ident(id)) return *t;
    } else if (auto t = default_ident(*syn_.sig, id)) {
      return *t;
    }
    lx_.fail("unknown identifier '" + id + "'");
  }

  Lexer& lx_;
  const TermSyntax& syn_;
};

std::string atom_text(const Atom& a, const AtomNamer& namer) {
  if (namer) {
    if (auto n = namer(a)) return *n;
  }
  return atom_to_text(a);
}

void print_term(std::ostream& os, const RawTerm& t, const AtomNamer& namer) {
  switch (t.kind()) {
    case RawTerm::Kind::Var:
      os << "$" << t.as_var().name << ":" << t.as_var().sort.to_text();
      return;
    case RawTerm::Kind::Atom:
      os << atom_text(t.as_atom(), namer);
      return;
    case RawTerm::Kind::Moderated:
      os << "(@ ";
      print_term(os, t.mod_term(), namer);
      os << " " << renaming_to_text(t.mod_renaming(), namer) << ")";
      return;
    case RawTerm::Kind::Abs:
      os << "([" << atom_text(t.abs_binder(), namer) << "] ";
      print_term(os, t.abs_body(), namer);
      os << ")";
      return;
    case RawTerm::Kind::Tuple: {
      os << "(tuple";
      for (const RawTerm& c : t.tuple_items()) {
        os << " ";
        print_term(os, c, namer);
      }
      os << ")";
      return;
    }
    case RawTerm::Kind::App: {
      os << "(" << t.app_fun();
      const RawTerm& arg = t.app_arg();
      if (arg.kind() == RawTerm::Kind::Tuple) {
        for (const RawTerm& c : arg.tuple_items()) {
          os << " ";
          print_term(os, c, namer);
        }
      } else {
        os << " ";
        print_term(os, arg, namer);
      }
      os << ")";
      return;
    }
  }
}

}  // namespace

RawTerm parse_term(const std::string& text, const TermSyntax& syn) {
  Lexer lx(text);
  TermParser p(lx, syn);
  RawTerm t = p.parse();
  if (!lx.done()) lx.fail("trailing input after term");
  return t;
}

namespace detail {
RawTerm parse_term_at(Lexer& lx, const TermSyntax& syn) {
  return TermParser(lx, syn).parse();
}
}  // namespace detail

Sort parse_sort(const std::string& text, const Signature& sig) {
  Lexer lx(text);
  Sort s = parse_sort_expr(lx, sig);
  if (!lx.done()) lx.fail("trailing input after sort");
  return s;
}

std::string term_to_text(const RawTerm& t, const AtomNamer& namer) {
  std::ostringstream os;
  print_term(os, t, namer);
  return os.str();
}

std::string renaming_to_text(const Renaming& r, const AtomNamer& namer) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : r.pairs()) {
    if (!first) out += ", ";
    first = false;
    out += atom_text(k, namer) + "->" + atom_text(v, namer);
  }
  return out + "}";
}

}  // namespace nrtss
