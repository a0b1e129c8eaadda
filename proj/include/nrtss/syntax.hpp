#ifndef NRTSS_SYNTAX_HPP
#define NRTSS_SYNTAX_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "nrtss/terms.hpp"

namespace nrtss {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" +
                           std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Hooks for resolving bare identifiers while parsing terms. The default
// resolves single letters a..z to ch:0..ch:25 (when `ch` is a declared atom
// sort) and `sort:index` literals.
struct TermSyntax {
  const Signature* sig = nullptr;
  // Resolver for bare identifiers that are not function symbols. Returning
  // nullopt makes the parser fail with "unknown identifier".
  std::function<std::optional<RawTerm>(const std::string&)> ident = nullptr;
  bool allow_variables = true;
  // Rule bodies must not mention concrete atoms.
  bool allow_atom_literals = true;
};

RawTerm parse_term(const std::string& text, const TermSyntax& syn);
Sort parse_sort(const std::string& text, const Signature& sig);

// Prints atoms as a..z for ch:0..25, else sort:index. `atom_name` may
// override (rule parameters print by name).
using AtomNamer = std::function<std::optional<std::string>(const Atom&)>;

std::string term_to_text(const RawTerm& t, const AtomNamer& atom_name = {});
std::string renaming_to_text(const Renaming& r, const AtomNamer& atom_name = {});

}  // namespace nrtss

#endif  // NRTSS_SYNTAX_HPP
