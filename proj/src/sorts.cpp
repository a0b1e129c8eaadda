#include "nrtss/sorts.hpp"

namespace nrtss {

Sort Sort::base(std::string id) {
  return Sort(std::make_shared<Node>(Node{Kind::Base, std::move(id), {}}));
}

Sort Sort::atom(std::string id) {
  return Sort(std::make_shared<Node>(Node{Kind::Atom, std::move(id), {}}));
}

Sort Sort::abs(std::string atom_sort, Sort inner) {
  return Sort(std::make_shared<Node>(
      Node{Kind::Abs, std::move(atom_sort), {std::move(inner)}}));
}

Sort Sort::product(std::vector<Sort> components) {
  return Sort(
      std::make_shared<Node>(Node{Kind::Product, "", std::move(components)}));
}

int Sort::compare(const Sort& a, const Sort& b) {
  if (a.n_ == b.n_) return 0;
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  if (int c = a.n_->id.compare(b.n_->id); c != 0) return c < 0 ? -1 : 1;
  const auto& xs = a.components();
  const auto& ys = b.components();
  if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
  for (size_t i = 0; i < xs.size(); ++i)
    if (int c = compare(xs[i], ys[i]); c != 0) return c;
  return 0;
}

std::string Sort::to_text() const {
  switch (kind()) {
    case Kind::Base:
    case Kind::Atom:
      return id();
    case Kind::Abs:
      return "[" + id() + "]" + abs_inner().to_text();
    case Kind::Product: {
      if (components().empty()) return "1";
      std::string out = "(";
      for (size_t i = 0; i < components().size(); ++i) {
        if (i) out += " * ";
        out += components()[i].to_text();
      }
      return out + ")";
    }
  }
  return "?";
}

}  // namespace nrtss
