#ifndef NRTSS_SORTS_HPP
#define NRTSS_SORTS_HPP

#include <memory>
#include <string>
#include <vector>

namespace nrtss {

// Nominal sorts: base sorts, atom sorts, abstraction sorts [alpha]sigma and
// product sorts (the empty product is the unit sort). Compared structurally;
// base and atom sorts by id.
class Sort {
 public:
  enum class Kind { Base, Atom, Abs, Product };

  Sort() = default;  // null sort; only valid as a transient placeholder
  bool null() const { return !n_; }

  static Sort base(std::string id);
  static Sort atom(std::string id);
  static Sort abs(std::string atom_sort, Sort inner);
  static Sort product(std::vector<Sort> components);
  static Sort unit() { return product({}); }

  Kind kind() const { return n_->kind; }
  bool is_base() const { return kind() == Kind::Base; }
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_abs() const { return kind() == Kind::Abs; }
  bool is_product() const { return kind() == Kind::Product; }
  bool is_unit() const { return is_product() && components().empty(); }

  // Base/atom sort id, or the binder's atom sort for abstraction sorts.
  const std::string& id() const { return n_->id; }
  const Sort& abs_inner() const { return n_->components.front(); }
  const std::vector<Sort>& components() const { return n_->components; }

  std::string to_text() const;

  friend bool operator==(const Sort& a, const Sort& b) {
    return a.n_ == b.n_ || compare(a, b) == 0;
  }
  friend bool operator<(const Sort& a, const Sort& b) {
    return compare(a, b) < 0;
  }

 private:
  struct Node {
    Kind kind;
    std::string id;                // Base/Atom id, Abs binder atom sort
    std::vector<Sort> components;  // Abs: {inner}; Product: components
  };

  explicit Sort(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static int compare(const Sort& a, const Sort& b);

  std::shared_ptr<const Node> n_;
};

}  // namespace nrtss

#endif  // NRTSS_SORTS_HPP
