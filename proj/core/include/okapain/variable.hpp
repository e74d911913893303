#pragma once

#include <string>
#include <string_view>

namespace okapain::cas {

// Interned symbol with a fixed global precedence. The precedence drives the
// graded-lex term order: coordinate variables come first (alphabetically,
// with numeric suffixes compared as numbers so x2 < x10), the parameters
// t, a0, a1 always last.
class Variable {
public:
  explicit Variable(std::string_view name);

  const std::string& name() const;
  bool is_parameter() const;
  int id() const { return id_; }

  // Canonical order: negative if *this precedes o. Stable for the lifetime
  // of the process regardless of interning order.
  int compare(const Variable& o) const;

  bool operator==(const Variable& o) const { return id_ == o.id_; }
  bool operator!=(const Variable& o) const { return id_ != o.id_; }
  bool operator<(const Variable& o) const { return compare(o) < 0; }

private:
  int id_;
};

}  // namespace okapain::cas
