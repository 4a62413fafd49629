#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace psi {

struct Name {
  std::string id;

  Name() = default;
  explicit Name(std::string s) : id(std::move(s)) {}

  auto operator<=>(const Name&) const = default;
};

inline std::string to_string(const Name& n) { return n.id; }

/// Finite set of names, kept sorted and duplicate-free.
class NameSet {
 public:
  NameSet() = default;
  explicit NameSet(std::vector<Name> items);
  static NameSet of(std::initializer_list<std::string> ids);

  bool contains(const Name& n) const;
  void insert(const Name& n);
  void erase(const Name& n);

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<Name>& items() const { return items_; }

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool subset_of(const NameSet& other) const;
  bool disjoint_with(const NameSet& other) const;

  auto operator<=>(const NameSet&) const = default;

 private:
  std::vector<Name> items_;
};

NameSet set_union(const NameSet& a, const NameSet& b);
NameSet set_diff(const NameSet& a, const NameSet& b);
NameSet set_intersect(const NameSet& a, const NameSet& b);

std::string to_string(const NameSet& s);

/// Smallest primed variant of base not rejected by in_use.
Name fresh_name(const Name& base, const std::function<bool(const Name&)>& in_use);
Name fresh_name(const Name& base, const NameSet& avoid);

}  // namespace psi
