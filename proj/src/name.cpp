#include "psi/name.hpp"

#include <algorithm>

namespace psi {

NameSet::NameSet(std::vector<Name> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

NameSet NameSet::of(std::initializer_list<std::string> ids) {
  std::vector<Name> v;
  v.reserve(ids.size());
  for (const auto& id : ids) v.emplace_back(id);
  return NameSet(std::move(v));
}

bool NameSet::contains(const Name& n) const {
  return std::binary_search(items_.begin(), items_.end(), n);
}

void NameSet::insert(const Name& n) {
  auto it = std::lower_bound(items_.begin(), items_.end(), n);
  if (it == items_.end() || *it != n) items_.insert(it, n);
}

void NameSet::erase(const Name& n) {
  auto it = std::lower_bound(items_.begin(), items_.end(), n);
  if (it != items_.end() && *it == n) items_.erase(it);
}

bool NameSet::subset_of(const NameSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

bool NameSet::disjoint_with(const NameSet& other) const {
  auto a = items_.begin();
  auto b = other.items_.begin();
  while (a != items_.end() && b != other.items_.end()) {
    if (*a < *b)
      ++a;
    else if (*b < *a)
      ++b;
    else
      return false;
  }
  return true;
}

NameSet set_union(const NameSet& a, const NameSet& b) {
  std::vector<Name> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NameSet(std::move(out));
}

NameSet set_diff(const NameSet& a, const NameSet& b) {
  std::vector<Name> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NameSet(std::move(out));
}

NameSet set_intersect(const NameSet& a, const NameSet& b) {
  std::vector<Name> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NameSet(std::move(out));
}

std::string to_string(const NameSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : s) {
    if (!first) out += ",";
    out += n.id;
    first = false;
  }
  out += "}";
  return out;
}

Name fresh_name(const Name& base, const std::function<bool(const Name&)>& in_use) {
  Name candidate = base;
  while (in_use(candidate)) candidate.id += "'";
  return candidate;
}

Name fresh_name(const Name& base, const NameSet& avoid) {
  return fresh_name(base, [&](const Name& n) { return avoid.contains(n); });
}

}  // namespace psi
