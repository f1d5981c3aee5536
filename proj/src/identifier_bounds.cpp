#include <algorithm>
#include <set>
#include <sstream>

#include "hdet/census.hpp"

namespace hdet {

identifier_bounds_report verify_identifier_bounds(unsigned n) {
  if (n == 0 || n > kIdentifierBoundsCap) {
    throw cap_exceeded("identifier bounds are checked for 1 <= n <= " +
                       std::to_string(kIdentifierBoundsCap));
  }
  const auto table = canonical_identifier_table(n);
  identifier_bounds_report r;
  r.n = n;
  const unsigned half = n / 2;  // ceil((n-1)/2)
  r.flag_bound = half == 0 ? 1 : std::size_t{1} << (half - 1);
  r.claimed_identifier_total = std::size_t{1} << half;

  std::set<std::uint32_t> flags;
  std::set<identifier> ids;
  std::vector<std::set<std::uint32_t>> by_height(n);
  for (const auto& [name, id] : table->spine_order()) {
    flags.insert(id.flag);
    ids.insert(id);
    by_height.at(id.height).insert(id.flag);
    if (id.height != height(name)) {
      r.violations.push_back("height mismatch at " + name.to_string());
    }
  }
  r.distinct_flags = flags.size();
  r.distinct_identifiers = ids.size();
  if (r.distinct_flags > r.flag_bound) {
    r.violations.push_back(std::to_string(r.distinct_flags) +
                           " distinct flags exceed the bound " +
                           std::to_string(r.flag_bound));
  }
  for (unsigned h = 0; h < n; ++h) {
    const std::size_t below = std::size_t{1} << (h == 0 ? 0 : h - 1);
    const std::size_t above = std::size_t{1} << (n - h - 1);
    const auto bound = std::min(below, above);
    r.flags_per_height.push_back(by_height[h].size());
    r.per_height_bound.push_back(bound);
    if (by_height[h].size() > bound) {
      r.violations.push_back("height " + std::to_string(h) + " uses " +
                             std::to_string(by_height[h].size()) +
                             " flags, bound " + std::to_string(bound));
    }
  }
  if (table->lookup(node_name{}) != identifier{0, 1}) {
    r.violations.push_back("root is not (0,1)");
  }
  return r;
}

std::string to_key_values(const identifier_bounds_report& r) {
  std::ostringstream out;
  auto list = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s;
  };
  out << "n=" << r.n << "\n"
      << "distinct_flags=" << r.distinct_flags << "\n"
      << "flag_bound=" << r.flag_bound << "\n"
      << "flags_per_height=" << list(r.flags_per_height) << "\n"
      << "per_height_bound=" << list(r.per_height_bound) << "\n"
      << "distinct_identifiers=" << r.distinct_identifiers << "\n"
      << "claimed_identifier_total=" << r.claimed_identifier_total << "\n"
      << "bounds_hold=" << (r.ok() ? "true" : "false") << "\n";
  for (const auto& v : r.violations) out << "violation=" << v << "\n";
  return out.str();
}

}  // namespace hdet
