#pragma once

// Exhaustive counts over history trees and canonical identifier tables.

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdet/history_tree.hpp"

namespace hdet {

class cap_exceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Default caps; the CLI lets HDET_TREE_CAP override the tree cap.
inline constexpr unsigned kDefaultTreeCap = 6;
inline constexpr unsigned kIdentifierBoundsCap = 12;

/// Every order-closed history tree over states 0..n-1 (P1-P3), without
/// identifiers, in a fixed order. Throws cap_exceeded for n > cap.
std::vector<history_tree> enumerate_history_trees(unsigned n,
                                                  unsigned cap = kDefaultTreeCap);

/// hist(n) from the recurrence on label-set sizes rather than enumeration.
std::uint64_t count_history_trees(unsigned n);

struct full_census {
  std::size_t trees = 0;          // hist(n)
  std::size_t with_identifiers = 0;  // distinct trees after attaching ids
  std::size_t erased_distinct = 0;   // distinct trees after erasing them again
  std::size_t outside_full_tree = 0;  // nodes beyond the n-full tree
  std::size_t invalid = 0;            // trees failing history_tree_violations
};

/// Attaches canonical identifiers to every enumerated tree.
full_census enumerate_full(unsigned n, unsigned cap = kDefaultTreeCap);

struct identifier_bounds_report {
  unsigned n = 0;
  std::size_t distinct_flags = 0;
  std::size_t flag_bound = 0;  // 2^(ceil((n-1)/2)-1), at least 1
  std::vector<std::size_t> flags_per_height;         // index = height
  std::vector<std::size_t> per_height_bound;         // min(2^max(h-1,0), 2^(n-h-1))
  std::size_t distinct_identifiers = 0;
  std::size_t claimed_identifier_total = 0;  // 2^ceil((n-1)/2), reported only
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the table for capacity n against the flag bounds. Throws
/// cap_exceeded for n > kIdentifierBoundsCap or n == 0.
identifier_bounds_report verify_identifier_bounds(unsigned n);

std::string to_key_values(const identifier_bounds_report& report);

}  // namespace hdet
