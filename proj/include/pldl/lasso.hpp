#pragma once

#include <cstddef>
#include <vector>

#include "pldl/prop.hpp"

namespace pldl {

/// Ultimately periodic word u · v^ω over proposition sets.
struct LassoWord {
  std::vector<Letter> prefix;
  std::vector<Letter> cycle;  // nonempty

  std::size_t period_start() const { return prefix.size(); }

  /// Canonical representative of position n under the period.
  std::size_t reduce(std::size_t n) const {
    if (n < prefix.size()) return n;
    return prefix.size() + (n - prefix.size()) % cycle.size();
  }

  const Letter& letter_at(std::size_t n) const {
    std::size_t m = reduce(n);
    return m < prefix.size() ? prefix[m] : cycle[m - prefix.size()];
  }

  std::size_t core_length() const { return prefix.size() + cycle.size(); }
};

}  // namespace pldl
