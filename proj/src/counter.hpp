#pragma once

#include <cstddef>
#include <vector>

namespace dendrotensor::detail {

// Steps a mixed-radix counter, last digit fastest. Returns false after the
// last tuple. Every radix must be positive.
inline bool next_tuple(std::vector<std::size_t>& digits, const std::vector<std::size_t>& radix) {
  for (std::size_t k = digits.size(); k > 0; --k) {
    if (++digits[k - 1] < radix[k - 1]) return true;
    digits[k - 1] = 0;
  }
  return false;
}

template <class T>
std::vector<std::size_t> sizes_of(const std::vector<std::vector<T>>& lists) {
  std::vector<std::size_t> out;
  for (const auto& l : lists) out.push_back(l.size());
  return out;
}

}  // namespace dendrotensor::detail
