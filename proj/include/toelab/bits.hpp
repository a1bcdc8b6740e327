#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace toe {

// A finite binary string, one byte per bit (values 0 or 1).
// Programs, universe prefixes and observations are all Bits.
using Bits = std::vector<std::uint8_t>;
using Program = Bits;

inline Bits bits_from_string(std::string_view s) {
  Bits out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '0')
      out.push_back(0);
    else if (c == '1')
      out.push_back(1);
    else
      throw std::invalid_argument("bit string may contain only '0' and '1': " +
                                  std::string(s));
  }
  return out;
}

inline std::string bits_to_string(const Bits& b) {
  std::string s;
  s.reserve(b.size());
  for (auto v : b) s.push_back(v ? '1' : '0');
  return s;
}

inline Bits concat(const Bits& a, const Bits& b) {
  Bits out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline bool is_prefix_of(const Bits& prefix, const Bits& full) {
  if (prefix.size() > full.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (prefix[i] != full[i]) return false;
  return true;
}

}  // namespace toe
