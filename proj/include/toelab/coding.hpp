#pragma once

#include <cstdint>
#include <stdexcept>

#include "toelab/bits.hpp"

namespace toe {

// Elias gamma code: floor(lb n) zeros followed by the binary expansion of n.
inline unsigned elias_gamma_length(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("elias gamma is defined for n >= 1");
  unsigned w = 0;
  while (n >> (w + 1)) ++w;  // w = floor(lb n)
  return 2 * w + 1;
}

inline void elias_gamma_append(Bits& out, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("elias gamma is defined for n >= 1");
  unsigned w = 0;
  while (n >> (w + 1)) ++w;
  for (unsigned i = 0; i < w; ++i) out.push_back(0);
  for (unsigned i = 0; i <= w; ++i)
    out.push_back(static_cast<std::uint8_t>((n >> (w - i)) & 1));
}

inline Bits elias_gamma(std::uint64_t n) {
  Bits out;
  elias_gamma_append(out, n);
  return out;
}

// Decodes one gamma codeword starting at pos; advances pos past it.
inline std::uint64_t elias_gamma_decode(const Bits& in, std::size_t& pos) {
  unsigned w = 0;
  while (pos < in.size() && in[pos] == 0) {
    ++w;
    ++pos;
  }
  if (pos + w + 1 > in.size() || w > 63)
    throw std::invalid_argument("truncated elias gamma codeword");
  std::uint64_t n = 0;
  for (unsigned i = 0; i <= w; ++i) n = (n << 1) | in[pos++];
  return n;
}

}  // namespace toe
