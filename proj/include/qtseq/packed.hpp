#pragma once

// Bit-packed binary sequences for the hot loops. Entry i of a length-n
// sequence lives at bit n-1-i and a set bit means +1, so unsigned comparison
// agrees with lexicographic order under -1 < +1.

#include <array>
#include <bit>
#include <cstdint>

#include "qtseq/sequence.hpp"

namespace qtseq::packed {

using Word = std::uint32_t;
using Quad = std::array<Word, 4>;

inline constexpr int kMaxOrder = 32;

constexpr Word mask(int n) { return n >= 32 ? ~Word{0} : (Word{1} << n) - 1; }

constexpr int entry(Word x, int n, int i) { return (x >> (n - 1 - i)) & 1u ? 1 : -1; }

constexpr Word set_entry(Word x, int n, int i, int v) {
  const Word bit = Word{1} << (n - 1 - i);
  return v > 0 ? (x | bit) : (x & ~bit);
}

/// result[i] = x[(i + t) mod n]
constexpr Word rotate(Word x, int n, int t) {
  t %= n;
  if (t == 0) return x;
  return ((x << t) | (x >> (n - t))) & mask(n);
}

constexpr Word negate(Word x, int n) { return ~x & mask(n); }

/// sum_r x_r y_{r+t}
constexpr int crosscorrelation(Word x, Word y, int n, int t) {
  return n - 2 * std::popcount(x ^ rotate(y, n, t));
}

Word pack(const BinarySequence& s);
BinarySequence unpack(Word x, int n);
Quad pack(const QTQuadruple& q);
QTQuadruple unpack(const Quad& q, int n);

bool is_qt(const Quad& q, int n);
bool is_palindromic(Word x, int n);

}  // namespace qtseq::packed
