#include "qtseq/packed.hpp"

#include <stdexcept>

namespace qtseq::packed {

Word pack(const BinarySequence& s) {
  const int n = static_cast<int>(s.size());
  if (n > kMaxOrder) throw std::invalid_argument("sequence too long for packed form");
  Word x = 0;
  for (int i = 0; i < n; ++i) x = set_entry(x, n, i, s[i]);
  return x;
}

BinarySequence unpack(Word x, int n) {
  std::vector<int8_t> e(n);
  for (int i = 0; i < n; ++i) e[i] = static_cast<int8_t>(entry(x, n, i));
  return BinarySequence(std::move(e));
}

Quad pack(const QTQuadruple& q) { return {pack(q[0]), pack(q[1]), pack(q[2]), pack(q[3])}; }

QTQuadruple unpack(const Quad& q, int n) { return QTQuadruple(unpack(q[0], n), unpack(q[1], n), unpack(q[2], n), unpack(q[3], n)); }

bool is_qt(const Quad& q, int n) {
  const auto [a, b, c, d] = q;
  for (int t = 0; t < n; ++t) {
    const int acf = crosscorrelation(a, a, n, t) + crosscorrelation(b, b, n, t) + crosscorrelation(c, c, n, t) +
                    crosscorrelation(d, d, n, t);
    if (acf != (t == 0 ? 4 * n : 0)) return false;
    if (t == 0) continue;
    auto r = [n, t](Word x, Word y) { return crosscorrelation(x, y, n, t); };
    if (r(a, b) - r(b, a) + r(c, d) - r(d, c) != 0) return false;
    if (r(a, c) - r(c, a) + r(d, b) - r(b, d) != 0) return false;
    if (r(a, d) - r(d, a) + r(b, c) - r(c, b) != 0) return false;
  }
  return true;
}

bool is_palindromic(Word x, int n) {
  for (int i = 1; i < n; ++i) {
    if (entry(x, n, i) != entry(x, n, n - i)) return false;
  }
  return true;
}

}  // namespace qtseq::packed
