#include "qtseq/hadamard.hpp"

#include <stdexcept>
#include <unordered_set>

namespace qtseq {

SignMatrix::SignMatrix(std::size_t order) : m_(order), data_(order * order, 1) {}

void SignMatrix::set(std::size_t i, std::size_t j, int v) {
  if (v != 1 && v != -1) throw std::invalid_argument("sign matrix entries must be +1 or -1");
  data_[i * m_ + j] = static_cast<int8_t>(v);
}

bool SignMatrix::is_hadamard() const {
  for (std::size_t a = 0; a < m_; ++a) {
    for (std::size_t b = a; b < m_; ++b) {
      int dot = 0;
      for (std::size_t j = 0; j < m_; ++j) dot += at(a, j) * at(b, j);
      if (dot != (a == b ? static_cast<int>(m_) : 0)) return false;
    }
  }
  return true;
}

SignMatrix SignMatrix::with_row_negated(std::size_t i) const {
  SignMatrix r(*this);
  for (std::size_t j = 0; j < m_; ++j) r.set(i, j, -at(i, j));
  return r;
}

SignMatrix SignMatrix::with_columns_permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != m_) throw std::invalid_argument("permutation size mismatch");
  SignMatrix r(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < m_; ++j) r.set(i, perm[j], at(i, j));
  }
  return r;
}

SignMatrix circulant(const BinarySequence& s) {
  const std::size_t n = s.size();
  SignMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, s[(j + n - i) % n]);
  }
  return m;
}

SignMatrix build_qt_hadamard(const QTQuadruple& q) {
  const std::size_t n = q.order();
  // Block (r, c) is sign * circulant(q[index]).
  static constexpr int kIndex[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int kSign[4][4] = {{1, 1, 1, 1}, {-1, 1, -1, 1}, {-1, 1, 1, -1}, {-1, -1, 1, 1}};
  SignMatrix h(4 * n);
  for (int br = 0; br < 4; ++br) {
    for (int bc = 0; bc < 4; ++bc) {
      const BinarySequence& s = q[kIndex[br][bc]];
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) h.set(br * n + i, bc * n + j, kSign[br][bc] * s[(j + n - i) % n]);
      }
    }
  }
  if (!h.is_hadamard()) throw std::domain_error("block array is not a Hadamard matrix; input is not QT");
  return h;
}

namespace {

using IntMatrix = std::vector<int>;

// X Y^T for circulants.
IntMatrix times_transpose(const SignMatrix& x, const SignMatrix& y) {
  const std::size_t n = x.order();
  IntMatrix r(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      int s = 0;
      for (std::size_t k = 0; k < n; ++k) s += x.at(i, k) * y.at(j, k);
      r[i * n + j] = s;
    }
  }
  return r;
}

}  // namespace

bool block_conditions_hold(const QTQuadruple& q) {
  const std::size_t n = q.order();
  std::array<SignMatrix, 4> m{circulant(q[0]), circulant(q[1]), circulant(q[2]), circulant(q[3])};
  auto xyt = [&](int a, int b) { return times_transpose(m[a], m[b]); };
  IntMatrix sq(n * n, 0);
  for (int a = 0; a < 4; ++a) {
    const auto p = xyt(a, a);
    for (std::size_t t = 0; t < n * n; ++t) sq[t] += p[t];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (sq[i * n + j] != (i == j ? 4 * static_cast<int>(n) : 0)) return false;
    }
  }
  // (X, Y, Z, W): X Y^T - Y X^T + Z W^T - W Z^T = 0.
  static constexpr int kTerms[3][4] = {{1, 0, 3, 2}, {2, 0, 1, 3}, {3, 0, 2, 1}};
  for (const auto& t : kTerms) {
    const auto p1 = xyt(t[0], t[1]), p2 = xyt(t[1], t[0]), p3 = xyt(t[2], t[3]), p4 = xyt(t[3], t[2]);
    for (std::size_t e = 0; e < n * n; ++e) {
      if (p1[e] - p2[e] + p3[e] - p4[e] != 0) return false;
    }
  }
  return true;
}

ColoredGraph mckay_graph(const SignMatrix& h) {
  const int m = static_cast<int>(h.order());
  std::vector<int> colors(4 * m, 0);
  for (int v = 2 * m; v < 4 * m; ++v) colors[v] = 1;
  ColoredGraph g(4 * m, std::move(colors));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const int rp = 2 * i, rn = 2 * i + 1, cp = 2 * m + 2 * j, cn = 2 * m + 2 * j + 1;
      if (h.at(i, j) == 1) {
        g.add_edge(rp, cp);
        g.add_edge(rn, cn);
      } else {
        g.add_edge(rp, cn);
        g.add_edge(rn, cp);
      }
    }
  }
  return g;
}

std::string hadamard_certificate(const SignMatrix& h) { return canonical_certificate(mckay_graph(h)); }

std::vector<HadamardClass> hadamard_dedup(std::span<const QTQuadruple> list) {
  std::vector<HadamardClass> out;
  std::unordered_set<std::string> seen;
  for (const auto& q : list) {
    std::string cert = hadamard_certificate(build_qt_hadamard(q));
    if (seen.insert(cert).second) out.push_back({q, std::move(cert)});
  }
  return out;
}

}  // namespace qtseq
