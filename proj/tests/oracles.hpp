#pragma once

// Independent reference computations for the tests. Nothing here calls the
// spectral filter, the matcher or the packed word routines.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "qtseq/quaternion.hpp"
#include "qtseq/sequence.hpp"

namespace oracle {

using Seq = std::vector<int>;
using Quad = std::array<Seq, 4>;

inline Seq seq_from_bits(std::uint32_t bits, int n) {
  Seq s(n);
  for (int i = 0; i < n; ++i) s[i] = (bits >> i) & 1u ? -1 : 1;
  return s;
}

inline int paf(const Seq& a, const Seq& b, int t) {
  const int n = static_cast<int>(a.size());
  int r = 0;
  for (int i = 0; i < n; ++i) r += a[i] * b[(i + t) % n];
  return r;
}

// Sum of the four periodic autocorrelations vanishes off zero.
inline bool autocorrelation_condition(const Quad& q) {
  const int n = static_cast<int>(q[0].size());
  for (int t = 1; t < n; ++t) {
    int s = 0;
    for (const auto& x : q) s += paf(x, x, t);
    if (s != 0) return false;
  }
  return true;
}

// The three antisymmetric crosscorrelation identities of a QT quadruple,
// written directly as sums over r (no helper from the library).
inline bool qt_cross_conditions(const Quad& q) {
  const int n = static_cast<int>(q[0].size());
  const auto& [a, b, c, d] = q;
  for (int t = 0; t < n; ++t) {
    const int e1 = paf(a, b, t) - paf(b, a, t) + paf(c, d, t) - paf(d, c, t);
    const int e2 = paf(a, c, t) - paf(c, a, t) + paf(d, b, t) - paf(b, d, t);
    const int e3 = paf(a, d, t) - paf(d, a, t) + paf(b, c, t) - paf(c, b, t);
    if (e1 || e2 || e3) return false;
  }
  return true;
}

// R_{X,Y}(t) = R_{Y,X}(t) for all six pairs.
inline bool pairwise_amicable(const Quad& q) {
  const int n = static_cast<int>(q[0].size());
  for (int x = 0; x < 4; ++x) {
    for (int y = x + 1; y < 4; ++y) {
      for (int t = 0; t < n; ++t) {
        if (paf(q[x], q[y], t) != paf(q[y], q[x], t)) return false;
      }
    }
  }
  return true;
}

struct BruteForce {
  std::vector<Quad> qt;  // autocorrelation + QT cross conditions
  std::vector<Quad> wt;  // autocorrelation + pairwise amicability
  std::uint64_t joined = 0;
};

// Every quadruple over {+1,-1}^n satisfying either predicate. Pairs (A,B)
// and (C,D) are joined on opposite values of PAF_A + PAF_B and of the
// antisymmetric part R_AB - R_BA; both predicates force these to cancel
// (the first QT cross identity, or amicability of each pair), so no
// solution of either predicate is missed.
inline BruteForce brute_force(int n) {
  const std::uint32_t count = 1u << n;
  const int half = n / 2;
  std::vector<Seq> seqs(count);
  std::vector<std::vector<int>> pafs(count, std::vector<int>(half + 1));
  for (std::uint32_t v = 0; v < count; ++v) {
    seqs[v] = seq_from_bits(v, n);
    for (int t = 1; t <= half; ++t) pafs[v][t] = paf(seqs[v], seqs[v], t);
  }
  std::map<std::vector<int>, std::vector<std::pair<std::uint32_t, std::uint32_t>>> by_key;
  std::vector<int> k(half + n);
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = 0; b < count; ++b) {
      for (int t = 1; t <= half; ++t) k[t - 1] = pafs[a][t] + pafs[b][t];
      for (int t = 0; t < n; ++t) k[half + t] = paf(seqs[a], seqs[b], t) - paf(seqs[b], seqs[a], t);
      by_key[k].emplace_back(a, b);
    }
  }
  BruteForce out;
  for (const auto& [key, ab] : by_key) {
    std::vector<int> neg(key.size());
    for (std::size_t t = 0; t < key.size(); ++t) neg[t] = -key[t];
    const auto it = by_key.find(neg);
    if (it == by_key.end()) continue;
    for (const auto& [a, b] : ab) {
      for (const auto& [c, d] : it->second) {
        const Quad q{seqs[a], seqs[b], seqs[c], seqs[d]};
        ++out.joined;
        if (qt_cross_conditions(q)) out.qt.push_back(q);
        if (pairwise_amicable(q)) out.wt.push_back(q);
      }
    }
  }
  return out;
}

inline qtseq::QTQuadruple to_quadruple(const Quad& q) {
  std::array<qtseq::BinarySequence, 4> s;
  for (int x = 0; x < 4; ++x) {
    std::vector<int8_t> v(q[x].begin(), q[x].end());
    s[x] = qtseq::BinarySequence(v);
  }
  return qtseq::QTQuadruple(s);
}

// Direct O(n^2) DFT with exponent +2 pi i s t / n.
inline std::vector<std::complex<double>> dft(const std::vector<double>& a) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::complex<double> acc = 0;
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = 2.0 * std::numbers::pi * static_cast<double>(s * t % n) / static_cast<double>(n);
      acc += a[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[s] = acc;
  }
  return out;
}

// Graph isomorphism by trying every color-preserving bijection. Small only.
inline bool isomorphic(int n, const std::vector<int>& colors_a, const std::vector<std::pair<int, int>>& edges_a,
                       const std::vector<int>& colors_b, const std::vector<std::pair<int, int>>& edges_b) {
  if (edges_a.size() != edges_b.size()) return false;
  std::vector<std::vector<bool>> adj_b(n, std::vector<bool>(n, false));
  for (auto [u, v] : edges_b) adj_b[u][v] = adj_b[v][u] = true;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) ok = colors_a[v] == colors_b[perm[v]];
    for (std::size_t e = 0; e < edges_a.size() && ok; ++e) ok = adj_b[perm[edges_a[e].first]][perm[edges_a[e].second]];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline std::string data_path(const std::string& name) { return std::string(QTSEQ_TEST_DATA) + "/" + name; }

struct AppendixEntry {
  int n;
  bool symmetric;
  std::string sequence;
};

inline std::vector<AppendixEntry> appendix() {
  std::ifstream in(data_path("appendix_sequences.txt"));
  std::vector<AppendixEntry> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    AppendixEntry e;
    std::string tag;
    ss >> e.n >> tag >> e.sequence;
    e.symmetric = tag == "sym";
    out.push_back(e);
  }
  return out;
}

// W/Q/H class counts and pair counts per order, from the results table.
struct TableRow {
  int n, w, q, h;
  long pairs;
};
inline const std::vector<TableRow>& results_table() {
  static const std::vector<TableRow> rows = {
      {1, 1, 1, 1, 2},          {2, 1, 1, 1, 4},          {3, 1, 1, 1, 6},          {4, 2, 3, 2, 46},
      {5, 1, 1, 1, 20},         {6, 1, 1, 1, 48},         {7, 2, 3, 3, 182},        {8, 3, 4, 3, 384},
      {9, 4, 7, 7, 999},        {10, 2, 4, 2, 770},       {11, 1, 2, 2, 715},       {12, 5, 10, 6, 6288},
      {13, 4, 6, 6, 8216},      {14, 5, 12, 10, 5334},    {15, 4, 7, 7, 15732},     {16, 18, 44, 19, 206480},
      {17, 4, 5, 5, 39372},     {18, 28, 88, 82, 275184}, {19, 6, 11, 11, 200526},  {20, 24, 84, 54, 625896},
      {21, 7, 13, 13, 561519},
  };
  return rows;
}

}  // namespace oracle
