#include "qtseq/qhm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace qtseq {

namespace {

// Half of the codec; the other half is the entrywise negation.
struct CodecRow {
  ExactQuaternion s;
  std::array<int, 4> abcd;
};

const std::array<CodecRow, 8>& codec_rows() {
  using namespace quat;
  static const std::array<CodecRow, 8> rows = {{
      {one, {-1, -1, -1, -1}},
      {i, {1, -1, -1, 1}},
      {j, {1, 1, -1, -1}},
      {k, {1, -1, 1, -1}},
      {q, {1, -1, -1, -1}},
      {q * i, {1, 1, -1, 1}},
      {q * j, {1, 1, 1, -1}},
      {q * k, {1, -1, 1, 1}},
  }};
  return rows;
}

int dot3(const ExactQuaternion& a, const ExactQuaternion& b) {
  return a.c1() * b.c1() + a.c2() * b.c2() + a.c3() * b.c3();
}

long det3(const ExactQuaternion& a, const ExactQuaternion& b, const ExactQuaternion& c) {
  const long ax = a.c1(), ay = a.c2(), az = a.c3();
  const long bx = b.c1(), by = b.c2(), bz = b.c3();
  const long cx = c.c1(), cy = c.c2(), cz = c.c3();
  return ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) + az * (bx * cy - by * cx);
}

bool parallel(const ExactQuaternion& a, const ExactQuaternion& b) {
  const long x = static_cast<long>(a.c2()) * b.c3() - static_cast<long>(a.c3()) * b.c2();
  const long y = static_cast<long>(a.c3()) * b.c1() - static_cast<long>(a.c1()) * b.c3();
  const long z = static_cast<long>(a.c1()) * b.c2() - static_cast<long>(a.c2()) * b.c1();
  return x == 0 && y == 0 && z == 0;
}

bool mixed(const ExactQuaternion& x) { return !x.is_real() && !x.is_pure_imaginary(); }

}  // namespace

FloatMatrix to_float(const ExactMatrix& m) {
  FloatMatrix r(m.order());
  for (std::size_t a = 0; a < m.order(); ++a) {
    for (std::size_t b = 0; b < m.order(); ++b) r.at(a, b) = FloatQuaternion(m.at(a, b));
  }
  return r;
}

ExactQuaternion qt_entry_to_quaternion(int a, int b, int c, int d) {
  const std::array<int, 4> key{a, b, c, d};
  for (const auto& row : codec_rows()) {
    if (row.abcd == key) return row.s;
    if (row.abcd == std::array<int, 4>{-a, -b, -c, -d}) return -row.s;
  }
  throw std::invalid_argument("QT entries must be +1 or -1");
}

std::vector<ExactQuaternion> qt_to_perfect(const QTQuadruple& q) {
  std::vector<ExactQuaternion> s(q.order());
  for (std::size_t r = 0; r < q.order(); ++r) s[r] = qt_entry_to_quaternion(q[0][r], q[1][r], q[2][r], q[3][r]);
  return s;
}

QTQuadruple perfect_to_qt(std::span<const ExactQuaternion> s) {
  std::array<std::vector<int8_t>, 4> seqs;
  for (auto& v : seqs) v.resize(s.size());
  for (std::size_t r = 0; r < s.size(); ++r) {
    const CodecRow* hit = nullptr;
    int sign = 1;
    for (const auto& row : codec_rows()) {
      if (row.s == s[r]) hit = &row;
      else if (row.s == -s[r]) hit = &row, sign = -1;
      if (hit) break;
    }
    if (!hit) {
      throw std::domain_error("entry " + std::to_string(r) + " (" + format_entry(s[r]) + ") is not in Q+");
    }
    for (int t = 0; t < 4; ++t) seqs[t][r] = static_cast<int8_t>(sign * hit->abcd[t]);
  }
  return QTQuadruple(BinarySequence(seqs[0]), BinarySequence(seqs[1]), BinarySequence(seqs[2]),
                     BinarySequence(seqs[3]));
}

ExactMatrix circulant_qhm(std::span<const ExactQuaternion> s) {
  const std::size_t n = s.size();
  ExactMatrix m(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) m.at(a, b) = s[(b + n - a) % n];
  }
  return m;
}

namespace {

// Entry (a, b) of G G* (rows) or G* G (columns).
template <class T>
T gram_entry(const QuaternionMatrix<T>& g, std::size_t a, std::size_t b, bool rows) {
  T acc{};
  for (std::size_t t = 0; t < g.order(); ++t) {
    acc += rows ? g.at(a, t) * conj(g.at(b, t)) : conj(g.at(t, a)) * g.at(t, b);
  }
  return acc;
}

template <class T, class Eq, class Unit>
QhmCheck check_generic(const QuaternionMatrix<T>& g, Eq eq, Unit unit) {
  const std::size_t n = g.order();
  QhmCheck res;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!unit(g.at(a, b))) return {false, a, b, "entry is not a unit quaternion"};
    }
  }
  const T target = T(ExactQuaternion::from_integer(static_cast<int>(n)));
  bool rows_ok = true, cols_ok = true;
  std::size_t bad_a = 0, bad_b = 0;
  for (std::size_t a = 0; a < n && rows_ok; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!eq(gram_entry(g, a, b, true), a == b ? target : T{})) {
        rows_ok = false;
        bad_a = a, bad_b = b;
        break;
      }
    }
  }
  for (std::size_t a = 0; a < n && cols_ok; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!eq(gram_entry(g, a, b, false), a == b ? target : T{})) {
        cols_ok = false;
        break;
      }
    }
  }
  if (rows_ok != cols_ok) {
    // For square matrices over a division ring the two conditions coincide.
    throw std::logic_error("G G* and G* G disagree");
  }
  if (!rows_ok) return {false, bad_a, bad_b, "rows " + std::to_string(bad_a) + " and " + std::to_string(bad_b) +
                                                 " are not orthogonal"};
  return res;
}

}  // namespace

QhmCheck check_qhm(const ExactMatrix& g) {
  return check_generic(
      g, [](const ExactQuaternion& x, const ExactQuaternion& y) { return x == y; },
      [](const ExactQuaternion& x) { return x.is_unit(); });
}

QhmCheck check_qhm(const FloatMatrix& g, double tol) {
  return check_generic(
      g, [tol](const FloatQuaternion& x, const FloatQuaternion& y) { return approx_equal(x, y, tol); },
      [tol](const FloatQuaternion& x) { return std::abs(x.norm_sq() - 1.0) < tol; });
}

namespace {

template <class T>
QuaternionMatrix<T> dephase_generic(const QuaternionMatrix<T>& g) {
  const std::size_t n = g.order();
  QuaternionMatrix<T> r(g);
  for (std::size_t a = 0; a < n; ++a) {
    const T c = conj(r.at(a, 0));
    for (std::size_t b = 0; b < n; ++b) r.at(a, b) = c * r.at(a, b);
  }
  for (std::size_t b = 0; b < n; ++b) {
    const T c = conj(r.at(0, b));
    for (std::size_t a = 0; a < n; ++a) r.at(a, b) = r.at(a, b) * c;
  }
  return r;
}

}  // namespace

ExactMatrix dephase(const ExactMatrix& g) { return dephase_generic(g); }
FloatMatrix dephase(const FloatMatrix& g) { return dephase_generic(g); }

bool is_normalized(const ExactMatrix& g) {
  for (std::size_t t = 0; t < g.order(); ++t) {
    if (g.at(0, t) != quat::one || g.at(t, 0) != quat::one) return false;
  }
  return true;
}

ExactMatrix apply_automorphism(const ExactMatrix& g, const ExactQuaternion& a) {
  if (!a.is_unit() || !a.is_pure_imaginary()) {
    throw std::invalid_argument("automorphism parameter must be a unit pure quaternion");
  }
  ExactMatrix r(g.order());
  const ExactQuaternion ac = conj(a);
  for (std::size_t x = 0; x < g.order(); ++x) {
    for (std::size_t y = 0; y < g.order(); ++y) r.at(x, y) = ac * g.at(x, y) * a;
  }
  return r;
}

FloatMatrix apply_automorphism(const FloatMatrix& g, const FloatQuaternion& a, double tol) {
  if (std::abs(a.norm_sq() - 1.0) > tol || !is_pure_imaginary(a, tol)) {
    throw std::invalid_argument("automorphism parameter must be a unit pure quaternion");
  }
  FloatMatrix r(g.order());
  const FloatQuaternion ac = conj(a);
  for (std::size_t x = 0; x < g.order(); ++x) {
    for (std::size_t y = 0; y < g.order(); ++y) r.at(x, y) = ac * g.at(x, y) * a;
  }
  return r;
}

std::vector<ExactQuaternion> normalized_column_candidates(std::span<const ExactQuaternion> h, std::size_t j,
                                                          std::size_t k) {
  const std::size_t n = h.size();
  if (j >= n || k >= n) throw std::out_of_range("column or shift index out of range");
  std::vector<ExactQuaternion> col(n);
  for (std::size_t i = 0; i < n; ++i) {
    col[i] = h[k] * conj(h[(n - i) % n]) * h[(j + n - i) % n] * conj(h[(j + k) % n]);
  }
  return col;
}

ExactMatrix normalized_candidate_matrix(std::span<const ExactQuaternion> h, std::size_t k) {
  ExactMatrix m(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) {
    const auto col = normalized_column_candidates(h, j, k);
    for (std::size_t i = 0; i < h.size(); ++i) m.at(i, j) = col[i];
  }
  return m;
}

ColumnInvariant column_invariants(std::span<const ExactQuaternion> col) {
  ColumnInvariant inv;
  std::vector<ExactQuaternion> seen_neg, seen_cube;
  const auto contains = [&](const ExactQuaternion& x) { return std::find(col.begin(), col.end(), x) != col.end(); };
  for (std::size_t a = 0; a < col.size(); ++a) {
    const ExactQuaternion& x = col[a];
    if (x.is_pure_imaginary()) ++inv.pure_imaginary;
    if (x.is_real()) ++inv.plus_minus_one;
    if (!x.is_real()) {
      // (b, -b): each unordered value pair once.
      if (contains(-x) && std::find(seen_neg.begin(), seen_neg.end(), -x) == seen_neg.end() &&
          std::find(seen_neg.begin(), seen_neg.end(), x) == seen_neg.end()) {
        seen_neg.push_back(x);
        ++inv.negation_pairs;
      }
      // (g, g^2), g of order 3 or 6.
      if (mixed(x) && x.c0() * x.c0() == 1 && contains(x * x) &&
          std::find(seen_cube.begin(), seen_cube.end(), x) == seen_cube.end()) {
        seen_cube.push_back(x);
        ++inv.cube_root_pairs;
      }
      for (std::size_t b = a + 1; b < col.size(); ++b) {
        if (col[b] == conj(x)) inv.conjugate_pairs.emplace_back(a, b);
        if (inv.commuting && !col[b].is_real() && !parallel(x, col[b])) inv.commuting = false;
      }
    }
  }
  return inv;
}

int column_pattern_type(std::span<const ExactQuaternion> col) {
  int ones = 0;
  std::vector<ExactQuaternion> pure;
  for (const auto& x : col) {
    if (x.is_real()) ++ones;
    else if (x.is_pure_imaginary()) pure.push_back(x);
  }
  const bool one_axis =
      !pure.empty() && std::all_of(pure.begin(), pure.end(), [&](const ExactQuaternion& b) {
        return b == pure.front() || b == -pure.front();
      });
  if (ones == 2 && pure.size() == 3 && one_axis) return 1;
  if (ones == 3 && pure.size() == 2 && one_axis) return 2;

  // Type 3: disjoint entries (g, g^2) plus two (b, -b) pairs from two
  // different classes {b, -b}, all with nonzero real and imaginary parts.
  for (std::size_t a = 0; a < col.size(); ++a) {
    const ExactQuaternion& g = col[a];
    if (!mixed(g) || g.c0() * g.c0() != 1) continue;
    const ExactQuaternion g2 = g * g;
    for (std::size_t b = 0; b < col.size(); ++b) {
      if (b == a || col[b] != g2) continue;
      // Remaining mixed entries; a class {x, -x} yields min(#x, #-x) pairs.
      std::vector<ExactQuaternion> rest;
      for (std::size_t t = 0; t < col.size(); ++t) {
        if (t != a && t != b && mixed(col[t])) rest.push_back(col[t]);
      }
      int classes = 0;
      std::vector<ExactQuaternion> done;
      for (const auto& x : rest) {
        if (std::find(done.begin(), done.end(), x) != done.end()) continue;
        done.push_back(x);
        done.push_back(-x);
        if (std::find(rest.begin(), rest.end(), -x) != rest.end()) ++classes;
      }
      if (classes == 2) return 3;
    }
  }
  return 0;
}

std::optional<std::vector<std::size_t>> column_equivalence(std::span<const ExactQuaternion> from,
                                                           std::span<const ExactQuaternion> to) {
  const std::size_t n = from.size();
  if (to.size() != n) return std::nullopt;
  // First linearly independent triple of imaginary parts, if any.
  std::optional<std::array<std::size_t, 3>> basis;
  for (std::size_t a = 0; a < n && !basis; ++a) {
    for (std::size_t b = a + 1; b < n && !basis; ++b) {
      for (std::size_t c = b + 1; c < n && !basis; ++c) {
        if (det3(from[a], from[b], from[c]) != 0) basis = std::array<std::size_t, 3>{a, b, c};
      }
    }
  }
  std::vector<std::size_t> perm(n);
  std::vector<bool> used(n, false);
  std::optional<std::vector<std::size_t>> found;
  const auto extend = [&](auto&& self, std::size_t pos) -> void {
    if (found) return;
    if (pos == n) {
      if (basis) {
        const auto& [a, b, c] = *basis;
        if (det3(from[a], from[b], from[c]) != det3(to[perm[a]], to[perm[b]], to[perm[c]])) return;
      }
      found = perm;
      return;
    }
    for (std::size_t cand = 0; cand < n; ++cand) {
      if (used[cand] || to[cand].c0() != from[pos].c0()) continue;
      bool ok = dot3(to[cand], to[cand]) == dot3(from[pos], from[pos]);
      for (std::size_t prev = 0; prev < pos && ok; ++prev) ok = dot3(to[cand], to[perm[prev]]) == dot3(from[pos], from[prev]);
      if (!ok) continue;
      used[cand] = true;
      perm[pos] = cand;
      self(self, pos + 1);
      used[cand] = false;
    }
  };
  extend(extend, 0);
  return found;
}

FloatMatrix fourier_matrix(std::size_t n) {
  FloatMatrix f(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>((a * b) % n) / static_cast<double>(n);
      f.at(a, b) = FloatQuaternion(std::cos(t), std::sin(t), 0, 0);
    }
  }
  return f;
}

FloatMatrix g_pattern(const FloatQuaternion& a, const FloatQuaternion& b, const FloatQuaternion& c) {
  const FloatQuaternion o(1, 0, 0, 0), m(-1, 0, 0, 0);
  const FloatQuaternion rows[5][5] = {
      {o, o, o, o, o}, {o, m, a, b, c}, {o, a, m, c, b}, {o, b, c, m, a}, {o, c, b, a, m}};
  FloatMatrix g(5);
  for (std::size_t x = 0; x < 5; ++x) {
    for (std::size_t y = 0; y < 5; ++y) g.at(x, y) = rows[x][y];
  }
  return g;
}

ExactMatrix parse_exact_matrix(std::string_view text) {
  std::vector<std::vector<ExactQuaternion>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.empty()) continue;
    try {
      std::vector<ExactQuaternion> row;
      if (parts.size() == 1) {
        row = decode_symbols(parts[0]);
      } else {
        for (const auto& p : parts) row.push_back(parse_product(p));
      }
      rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  ExactMatrix m(rows.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (rows[a].size() != rows.size()) {
      throw std::invalid_argument("matrix is not square: row " + std::to_string(a + 1) + " has " +
                                  std::to_string(rows[a].size()) + " entries, expected " +
                                  std::to_string(rows.size()));
    }
    for (std::size_t b = 0; b < rows.size(); ++b) m.at(a, b) = rows[a][b];
  }
  return m;
}

std::string format_matrix(const ExactMatrix& m) {
  std::string out;
  for (std::size_t a = 0; a < m.order(); ++a) {
    for (std::size_t b = 0; b < m.order(); ++b) {
      if (b) out += ' ';
      out += format_entry(m.at(a, b));
    }
    out += '\n';
  }
  return out;
}

std::string format_matrix(const FloatMatrix& m, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision);
  for (std::size_t a = 0; a < m.order(); ++a) {
    for (std::size_t b = 0; b < m.order(); ++b) os << (b ? " " : "") << m.at(a, b);
    os << '\n';
  }
  return os.str();
}

}  // namespace qtseq
