#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qtseq/quaternion.hpp"
#include "qtseq/sequence.hpp"

namespace qtseq {

/// Dense square matrix of quaternions, row-major.
template <class T>
class QuaternionMatrix {
 public:
  QuaternionMatrix() = default;
  explicit QuaternionMatrix(std::size_t order, T fill = T{}) : n_(order), data_(order * order, fill) {}

  std::size_t order() const { return n_; }
  const T& at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  T& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(n_);
    for (std::size_t i = 0; i < n_; ++i) c[i] = at(i, j);
    return c;
  }

  friend bool operator==(const QuaternionMatrix&, const QuaternionMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using ExactMatrix = QuaternionMatrix<ExactQuaternion>;
using FloatMatrix = QuaternionMatrix<FloatQuaternion>;

FloatMatrix to_float(const ExactMatrix& m);

/// Entrywise QT quadruple <-> Q+ sequence codec. perfect_to_qt throws
/// std::domain_error for an entry outside Q+.
std::vector<ExactQuaternion> qt_to_perfect(const QTQuadruple& q);
QTQuadruple perfect_to_qt(std::span<const ExactQuaternion> s);
ExactQuaternion qt_entry_to_quaternion(int a, int b, int c, int d);

/// M_ij = s_{j-i mod n}.
ExactMatrix circulant_qhm(std::span<const ExactQuaternion> s);

struct QhmCheck {
  bool ok = true;
  std::size_t row = 0, col = 0;  // first offending entry (of G G* if not a unit issue)
  std::string reason;
};

/// Unit entries and G G* = n I, cross-checked against G* G = n I. The float
/// variant compares elementwise within tol.
QhmCheck check_qhm(const ExactMatrix& g);
QhmCheck check_qhm(const FloatMatrix& g, double tol = FloatQuaternion::kDefaultTolerance);
inline bool verify_qhm(const ExactMatrix& g) { return check_qhm(g).ok; }
inline bool verify_qhm(const FloatMatrix& g, double tol = FloatQuaternion::kDefaultTolerance) {
  return check_qhm(g, tol).ok;
}

/// Rows scaled on the left by the conjugate of their first entry, then
/// columns on the right by the conjugate of their first entry.
ExactMatrix dephase(const ExactMatrix& g);
FloatMatrix dephase(const FloatMatrix& g);
bool is_normalized(const ExactMatrix& g);

/// x -> a* x a entrywise. a must be a unit pure quaternion, otherwise
/// std::invalid_argument.
ExactMatrix apply_automorphism(const ExactMatrix& g, const ExactQuaternion& a);
FloatMatrix apply_automorphism(const FloatMatrix& g, const FloatQuaternion& a,
                               double tol = FloatQuaternion::kDefaultTolerance);

/// Column j of the circulant with first row h after scaling row i on the left
/// by h_k h_{-i}* and column j on the right by h_{j+k}*: entry i is
/// h_k h_{-i}* h_{j-i} h_{j+k}*. The first column is all ones; k = 0 gives
/// the fully dephased circulant.
std::vector<ExactQuaternion> normalized_column_candidates(std::span<const ExactQuaternion> h, std::size_t j,
                                                          std::size_t k);
/// All columns for one k, as a matrix.
ExactMatrix normalized_candidate_matrix(std::span<const ExactQuaternion> h, std::size_t k);

struct ColumnInvariant {
  int pure_imaginary = 0;
  int plus_minus_one = 0;
  int negation_pairs = 0;   // distinct {b, -b} value pairs, b non-real
  int cube_root_pairs = 0;  // (g, g^2) pairs, g with real part +-1/2 and g^2 in the column
  bool commuting = true;    // all imaginary parts parallel
  std::vector<std::pair<std::size_t, std::size_t>> conjugate_pairs;  // (x, x*) with x non-real

  friend bool operator==(const ColumnInvariant&, const ColumnInvariant&) = default;
};

ColumnInvariant column_invariants(std::span<const ExactQuaternion> col);

/// Column shapes used to separate order-7 matrices.
///   1: two entries +-1, three +-b with b in Q8 pure, and nothing else of note
///   2: three entries +-1, two +-b with b in Q8 pure
///   3: disjoint entries forming one (g, g^2) pair and two (b, -b) pairs
///      from different classes {b, -b}; b and g have nonzero real and
///      imaginary parts and g has real part +-1/2 (g^3 = +-1)
/// 0 when none applies. Counts are over the whole column, first entry included.
int column_pattern_type(std::span<const ExactQuaternion> col);

/// Finds a row permutation p and an inner automorphism f with
/// f(from[i]) = to[p[i]] for all i. Returns p, or nothing.
std::optional<std::vector<std::size_t>> column_equivalence(std::span<const ExactQuaternion> from,
                                                           std::span<const ExactQuaternion> to);

/// Complex Fourier matrix exp(2 pi i jk / n) with i as the complex unit.
FloatMatrix fourier_matrix(std::size_t n);

/// Order-5 pattern
///   1  1  1  1  1
///   1 -1  a  b  c
///   1  a -1  c  b
///   1  b  c -1  a
///   1  c  b  a -1
FloatMatrix g_pattern(const FloatQuaternion& a, const FloatQuaternion& b, const FloatQuaternion& c);

/// Text format: one row per line, entries separated by blanks. An entry is a
/// product as accepted by parse_product; a row with no blanks is read as a
/// string of single symbols. Blank lines and '#' comments are skipped.
ExactMatrix parse_exact_matrix(std::string_view text);
std::string format_matrix(const ExactMatrix& m);
std::string format_matrix(const FloatMatrix& m, int precision = 6);

}  // namespace qtseq
