#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtseq/quaternion.hpp"

namespace qtseq {

/// A +-1 sequence of length n >= 1 with its rowsum cached.
class BinarySequence {
 public:
  BinarySequence() = default;
  explicit BinarySequence(std::vector<int8_t> entries);

  /// Parses a string of '+' and '-'.
  static BinarySequence parse(std::string_view text);

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t idx) const { return entries_[idx]; }
  std::span<const int8_t> entries() const { return entries_; }
  int rowsum() const { return rowsum_; }

  BinarySequence negated() const;
  bool is_palindromic() const;  // a_i = a_{n-i}
  std::string to_string() const;

  friend bool operator==(const BinarySequence& a, const BinarySequence& b) { return a.entries_ == b.entries_; }
  /// Lexicographic with -1 < +1.
  friend std::strong_ordering operator<=>(const BinarySequence& a, const BinarySequence& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<int8_t> entries_;
  int rowsum_ = 0;
};

/// An ordered quadruple (A, B, C, D) of equal-length binary sequences.
class QTQuadruple {
 public:
  QTQuadruple() = default;
  QTQuadruple(BinarySequence a, BinarySequence b, BinarySequence c, BinarySequence d);
  explicit QTQuadruple(std::array<BinarySequence, 4> seqs);

  /// Four whitespace separated '+'/'-' strings.
  static QTQuadruple parse(std::string_view line);

  std::size_t order() const { return seqs_[0].size(); }
  const BinarySequence& operator[](std::size_t idx) const { return seqs_[idx]; }
  const std::array<BinarySequence, 4>& sequences() const { return seqs_; }
  std::string to_string() const;

  friend bool operator==(const QTQuadruple&, const QTQuadruple&) = default;
  friend std::strong_ordering operator<=>(const QTQuadruple& a, const QTQuadruple& b) {
    for (int t = 0; t < 4; ++t) {
      if (auto c = a.seqs_[t] <=> b.seqs_[t]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  std::array<BinarySequence, 4> seqs_;
};

/// R_{A,B}(t) = sum_r a_r b_{r+t mod n}.
int crosscorrelation(const BinarySequence& a, const BinarySequence& b, std::size_t t);
inline int autocorrelation(const BinarySequence& a, std::size_t t) { return crosscorrelation(a, a, t); }

/// R_{A,B}(t) = sum_r a_r b*_{r+t mod n}.
ExactQuaternion crosscorrelation(std::span<const ExactQuaternion> a, std::span<const ExactQuaternion> b,
                                 std::size_t t);
inline ExactQuaternion autocorrelation(std::span<const ExactQuaternion> a, std::size_t t) {
  return crosscorrelation(a, a, t);
}
/// sum_r a*_r a_{r+t mod n}.
ExactQuaternion left_autocorrelation(std::span<const ExactQuaternion> a, std::size_t t);

/// Right perfection: R_S(t) = 0 for 0 < t < n. With self_test the left
/// autocorrelation is also evaluated and std::logic_error thrown on mismatch.
bool is_perfect(std::span<const ExactQuaternion> s, bool self_test = false);
/// First shift with nonzero autocorrelation.
std::optional<std::size_t> first_imperfect_shift(std::span<const ExactQuaternion> s);

struct QuadrupleCheck {
  bool ok = true;
  std::size_t shift = 0;  // first failing shift
  int condition = 0;      // 0 for the autocorrelation sum, 1..3 for the crosscorrelation conditions
};

/// Exact test of the autocorrelation sum and the three crosscorrelation
/// conditions over all shifts.
QuadrupleCheck check_qt_quadruple(const QTQuadruple& q);
inline bool is_qt_quadruple(const QTQuadruple& q) { return check_qt_quadruple(q).ok; }

/// Pairwise amicability R_{X,Y} = R_{Y,X} for all six pairs.
bool is_amicable(const QTQuadruple& q);
/// Autocorrelation sum plus pairwise amicability.
bool is_williamson_type(const QTQuadruple& q);
bool is_symmetric(const QTQuadruple& q);

/// DFT_A(t) = sum_s a_s exp(2 pi i s t / n) and |DFT_A(t)|^2 for t = 0..n/2.
struct SpectralProfile {
  std::vector<std::complex<double>> dft;
  std::vector<double> psd;
};

SpectralProfile spectral_profile(const BinarySequence& a);
SpectralProfile spectral_profile(std::span<const int8_t> a);

/// CPSD_{X,Y}(t) = DFT_X(t) conj(DFT_Y(t)).
inline std::complex<double> cpsd(const SpectralProfile& x, const SpectralProfile& y, std::size_t t) {
  return x.dft[t] * std::conj(y.dft[t]);
}

/// Frequency-domain forms of the QT conditions over t = 0..n/2.
bool psd_condition_holds(const QTQuadruple& q, double tol = 1e-6);
bool cpsd_conditions_hold(const QTQuadruple& q, double tol = 1e-6);

}  // namespace qtseq
