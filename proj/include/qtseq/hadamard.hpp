#pragma once

#include <span>
#include <string>
#include <vector>

#include "qtseq/graph_canon.hpp"
#include "qtseq/sequence.hpp"

namespace qtseq {

/// Square +-1 matrix.
class SignMatrix {
 public:
  explicit SignMatrix(std::size_t order);

  std::size_t order() const { return m_; }
  int at(std::size_t i, std::size_t j) const { return data_[i * m_ + j]; }
  void set(std::size_t i, std::size_t j, int v);
  /// H H^T = m I.
  bool is_hadamard() const;

  SignMatrix with_row_negated(std::size_t i) const;
  SignMatrix with_columns_permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

 private:
  std::size_t m_;
  std::vector<int8_t> data_;
};

/// Circulant matrix with first row s: M_ij = s_{j-i mod n}.
SignMatrix circulant(const BinarySequence& s);

/// The block array
///   [ A  B  C  D]
///   [-B  A -D  C]
///   [-C  D  A -B]
///   [-D -C  B  A]
/// of circulant blocks. Throws std::domain_error unless it is Hadamard.
SignMatrix build_qt_hadamard(const QTQuadruple& q);

/// Block-level conditions AA^T+BB^T+CC^T+DD^T = 4nI and
/// XY^T - YX^T + ZW^T - WZ^T = 0 for (A,B,C,D), (A,C,D,B), (A,D,B,C),
/// evaluated on explicit circulant matrices.
bool block_conditions_hold(const QTQuadruple& q);

/// Two vertices per row and per column (+ and - twins). Row twin r_i^s and
/// column twin c_j^u are adjacent iff s u H_ij = 1. Rows get color 0, columns 1.
ColoredGraph mckay_graph(const SignMatrix& h);

std::string hadamard_certificate(const SignMatrix& h);

struct HadamardClass {
  QTQuadruple representative;
  std::string certificate;
};

/// Keeps the first quadruple of each Hadamard equivalence class, in input order.
std::vector<HadamardClass> hadamard_dedup(std::span<const QTQuadruple> list);

}  // namespace qtseq
