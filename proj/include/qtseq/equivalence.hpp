#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qtseq/sequence.hpp"

namespace qtseq {

// Equivalence operations on quadruples. Sequence indices are 0..3 for A..D.
namespace op {
struct SingleNegate {
  int which;
};
struct SingleSwap {
  int first, second;
};
/// Negate one sequence and swap one pair.
struct NegateSwap {
  int negated;
  int first, second;
};
struct DoubleNegate {
  int first, second;
};
/// Swap two disjoint pairs.
struct DoubleSwap {
  int a, b, c, d;
};
/// Negate every odd-indexed entry of all four sequences (even n).
struct AlternatingNegate {};
/// Index map i -> unit * i mod n on all four sequences.
struct Decimate {
  int unit;
};
/// result[i] = x[(i + offset) mod n] on all four sequences.
struct CyclicShift {
  int offset;
};
/// Shift one sequence by n/2 (even n).
struct SingleHalfShift {
  int which;
};
/// Shift two sequences by n/2 (even n).
struct DoubleHalfShift {
  int first, second;
};
}  // namespace op

using EquivOp = std::variant<op::SingleNegate, op::SingleSwap, op::NegateSwap, op::DoubleNegate, op::DoubleSwap,
                             op::AlternatingNegate, op::Decimate, op::CyclicShift, op::SingleHalfShift,
                             op::DoubleHalfShift>;

/// Throws std::invalid_argument when the operation does not apply to order n.
QTQuadruple apply(const EquivOp& op, const QTQuadruple& q);
std::string describe(const EquivOp& op);
/// Whether op belongs to the quaternion-type equivalence group (NS, DN, DS,
/// AN, DE, CS, DH); the Williamson-type group admits every operation.
bool is_qt_operation(const EquivOp& op);

enum class EquivGroup { WilliamsonType, QuaternionType };

/// Minimum of the quadruple's class under NS (negate one and swap one pair).
QTQuadruple canonical_sort_ns(const QTQuadruple& q);
/// Minimum under single negations and swaps: every sequence starts with -1,
/// sequences in ascending order.
QTQuadruple canonical_sort_sn(const QTQuadruple& q);

struct CanonicalForm {
  QTQuadruple representative;
  EquivGroup group = EquivGroup::QuaternionType;
  bool symmetric = false;        // some class member has four palindromes
  std::size_t inner_classes = 0;  // distinct inner-sorted forms visited

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.representative == b.representative && a.group == b.group && a.symmetric == b.symmetric;
  }
};

CanonicalForm canonical_class(const QTQuadruple& q, EquivGroup group);

/// One canonical form per class, sorted by representative.
std::vector<CanonicalForm> dedup(std::span<const QTQuadruple> list, EquivGroup group);

/// Order of the group generated by the index/sign generators (AN, DE, CS and
/// half shifts, excluding the negate/swap part), by explicit closure.
std::size_t symmetry_group_order(int n, EquivGroup group);

}  // namespace qtseq
