#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qtseq/packed.hpp"
#include "qtseq/sequence.hpp"

namespace qtseq {

struct RowsumDecomposition {
  int w = 0, x = 0, y = 0, z = 0;
  friend auto operator<=>(const RowsumDecomposition&, const RowsumDecomposition&) = default;
};

/// Sorted decompositions 4n = w^2 + x^2 + y^2 + z^2, w >= x >= y >= z >= 0,
/// all parts congruent to n mod 2.
std::vector<RowsumDecomposition> four_square_decompositions(int n);

inline constexpr double kPsdSlack = 1e-6;
inline constexpr double kCpsdTolerance = 1e-4;
inline constexpr int kMaxEnumerationOrder = 24;
inline constexpr int kMaxKeyLength = kMaxEnumerationOrder / 2;

/// Sequences of one rowsum that survive the single-sequence PSD bound, in
/// lexicographic order of their -1 positions, with cached spectra.
struct CandidateSet {
  int n = 0;
  int rowsum = 0;
  std::vector<BinarySequence> sequences;
  std::vector<packed::Word> words;
  std::vector<SpectralProfile> spectra;

  std::size_t size() const { return sequences.size(); }
};

CandidateSet candidate_set(int n, int rowsum);
std::vector<BinarySequence> sequences_with_rowsum(int n, int rowsum);

/// Rounded spectral key of a pair plus the indices of its two sequences.
struct MatchKey {
  std::array<std::uint8_t, kMaxKeyLength> key{};
  std::uint8_t length = 0;
  std::uint32_t first = 0;
  std::uint32_t second = 0;

  std::string to_line() const;
  static MatchKey from_line(std::string_view line);

  friend bool operator==(const MatchKey&, const MatchKey&) = default;
};

/// Orders by key, then by indices so that sorting is deterministic.
inline bool key_less(const MatchKey& a, const MatchKey& b) { return a.key < b.key; }
inline bool full_less(const MatchKey& a, const MatchKey& b) {
  if (a.key != b.key) return a.key < b.key;
  if (a.first != b.first) return a.first < b.first;
  return a.second < b.second;
}

/// Sum keys round(PSD_U + PSD_V); Complement keys round(4n - PSD_U - PSD_V).
enum class KeySide { Sum, Complement };

struct PairStats {
  std::uint64_t raw = 0;       // |S1| * |S2|
  std::uint64_t amicable = 0;  // within the first-shift PSD bound and passing the CPSD filter
  std::uint64_t emitted = 0;   // additionally within the PSD bound at every shift
};

/// Streams every pair (u, v) of S1 x S2 satisfying the PSD sum bound and the
/// CPSD symmetry filter. The sink sees pairs in increasing (first, second).
void amicable_pair_stream(const CandidateSet& s1, const CandidateSet& s2, KeySide side,
                          const std::function<void(const MatchKey&)>& sink, PairStats* stats = nullptr,
                          int threads = 1);

class KeyStream {
 public:
  virtual ~KeyStream() = default;
  virtual bool next(MatchKey& out) = 0;
};

class VectorKeyStream : public KeyStream {
 public:
  explicit VectorKeyStream(std::vector<MatchKey> keys) : keys_(std::move(keys)) {}
  bool next(MatchKey& out) override {
    if (pos_ >= keys_.size()) return false;
    out = keys_[pos_++];
    return true;
  }

 private:
  std::vector<MatchKey> keys_;
  std::size_t pos_ = 0;
};

/// Collects keys and hands them back sorted. Once the in-memory buffer would
/// exceed the budget it is sorted and written to a run file; finish() merges.
class PairStore {
 public:
  PairStore(std::size_t memory_budget_bytes, std::filesystem::path temp_dir);
  ~PairStore();
  PairStore(const PairStore&) = delete;
  PairStore& operator=(const PairStore&) = delete;

  void add(const MatchKey& k);
  std::unique_ptr<KeyStream> finish();

  std::uint64_t count() const { return count_; }
  std::uint64_t spilled_bytes() const { return spilled_bytes_; }
  std::size_t runs() const { return runs_.size(); }

 private:
  void spill();

  std::size_t capacity_;
  std::filesystem::path temp_dir_;
  std::vector<MatchKey> buffer_;
  std::vector<std::filesystem::path> runs_;
  std::uint64_t count_ = 0;
  std::uint64_t spilled_bytes_ = 0;
};

struct MatchStats {
  std::uint64_t collisions = 0;  // assembled candidate quadruples
  std::uint64_t verified = 0;
};

/// Co-scans two key-sorted streams of (W,Z) and (X,Y) pairs and returns every
/// assembled (W,X,Y,Z) that passes the exact QT test. Throws
/// std::runtime_error when a stream is out of order.
std::vector<QTQuadruple> match_and_verify(KeyStream& wz, KeyStream& xy, const CandidateSet& W,
                                          const CandidateSet& X, const CandidateSet& Y, const CandidateSet& Z,
                                          MatchStats* stats = nullptr);

struct EnumerationOptions {
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
  int threads = 1;
  std::filesystem::path temp_dir = std::filesystem::temp_directory_path();
  bool count_pairs_only = false;  // skip sorting and matching
};

struct EnumerationStats {
  std::uint64_t raw_pairs = 0;
  std::uint64_t amicable_pairs = 0;
  std::uint64_t filtered_pairs = 0;
  std::uint64_t collisions = 0;
  std::uint64_t spilled_bytes = 0;
  std::size_t decompositions = 0;
};

struct EnumerationResult {
  std::vector<QTQuadruple> quadruples;
  EnumerationStats stats;
};

/// All QT quadruples of order n up to Williamson-type equivalence (with
/// duplicates), via meet-in-the-middle matching over rowsum decompositions.
EnumerationResult enumerate_wt(int n, const EnumerationOptions& options = {});

enum class ExpandMode {
  Full,           // negated and half-shifted variants of every element
  RawRowsumSkip,  // skip the negated variant when w=x, x=y, y=z or z=0
};

/// Adds (-W,X,Y,Z) and, for even n, (s^{n/2}W,X,Y,Z) variants so that the list
/// covers every QT class of the Williamson-type classes it represents.
std::vector<QTQuadruple> expand_for_qt(const std::vector<QTQuadruple>& list, int n,
                                       ExpandMode mode = ExpandMode::Full);

}  // namespace qtseq
