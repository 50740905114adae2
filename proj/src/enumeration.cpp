#include "qtseq/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <unistd.h>

namespace qtseq {

std::vector<RowsumDecomposition> four_square_decompositions(int n) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  const int total = 4 * n;
  std::vector<RowsumDecomposition> out;
  const int parity = n % 2;
  for (int w = 0; w * w <= total; ++w) {
    if (w % 2 != parity) continue;
    for (int x = parity; x <= w && w * w + x * x <= total; x += 2) {
      for (int y = parity; y <= x && w * w + x * x + y * y <= total; y += 2) {
        const int rest = total - w * w - x * x - y * y;
        const int z = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rest))));
        if (z * z == rest && z <= y && z % 2 == parity) out.push_back({w, x, y, z});
      }
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

namespace {

void check_rowsum(int n, int rowsum) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  if (std::abs(rowsum) > n || (n - rowsum) % 2 != 0) {
    throw std::invalid_argument("no binary sequence of length " + std::to_string(n) + " has rowsum " +
                                std::to_string(rowsum));
  }
}

// Calls f(entries) for every sequence with `minus` entries equal to -1, the
// -1 positions running through combinations in lexicographic order.
template <class F>
void for_each_with_minus(int n, int minus, F&& f) {
  std::vector<int> pos(minus);
  for (int t = 0; t < minus; ++t) pos[t] = t;
  std::vector<int8_t> e(n);
  for (;;) {
    std::fill(e.begin(), e.end(), int8_t{1});
    for (int p : pos) e[p] = -1;
    f(e);
    int t = minus - 1;
    while (t >= 0 && pos[t] == n - minus + t) --t;
    if (t < 0) return;
    ++pos[t];
    for (int u = t + 1; u < minus; ++u) pos[u] = pos[u - 1] + 1;
  }
}

}  // namespace

CandidateSet candidate_set(int n, int rowsum) {
  check_rowsum(n, rowsum);
  CandidateSet cs;
  cs.n = n;
  cs.rowsum = rowsum;
  const double bound = 4.0 * n + kPsdSlack;
  for_each_with_minus(n, (n - rowsum) / 2, [&](const std::vector<int8_t>& e) {
    SpectralProfile sp = spectral_profile(e);
    if (std::any_of(sp.psd.begin(), sp.psd.end(), [bound](double p) { return p > bound; })) return;
    cs.sequences.emplace_back(e);
    cs.words.push_back(packed::pack(cs.sequences.back()));
    cs.spectra.push_back(std::move(sp));
  });
  return cs;
}

std::vector<BinarySequence> sequences_with_rowsum(int n, int rowsum) { return candidate_set(n, rowsum).sequences; }

std::string MatchKey::to_line() const {
  std::string s;
  for (int t = 0; t < length; ++t) {
    s += std::to_string(key[t]);
    s += ' ';
  }
  s += "| ";
  s += std::to_string(first);
  s += ' ';
  s += std::to_string(second);
  return s;
}

MatchKey MatchKey::from_line(std::string_view line) {
  MatchKey k;
  const auto bar = line.find('|');
  if (bar == std::string_view::npos) throw std::invalid_argument("match key line lacks '|'");
  auto parse_ints = [](std::string_view part) {
    std::vector<long> v;
    const char* p = part.data();
    const char* end = part.data() + part.size();
    for (;;) {
      while (p < end && *p == ' ') ++p;
      if (p >= end) break;
      long x = 0;
      auto [q, ec] = std::from_chars(p, end, x);
      if (ec != std::errc{}) throw std::invalid_argument("malformed match key line");
      v.push_back(x);
      p = q;
    }
    return v;
  };
  const auto keys = parse_ints(line.substr(0, bar));
  const auto idx = parse_ints(line.substr(bar + 1));
  if (keys.size() > static_cast<std::size_t>(kMaxKeyLength) || idx.size() != 2) {
    throw std::invalid_argument("malformed match key line");
  }
  k.length = static_cast<std::uint8_t>(keys.size());
  for (std::size_t t = 0; t < keys.size(); ++t) {
    if (keys[t] < 0 || keys[t] > 255) throw std::invalid_argument("match key component out of range");
    k.key[t] = static_cast<std::uint8_t>(keys[t]);
  }
  k.first = static_cast<std::uint32_t>(idx[0]);
  k.second = static_cast<std::uint32_t>(idx[1]);
  return k;
}

namespace {

// Spectral data of a candidate set laid out per sequence for the pair loop.
struct SpectralTable {
  int h = 0;
  std::vector<double> psd, re, im;  // [v * h + (t - 1)]

  explicit SpectralTable(const CandidateSet& cs) : h(cs.n / 2) {
    const std::size_t m = cs.size();
    psd.resize(m * h);
    re.resize(m * h);
    im.resize(m * h);
    for (std::size_t v = 0; v < m; ++v) {
      for (int t = 1; t <= h; ++t) {
        psd[v * h + t - 1] = cs.spectra[v].psd[t];
        re[v * h + t - 1] = cs.spectra[v].dft[t].real();
        im[v * h + t - 1] = cs.spectra[v].dft[t].imag();
      }
    }
  }
};

struct ChunkOutput {
  std::vector<MatchKey> keys;
  PairStats stats;
};

// DFT value at the first shift, stored contiguously in b_order order: the
// CPSD test there rejects nearly every pair and now stays in cache.
constexpr int kHead = 2;

void pair_chunk(const SpectralTable& a, const SpectralTable& b, const std::vector<std::uint32_t>& b_order,
                const std::vector<double>& b_first_psd, const std::vector<double>& b_head, std::size_t u_begin,
                std::size_t u_end, int n, KeySide side, const std::function<void(const MatchKey&)>* sink,
                ChunkOutput& out) {
  const int h = a.h;
  const double bound = 4.0 * n + kPsdSlack;
  const double cpsd_bound = kCpsdTolerance / 2.0;  // |CPSD_UV - CPSD_VU| = 2 |Im(...)|
  std::vector<std::uint32_t> hits;
  MatchKey k;
  k.length = static_cast<std::uint8_t>(h);
  for (std::size_t u = u_begin; u < u_end; ++u) {
    const double* pu = &a.psd[u * h];
    const double* ru = &a.re[u * h];
    const double* iu = &a.im[u * h];
    std::size_t limit = b_order.size();
    if (h > 0) {
      limit = static_cast<std::size_t>(
          std::upper_bound(b_first_psd.begin(), b_first_psd.end(), bound - pu[0]) - b_first_psd.begin());
    }
    hits.clear();
    for (std::size_t p = 0; p < limit; ++p) {
      if (h > 0) {
        const double* hv = &b_head[p * kHead];
        if (std::abs(iu[0] * hv[0] - ru[0] * hv[1]) > cpsd_bound) continue;
      }
      const std::uint32_t v = b_order[p];
      const double* rv = &b.re[static_cast<std::size_t>(v) * h];
      const double* iv = &b.im[static_cast<std::size_t>(v) * h];
      int t = 1;
      while (t < h && std::abs(iu[t] * rv[t] - ru[t] * iv[t]) <= cpsd_bound) ++t;
      if (t < h) continue;
      ++out.stats.amicable;
      const double* pv = &b.psd[static_cast<std::size_t>(v) * h];
      t = 1;
      while (t < h && pu[t] + pv[t] <= bound) ++t;
      if (t < h) continue;
      hits.push_back(v);
    }
    std::sort(hits.begin(), hits.end());
    for (std::uint32_t v : hits) {
      const double* pv = &b.psd[static_cast<std::size_t>(v) * h];
      for (int t = 0; t < h; ++t) {
        double s = pu[t] + pv[t];
        if (side == KeySide::Complement) s = 4.0 * n - s;
        const long r = std::lround(s);
        k.key[t] = static_cast<std::uint8_t>(std::clamp(r, 0L, 4L * n));
      }
      k.first = static_cast<std::uint32_t>(u);
      k.second = v;
      if (sink) {
        (*sink)(k);
      } else {
        out.keys.push_back(k);
      }
    }
    out.stats.emitted += hits.size();
  }
}

}  // namespace

void amicable_pair_stream(const CandidateSet& s1, const CandidateSet& s2, KeySide side,
                          const std::function<void(const MatchKey&)>& sink, PairStats* stats, int threads) {
  if (s1.n != s2.n) throw std::invalid_argument("candidate sets of different orders");
  const int n = s1.n;
  const SpectralTable a(s1), b(s2);
  std::vector<std::uint32_t> order(s2.size());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = static_cast<std::uint32_t>(v);
  std::vector<double> first_psd;
  if (b.h > 0) {
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return b.psd[x * b.h] < b.psd[y * b.h]; });
    for (auto v : order) first_psd.push_back(b.psd[static_cast<std::size_t>(v) * b.h]);
  }
  std::vector<double> head(order.size() * kHead, 0.0);
  if (b.h > 0) {
    for (std::size_t p = 0; p < order.size(); ++p) {
      head[p * kHead] = b.re[static_cast<std::size_t>(order[p]) * b.h];
      head[p * kHead + 1] = b.im[static_cast<std::size_t>(order[p]) * b.h];
    }
  }

  PairStats total;
  total.raw = static_cast<std::uint64_t>(s1.size()) * s2.size();
  threads = std::max(1, threads);
  if (threads == 1 || s1.size() < 2) {
    ChunkOutput out;
    pair_chunk(a, b, order, first_psd, head, 0, s1.size(), n, side, &sink, out);
    total.amicable = out.stats.amicable;
    total.emitted = out.stats.emitted;
  } else {
    // Dynamic chunks; outputs are replayed to the sink in chunk order.
    const std::size_t chunk = std::max<std::size_t>(1, s1.size() / (static_cast<std::size_t>(threads) * 16));
    const std::size_t nchunks = (s1.size() + chunk - 1) / chunk;
    std::vector<ChunkOutput> outs(nchunks);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c; (c = next++) < nchunks;) {
          pair_chunk(a, b, order, first_psd, head, c * chunk, std::min(s1.size(), (c + 1) * chunk), n, side,
                     nullptr, outs[c]);
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& o : outs) {
      for (const auto& k : o.keys) sink(k);
      total.amicable += o.stats.amicable;
      total.emitted += o.stats.emitted;
      o.keys = {};
    }
  }
  if (stats) {
    stats->raw += total.raw;
    stats->amicable += total.amicable;
    stats->emitted += total.emitted;
  }
}

namespace {

// Owns the run directory; removed when the last stream using it goes away.
struct RunDirectory {
  explicit RunDirectory(std::filesystem::path p) : path(std::move(p)) {}
  RunDirectory(const RunDirectory&) = delete;
  RunDirectory& operator=(const RunDirectory&) = delete;
  std::filesystem::path path;
  ~RunDirectory() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

class RunReader {
 public:
  explicit RunReader(const std::filesystem::path& p) : in_(p) {
    if (!in_) throw std::runtime_error("cannot open run file " + p.string());
  }
  bool next(MatchKey& k) {
    if (!std::getline(in_, line_)) return false;
    k = MatchKey::from_line(line_);
    return true;
  }

 private:
  std::ifstream in_;
  std::string line_;
};

class MergeStream : public KeyStream {
 public:
  MergeStream(std::shared_ptr<RunDirectory> dir, const std::vector<std::filesystem::path>& runs)
      : dir_(std::move(dir)) {
    for (const auto& p : runs) readers_.push_back(std::make_unique<RunReader>(p));
    for (std::size_t r = 0; r < readers_.size(); ++r) {
      MatchKey k;
      if (readers_[r]->next(k)) heap_.push({k, r});
    }
  }

  bool next(MatchKey& out) override {
    if (heap_.empty()) return false;
    auto [k, r] = heap_.top();
    heap_.pop();
    out = k;
    MatchKey nk;
    if (readers_[r]->next(nk)) heap_.push({nk, r});
    return true;
  }

 private:
  struct Entry {
    MatchKey key;
    std::size_t run;
    bool operator<(const Entry& o) const { return full_less(o.key, key); }  // min-heap
  };
  std::shared_ptr<RunDirectory> dir_;
  std::vector<std::unique_ptr<RunReader>> readers_;
  std::priority_queue<Entry> heap_;
};

std::filesystem::path make_run_directory(const std::filesystem::path& base) {
  static std::atomic<unsigned> counter{0};
  for (;;) {
    auto p = base / ("qtseq-pairs-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    if (std::filesystem::create_directories(p)) return p;
  }
}

}  // namespace

PairStore::PairStore(std::size_t memory_budget_bytes, std::filesystem::path temp_dir)
    : capacity_(std::max<std::size_t>(1, memory_budget_bytes / sizeof(MatchKey))), temp_dir_(std::move(temp_dir)) {}

PairStore::~PairStore() {
  if (runs_.empty()) return;
  std::error_code ec;
  std::filesystem::remove_all(temp_dir_, ec);
}

void PairStore::add(const MatchKey& k) {
  if (buffer_.size() >= capacity_) spill();
  buffer_.push_back(k);
  ++count_;
}

void PairStore::spill() {
  if (buffer_.empty()) return;
  if (runs_.empty()) temp_dir_ = make_run_directory(temp_dir_);
  std::sort(buffer_.begin(), buffer_.end(), full_less);
  auto path = temp_dir_ / ("run-" + std::to_string(runs_.size()) + ".txt");
  {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write run file " + path.string());
    for (const auto& k : buffer_) out << k.to_line() << '\n';
    if (!out) throw std::runtime_error("failed writing run file " + path.string());
  }
  spilled_bytes_ += std::filesystem::file_size(path);
  runs_.push_back(std::move(path));
  buffer_.clear();
}

std::unique_ptr<KeyStream> PairStore::finish() {
  if (runs_.empty()) {
    std::sort(buffer_.begin(), buffer_.end(), full_less);
    return std::make_unique<VectorKeyStream>(std::move(buffer_));
  }
  spill();
  auto dir = std::make_shared<RunDirectory>(temp_dir_);
  auto stream = std::make_unique<MergeStream>(dir, runs_);
  runs_.clear();
  return stream;
}

namespace {

class GroupReader {
 public:
  explicit GroupReader(KeyStream& s) : s_(s) { has_ = s_.next(cur_); }

  // Next run of equal keys; false at end of stream.
  bool next_group(std::vector<MatchKey>& group) {
    group.clear();
    if (!has_) return false;
    group.push_back(cur_);
    for (;;) {
      has_ = s_.next(cur_);
      if (!has_) break;
      if (key_less(cur_, group.front())) throw std::runtime_error("match key stream is not sorted");
      if (cur_.key != group.front().key) break;
      group.push_back(cur_);
    }
    return true;
  }

 private:
  KeyStream& s_;
  MatchKey cur_;
  bool has_ = false;
};

}  // namespace

std::vector<QTQuadruple> match_and_verify(KeyStream& wz, KeyStream& xy, const CandidateSet& W,
                                          const CandidateSet& X, const CandidateSet& Y, const CandidateSet& Z,
                                          MatchStats* stats) {
  const int n = W.n;
  std::vector<QTQuadruple> out;
  GroupReader r1(wz), r2(xy);
  std::vector<MatchKey> g1, g2;
  bool h1 = r1.next_group(g1);
  bool h2 = r2.next_group(g2);
  MatchStats local;
  while (h1 && h2) {
    if (g1.front().key < g2.front().key) {
      h1 = r1.next_group(g1);
    } else if (g2.front().key < g1.front().key) {
      h2 = r2.next_group(g2);
    } else {
      for (const auto& a : g1) {
        for (const auto& b : g2) {
          ++local.collisions;
          const packed::Quad q{W.words[a.first], X.words[b.first], Y.words[b.second], Z.words[a.second]};
          if (packed::is_qt(q, n)) {
            ++local.verified;
            out.push_back(packed::unpack(q, n));
          }
        }
      }
      h1 = r1.next_group(g1);
      h2 = r2.next_group(g2);
    }
  }
  if (stats) {
    stats->collisions += local.collisions;
    stats->verified += local.verified;
  }
  return out;
}

EnumerationResult enumerate_wt(int n, const EnumerationOptions& options) {
  if (n < 1 || n > kMaxEnumerationOrder) {
    throw std::invalid_argument("order must lie in 1.." + std::to_string(kMaxEnumerationOrder));
  }
  EnumerationResult result;
  std::map<int, CandidateSet> sets;
  auto set_for = [&](int r) -> const CandidateSet& {
    auto it = sets.find(r);
    if (it == sets.end()) it = sets.emplace(r, candidate_set(n, r)).first;
    return it->second;
  };
  const auto decomps = four_square_decompositions(n);
  result.stats.decompositions = decomps.size();
  for (const auto& d : decomps) {
    const CandidateSet& W = set_for(d.w);
    const CandidateSet& X = set_for(d.x);
    const CandidateSet& Y = set_for(d.y);
    const CandidateSet& Z = set_for(d.z);
    PairStats ps;
    if (options.count_pairs_only) {
      auto noop = [](const MatchKey&) {};
      amicable_pair_stream(W, Z, KeySide::Sum, noop, &ps, options.threads);
      amicable_pair_stream(X, Y, KeySide::Complement, noop, &ps, options.threads);
    } else {
      // Half of the budget per side.
      PairStore s1(options.memory_budget_bytes / 2, options.temp_dir);
      PairStore s2(options.memory_budget_bytes / 2, options.temp_dir);
      amicable_pair_stream(W, Z, KeySide::Sum, [&](const MatchKey& k) { s1.add(k); }, &ps, options.threads);
      amicable_pair_stream(X, Y, KeySide::Complement, [&](const MatchKey& k) { s2.add(k); }, &ps,
                           options.threads);
      auto k1 = s1.finish();
      auto k2 = s2.finish();
      result.stats.spilled_bytes += s1.spilled_bytes() + s2.spilled_bytes();
      MatchStats ms;
      auto found = match_and_verify(*k1, *k2, W, X, Y, Z, &ms);
      result.stats.collisions += ms.collisions;
      result.quadruples.insert(result.quadruples.end(), found.begin(), found.end());
    }
    result.stats.raw_pairs += ps.raw;
    result.stats.amicable_pairs += ps.amicable;
    result.stats.filtered_pairs += ps.emitted;
  }
  return result;
}

namespace {

BinarySequence half_shift(const BinarySequence& s) {
  const std::size_t n = s.size();
  std::vector<int8_t> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<int8_t>(s[(i + n / 2) % n]);
  return BinarySequence(std::move(e));
}

QTQuadruple with_first(const QTQuadruple& q, BinarySequence a) { return QTQuadruple(std::move(a), q[1], q[2], q[3]); }

}  // namespace

std::vector<QTQuadruple> expand_for_qt(const std::vector<QTQuadruple>& list, int n, ExpandMode mode) {
  std::vector<QTQuadruple> out(list);
  for (const auto& q : list) {
    if (mode == ExpandMode::RawRowsumSkip) {
      const int w = q[0].rowsum(), x = q[1].rowsum(), y = q[2].rowsum(), z = q[3].rowsum();
      if (w == x || x == y || y == z || z == 0) continue;
    }
    out.push_back(with_first(q, q[0].negated()));
  }
  if (n % 2 == 0) {
    const std::size_t m = out.size();
    for (std::size_t t = 0; t < m; ++t) out.push_back(with_first(out[t], half_shift(out[t][0])));
  }
  return out;
}

}  // namespace qtseq
