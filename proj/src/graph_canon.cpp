#include "qtseq/graph_canon.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <numeric>
#include <stdexcept>

namespace qtseq {

ColoredGraph::ColoredGraph(int vertices, std::vector<int> colors)
    : n_(vertices), words_((vertices + 63) / 64), colors_(std::move(colors)) {
  if (vertices < 0) throw std::invalid_argument("negative vertex count");
  if (colors_.empty()) colors_.assign(n_, 0);
  if (static_cast<int>(colors_.size()) != n_) throw std::invalid_argument("one color per vertex required");
  adj_.assign(static_cast<std::size_t>(n_) * words_, 0);
}

void ColoredGraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("loops are not supported");
  adj_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  adj_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
}

int ColoredGraph::degree(int v) const {
  int d = 0;
  for (int w = 0; w < words_; ++w) d += std::popcount(row(v)[w]);
  return d;
}

ColoredGraph ColoredGraph::relabeled(const std::vector<int>& perm) const {
  std::vector<int> colors(n_);
  for (int v = 0; v < n_; ++v) colors[perm[v]] = colors_[v];
  ColoredGraph g(n_, std::move(colors));
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) g.add_edge(perm[u], perm[v]);
    }
  }
  return g;
}

std::string to_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    s.push_back(digits[c >> 4]);
    s.push_back(digits[c & 15]);
  }
  return s;
}

namespace {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdull;
}

// Ordered partition of the vertex set. Cells occupy contiguous position
// ranges of lab; cell_start[p] is the first position of p's cell and
// cell_end[s] the end of the cell starting at s.
struct Partition {
  std::vector<int> lab, pos, cell_start, cell_end;
  int cells = 0;

  bool discrete(int n) const { return cells == n; }
};

class Canonizer {
 public:
  explicit Canonizer(const ColoredGraph& g)
      : g_(g), n_(g.size()), words_(g.words()), count_(n_), in_queue_(n_), touched_mark_(n_) {}

  CanonicalLabeling run() {
    CanonicalLabeling out;
    if (n_ == 0) {
      out.certificate = certificate_header();
      return out;
    }
    Partition root = initial_partition();
    std::vector<int> splitters;
    for (int s = 0; s < n_; s = root.cell_end[s]) splitters.push_back(s);
    cur_trace_.assign(1, refine(root, splitters));
    cur_trace_[0] = mix(cur_trace_[0], invariant_split(root));
    search(root, 0, Cmp::Equal);
    out.label.resize(n_);
    for (int p = 0; p < n_; ++p) out.label[best_lab_[p]] = p;
    out.certificate = certificate_header() + best_cert_;
    out.nodes = nodes_;
    out.automorphisms = automorphisms_.size();
    return out;
  }

 private:
  enum class Cmp { Equal, Less };

  Partition initial_partition() const {
    Partition p;
    p.lab.resize(n_);
    std::iota(p.lab.begin(), p.lab.end(), 0);
    std::stable_sort(p.lab.begin(), p.lab.end(), [&](int a, int b) { return g_.color(a) < g_.color(b); });
    p.pos.resize(n_);
    p.cell_start.resize(n_);
    p.cell_end.assign(n_, 0);
    for (int i = 0; i < n_;) {
      int j = i;
      while (j < n_ && g_.color(p.lab[j]) == g_.color(p.lab[i])) ++j;
      for (int t = i; t < j; ++t) p.cell_start[t] = i;
      p.cell_end[i] = j;
      ++p.cells;
      i = j;
    }
    for (int t = 0; t < n_; ++t) p.pos[p.lab[t]] = t;
    return p;
  }

  // Refines p to the coarsest equitable partition below it, starting from the
  // given splitter cells. Returns a hash of the label-independent trace.
  std::uint64_t refine(Partition& p, const std::vector<int>& initial) {
    std::uint64_t h = 0x51ed2701f3a5c7b9ull;
    std::vector<int> queue(initial);
    for (int s : queue) in_queue_[s] = 1;
    for (std::size_t head = 0; head < queue.size() && !p.discrete(n_); ++head) {
      const int s = queue[head];
      in_queue_[s] = 0;
      hits_.clear();
      for (int t = s; t < p.cell_end[s]; ++t) {
        const std::uint64_t* row = g_.row(p.lab[t]);
        for (int w = 0; w < words_; ++w) {
          for (std::uint64_t bits = row[w]; bits; bits &= bits - 1) {
            const int u = w * 64 + std::countr_zero(bits);
            if (count_[u]++ == 0) hits_.push_back(u);
          }
        }
      }
      touched_.clear();
      for (int u : hits_) {
        const int c = p.cell_start[p.pos[u]];
        if (p.cell_end[c] - c > 1 && !touched_mark_[c]) {
          touched_mark_[c] = 1;
          touched_.push_back(c);
        }
      }
      std::sort(touched_.begin(), touched_.end());
      h = mix(h, static_cast<std::uint64_t>(s) << 32 | hits_.size());
      for (int c : touched_) {
        touched_mark_[c] = 0;
        const int e = p.cell_end[c];
        const int first = count_[p.lab[c]];
        bool uniform = true;
        for (int t = c + 1; t < e && uniform; ++t) uniform = count_[p.lab[t]] == first;
        if (uniform) continue;
        scratch_.clear();
        for (int t = c; t < e; ++t) scratch_.emplace_back(count_[p.lab[t]], p.lab[t]);
        std::sort(scratch_.begin(), scratch_.end());
        const bool was_queued = in_queue_[c];
        int largest = c, largest_size = 0;
        fragments_.clear();
        h = mix(h, static_cast<std::uint64_t>(c) << 20 | static_cast<std::uint64_t>(e - c));
        for (int i = 0; i < e - c;) {
          int j = i;
          while (j < e - c && scratch_[j].first == scratch_[i].first) ++j;
          const int fs = c + i;
          for (int t = i; t < j; ++t) {
            p.lab[c + t] = scratch_[t].second;
            p.pos[scratch_[t].second] = c + t;
            p.cell_start[c + t] = fs;
          }
          p.cell_end[fs] = c + j;
          fragments_.push_back(fs);
          if (j - i > largest_size) {
            largest_size = j - i;
            largest = fs;
          }
          h = mix(h, static_cast<std::uint64_t>(scratch_[i].first) << 20 | static_cast<std::uint64_t>(j - i));
          i = j;
        }
        p.cells += static_cast<int>(fragments_.size()) - 1;
        for (int fs : fragments_) {
          if (fs == c && was_queued) continue;  // still queued under its old start
          if (!was_queued && fs == largest) continue;
          in_queue_[fs] = 1;
          queue.push_back(fs);
        }
      }
      for (int u : hits_) count_[u] = 0;
    }
    for (std::size_t head = 0; head < queue.size(); ++head) in_queue_[queue[head]] = 0;
    return mix(h, static_cast<std::uint64_t>(p.cells));
  }

  // Splits cells by a pair invariant: for v, the sorted multiset over each
  // other non-singleton cell K of the per-cell common neighbour counts
  // |N(v) & N(w) & C| (w in K, C a non-singleton cell). Equitable refinement
  // cannot see these counts; for Hadamard graphs they carry the 4-row profile.
  // Refines again after a split. Returns the trace contribution.
  std::uint64_t invariant_split(Partition& p) {
    std::vector<int> cells;
    for (int c = 0; c < n_; c = p.cell_end[c]) {
      if (p.cell_end[c] - c > 1) cells.push_back(c);
    }
    if (cells.empty()) return 0;
    const std::size_t nc = cells.size();
    // Restricted rows: masked[v][i] = N(v) & C_i.
    std::vector<int> members;
    for (int c : cells) {
      for (int t = c; t < p.cell_end[c]; ++t) members.push_back(p.lab[t]);
    }
    std::vector<std::uint64_t> cell_mask(nc * words_, 0);
    for (std::size_t i = 0; i < nc; ++i) {
      for (int t = cells[i]; t < p.cell_end[cells[i]]; ++t) {
        const int v = p.lab[t];
        cell_mask[i * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
      }
    }
    std::vector<int> slot(n_, -1);
    std::vector<std::uint64_t> masked(members.size() * nc * words_);
    for (std::size_t a = 0; a < members.size(); ++a) {
      slot[members[a]] = static_cast<int>(a);
      const std::uint64_t* row = g_.row(members[a]);
      for (std::size_t i = 0; i < nc; ++i) {
        for (int w = 0; w < words_; ++w) masked[(a * nc + i) * words_ + w] = row[w] & cell_mask[i * words_ + w];
      }
    }
    const std::size_t stride = nc * words_;
    // Cell pairs (C, K) are tried in partition order; the first pair that
    // separates C decides the split, which keeps the cost near one pair.
    std::uint64_t h = 0x9b05688c2b3e6c1full;
    std::vector<std::uint64_t> vals;
    std::vector<std::pair<std::uint64_t, int>> order;
    for (int c : cells) {
      const int e = p.cell_end[c];
      for (int k : cells) {
        order.clear();
        for (int s = c; s < e; ++s) {
          const int v = p.lab[s];
          const std::uint64_t* mv = &masked[slot[v] * stride];
          vals.clear();
          for (int t = k; t < p.cell_end[k]; ++t) {
            const int w = p.lab[t];
            if (w == v) continue;
            const std::uint64_t* mw = &masked[slot[w] * stride];
            std::uint64_t pv = 0;
            for (std::size_t i = 0; i < nc; ++i) {
              int cnt = 0;
              for (int x = 0; x < words_; ++x) cnt += std::popcount(mv[i * words_ + x] & mw[i * words_ + x]);
              pv = pv * 1315423911ull + static_cast<std::uint64_t>(cnt) + 1;
            }
            vals.push_back(pv);
          }
          std::sort(vals.begin(), vals.end());
          std::uint64_t acc = 0x2545f4914f6cdd1dull;
          for (std::uint64_t x : vals) acc = mix(acc, x);
          order.emplace_back(acc, v);
        }
        std::sort(order.begin(), order.end());
        if (order.front().first == order.back().first) {
          h = mix(h, order.front().first);
          continue;
        }
        std::vector<int> split;
        for (int i = 0; i < e - c;) {
          int j = i;
          while (j < e - c && order[j].first == order[i].first) ++j;
          const int fs = c + i;
          for (int t = i; t < j; ++t) {
            p.lab[c + t] = order[t].second;
            p.pos[order[t].second] = c + t;
            p.cell_start[c + t] = fs;
          }
          p.cell_end[fs] = c + j;
          split.push_back(fs);
          h = mix(h, order[i].first ^ static_cast<std::uint64_t>(j - i));
          i = j;
        }
        p.cells += static_cast<int>(split.size()) - 1;
        return mix(h, refine(p, split));
      }
    }
    return h;
  }

  int target_cell(const Partition& p) const {
    int best = -1, best_size = n_ + 1;
    for (int c = 0; c < n_; c = p.cell_end[c]) {
      const int sz = p.cell_end[c] - c;
      if (sz > 1 && sz < best_size) {
        best = c;
        best_size = sz;
      }
    }
    return best;
  }

  static void individualize(Partition& p, int v) {
    const int c = p.cell_start[p.pos[v]];
    const int e = p.cell_end[c];
    const int pv = p.pos[v];
    const int u = p.lab[c];
    std::swap(p.lab[c], p.lab[pv]);
    p.pos[u] = pv;
    p.pos[v] = c;
    p.cell_end[c] = c + 1;
    p.cell_end[c + 1] = e;
    for (int t = c + 1; t < e; ++t) p.cell_start[t] = c + 1;
    ++p.cells;
  }

  std::string leaf_certificate(const Partition& p) const {
    std::string cert(static_cast<std::size_t>(n_) * words_ * 8, '\0');
    std::vector<std::uint64_t> row(words_);
    for (int a = 0; a < n_; ++a) {
      std::fill(row.begin(), row.end(), 0);
      const std::uint64_t* src = g_.row(p.lab[a]);
      for (int w = 0; w < words_; ++w) {
        for (std::uint64_t bits = src[w]; bits; bits &= bits - 1) {
          const int v = w * 64 + std::countr_zero(bits);
          const int b = p.pos[v];
          row[b >> 6] |= std::uint64_t{1} << (b & 63);
        }
      }
      for (int w = 0; w < words_; ++w) {
        const std::uint64_t x = row[w];
        for (int byte = 0; byte < 8; ++byte) {
          cert[(static_cast<std::size_t>(a) * words_ + w) * 8 + byte] =
              static_cast<char>(std::uint8_t(x >> (8 * byte)));
        }
      }
    }
    return cert;
  }

  std::string certificate_header() const {
    std::string s;
    auto put = [&s](std::uint32_t x) {
      for (int b = 3; b >= 0; --b) s.push_back(static_cast<char>(std::uint8_t(x >> (8 * b))));
    };
    put(static_cast<std::uint32_t>(n_));
    std::vector<int> colors(g_.colors());
    std::sort(colors.begin(), colors.end());
    for (int c : colors) put(static_cast<std::uint32_t>(c));
    return s;
  }

  static std::size_t common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t d = 0;
    while (d < a.size() && d < b.size() && a[d] == b[d]) ++d;
    return d;
  }

  void record_automorphism(const std::vector<int>& from_lab, const Partition& to) {
    std::vector<int> gamma(n_);
    for (int p = 0; p < n_; ++p) gamma[from_lab[p]] = to.lab[p];
    automorphisms_.push_back(std::move(gamma));
  }

  // Returns the level to resume at after an automorphism was found, else -1.
  int leaf(const Partition& p, Cmp state) {
    const int level = static_cast<int>(path_.size());
    std::string cert = leaf_certificate(p);
    if (first_cert_.empty() && first_lab_.empty()) {
      first_lab_ = best_lab_ = p.lab;
      first_path_ = best_path_ = path_;
      first_cert_ = best_cert_ = cert;
      best_trace_ = cur_trace_;
      ++best_version_;
      return -1;
    }
    if (cert == first_cert_) {
      record_automorphism(first_lab_, p);
      return static_cast<int>(common_prefix(first_path_, path_));
    }
    if (state == Cmp::Equal && static_cast<int>(best_trace_.size()) > level + 1) state = Cmp::Less;
    if (state == Cmp::Equal) {
      const int c = cert.compare(best_cert_);
      if (c == 0) {
        record_automorphism(best_lab_, p);
        return static_cast<int>(common_prefix(best_path_, path_));
      }
      if (c > 0) return -1;
    }
    best_lab_ = p.lab;
    best_path_ = path_;
    best_cert_ = std::move(cert);
    best_trace_ = cur_trace_;
    ++best_version_;
    return -1;
  }

  // Union-find orbits of the stored automorphisms that fix the current path.
  std::vector<int> orbits_fixing_path() const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& gamma : automorphisms_) {
      bool fixes = std::all_of(path_.begin(), path_.end(), [&](int v) { return gamma[v] == v; });
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        const int a = find(v), b = find(gamma[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < n_; ++v) parent[v] = find(v);
    return parent;
  }

  int search(const Partition& node, int level, Cmp state) {
    ++nodes_;
    if (node.discrete(n_)) return leaf(node, state);
    const int c = target_cell(node);
    std::vector<int> children(node.lab.begin() + c, node.lab.begin() + node.cell_end[c]);
    std::sort(children.begin(), children.end());
    std::vector<int> explored;
    std::vector<int> orbit;
    std::size_t orbit_version = static_cast<std::size_t>(-1);
    for (int v : children) {
      if (!explored.empty()) {
        if (orbit_version != automorphisms_.size()) {
          orbit = orbits_fixing_path();
          orbit_version = automorphisms_.size();
        }
        if (std::any_of(explored.begin(), explored.end(), [&](int u) { return orbit[u] == orbit[v]; })) continue;
      }
      Partition child = node;
      individualize(child, v);
      std::uint64_t h = refine(child, {c});
      if (!child.discrete(n_)) h = mix(h, invariant_split(child));
      cur_trace_.resize(level + 1);
      cur_trace_.push_back(h);
      path_.push_back(v);
      Cmp child_state = state;
      bool prune = false;
      if (!best_lab_.empty() && state == Cmp::Equal) {
        if (static_cast<int>(best_trace_.size()) <= level + 1 || h > best_trace_[level + 1]) {
          prune = true;
        } else if (h < best_trace_[level + 1]) {
          child_state = Cmp::Less;
        }
      }
      const std::size_t version = best_version_;
      int r = -1;
      if (!prune) r = search(child, level + 1, child_state);
      path_.pop_back();
      explored.push_back(v);
      if (r >= 0 && r < level) return r;
      // A new best leaf below shares this node's trace prefix.
      if (best_version_ != version) state = Cmp::Equal;
    }
    return -1;
  }

  const ColoredGraph& g_;
  int n_;
  int words_;
  std::vector<int> count_;
  std::vector<char> in_queue_;
  std::vector<char> touched_mark_;
  std::vector<int> hits_, touched_, fragments_;
  std::vector<std::pair<int, int>> scratch_;

  std::vector<int> path_;
  std::vector<std::uint64_t> cur_trace_;
  std::vector<int> first_lab_, first_path_;
  std::string first_cert_;
  std::vector<int> best_lab_, best_path_;
  std::vector<std::uint64_t> best_trace_;
  std::string best_cert_;
  std::vector<std::vector<int>> automorphisms_;
  std::size_t best_version_ = 0;
  std::size_t nodes_ = 0;
};

}  // namespace

CanonicalLabeling canonical_labeling(const ColoredGraph& g) { return Canonizer(g).run(); }

}  // namespace qtseq
