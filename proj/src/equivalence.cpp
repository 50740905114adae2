#include "qtseq/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "qtseq/packed.hpp"

namespace qtseq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_index(int s) {
  if (s < 0 || s > 3) throw std::invalid_argument("sequence index must lie in 0..3");
}

void check_pair(int a, int b) {
  check_index(a);
  check_index(b);
  if (a == b) throw std::invalid_argument("a pair needs two distinct sequences");
}

void check_even(std::size_t n, const char* what) {
  if (n % 2 != 0) throw std::invalid_argument(std::string(what) + " needs even order");
}

int unit_mod(int u, int n) {
  const int r = ((u % n) + n) % n;
  if (std::gcd(r, n) != 1) {
    throw std::invalid_argument("decimation parameter " + std::to_string(u) + " is not a unit mod " +
                                std::to_string(n));
  }
  return r;
}

BinarySequence map_entries(const BinarySequence& s, auto&& f) {
  const std::size_t n = s.size();
  std::vector<int8_t> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<int8_t>(f(i));
  return BinarySequence(std::move(e));
}

BinarySequence shifted(const BinarySequence& s, std::size_t c) {
  const std::size_t n = s.size();
  return map_entries(s, [&](std::size_t i) { return s[(i + c) % n]; });
}

}  // namespace

QTQuadruple apply(const EquivOp& op, const QTQuadruple& q) {
  const std::size_t n = q.order();
  std::array<BinarySequence, 4> s = q.sequences();
  std::visit(overloaded{
                 [&](const op::SingleNegate& o) {
                   check_index(o.which);
                   s[o.which] = s[o.which].negated();
                 },
                 [&](const op::SingleSwap& o) {
                   check_pair(o.first, o.second);
                   std::swap(s[o.first], s[o.second]);
                 },
                 [&](const op::NegateSwap& o) {
                   check_index(o.negated);
                   check_pair(o.first, o.second);
                   s[o.negated] = s[o.negated].negated();
                   std::swap(s[o.first], s[o.second]);
                 },
                 [&](const op::DoubleNegate& o) {
                   check_pair(o.first, o.second);
                   s[o.first] = s[o.first].negated();
                   s[o.second] = s[o.second].negated();
                 },
                 [&](const op::DoubleSwap& o) {
                   check_pair(o.a, o.b);
                   check_pair(o.c, o.d);
                   if (o.a == o.c || o.a == o.d || o.b == o.c || o.b == o.d) {
                     throw std::invalid_argument("double swap needs disjoint pairs");
                   }
                   std::swap(s[o.a], s[o.b]);
                   std::swap(s[o.c], s[o.d]);
                 },
                 [&](const op::AlternatingNegate&) {
                   check_even(n, "alternating negation");
                   for (auto& x : s) x = map_entries(x, [&](std::size_t i) { return i % 2 ? -x[i] : x[i]; });
                 },
                 [&](const op::Decimate& o) {
                   const auto u = static_cast<std::size_t>(unit_mod(o.unit, static_cast<int>(n)));
                   for (auto& x : s) x = map_entries(x, [&](std::size_t i) { return x[(u * i) % n]; });
                 },
                 [&](const op::CyclicShift& o) {
                   const auto c = static_cast<std::size_t>(((o.offset % static_cast<long>(n)) + n) % n);
                   for (auto& x : s) x = shifted(x, c);
                 },
                 [&](const op::SingleHalfShift& o) {
                   check_even(n, "half shift");
                   check_index(o.which);
                   s[o.which] = shifted(s[o.which], n / 2);
                 },
                 [&](const op::DoubleHalfShift& o) {
                   check_even(n, "half shift");
                   check_pair(o.first, o.second);
                   s[o.first] = shifted(s[o.first], n / 2);
                   s[o.second] = shifted(s[o.second], n / 2);
                 },
             },
             op);
  return QTQuadruple(std::move(s));
}

std::string describe(const EquivOp& op) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const op::SingleNegate& o) { os << "SN(" << o.which << ")"; },
                 [&](const op::SingleSwap& o) { os << "SS(" << o.first << "," << o.second << ")"; },
                 [&](const op::NegateSwap& o) { os << "NS(" << o.negated << ";" << o.first << "," << o.second << ")"; },
                 [&](const op::DoubleNegate& o) { os << "DN(" << o.first << "," << o.second << ")"; },
                 [&](const op::DoubleSwap& o) { os << "DS(" << o.a << "," << o.b << ";" << o.c << "," << o.d << ")"; },
                 [&](const op::AlternatingNegate&) { os << "AN"; },
                 [&](const op::Decimate& o) { os << "DE(" << o.unit << ")"; },
                 [&](const op::CyclicShift& o) { os << "CS(" << o.offset << ")"; },
                 [&](const op::SingleHalfShift& o) { os << "SH(" << o.which << ")"; },
                 [&](const op::DoubleHalfShift& o) { os << "DH(" << o.first << "," << o.second << ")"; },
             },
             op);
  return os.str();
}

bool is_qt_operation(const EquivOp& op) {
  return !std::holds_alternative<op::SingleNegate>(op) && !std::holds_alternative<op::SingleSwap>(op) &&
         !std::holds_alternative<op::SingleHalfShift>(op);
}

namespace {

using packed::Quad;
using packed::Word;

struct QuadHash {
  std::size_t operator()(const Quad& q) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (Word w : q) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

// Negate each sequence so it starts with -1 and sort ascending. Returns the
// parity of (#negations + #transpositions).
int normalize_and_sort(Quad& q, int n) {
  int parity = 0;
  const Word lead = Word{1} << (n - 1);
  for (Word& w : q) {
    if (w & lead) {
      w = packed::negate(w, n);
      parity ^= 1;
    }
  }
  for (int a = 1; a < 4; ++a) {
    for (int b = a; b > 0 && q[b] < q[b - 1]; --b) {
      std::swap(q[b], q[b - 1]);
      parity ^= 1;
    }
  }
  return parity;
}

Quad inner_sort_ns(Quad q, int n) {
  if (normalize_and_sort(q, n) != 0) {
    const bool repeated = q[0] == q[1] || q[1] == q[2] || q[2] == q[3];
    if (!repeated) q[3] = packed::negate(q[3], n);
  }
  return q;
}

Quad inner_sort_sn(Quad q, int n) {
  normalize_and_sort(q, n);
  return q;
}

Quad inner_sort(const Quad& q, int n, EquivGroup g) {
  return g == EquivGroup::QuaternionType ? inner_sort_ns(q, n) : inner_sort_sn(q, n);
}

// The index/sign generators of the symmetry group as word maps.
class Generators {
 public:
  Generators(int n, EquivGroup g) : n_(n), group_(g) {
    for (int u = 2; u < n; ++u) {
      if (std::gcd(u, n) != 1) continue;
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = (u * i) % n;
      decimations_.push_back(std::move(perm));
    }
    if (n % 2 == 0) {
      for (int i = 1; i < n; i += 2) alternating_ |= Word{1} << (n - 1 - i);
    }
  }

  template <class F>
  void for_each_image(const Quad& q, F&& f) const {
    const int n = n_;
    auto all = [&](auto&& g) {
      Quad r;
      for (int s = 0; s < 4; ++s) r[s] = g(q[s]);
      f(r);
    };
    all([&](Word w) { return packed::rotate(w, n, 1); });
    for (const auto& perm : decimations_) {
      all([&](Word w) {
        Word r = 0;
        for (int i = 0; i < n; ++i) r = packed::set_entry(r, n, i, packed::entry(w, n, perm[i]));
        return r;
      });
    }
    if (n % 2 != 0) return;
    all([&](Word w) { return w ^ alternating_; });
    const int h = n / 2;
    if (group_ == EquivGroup::WilliamsonType) {
      for (int s = 0; s < 4; ++s) {
        Quad r = q;
        r[s] = packed::rotate(r[s], n, h);
        f(r);
      }
    } else {
      for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
          Quad r = q;
          r[a] = packed::rotate(r[a], n, h);
          r[b] = packed::rotate(r[b], n, h);
          f(r);
        }
      }
    }
  }

 private:
  int n_;
  EquivGroup group_;
  std::vector<std::vector<int>> decimations_;
  Word alternating_ = 0;
};

struct Orbit {
  Quad minimum;
  bool symmetric = false;
  std::vector<Quad> members;
};

Orbit explore(const Quad& start, int n, EquivGroup g, const Generators& gens) {
  Orbit orb;
  const Quad first = inner_sort(start, n, g);
  std::unordered_set<Quad, QuadHash> seen{first};
  std::deque<Quad> todo{first};
  orb.minimum = first;
  while (!todo.empty()) {
    const Quad cur = todo.front();
    todo.pop_front();
    orb.members.push_back(cur);
    orb.minimum = std::min(orb.minimum, cur);
    if (!orb.symmetric) {
      orb.symmetric = std::all_of(cur.begin(), cur.end(), [n](Word w) { return packed::is_palindromic(w, n); });
    }
    gens.for_each_image(cur, [&](const Quad& img) {
      const Quad nf = inner_sort(img, n, g);
      if (seen.insert(nf).second) todo.push_back(nf);
    });
  }
  return orb;
}

}  // namespace

QTQuadruple canonical_sort_ns(const QTQuadruple& q) {
  const int n = static_cast<int>(q.order());
  return packed::unpack(inner_sort_ns(packed::pack(q), n), n);
}

QTQuadruple canonical_sort_sn(const QTQuadruple& q) {
  const int n = static_cast<int>(q.order());
  return packed::unpack(inner_sort_sn(packed::pack(q), n), n);
}

CanonicalForm canonical_class(const QTQuadruple& q, EquivGroup group) {
  const int n = static_cast<int>(q.order());
  const Generators gens(n, group);
  Orbit orb = explore(packed::pack(q), n, group, gens);
  return {packed::unpack(orb.minimum, n), group, orb.symmetric, orb.members.size()};
}

std::vector<CanonicalForm> dedup(std::span<const QTQuadruple> list, EquivGroup group) {
  std::vector<CanonicalForm> out;
  if (list.empty()) return out;
  const int n = static_cast<int>(list.front().order());
  const Generators gens(n, group);
  std::unordered_set<Quad, QuadHash> covered;
  for (const auto& q : list) {
    if (static_cast<int>(q.order()) != n) throw std::invalid_argument("dedup over mixed orders");
    const Quad packed_q = packed::pack(q);
    if (covered.count(inner_sort(packed_q, n, group))) continue;
    Orbit orb = explore(packed_q, n, group, gens);
    covered.insert(orb.members.begin(), orb.members.end());
    out.push_back({packed::unpack(orb.minimum, n), group, orb.symmetric, orb.members.size()});
  }
  std::sort(out.begin(), out.end(),
            [](const CanonicalForm& a, const CanonicalForm& b) { return a.representative < b.representative; });
  return out;
}

std::size_t symmetry_group_order(int n, EquivGroup group) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  // A group element is recorded by its action on signed position labels.
  using Labels = std::vector<int>;
  Labels id(4 * n);
  for (int p = 0; p < 4 * n; ++p) id[p] = p + 1;
  std::vector<std::function<Labels(const Labels&)>> gens;
  auto per_sequence = [n](auto&& f) {
    return [n, f](const Labels& x) {
      Labels r(x.size());
      for (int s = 0; s < 4; ++s) {
        for (int i = 0; i < n; ++i) r[s * n + i] = f(x, s, i);
      }
      return r;
    };
  };
  gens.push_back(per_sequence([n](const Labels& x, int s, int i) { return x[s * n + (i + 1) % n]; }));
  for (int u = 2; u < n; ++u) {
    if (std::gcd(u, n) != 1) continue;
    gens.push_back(per_sequence([n, u](const Labels& x, int s, int i) { return x[s * n + (u * i) % n]; }));
  }
  if (n % 2 == 0) {
    const int h = n / 2;
    gens.push_back(per_sequence([n](const Labels& x, int s, int i) { return i % 2 ? -x[s * n + i] : x[s * n + i]; }));
    auto half = [n, h](std::set<int> which) {
      return [n, h, which](const Labels& x) {
        Labels r(x);
        for (int s : which) {
          for (int i = 0; i < n; ++i) r[s * n + i] = x[s * n + (i + h) % n];
        }
        return r;
      };
    };
    if (group == EquivGroup::WilliamsonType) {
      for (int s = 0; s < 4; ++s) gens.push_back(half({s}));
    } else {
      for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) gens.push_back(half({a, b}));
      }
    }
  }
  std::set<Labels> seen{id};
  std::deque<Labels> todo{id};
  while (!todo.empty()) {
    Labels cur = std::move(todo.front());
    todo.pop_front();
    for (const auto& g : gens) {
      Labels img = g(cur);
      if (seen.insert(img).second) todo.push_back(std::move(img));
    }
  }
  return seen.size();
}

}  // namespace qtseq
