#include "qtseq/quaternion.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qtseq {

ExactQuaternion operator*(const ExactQuaternion& a, const ExactQuaternion& b) {
  const int a0 = a.c0(), a1 = a.c1(), a2 = a.c2(), a3 = a.c3();
  const int b0 = b.c0(), b1 = b.c1(), b2 = b.c2(), b3 = b.c3();
  const std::array<int, 4> p{
      a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
      a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
      a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
      a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
  };
  for (int c : p) {
    if (c % 2 != 0) throw std::domain_error("quaternion product leaves the half-integer lattice");
  }
  return {p[0] / 2, p[1] / 2, p[2] / 2, p[3] / 2};
}

ExactQuaternion power(const ExactQuaternion& x, unsigned e) {
  ExactQuaternion r = quat::one;
  for (unsigned t = 0; t < e; ++t) r = r * x;
  return r;
}

std::ostream& operator<<(std::ostream& os, const ExactQuaternion& x) { return os << format_entry(x); }

namespace {

constexpr std::string_view kLower = "+ijkqxyzsuvw";
constexpr std::string_view kUpper = "-IJKQXYZSUVW";

std::array<ExactQuaternion, 12> make_basis() {
  using namespace quat;
  const ExactQuaternion qs = conj(q);
  return {one, i, j, k, q, q * i, q * j, q * k, qs, qs * i, qs * j, qs * k};
}

const std::array<ExactQuaternion, 12>& basis() {
  static const auto b = make_basis();
  return b;
}

std::vector<ExactQuaternion> with_negatives(std::vector<ExactQuaternion> v) {
  const std::size_t m = v.size();
  for (std::size_t t = 0; t < m; ++t) v.push_back(-v[t]);
  return v;
}

}  // namespace

const std::vector<ExactQuaternion>& alphabet_elements(Alphabet kind) {
  static const std::vector<ExactQuaternion> q8 = with_negatives({basis()[0], basis()[1], basis()[2], basis()[3]});
  static const std::vector<ExactQuaternion> qplus =
      with_negatives({basis()[0], basis()[1], basis()[2], basis()[3], basis()[4], basis()[5], basis()[6], basis()[7]});
  static const std::vector<ExactQuaternion> q24 = with_negatives({basis().begin(), basis().end()});
  switch (kind) {
    case Alphabet::Q8:
      return q8;
    case Alphabet::Qplus:
      return qplus;
    case Alphabet::Q24:
      break;
  }
  return q24;
}

bool in_alphabet(const ExactQuaternion& x, Alphabet kind) {
  const auto& el = alphabet_elements(kind);
  return std::find(el.begin(), el.end(), x) != el.end();
}

bool is_symbol(char ch) {
  return kLower.find(ch) != std::string_view::npos || kUpper.find(ch) != std::string_view::npos;
}

char symbol_encode(const ExactQuaternion& x) {
  const auto& b = basis();
  for (std::size_t t = 0; t < b.size(); ++t) {
    if (b[t] == x) return kLower[t];
    if (-b[t] == x) return kUpper[t];
  }
  std::ostringstream msg;
  msg << "quaternion <" << x.c0() << "," << x.c1() << "," << x.c2() << "," << x.c3() << ">/2 has no symbol";
  throw std::invalid_argument(msg.str());
}

ExactQuaternion symbol_decode(char ch) {
  if (auto p = kLower.find(ch); p != std::string_view::npos) return basis()[p];
  if (auto p = kUpper.find(ch); p != std::string_view::npos) return -basis()[p];
  throw std::invalid_argument(std::string("unknown quaternion symbol '") + ch + "'");
}

std::string encode_symbols(std::span<const ExactQuaternion> seq) {
  std::string out;
  out.reserve(seq.size());
  for (const auto& x : seq) out.push_back(symbol_encode(x));
  return out;
}

std::vector<ExactQuaternion> decode_symbols(std::string_view text) {
  std::vector<ExactQuaternion> out;
  out.reserve(text.size());
  for (std::size_t p = 0; p < text.size(); ++p) {
    if (!is_symbol(text[p])) {
      throw std::invalid_argument("unknown quaternion symbol '" + std::string(1, text[p]) + "' at position " +
                                  std::to_string(p));
    }
    out.push_back(symbol_decode(text[p]));
  }
  return out;
}

namespace {

class ProductParser {
 public:
  explicit ProductParser(std::string_view s) : s_(s) {}

  ExactQuaternion parse() {
    ExactQuaternion v = product();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  ExactQuaternion product() {
    ExactQuaternion v = quat::one;
    bool any = false;
    for (;;) {
      skip_space();
      if (pos_ >= s_.size() || s_[pos_] == ')') break;
      v = v * factor();
      any = true;
    }
    if (!any) fail("empty product");
    return v;
  }

  ExactQuaternion factor() {
    ExactQuaternion base;
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      base = product();
      skip_space();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
      ++pos_;
    } else if (ch == '<') {
      base = coordinates();
    } else if (is_symbol(ch)) {
      base = symbol_decode(ch);
      ++pos_;
    } else if (ch == '1') {
      base = quat::one;
      ++pos_;
    } else {
      fail("unknown symbol");
    }
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      unsigned e = 0;
      auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), e);
      if (ec != std::errc{}) fail("bad exponent");
      pos_ = static_cast<std::size_t>(end - s_.data());
      base = power(base, e);
    }
    return base;
  }

  ExactQuaternion coordinates() {
    ++pos_;
    std::array<int, 4> c{};
    for (int t = 0; t < 4; ++t) {
      skip_space();
      auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), c[t]);
      if (ec != std::errc{}) fail("bad coordinate");
      pos_ = static_cast<std::size_t>(end - s_.data());
      skip_space();
      const char want = t == 3 ? '>' : ',';
      if (pos_ >= s_.size() || s_[pos_] != want) fail("malformed coordinate tuple");
      ++pos_;
    }
    return {c[0], c[1], c[2], c[3]};
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const char* what) const {
    throw std::invalid_argument(std::string(what) + " at position " + std::to_string(pos_) + " in \"" +
                                std::string(s_) + "\"");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ExactQuaternion parse_product(std::string_view text) { return ProductParser(text).parse(); }

std::string format_entry(const ExactQuaternion& x) {
  if (in_alphabet(x, Alphabet::Q24)) return std::string(1, symbol_encode(x));
  std::ostringstream os;
  os << '<' << x.c0() << ',' << x.c1() << ',' << x.c2() << ',' << x.c3() << '>';
  return os.str();
}

FloatQuaternion::FloatQuaternion(const ExactQuaternion& e)
    : w(e.c0() / 2.0), x(e.c1() / 2.0), y(e.c2() / 2.0), z(e.c3() / 2.0) {}

FloatQuaternion FloatQuaternion::euler(const FloatQuaternion& u, double t) {
  if (std::abs(u.w) > kDefaultTolerance || std::abs(u.norm_sq() - 1.0) > kDefaultTolerance) {
    throw std::invalid_argument("Euler exponent direction must be a unit pure-imaginary quaternion");
  }
  const double s = std::sin(t);
  return {std::cos(t), u.x * s, u.y * s, u.z * s};
}

FloatQuaternion operator*(const FloatQuaternion& a, const FloatQuaternion& b) {
  return {
      a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
      a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
      a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
      a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
  };
}

bool approx_equal(const FloatQuaternion& a, const FloatQuaternion& b, double tol) {
  return std::abs(a.w - b.w) <= tol && std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol &&
         std::abs(a.z - b.z) <= tol;
}

std::ostream& operator<<(std::ostream& os, const FloatQuaternion& x) {
  return os << '[' << x.w << ',' << x.x << ',' << x.y << ',' << x.z << ']';
}

}  // namespace qtseq
