#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qtseq {

/// Quaternion on the half-integer lattice. Coordinates are stored doubled, so
/// the value is (c0 + c1 i + c2 j + c3 k) / 2. Every Hurwitz unit is exact.
class ExactQuaternion {
 public:
  constexpr ExactQuaternion() = default;
  constexpr ExactQuaternion(int c0, int c1, int c2, int c3) : c_{c0, c1, c2, c3} {}

  static constexpr ExactQuaternion from_integer(int r) { return {2 * r, 0, 0, 0}; }

  constexpr int c0() const { return c_[0]; }
  constexpr int c1() const { return c_[1]; }
  constexpr int c2() const { return c_[2]; }
  constexpr int c3() const { return c_[3]; }
  constexpr int operator[](std::size_t idx) const { return c_[idx]; }
  constexpr const std::array<int, 4>& doubled() const { return c_; }

  /// 4 * |x|^2, an integer for every lattice point.
  constexpr int norm_sq4() const { return c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3]; }
  constexpr bool is_unit() const { return norm_sq4() == 4; }
  constexpr bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  constexpr bool is_real() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  constexpr bool is_pure_imaginary() const { return c_[0] == 0; }

  constexpr ExactQuaternion operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }
  constexpr ExactQuaternion& operator+=(const ExactQuaternion& o) {
    for (int t = 0; t < 4; ++t) c_[t] += o.c_[t];
    return *this;
  }
  constexpr ExactQuaternion& operator-=(const ExactQuaternion& o) {
    for (int t = 0; t < 4; ++t) c_[t] -= o.c_[t];
    return *this;
  }
  friend constexpr ExactQuaternion operator+(ExactQuaternion a, const ExactQuaternion& b) { return a += b; }
  friend constexpr ExactQuaternion operator-(ExactQuaternion a, const ExactQuaternion& b) { return a -= b; }

  friend constexpr bool operator==(const ExactQuaternion&, const ExactQuaternion&) = default;
  friend constexpr auto operator<=>(const ExactQuaternion&, const ExactQuaternion&) = default;

 private:
  std::array<int, 4> c_{};
};

constexpr ExactQuaternion conj(const ExactQuaternion& a) { return {a.c0(), -a.c1(), -a.c2(), -a.c3()}; }

/// Hamilton product. Throws std::domain_error when the result leaves the
/// doubled-integer lattice (which cannot happen for two Hurwitz quaternions).
ExactQuaternion operator*(const ExactQuaternion& a, const ExactQuaternion& b);
inline ExactQuaternion& operator*=(ExactQuaternion& a, const ExactQuaternion& b) { return a = a * b; }

/// (x + x*) / 2 as a quaternion.
constexpr ExactQuaternion real_part(const ExactQuaternion& x) { return {x.c0(), 0, 0, 0}; }
constexpr ExactQuaternion imaginary_part(const ExactQuaternion& x) { return {0, x.c1(), x.c2(), x.c3()}; }

ExactQuaternion power(const ExactQuaternion& x, unsigned e);

std::ostream& operator<<(std::ostream& os, const ExactQuaternion& x);

namespace quat {
inline constexpr ExactQuaternion one{2, 0, 0, 0};
inline constexpr ExactQuaternion i{0, 2, 0, 0};
inline constexpr ExactQuaternion j{0, 0, 2, 0};
inline constexpr ExactQuaternion k{0, 0, 0, 2};
inline constexpr ExactQuaternion q{1, 1, 1, 1};
}  // namespace quat

enum class Alphabet { Q8, Qplus, Q24 };

/// Elements of the alphabet in a fixed order.
const std::vector<ExactQuaternion>& alphabet_elements(Alphabet kind);
bool in_alphabet(const ExactQuaternion& x, Alphabet kind);

// Symbol codec: + - i j k q x y z s u v w stand for
// 1 -1 i j k q qi qj qk q* q*i q*j q*k, a capital letter negates.
char symbol_encode(const ExactQuaternion& x);
ExactQuaternion symbol_decode(char ch);
bool is_symbol(char ch);
std::string encode_symbols(std::span<const ExactQuaternion> seq);
std::vector<ExactQuaternion> decode_symbols(std::string_view text);

/// Parses a product of symbols with optional parentheses and small powers,
/// e.g. "jqi", "-kqj", "(kq)^2". A bare '-' factor is -1 and "1" is accepted too.
ExactQuaternion parse_product(std::string_view text);

/// One symbol for Q24 elements, otherwise the doubled coordinates as
/// "<c0,c1,c2,c3>", which parse_product also accepts as a factor.
std::string format_entry(const ExactQuaternion& x);

/// Quaternion with double coordinates, used only where entries are irrational.
struct FloatQuaternion {
  double w = 0, x = 0, y = 0, z = 0;

  static constexpr double kDefaultTolerance = 1e-9;

  constexpr FloatQuaternion() = default;
  constexpr FloatQuaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
  explicit FloatQuaternion(const ExactQuaternion& e);

  /// exp(u t) = cos t + u sin t for a unit pure-imaginary u.
  static FloatQuaternion euler(const FloatQuaternion& u, double t);

  double norm_sq() const { return w * w + x * x + y * y + z * z; }
  FloatQuaternion operator-() const { return {-w, -x, -y, -z}; }
  FloatQuaternion& operator+=(const FloatQuaternion& o) {
    w += o.w;
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  friend FloatQuaternion operator+(FloatQuaternion a, const FloatQuaternion& b) { return a += b; }
  friend FloatQuaternion operator-(const FloatQuaternion& a, const FloatQuaternion& b) { return a + (-b); }
  friend FloatQuaternion operator*(double s, const FloatQuaternion& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }
};

FloatQuaternion operator*(const FloatQuaternion& a, const FloatQuaternion& b);
inline FloatQuaternion conj(const FloatQuaternion& a) { return {a.w, -a.x, -a.y, -a.z}; }
bool approx_equal(const FloatQuaternion& a, const FloatQuaternion& b,
                  double tol = FloatQuaternion::kDefaultTolerance);
inline bool is_pure_imaginary(const FloatQuaternion& a, double tol = FloatQuaternion::kDefaultTolerance) {
  return std::abs(a.w) < tol;
}
std::ostream& operator<<(std::ostream& os, const FloatQuaternion& x);

}  // namespace qtseq

template <>
struct std::hash<qtseq::ExactQuaternion> {
  std::size_t operator()(const qtseq::ExactQuaternion& x) const noexcept {
    std::size_t h = 0;
    for (int c : x.doubled()) h = h * 1000003u + static_cast<std::size_t>(c + 512);
    return h;
  }
};
