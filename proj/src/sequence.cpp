#include "qtseq/sequence.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qtseq {

BinarySequence::BinarySequence(std::vector<int8_t> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("binary sequence must be nonempty");
  for (int8_t e : entries_) {
    if (e != 1 && e != -1) throw std::invalid_argument("binary sequence entries must be +1 or -1");
    rowsum_ += e;
  }
}

BinarySequence BinarySequence::parse(std::string_view text) {
  std::vector<int8_t> e;
  e.reserve(text.size());
  for (std::size_t p = 0; p < text.size(); ++p) {
    if (text[p] == '+') {
      e.push_back(1);
    } else if (text[p] == '-') {
      e.push_back(-1);
    } else {
      throw std::invalid_argument("expected '+' or '-' at position " + std::to_string(p) + " in \"" +
                                  std::string(text) + "\"");
    }
  }
  return BinarySequence(std::move(e));
}

BinarySequence BinarySequence::negated() const {
  std::vector<int8_t> e(entries_);
  for (auto& x : e) x = static_cast<int8_t>(-x);
  return BinarySequence(std::move(e));
}

bool BinarySequence::is_palindromic() const {
  const std::size_t n = entries_.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (entries_[i] != entries_[n - i]) return false;
  }
  return true;
}

std::string BinarySequence::to_string() const {
  std::string s;
  s.reserve(entries_.size());
  for (int8_t e : entries_) s.push_back(e > 0 ? '+' : '-');
  return s;
}

QTQuadruple::QTQuadruple(BinarySequence a, BinarySequence b, BinarySequence c, BinarySequence d)
    : QTQuadruple(std::array<BinarySequence, 4>{std::move(a), std::move(b), std::move(c), std::move(d)}) {}

QTQuadruple::QTQuadruple(std::array<BinarySequence, 4> seqs) : seqs_(std::move(seqs)) {
  for (const auto& s : seqs_) {
    if (s.size() != seqs_[0].size() || s.size() == 0) {
      throw std::invalid_argument("quadruple sequences must be nonempty and of equal length");
    }
  }
}

QTQuadruple QTQuadruple::parse(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::array<BinarySequence, 4> s;
  std::string tok;
  for (int t = 0; t < 4; ++t) {
    if (!(in >> tok)) throw std::invalid_argument("expected four sequences, got " + std::to_string(t));
    s[t] = BinarySequence::parse(tok);
  }
  return QTQuadruple(std::move(s));
}

std::string QTQuadruple::to_string() const {
  return seqs_[0].to_string() + ' ' + seqs_[1].to_string() + ' ' + seqs_[2].to_string() + ' ' +
         seqs_[3].to_string();
}

int crosscorrelation(const BinarySequence& a, const BinarySequence& b, std::size_t t) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("crosscorrelation of sequences with different lengths");
  t %= n;
  int r = 0;
  for (std::size_t i = 0; i < n; ++i) r += a[i] * b[(i + t) % n];
  return r;
}

ExactQuaternion crosscorrelation(std::span<const ExactQuaternion> a, std::span<const ExactQuaternion> b,
                                 std::size_t t) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("crosscorrelation of sequences with different lengths");
  ExactQuaternion r;
  for (std::size_t i = 0; i < n; ++i) r += a[i] * conj(b[(i + t) % n]);
  return r;
}

ExactQuaternion left_autocorrelation(std::span<const ExactQuaternion> a, std::size_t t) {
  const std::size_t n = a.size();
  ExactQuaternion r;
  for (std::size_t i = 0; i < n; ++i) r += conj(a[i]) * a[(i + t) % n];
  return r;
}

namespace {

void require_units(std::span<const ExactQuaternion> s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i].is_unit()) throw std::invalid_argument("entry " + std::to_string(i) + " is not a unit quaternion");
  }
}

}  // namespace

std::optional<std::size_t> first_imperfect_shift(std::span<const ExactQuaternion> s) {
  require_units(s);
  for (std::size_t t = 1; t < s.size(); ++t) {
    if (!autocorrelation(s, t).is_zero()) return t;
  }
  return std::nullopt;
}

bool is_perfect(std::span<const ExactQuaternion> s, bool self_test) {
  const bool right = !first_imperfect_shift(s).has_value();
  if (self_test) {
    bool left = true;
    for (std::size_t t = 1; t < s.size() && left; ++t) left = left_autocorrelation(s, t).is_zero();
    if (left != right) throw std::logic_error("left and right perfection disagree");
  }
  return right;
}

QuadrupleCheck check_qt_quadruple(const QTQuadruple& q) {
  const std::size_t n = q.order();
  const auto& A = q[0];
  const auto& B = q[1];
  const auto& C = q[2];
  const auto& D = q[3];
  for (std::size_t t = 0; t < n; ++t) {
    const int acf = autocorrelation(A, t) + autocorrelation(B, t) + autocorrelation(C, t) + autocorrelation(D, t);
    if (acf != (t == 0 ? 4 * static_cast<int>(n) : 0)) return {false, t, 0};
    auto r = [t](const BinarySequence& x, const BinarySequence& y) { return crosscorrelation(x, y, t); };
    if (r(A, B) - r(B, A) + r(C, D) - r(D, C) != 0) return {false, t, 1};
    if (r(A, C) - r(C, A) + r(D, B) - r(B, D) != 0) return {false, t, 2};
    if (r(A, D) - r(D, A) + r(B, C) - r(C, B) != 0) return {false, t, 3};
  }
  return {};
}

bool is_amicable(const QTQuadruple& q) {
  const std::size_t n = q.order();
  for (int x = 0; x < 4; ++x) {
    for (int y = x + 1; y < 4; ++y) {
      for (std::size_t t = 1; t < n; ++t) {
        if (crosscorrelation(q[x], q[y], t) != crosscorrelation(q[y], q[x], t)) return false;
      }
    }
  }
  return true;
}

bool is_williamson_type(const QTQuadruple& q) {
  const std::size_t n = q.order();
  for (std::size_t t = 0; t < n; ++t) {
    int acf = 0;
    for (int x = 0; x < 4; ++x) acf += autocorrelation(q[x], t);
    if (acf != (t == 0 ? 4 * static_cast<int>(n) : 0)) return false;
  }
  return is_amicable(q);
}

bool is_symmetric(const QTQuadruple& q) {
  for (int x = 0; x < 4; ++x) {
    if (!q[x].is_palindromic()) return false;
  }
  return true;
}

namespace {

// FFTW planning is not thread-safe; plans are created once per length under a
// lock and executed through the new-array interface afterwards.
struct R2CPlan {
  int n;
  fftw_plan plan;
  R2CPlan(int len) : n(len) {
    auto* in = fftw_alloc_real(n);
    auto* out = fftw_alloc_complex(n / 2 + 1);
    plan = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
  }
  ~R2CPlan() { fftw_destroy_plan(plan); }
};

const R2CPlan& plan_for(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<R2CPlan>> plans;
  std::lock_guard lock(mu);
  auto& p = plans[n];
  if (!p) p = std::make_unique<R2CPlan>(n);
  return *p;
}

struct FftBuffers {
  double* in = nullptr;
  fftw_complex* out = nullptr;
  int cap = 0;
  ~FftBuffers() {
    fftw_free(in);
    fftw_free(out);
  }
  void reserve(int n) {
    if (n <= cap) return;
    fftw_free(in);
    fftw_free(out);
    in = fftw_alloc_real(n);
    out = fftw_alloc_complex(n / 2 + 1);
    cap = n;
  }
};

}  // namespace

SpectralProfile spectral_profile(std::span<const int8_t> a) {
  const int n = static_cast<int>(a.size());
  const R2CPlan& plan = plan_for(n);
  thread_local FftBuffers buf;
  buf.reserve(n);
  for (int i = 0; i < n; ++i) buf.in[i] = a[i];
  fftw_execute_dft_r2c(plan.plan, buf.in, buf.out);
  SpectralProfile sp;
  const int h = n / 2;
  sp.dft.resize(h + 1);
  sp.psd.resize(h + 1);
  for (int t = 0; t <= h; ++t) {
    // FFTW uses exp(-2 pi i st/n); the real input makes ours the conjugate.
    sp.dft[t] = {buf.out[t][0], -buf.out[t][1]};
    sp.psd[t] = std::norm(sp.dft[t]);
  }
  return sp;
}

SpectralProfile spectral_profile(const BinarySequence& a) { return spectral_profile(a.entries()); }

bool psd_condition_holds(const QTQuadruple& q, double tol) {
  std::array<SpectralProfile, 4> sp;
  for (int x = 0; x < 4; ++x) sp[x] = spectral_profile(q[x]);
  const double target = 4.0 * static_cast<double>(q.order());
  for (std::size_t t = 0; t < sp[0].psd.size(); ++t) {
    const double s = sp[0].psd[t] + sp[1].psd[t] + sp[2].psd[t] + sp[3].psd[t];
    if (std::abs(s - target) > tol) return false;
  }
  return true;
}

bool cpsd_conditions_hold(const QTQuadruple& q, double tol) {
  std::array<SpectralProfile, 4> sp;
  for (int x = 0; x < 4; ++x) sp[x] = spectral_profile(q[x]);
  auto d = [&](int x, int y, std::size_t t) { return cpsd(sp[x], sp[y], t) - cpsd(sp[y], sp[x], t); };
  for (std::size_t t = 0; t < sp[0].psd.size(); ++t) {
    if (std::abs(d(0, 1, t) + d(2, 3, t)) > tol) return false;
    if (std::abs(d(0, 2, t) + d(3, 1, t)) > tol) return false;
    if (std::abs(d(0, 3, t) + d(1, 2, t)) > tol) return false;
  }
  return true;
}

}  // namespace qtseq
