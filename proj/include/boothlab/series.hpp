#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace boothlab {

struct SeriesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Binary operation on two series of different truncation order.
struct OrderMismatch : SeriesError {
  using SeriesError::SeriesError;
};

/// Division (or log) where the leading coefficient is too small to trust.
struct NearZeroLeadingCoefficient : SeriesError {
  using SeriesError::SeriesError;
};

/// Input violates a normalization precondition (c0 = 0, c1 = 1, ...).
struct NotNormalized : SeriesError {
  using SeriesError::SeriesError;
};

struct NonFiniteCoefficient : SeriesError {
  using SeriesError::SeriesError;
};

/// Relative tolerance below which a leading coefficient counts as zero.
/// Scaled by the largest coefficient modulus of the series involved.
inline constexpr double kDivTolerance = 1e-12;

//==============================================================================
/// A power series c0 + c1 z + ... + cN z^N with a fixed truncation order N.
///
/// The coefficient vector always has exactly order()+1 entries and every
/// entry is finite. Arithmetic never changes the order silently: binary
/// operations demand equal orders and throw OrderMismatch otherwise; use
/// truncated() to shorten a series explicitly.
///
/// Values are immutable in spirit: algorithms build a local series, then
/// return it by value. Sharing a const series across threads is safe.
template <typename Real>
class TruncatedSeries {
public:
  using Complex = std::complex<Real>;

  /// Zero series of the given truncation order (order >= 0).
  explicit TruncatedSeries(int order) : coeff_(checked_size(order)) {}

  /// Series with the given leading coefficients, zero-padded up to order.
  TruncatedSeries(int order, std::initializer_list<Complex> leading)
      : coeff_(checked_size(order)) {
    if (leading.size() > coeff_.size())
      throw OrderMismatch("initializer longer than order+1");
    std::copy(leading.begin(), leading.end(), coeff_.begin());
    ensure_finite();
  }

  /// Takes the coefficient vector as-is; the order is size-1.
  static TruncatedSeries from_coefficients(std::vector<Complex> c) {
    if (c.empty()) throw OrderMismatch("empty coefficient vector");
    TruncatedSeries s(static_cast<int>(c.size()) - 1);
    s.coeff_ = std::move(c);
    s.ensure_finite();
    return s;
  }

  static TruncatedSeries zero(int order) { return TruncatedSeries(order); }

  static TruncatedSeries constant(int order, Complex value) {
    TruncatedSeries s(order);
    s.coeff_[0] = value;
    s.ensure_finite();
    return s;
  }

  /// The monomial value * z^power.
  static TruncatedSeries monomial(int order, int power, Complex value = Complex(1)) {
    TruncatedSeries s(order);
    if (power < 0 || power > order)
      throw OrderMismatch("monomial power outside [0, order]");
    s.coeff_[static_cast<std::size_t>(power)] = value;
    s.ensure_finite();
    return s;
  }

  /// The identity series z.
  static TruncatedSeries identity(int order) { return monomial(order, 1); }

  int order() const { return static_cast<int>(coeff_.size()) - 1; }

  const Complex& operator[](int n) const { return coeff_[checked_index(n)]; }
  Complex& operator[](int n) { return coeff_[checked_index(n)]; }

  const std::vector<Complex>& coefficients() const { return coeff_; }

  /// Largest coefficient modulus; the scale for relative tolerances.
  Real max_abs() const {
    Real m = 0;
    for (const auto& c : coeff_) m = std::max(m, std::abs(c));
    return m;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& rhs) {
    require_same_order(rhs);
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += rhs.coeff_[i];
    return *this;
  }

  TruncatedSeries& operator-=(const TruncatedSeries& rhs) {
    require_same_order(rhs);
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= rhs.coeff_[i];
    return *this;
  }

  TruncatedSeries& operator*=(Complex scalar) {
    for (auto& c : coeff_) c *= scalar;
    ensure_finite();
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    a += b;
    return a;
  }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
    a -= b;
    return a;
  }
  friend TruncatedSeries operator-(TruncatedSeries a) {
    for (auto& c : a.coeff_) c = -c;
    return a;
  }
  friend TruncatedSeries operator*(TruncatedSeries a, Complex scalar) {
    a *= scalar;
    return a;
  }
  friend TruncatedSeries operator*(Complex scalar, TruncatedSeries a) {
    a *= scalar;
    return a;
  }
  friend TruncatedSeries operator*(TruncatedSeries a, Real scalar) {
    a *= Complex(scalar);
    return a;
  }
  friend TruncatedSeries operator*(Real scalar, TruncatedSeries a) {
    a *= Complex(scalar);
    return a;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, Complex c0) {
    a.coeff_[0] += c0;
    return a;
  }
  friend TruncatedSeries operator+(Complex c0, TruncatedSeries a) {
    a.coeff_[0] += c0;
    return a;
  }
  friend TruncatedSeries operator-(TruncatedSeries a, Complex c0) {
    a.coeff_[0] -= c0;
    return a;
  }
  friend TruncatedSeries operator-(Complex c0, TruncatedSeries a) {
    for (auto& c : a.coeff_) c = -c;
    a.coeff_[0] += c0;
    return a;
  }

  void require_same_order(const TruncatedSeries& rhs) const {
    if (coeff_.size() != rhs.coeff_.size())
      throw OrderMismatch("series orders differ: " + std::to_string(order()) +
                          " vs " + std::to_string(rhs.order()));
  }

private:
  static std::size_t checked_size(int order) {
    if (order < 0) throw OrderMismatch("negative truncation order");
    return static_cast<std::size_t>(order) + 1;
  }

  std::size_t checked_index(int n) const {
    if (n < 0 || n >= static_cast<int>(coeff_.size()))
      throw OrderMismatch("coefficient index " + std::to_string(n) +
                          " outside [0, " + std::to_string(order()) + "]");
    return static_cast<std::size_t>(n);
  }

  void ensure_finite() const {
    for (const auto& c : coeff_)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw NonFiniteCoefficient("series coefficient is not finite");
  }

  std::vector<Complex> coeff_;
};

using Series = TruncatedSeries<double>;

//==============================================================================
// Ring operations

/// Cauchy product truncated at the (common) order of the inputs.
template <typename Real>
TruncatedSeries<Real> operator*(const TruncatedSeries<Real>& a,
                                const TruncatedSeries<Real>& b) {
  a.require_same_order(b);
  const int n = a.order();
  TruncatedSeries<Real> r(n);
  for (int i = 0; i <= n; ++i) {
    std::complex<Real> acc = 0;
    for (int j = 0; j <= i; ++j) acc += a[j] * b[i - j];
    r[i] = acc;
  }
  return r;
}

/// q with q*den = num up to the truncation order. Requires |den[0]| above
/// kDivTolerance relative to den's largest coefficient modulus.
template <typename Real>
TruncatedSeries<Real> divide(const TruncatedSeries<Real>& num,
                             const TruncatedSeries<Real>& den) {
  num.require_same_order(den);
  const int n = num.order();
  const Real scale = std::max<Real>(den.max_abs(), 0);
  if (std::abs(den[0]) <= kDivTolerance * scale || scale == Real(0))
    throw NearZeroLeadingCoefficient("series division by near-zero constant term");
  TruncatedSeries<Real> q(n);
  for (int i = 0; i <= n; ++i) {
    std::complex<Real> acc = num[i];
    for (int j = 1; j <= i; ++j) acc -= den[j] * q[i - j];
    q[i] = acc / den[0];
  }
  return q;
}

template <typename Real>
TruncatedSeries<Real> operator/(const TruncatedSeries<Real>& num,
                                const TruncatedSeries<Real>& den) {
  return divide(num, den);
}

/// Copy of s cut down to new_order (new_order <= s.order()).
template <typename Real>
TruncatedSeries<Real> truncated(const TruncatedSeries<Real>& s, int new_order) {
  if (new_order > s.order())
    throw OrderMismatch("cannot truncate to a higher order");
  TruncatedSeries<Real> r(new_order);
  for (int i = 0; i <= new_order; ++i) r[i] = s[i];
  return r;
}

//==============================================================================
// Analytic operations (all keep the truncation order of the input)

/// exp(s) via the differential recurrence e' = s' e; O(N^2) and stable.
/// The constant term contributes the scalar factor exp(s[0]).
template <typename Real>
TruncatedSeries<Real> exp(const TruncatedSeries<Real>& s) {
  const int n = s.order();
  TruncatedSeries<Real> e(n);
  e[0] = std::exp(s[0]);
  for (int i = 1; i <= n; ++i) {
    std::complex<Real> acc = 0;
    for (int j = 1; j <= i; ++j) acc += Real(j) * s[j] * e[i - j];
    e[i] = acc / Real(i);
  }
  return e;
}

/// log(s) for series with constant term 1 (the normalized branch); the
/// result has constant term exactly 0. Throws NotNormalized otherwise.
template <typename Real>
TruncatedSeries<Real> log(const TruncatedSeries<Real>& s) {
  const Real tol = kDivTolerance * std::max<Real>(Real(1), s.max_abs());
  if (std::abs(s[0] - std::complex<Real>(1)) > tol)
    throw NotNormalized("log of series with constant term != 1");
  const int n = s.order();
  TruncatedSeries<Real> l(n);
  for (int i = 1; i <= n; ++i) {
    std::complex<Real> acc = s[i];
    for (int j = 1; j < i; ++j) acc -= (Real(i - j) / Real(i)) * s[j] * l[i - j];
    l[i] = acc / s[0];
  }
  return l;
}

/// s^c = exp(c log s); requires constant term 1 (single branch convention).
template <typename Real>
TruncatedSeries<Real> pow(const TruncatedSeries<Real>& s, std::complex<Real> c) {
  return exp(log(s) * c);
}

template <typename Real>
TruncatedSeries<Real> differentiate(const TruncatedSeries<Real>& s) {
  const int n = s.order();
  TruncatedSeries<Real> d(n);
  for (int i = 0; i < n; ++i) d[i] = Real(i + 1) * s[i + 1];
  return d;  // top coefficient would need c[N+1]; it is left as 0
}

/// Antiderivative vanishing at 0; the z^{N+1} term is clipped.
template <typename Real>
TruncatedSeries<Real> integrate_from_zero(const TruncatedSeries<Real>& s) {
  const int n = s.order();
  TruncatedSeries<Real> r(n);
  for (int i = 1; i <= n; ++i) r[i] = s[i - 1] / Real(i);
  return r;
}

/// s/z for series with constant term 0. The top coefficient (which would
/// be c[N+1]) is left as 0.
template <typename Real>
TruncatedSeries<Real> divide_by_z(const TruncatedSeries<Real>& s) {
  const Real tol = kDivTolerance * std::max<Real>(Real(1), s.max_abs());
  if (std::abs(s[0]) > tol)
    throw NotNormalized("divide_by_z of series with nonzero constant term");
  const int n = s.order();
  TruncatedSeries<Real> r(n);
  for (int i = 0; i < n; ++i) r[i] = s[i + 1];
  return r;
}

/// z*s with the z^{N+1} term clipped.
template <typename Real>
TruncatedSeries<Real> mul_by_z(const TruncatedSeries<Real>& s) {
  const int n = s.order();
  TruncatedSeries<Real> r(n);
  for (int i = 1; i <= n; ++i) r[i] = s[i - 1];
  return r;
}

/// outer(inner(z)) truncated at the common order; inner must have constant
/// term 0 (otherwise the composition is not a series operation).
template <typename Real>
TruncatedSeries<Real> compose(const TruncatedSeries<Real>& outer,
                              const TruncatedSeries<Real>& inner) {
  outer.require_same_order(inner);
  const Real tol = kDivTolerance * std::max<Real>(Real(1), inner.max_abs());
  if (std::abs(inner[0]) > tol)
    throw NotNormalized("compose with nonzero inner constant term");
  const int n = outer.order();
  TruncatedSeries<Real> in = inner;
  in[0] = 0;
  // Horner accumulation: r = (..(c_N in + c_{N-1}) in + ...) in + c_0.
  TruncatedSeries<Real> r = TruncatedSeries<Real>::constant(n, outer[n]);
  for (int i = n - 1; i >= 0; --i) {
    r = r * in;
    r[0] += outer[i];
  }
  return r;
}

/// Compositional inverse g of s: compose(g, s) = z up to the truncation
/// order. Requires s[0] = 0 and |s[1]| above the division tolerance.
template <typename Real>
TruncatedSeries<Real> revert(const TruncatedSeries<Real>& s) {
  const int n = s.order();
  const Real scale = std::max<Real>(Real(1), s.max_abs());
  if (std::abs(s[0]) > kDivTolerance * scale)
    throw NotNormalized("revert of series with nonzero constant term");
  if (std::abs(s[1]) <= kDivTolerance * scale)
    throw NearZeroLeadingCoefficient("revert of series with vanishing linear term");

  TruncatedSeries<Real> base = s;
  base[0] = 0;
  TruncatedSeries<Real> g(n);
  if (n == 0) return g;
  g[1] = std::complex<Real>(1) / base[1];

  // Powers base^k appear triangularly: [z^n] sum_k g_k base^k must vanish
  // for n >= 2, and [z^n] base^n = s1^n.
  std::vector<TruncatedSeries<Real>> power;
  power.reserve(static_cast<std::size_t>(n) + 1);
  power.push_back(TruncatedSeries<Real>::constant(n, 1));  // base^0, unused
  power.push_back(base);
  for (int k = 2; k <= n; ++k) power.push_back(power.back() * base);

  std::complex<Real> s1n = base[1];
  for (int m = 2; m <= n; ++m) {
    s1n *= base[1];  // s1^m
    std::complex<Real> acc = 0;
    for (int k = 1; k < m; ++k) acc += g[k] * power[static_cast<std::size_t>(k)][m];
    g[m] = -acc / s1n;
  }
  return g;
}

/// The k-th root transform [f(z^k)]^{1/k} of a normalized series
/// (f[0] = 0, f[1] = 1), computed as z*exp((1/k) log(f(u)/u)) at u = z^k.
/// Only exponents = 1 (mod k) carry nonzero coefficients.
template <typename Real>
TruncatedSeries<Real> kth_root_transform(const TruncatedSeries<Real>& f, int k) {
  if (k < 1) throw OrderMismatch("kth_root_transform requires k >= 1");
  const Real tol = kDivTolerance * std::max<Real>(Real(1), f.max_abs());
  if (std::abs(f[0]) > tol || std::abs(f[1] - std::complex<Real>(1)) > tol)
    throw NotNormalized("kth_root_transform requires f = z + a2 z^2 + ...");
  const int n = f.order();
  const TruncatedSeries<Real> l = log(divide_by_z(f));
  TruncatedSeries<Real> strided(n);
  for (int m = 1; k * m <= n; ++m)
    strided[k * m] = l[m] / Real(k);
  return mul_by_z(exp(strided));
}

/// Horner evaluation of the truncated polynomial. Meaningful for |z| < 1;
/// for |z| >= 1 the truncation tail is unbounded and the caller is on
/// their own.
template <typename Real>
std::complex<Real> evaluate(const TruncatedSeries<Real>& s, std::complex<Real> z) {
  std::complex<Real> r = 0;
  for (int i = s.order(); i >= 0; --i) r = r * z + s[i];
  return r;
}

/// Series with conjugated coefficients; evaluate(s, conj(z)) equals
/// conj(evaluate(conjugate_coefficients(s), z)).
template <typename Real>
TruncatedSeries<Real> conjugate_coefficients(const TruncatedSeries<Real>& s) {
  TruncatedSeries<Real> r(s.order());
  for (int i = 0; i <= s.order(); ++i) r[i] = std::conj(s[i]);
  return r;
}

}  // namespace boothlab
