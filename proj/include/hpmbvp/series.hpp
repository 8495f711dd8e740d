#pragma once

// Truncated power series in x about 0 with polynomial coefficients.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hpmbvp/sympoly.hpp"

namespace hpmbvp {

/// Default truncation degree of every series in a solve.
inline constexpr int kDefaultCap = 32;

template <typename Scalar = double>
class Series {
 public:
  using Coefficient = Poly<Scalar>;

  Series() : Series(kDefaultCap) {}

  /// The zero series representable up to degree `cap`.
  explicit Series(int cap) : coeffs_(static_cast<std::size_t>(checkedCap(cap)) + 1) {}

  /// Coefficients beyond cap are dropped.
  Series(int cap, std::vector<Coefficient> coeffs) : Series(cap) {
    const auto n = std::min(coeffs.size(), coeffs_.size());
    std::move(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(n), coeffs_.begin());
  }

  static Series constant(int cap, Coefficient c) {
    Series s(cap);
    s.coeffs_[0] = std::move(c);
    return s;
  }

  static Series fromNumbers(int cap, std::span<const Scalar> values) {
    Series s(cap);
    for (std::size_t k = 0; k < values.size() && k < s.coeffs_.size(); ++k)
      s.coeffs_[k] = Coefficient(values[k]);
    return s;
  }

  int cap() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// Highest power with a nonzero coefficient, -1 for the zero series.
  int degree() const {
    for (int k = cap(); k >= 0; --k)
      if (!coeffs_[static_cast<std::size_t>(k)].isZero()) return k;
    return -1;
  }

  bool isZero() const { return degree() < 0; }

  const Coefficient& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  Coefficient& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }

  const std::vector<Coefficient>& coefficients() const { return coeffs_; }

  /// True when every coefficient is free of unknown symbols.
  bool isNumeric() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Coefficient& c) { return c.isConstant(); });
  }

  /// Max total degree in the unknowns over all coefficients.
  int unknownDegree() const {
    int d = -1;
    for (const auto& c : coeffs_) d = std::max(d, c.degree());
    return d;
  }

  Series& operator+=(const Series& t) {
    requireSameCap(t);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += t.coeffs_[k];
    return *this;
  }

  Series& operator-=(const Series& t) {
    requireSameCap(t);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= t.coeffs_[k];
    return *this;
  }

  Series& operator*=(Scalar s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend Series operator+(Series s, const Series& t) { return s += t; }
  friend Series operator-(Series s, const Series& t) { return s -= t; }
  friend Series operator-(Series s) { return s *= Scalar(-1); }
  friend Series operator*(Series s, Scalar c) { return s *= c; }
  friend Series operator*(Scalar c, Series s) { return s *= c; }

  /// Cauchy product truncated at cap.
  friend Series operator*(const Series& s, const Series& t) {
    s.requireSameCap(t);
    const int ds = s.degree();
    const int dt = t.degree();
    Series r(s.cap());
    for (int i = 0; i <= ds; ++i) {
      if (s[i].isZero()) continue;
      for (int j = 0; j <= dt && i + j <= r.cap(); ++j) {
        if (t[j].isZero()) continue;
        r[i + j] += s[i] * t[j];
      }
    }
    return r;
  }

  /// Multiplies every coefficient by a polynomial in the unknowns.
  friend Series operator*(Series s, const Coefficient& c) {
    for (auto& k : s.coeffs_) k = k * c;
    return s;
  }

  friend bool operator==(const Series& s, const Series& t) { return s.coeffs_ == t.coeffs_; }

 private:
  static int checkedCap(int cap) {
    if (cap < 0) throw std::invalid_argument("series cap must be nonnegative");
    return cap;
  }

  void requireSameCap(const Series& t) const {
    if (t.cap() != cap())
      throw std::invalid_argument("series caps differ: " + std::to_string(cap()) + " vs " +
                                  std::to_string(t.cap()));
  }

  std::vector<Coefficient> coeffs_;
};

using TruncatedSeries = Series<double>;

/// Elementary functions with known Maclaurin expansions.
struct KnownFn {
  struct Polynomial {
    std::vector<double> coeffs;
  };
  struct Exp {
    double rate;
  };
  struct Sinh {
    double rate;
  };
  struct Cosh {
    double rate;
  };
  std::variant<Polynomial, Exp, Sinh, Cosh> kind;

  static KnownFn poly(std::vector<double> c) { return {Polynomial{std::move(c)}}; }
  static KnownFn exp(double a) { return {Exp{a}}; }
  static KnownFn sinh(double a) { return {Sinh{a}}; }
  static KnownFn cosh(double a) { return {Cosh{a}}; }
};

namespace detail {

// a^k / k! for k = 0..cap, built incrementally so nothing overflows.
template <typename Scalar>
std::vector<Scalar> scaledPowers(Scalar a, int cap) {
  std::vector<Scalar> c(static_cast<std::size_t>(cap) + 1);
  c[0] = Scalar(1);
  for (int k = 0; k < cap; ++k) c[k + 1] = c[k] * a / Scalar(k + 1);
  return c;
}

}  // namespace detail

template <typename Scalar = double>
Series<Scalar> seed(const KnownFn& f, int cap) {
  Series<Scalar> s(cap);
  auto fill = [&](const std::vector<Scalar>& c, int parity) {
    for (int k = 0; k <= cap; ++k)
      if (parity < 0 || k % 2 == parity) s[k] = Poly<Scalar>(c[k]);
  };
  std::visit(
      [&](const auto& fn) {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, KnownFn::Polynomial>) {
          std::vector<Scalar> c(fn.coeffs.begin(), fn.coeffs.end());
          s = Series<Scalar>::fromNumbers(cap, c);
        } else if constexpr (std::is_same_v<T, KnownFn::Exp>) {
          fill(detail::scaledPowers<Scalar>(fn.rate, cap), -1);
        } else if constexpr (std::is_same_v<T, KnownFn::Sinh>) {
          fill(detail::scaledPowers<Scalar>(fn.rate, cap), 1);
        } else {
          fill(detail::scaledPowers<Scalar>(fn.rate, cap), 0);
        }
      },
      f.kind);
  return s;
}

template <typename Scalar>
Series<Scalar> mulSeries(const Series<Scalar>& s, const Series<Scalar>& t) {
  return s * t;
}

/// n-th formal derivative.
template <typename Scalar>
Series<Scalar> differentiate(const Series<Scalar>& s, int n = 1) {
  if (n < 0) throw std::invalid_argument("derivative order must be nonnegative");
  Series<Scalar> r(s.cap());
  for (int k = n; k <= s.cap(); ++k) {
    if (s[k].isZero()) continue;
    Scalar f(1);
    for (int j = 0; j < n; ++j) f *= Scalar(k - j);
    r[k - n] = s[k] * f;
  }
  return r;
}

/// m-fold antiderivative T with T^(i)(0) = initialValues[i] for i < m.
///
/// Sets *capExhausted when a nonzero coefficient would land above the cap and
/// is discarded.
template <typename Scalar>
Series<Scalar> antidifferentiate(const Series<Scalar>& s, int m,
                                 std::span<const Poly<Scalar>> initialValues,
                                 bool* capExhausted = nullptr) {
  if (m < 1) throw std::invalid_argument("antiderivative order must be at least 1");
  if (initialValues.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("antidifferentiate needs exactly m initial values");
  const int cap = s.cap();
  bool dropped = false;
  Series<Scalar> r(cap);

  Scalar fact(1);
  for (int i = 0; i < m; ++i) {
    if (i > 0) fact *= Scalar(i);
    if (initialValues[i].isZero()) continue;
    if (i > cap) {
      dropped = true;
      continue;
    }
    r[i] += initialValues[i] * (Scalar(1) / fact);
  }

  for (int j = 0; j <= cap; ++j) {
    if (s[j].isZero()) continue;
    if (j + m > cap) {
      dropped = true;
      continue;
    }
    // j! / (j+m)!
    Scalar scale(1);
    for (int i = 1; i <= m; ++i) scale /= Scalar(j + i);
    r[j + m] += s[j] * scale;
  }
  if (capExhausted) *capExhausted = dropped;
  return r;
}

template <typename Scalar>
Series<Scalar> antidifferentiate(const Series<Scalar>& s, int m,
                                 std::initializer_list<Poly<Scalar>> initialValues,
                                 bool* capExhausted = nullptr) {
  std::vector<Poly<Scalar>> v(initialValues);
  return antidifferentiate(s, m, std::span<const Poly<Scalar>>(v), capExhausted);
}

/// Horner evaluation at a numeric point; the result is a polynomial in the unknowns.
template <typename Scalar>
Poly<Scalar> evalAt(const Series<Scalar>& s, Scalar x) {
  Poly<Scalar> acc;
  for (int k = s.degree(); k >= 0; --k) {
    acc *= x;
    acc += s[k];
  }
  return acc;
}

/// Value of a numeric series at x.
template <typename Scalar>
Scalar valueAt(const Series<Scalar>& s, Scalar x) {
  Scalar acc(0);
  for (int k = s.degree(); k >= 0; --k) {
    if (!s[k].isConstant())
      throw MissingSymbol("series coefficient of x^" + std::to_string(k) +
                          " still depends on unknown constants");
    acc = acc * x + s[k].constantTerm();
  }
  return acc;
}

}  // namespace hpmbvp
