#pragma once

// Multivariate polynomials in the unknown integration constants.
//
// A Poly is a sparse map from exponent vectors to coefficients. Variables are
// identified by their position in the problem's symbol list; the exponent
// vector of a monomial is stored densely up to its last nonzero exponent, so
// the constant monomial has the empty key and polynomials over symbol lists
// of different lengths combine without re-indexing.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hpmbvp/errors.hpp"

namespace hpmbvp {

/// Coefficients with magnitude below this are dropped (true underflow only).
inline constexpr double kPruneThreshold = 1e-300;

template <typename Scalar = double>
class Poly {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, Scalar>;

  Poly() = default;

  /// Constant polynomial.
  explicit Poly(Scalar c) { insert({}, c); }

  /// The monomial x_index.
  static Poly variable(std::size_t index) {
    Exponents e(index + 1, 0);
    e[index] = 1;
    Poly p;
    p.terms_.emplace(std::move(e), Scalar(1));
    return p;
  }

  static Poly monomial(Exponents e, Scalar c) {
    Poly p;
    trim(e);
    p.insert(std::move(e), c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  /// Max total degree over stored monomials; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  bool isConstant() const { return degree() <= 0; }

  Scalar constantTerm() const { return coefficient({}); }

  Scalar coefficient(const Exponents& e) const {
    Exponents key = e;
    trim(key);
    auto it = terms_.find(key);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  /// Number of leading symbol positions referenced by any monomial.
  std::size_t variableSpan() const {
    std::size_t n = 0;
    for (const auto& [e, c] : terms_) n = std::max(n, e.size());
    return n;
  }

  Poly& operator+=(const Poly& q) {
    for (const auto& [e, c] : q.terms_) accumulate(e, c);
    return *this;
  }

  Poly& operator-=(const Poly& q) {
    for (const auto& [e, c] : q.terms_) accumulate(e, -c);
    return *this;
  }

  Poly& operator*=(Scalar s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      if (negligible(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  Poly& operator*=(const Poly& q) {
    *this = *this * q;
    return *this;
  }

  friend Poly operator+(Poly p, const Poly& q) { return p += q; }
  friend Poly operator-(Poly p, const Poly& q) { return p -= q; }
  friend Poly operator-(Poly p) { return p *= Scalar(-1); }
  friend Poly operator*(Poly p, Scalar s) { return p *= s; }
  friend Poly operator*(Scalar s, Poly p) { return p *= s; }

  friend Poly operator*(const Poly& p, const Poly& q) {
    Poly r;
    for (const auto& [ep, cp] : p.terms_) {
      for (const auto& [eq, cq] : q.terms_) {
        Exponents e(std::max(ep.size(), eq.size()), 0);
        for (std::size_t i = 0; i < ep.size(); ++i) e[i] += ep[i];
        for (std::size_t i = 0; i < eq.size(); ++i) e[i] += eq[i];
        r.accumulate(e, cp * cq);
      }
    }
    return r;
  }

  friend bool operator==(const Poly& p, const Poly& q) { return p.terms_ == q.terms_; }

 private:
  static bool negligible(Scalar c) { return !(std::abs(c) >= kPruneThreshold); }

  static void trim(Exponents& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
  }

  void insert(Exponents e, Scalar c) {
    if (!negligible(c)) terms_.emplace(std::move(e), c);
  }

  void accumulate(const Exponents& e, Scalar c) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) it->second += c;
    if (negligible(it->second)) terms_.erase(it);
  }

  TermMap terms_;
};

using UnknownPoly = Poly<double>;

template <typename Scalar>
Poly<Scalar> add(const Poly<Scalar>& p, const Poly<Scalar>& q) {
  return p + q;
}

template <typename Scalar>
Poly<Scalar> mul(const Poly<Scalar>& p, const Poly<Scalar>& q) {
  return p * q;
}

/// Evaluates p with values[i] substituted for symbol i.
/// Throws MissingSymbol if p references a symbol beyond values.
template <typename Scalar>
Scalar eval(const Poly<Scalar>& p, std::span<const Scalar> values) {
  if (p.variableSpan() > values.size()) {
    throw MissingSymbol("no value for symbol #" + std::to_string(values.size()) +
                        " in polynomial evaluation");
  }
  Scalar sum(0);
  for (const auto& [e, c] : p.terms()) {
    Scalar t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) t *= values[i];
    }
    sum += t;
  }
  return sum;
}

template <typename Scalar>
Scalar eval(const Poly<Scalar>& p, std::initializer_list<Scalar> values) {
  return eval(p, std::span<const Scalar>(values.begin(), values.size()));
}

/// Formal partial derivative with respect to symbol `var`.
template <typename Scalar>
Poly<Scalar> partial(const Poly<Scalar>& p, std::size_t var) {
  Poly<Scalar> r;
  for (const auto& [e, c] : p.terms()) {
    if (var >= e.size() || e[var] == 0) continue;
    auto d = e;
    d[var] -= 1;
    r += Poly<Scalar>::monomial(std::move(d), c * Scalar(e[var]));
  }
  return r;
}

/// Max exponent of one symbol over all monomials.
template <typename Scalar>
int degreeIn(const Poly<Scalar>& p, std::size_t var) {
  int d = p.isZero() ? -1 : 0;
  for (const auto& [e, c] : p.terms()) {
    if (var < e.size()) d = std::max(d, e[var]);
  }
  return d;
}

/// Renders p using the given symbol names (falls back to s0, s1, ...).
template <typename Scalar>
std::string formatPoly(const Poly<Scalar>& p, std::span<const std::string> names = {}) {
  if (p.isZero()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Scalar mag = std::abs(c);
    bool unit = mag == Scalar(1) && !e.empty();
    if (!unit) os << mag;
    bool needStar = !unit;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (needStar) os << "*";
      needStar = true;
      if (i < names.size())
        os << names[i];
      else
        os << "s" << i;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

template <typename Scalar>
std::ostream& operator<<(std::ostream& os, const Poly<Scalar>& p) {
  return os << formatPoly(p);
}

}  // namespace hpmbvp
