#pragma once

// Dense univariate polynomials over a field, plus exact Sturm sequences over
// the rationals. Coefficients are stored in ascending degree order.

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "hara_eq/errors.hpp"
#include "hara_eq/exact.hpp"

namespace hara_eq {

inline int sign_of(const mpq_class& v) { return sgn(v); }
inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> ascending) : c_(std::move(ascending)) { trim(); }

  static Polynomial monomial(const T& coef, std::size_t degree) {
    std::vector<T> c(degree + 1, T(0));
    c[degree] = coef;
    return Polynomial(std::move(c));
  }

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coefficients() const { return c_; }

  T coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const T& leading() const { return c_.back(); }

  // Lowest-degree nonzero coefficient; its sign is the sign near 0+.
  const T& trailing() const {
    for (const T& v : c_) {
      if (sign_of(v) != 0) return v;
    }
    return c_.back();
  }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  Polynomial& operator*=(const T& s) {
    for (T& v : c_) v *= s;
    trim();
    return *this;
  }

  friend Polynomial operator-(const Polynomial& p) {
    Polynomial out = p;
    for (T& v : out.c_) v = -v;
    return out;
  }

  friend Polynomial operator+(const Polynomial& lhs, const Polynomial& rhs) {
    std::vector<T> c(std::max(lhs.c_.size(), rhs.c_.size()), T(0));
    for (std::size_t i = 0; i < lhs.c_.size(); ++i) c[i] += lhs.c_[i];
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) c[i] += rhs.c_[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& lhs, const Polynomial& rhs) { return lhs + (-rhs); }

  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return Polynomial();
    std::vector<T> c(lhs.c_.size() + rhs.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < lhs.c_.size(); ++i) {
      for (std::size_t j = 0; j < rhs.c_.size(); ++j) c[i + j] += lhs.c_[i] * rhs.c_[j];
    }
    return Polynomial(std::move(c));
  }

  friend bool operator==(const Polynomial& lhs, const Polynomial& rhs) { return lhs.c_ == rhs.c_; }

 private:
  void trim() {
    while (!c_.empty() && sign_of(c_.back()) == 0) c_.pop_back();
  }

  std::vector<T> c_;
};

// Quotient and remainder of num / den over a field.
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& num, const Polynomial<T>& den) {
  if (den.is_zero()) throw InputError("polynomial division by zero");
  std::vector<T> rem = num.coefficients();
  const int dd = den.degree();
  if (num.degree() < dd) return {Polynomial<T>(), num};
  std::vector<T> quo(static_cast<std::size_t>(num.degree() - dd + 1), T(0));
  const T& lead = den.leading();
  for (int k = num.degree(); k >= dd; --k) {
    const T factor = rem[static_cast<std::size_t>(k)] / lead;
    quo[static_cast<std::size_t>(k - dd)] = factor;
    if (sign_of(factor) == 0) continue;
    for (int i = 0; i <= dd; ++i) {
      rem[static_cast<std::size_t>(k - dd + i)] -= factor * den.coefficient(static_cast<std::size_t>(i));
    }
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial<T>(std::move(quo)), Polynomial<T>(std::move(rem))};
}

template <class T>
Polynomial<T> monic(const Polynomial<T>& p) {
  if (p.is_zero()) return p;
  Polynomial<T> out = p;
  out *= T(1) / p.leading();
  return out;
}

template <class T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    Polynomial<T> r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

using RationalPolynomial = Polynomial<mpq_class>;

// Rescales by a positive rational so coefficients are coprime integers.
// Signs at every point are preserved.
inline RationalPolynomial primitive_part(const RationalPolynomial& p) {
  if (p.is_zero()) return p;
  mpz_class den_lcm = 1;
  for (const auto& v : p.coefficients()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den_mpz_t());
  mpz_class num_gcd = 0;
  for (const auto& v : p.coefficients()) {
    const mpz_class scaled = v.get_num() * (den_lcm / v.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  RationalPolynomial out = p;
  out *= make_rational(den_lcm, num_gcd);
  return out;
}

inline RationalPolynomial square_free_part(const RationalPolynomial& p) {
  const RationalPolynomial g = gcd(p, p.derivative());
  return primitive_part(divmod(p, g).first);
}

class SturmSequence {
 public:
  explicit SturmSequence(const RationalPolynomial& p) {
    if (p.is_zero()) throw InputError("Sturm sequence of the zero polynomial");
    seq_.push_back(primitive_part(p));
    RationalPolynomial d = p.derivative();
    if (d.is_zero()) return;
    seq_.push_back(primitive_part(d));
    while (true) {
      RationalPolynomial r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
      if (r.is_zero()) break;
      seq_.push_back(primitive_part(-r));
    }
  }

  const std::vector<RationalPolynomial>& polynomials() const { return seq_; }

  int variations_at(const mpq_class& x) const {
    return count_variations([&](const RationalPolynomial& q) { return sign_of(q(x)); });
  }
  int variations_at_zero_plus() const {
    return count_variations([](const RationalPolynomial& q) { return sign_of(q.trailing()); });
  }
  int variations_at_infinity() const {
    return count_variations([](const RationalPolynomial& q) { return sign_of(q.leading()); });
  }

  // Distinct roots in (lo, hi].
  int count_in(const mpq_class& lo, const mpq_class& hi) const { return variations_at(lo) - variations_at(hi); }
  int count_positive() const { return variations_at_zero_plus() - variations_at_infinity(); }

 private:
  template <class SignFn>
  int count_variations(SignFn sign) const {
    int count = 0;
    int last = 0;
    for (const auto& q : seq_) {
      const int s = sign(q);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  std::vector<RationalPolynomial> seq_;
};

// Cauchy bound: every root z satisfies |z| < 1 + max |c_i / c_lead|.
inline mpq_class cauchy_root_bound(const RationalPolynomial& p) {
  mpq_class best = 0;
  const mpq_class lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    const mpq_class r = abs(p.coefficient(static_cast<std::size_t>(i))) / lead;
    if (r > best) best = r;
  }
  return best + 1;
}

}  // namespace hara_eq
