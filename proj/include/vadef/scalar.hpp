#pragma once

// Exact coefficients: rationals (GMP) and univariate rational functions
// over Q in a single named parameter.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace vadef {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DivisionByZero();
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Dense polynomial in one variable, coefficients in ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Rational& c) {
    if (c != 0) coeffs_.push_back(c);
  }
  static Polynomial monomial(const Rational& c, std::size_t deg) {
    Polynomial p;
    if (c == 0) return p;
    p.coeffs_.assign(deg + 1, Rational(0));
    p.coeffs_[deg] = c;
    return p;
  }
  static Polynomial from_coefficients(std::vector<Rational> c) {
    Polynomial p;
    p.coeffs_ = std::move(c);
    p.trim();
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }

  Rational evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& c : p.coeffs_) c = -c;
    return p;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial p;
    if (a.is_zero() || b.is_zero()) return p;
    p.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) p.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return p;
  }
  Polynomial scaled(const Rational& c) const {
    if (c == 0) return Polynomial();
    Polynomial p = *this;
    for (auto& x : p.coeffs_) x *= c;
    return p;
  }
  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DivisionByZero();
    Polynomial q, r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.coeffs_.assign(a.degree() - b.degree() + 1, Rational(0));
    const Rational lead_inv = 1 / b.leading();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      const int shift = r.degree() - b.degree();
      Rational f = r.leading() * lead_inv;
      q.coeffs_[shift] = f;
      for (int k = 0; k <= b.degree(); ++k) r.coeffs_[k + shift] -= f * b.coeffs_[k];
      r.trim();
    }
    q.trim();
    return {q, r};
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(1 / leading());
  }

  friend Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Ascending powers, e.g. "22/5 + c" or "-1/2*c + c^2".
  std::string to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const Rational& c = coeffs_[k];
      if (c == 0) continue;
      std::string term;
      bool neg = c < 0;
      Rational a = neg ? Rational(-c) : c;
      if (k == 0) {
        term = a.get_str();
      } else {
        std::string pw = var + (k > 1 ? "^" + std::to_string(k) : "");
        term = (a == 1) ? pw : a.get_str() + "*" + pw;
      }
      if (first) {
        out = (neg ? "-" : "") + term;
        first = false;
      } else {
        out += (neg ? " - " : " + ") + term;
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;
};

/// Element of Q or of Q(p) for one named parameter p.  Kept in lowest terms
/// with a monic denominator; constants carry no parameter name.
class Scalar {
 public:
  Scalar() : num_(), den_(Rational(1)) {}
  Scalar(long v) : num_(Rational(v)), den_(Rational(1)) {}  // NOLINT
  Scalar(int v) : Scalar(static_cast<long>(v)) {}           // NOLINT
  Scalar(const Rational& v) : num_(v), den_(Rational(1)) {}  // NOLINT

  static Scalar parameter(const std::string& name) {
    Scalar s;
    s.num_ = Polynomial::monomial(Rational(1), 1);
    s.param_ = name;
    return s;
  }
  static Scalar fraction(Polynomial num, Polynomial den, const std::string& param) {
    if (den.is_zero()) throw DivisionByZero();
    Scalar s;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.param_ = param;
    s.normalize();
    return s;
  }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  /// Only meaningful when is_constant().
  Rational constant_value() const { return num_.is_zero() ? Rational(0) : num_.coeff(0) / den_.coeff(0); }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  const std::string& parameter_name() const { return param_; }

  Scalar operator-() const {
    Scalar s = *this;
    s.num_ = -s.num_;
    return s;
  }
  Scalar& operator+=(const Scalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const std::string p = merged_param(o);
    if (den_.is_one() && o.den_.is_one()) {
      num_ += o.num_;
      param_ = p;
      drop_param_if_constant();
      return *this;
    }
    if (den_ == o.den_) {
      num_ += o.num_;
    } else {
      num_ = num_ * o.den_ + o.num_ * den_;
      den_ = den_ * o.den_;
    }
    param_ = p;
    normalize();
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }
  Scalar& operator*=(const Scalar& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = Scalar();
    const std::string p = merged_param(o);
    if (o.is_constant()) {
      num_ = num_.scaled(o.constant_value());
      return *this;
    }
    if (is_constant()) {
      Rational c = constant_value();
      *this = o;
      num_ = num_.scaled(c);
      return *this;
    }
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    param_ = p;
    normalize();
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw DivisionByZero();
    Scalar inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    inv.param_ = o.param_;
    inv.normalize();
    return *this *= inv;
  }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  bool operator==(const Scalar& o) const {
    if (num_ != o.num_ || den_ != o.den_) return false;
    return is_constant() || param_ == o.param_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Substitute a rational value for the parameter.
  Rational specialize(const Rational& value) const {
    if (is_constant()) return constant_value();
    Rational d = den_.evaluate(value);
    if (d == 0) throw PoleAtValue(param_ + " = " + value.get_str());
    return num_.evaluate(value) / d;
  }

  std::string to_string() const {
    if (is_constant()) return constant_value().get_str();
    std::string s = "(" + num_.to_string(param_) + ")";
    if (!den_.is_one()) s += "/(" + den_.to_string(param_) + ")";
    return s;
  }

 private:
  std::string merged_param(const Scalar& o) const {
    const bool a = !is_constant(), b = !o.is_constant();
    if (a && b && param_ != o.param_) throw ParameterMismatch(param_, o.param_);
    return a ? param_ : o.param_;
  }
  void drop_param_if_constant() {
    if (is_constant()) param_.clear();
  }
  void normalize() {
    if (num_.is_zero()) {
      den_ = Polynomial(Rational(1));
      param_.clear();
      return;
    }
    if (!den_.is_constant()) {
      Polynomial g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = Polynomial::divmod(num_, g).first;
        den_ = Polynomial::divmod(den_, g).first;
      }
    }
    Rational lead = den_.leading();
    if (lead != 1) {
      Rational inv = 1 / lead;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
    drop_param_if_constant();
  }

  Polynomial num_;
  Polynomial den_;
  std::string param_;
};

using RationalFunction = Scalar;

inline std::string to_string(const Scalar& s) { return s.to_string(); }

/// binom(m, k) for integer m (possibly negative) and k >= 0; zero for k < 0.
inline Rational gen_binomial(long m, long k) {
  if (k < 0) return Rational(0);
  Integer num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= Integer(m - i);
    den *= Integer(i + 1);
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Integer factorial(long n) {
  Integer f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Rational inverse_factorial(long n) { return Rational(Integer(1), factorial(n)); }

inline long sign_power(long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace vadef
