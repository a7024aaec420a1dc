#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace vadef {

using UnknownId = std::uint32_t;

/// Finite linear combination of unknowns with scalar coefficients,
/// stored sorted by unknown id with no zero entries.
class LinearForm {
 public:
  using Term = std::pair<UnknownId, Scalar>;

  LinearForm() = default;
  static LinearForm unknown(UnknownId id, Scalar c = Scalar(1)) {
    LinearForm f;
    if (!c.is_zero()) f.terms_.emplace_back(id, std::move(c));
    return f;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Scalar coeff(UnknownId id) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), id,
                               [](const Term& t, UnknownId x) { return t.first < x; });
    return (it != terms_.end() && it->first == id) ? it->second : Scalar();
  }

  LinearForm& operator+=(const LinearForm& o) { return axpy(Scalar(1), o); }
  LinearForm& operator-=(const LinearForm& o) { return axpy(Scalar(-1), o); }

  /// this += c * o
  LinearForm& axpy(const Scalar& c, const LinearForm& o) {
    if (c.is_zero() || o.is_zero()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
        out.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->first < a->first) {
        Scalar v = c.is_one() ? b->second : c * b->second;
        out.emplace_back(b->first, std::move(v));
        ++b;
      } else {
        Scalar v = a->second + (c.is_one() ? b->second : c * b->second);
        if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  LinearForm& operator*=(const Scalar& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    if (c.is_one()) return *this;
    for (auto& t : terms_) t.second *= c;
    return *this;
  }
  LinearForm operator-() const {
    LinearForm f = *this;
    for (auto& t : f.terms_) t.second = -t.second;
    return f;
  }
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator*(LinearForm a, const Scalar& c) { return a *= c; }
  friend LinearForm operator*(const Scalar& c, LinearForm a) { return a *= c; }
  bool operator==(const LinearForm& o) const { return terms_ == o.terms_; }
  bool operator!=(const LinearForm& o) const { return !(*this == o); }

  /// Substitute values for the unknowns; ids beyond the vector count as zero.
  Scalar evaluate(const std::vector<Scalar>& values) const {
    Scalar acc;
    for (const auto& [id, c] : terms_)
      if (id < values.size() && !values[id].is_zero()) acc += c * values[id];
    return acc;
  }

  std::string to_string(const std::function<std::string(UnknownId)>& name) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      if (k) s += " + ";
      const Scalar& c = terms_[k].second;
      if (!c.is_one()) s += c.to_string() + "*";
      s += name(terms_[k].first);
    }
    return s;
  }

 private:
  std::vector<Term> terms_;
};

}  // namespace vadef
