#pragma once

// PBW monomials a^{j1}_{-n1} ... a^{jp}_{-np}|0> and finite linear
// combinations of them.  Canonical order: generator index ascending, and
// within one generator the depths n are nonincreasing.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "linear_form.hpp"
#include "scalar.hpp"

namespace vadef {

using GeneratorId = std::uint32_t;

/// One creation operator g_{-depth}; `weight` is its contribution wt(g) + depth - 1.
struct Factor {
  GeneratorId gen;
  std::int32_t depth;
  std::int32_t weight;

  /// Canonical precedence: smaller generator first, deeper mode first.
  friend bool operator<(const Factor& a, const Factor& b) {
    if (a.gen != b.gen) return a.gen < b.gen;
    return a.depth > b.depth;
  }
  friend bool operator==(const Factor& a, const Factor& b) { return a.gen == b.gen && a.depth == b.depth; }
  friend bool operator!=(const Factor& a, const Factor& b) { return !(a == b); }
};

class PbwMonomial {
 public:
  PbwMonomial() = default;

  static PbwMonomial generator(GeneratorId g, int gen_weight, int depth = 1) {
    PbwMonomial m;
    m.factors_.push_back(Factor{g, depth, gen_weight + depth - 1});
    m.weight_ = gen_weight + depth - 1;
    return m;
  }

  bool is_vacuum() const { return factors_.empty(); }
  std::size_t length() const { return factors_.size(); }
  int weight() const { return weight_; }
  const std::vector<Factor>& factors() const { return factors_; }
  const Factor& front() const { return factors_.front(); }
  bool is_generator() const { return factors_.size() == 1 && factors_[0].depth == 1; }

  PbwMonomial tail(std::size_t from = 1) const {
    PbwMonomial m;
    m.factors_.assign(factors_.begin() + static_cast<std::ptrdiff_t>(from), factors_.end());
    for (const auto& f : m.factors_) m.weight_ += f.weight;
    return m;
  }
  PbwMonomial head(std::size_t count) const {
    PbwMonomial m;
    m.factors_.assign(factors_.begin(), factors_.begin() + static_cast<std::ptrdiff_t>(count));
    for (const auto& f : m.factors_) m.weight_ += f.weight;
    return m;
  }

  /// True when g_{-depth} may be placed in front without reordering.
  bool accepts_front(const Factor& f) const { return factors_.empty() || !(factors_.front() < f); }

  PbwMonomial prepended(const Factor& f) const {
    PbwMonomial m;
    m.factors_.reserve(factors_.size() + 1);
    m.factors_.push_back(f);
    m.factors_.insert(m.factors_.end(), factors_.begin(), factors_.end());
    m.weight_ = weight_ + f.weight;
    return m;
  }

  /// Builds from factors that are already in canonical order.
  static PbwMonomial from_canonical(std::vector<Factor> fs) {
    PbwMonomial m;
    m.factors_ = std::move(fs);
    for (const auto& f : m.factors_) m.weight_ += f.weight;
    return m;
  }

  bool is_canonical() const {
    for (std::size_t k = 1; k < factors_.size(); ++k)
      if (factors_[k] < factors_[k - 1]) return false;
    return true;
  }

  friend bool operator<(const PbwMonomial& a, const PbwMonomial& b) {
    return std::lexicographical_compare(a.factors_.begin(), a.factors_.end(), b.factors_.begin(),
                                        b.factors_.end());
  }
  friend bool operator==(const PbwMonomial& a, const PbwMonomial& b) { return a.factors_ == b.factors_; }
  friend bool operator!=(const PbwMonomial& a, const PbwMonomial& b) { return !(a == b); }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (const auto& f : factors_) {
      h ^= (static_cast<std::size_t>(f.gen) << 20) ^ static_cast<std::size_t>(f.depth);
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  std::vector<Factor> factors_;
  int weight_ = 0;
};

struct PbwMonomialHash {
  std::size_t operator()(const PbwMonomial& m) const { return m.hash(); }
};

inline Scalar scale_coeff(const Scalar& c, const Scalar& s) { return c * s; }
inline LinearForm scale_coeff(const LinearForm& c, const Scalar& s) { return c * s; }
inline void add_scaled(Scalar& acc, const Scalar& c, const Scalar& s) { acc += c * s; }
inline void add_scaled(LinearForm& acc, const LinearForm& c, const Scalar& s) { acc.axpy(s, c); }

/// Finite linear combination of canonical PBW monomials with coefficients in C
/// (Scalar for ordinary states, LinearForm for states linear in unknowns).
template <class C>
class StateVector {
 public:
  using Map = std::map<PbwMonomial, C>;

  StateVector() = default;
  explicit StateVector(const PbwMonomial& m, C c = C(Scalar(1))) { add(m, c); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  C coeff(const PbwMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C() : it->second;
  }

  void add(const PbwMonomial& m, const C& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  /// this += s * other
  void add(const StateVector& other, const Scalar& s = Scalar(1)) {
    if (s.is_zero()) return;
    for (const auto& [m, c] : other.terms_) {
      auto it = terms_.find(m);
      if (it == terms_.end()) {
        terms_.emplace(m, s.is_one() ? c : scale_coeff(c, s));
      } else {
        add_scaled(it->second, c, s);
        if (it->second.is_zero()) terms_.erase(it);
      }
    }
  }
  StateVector& operator+=(const StateVector& o) {
    add(o);
    return *this;
  }
  StateVector& operator-=(const StateVector& o) {
    add(o, Scalar(-1));
    return *this;
  }
  StateVector& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    if (s.is_one()) return *this;
    for (auto& [m, c] : terms_) c = scale_coeff(c, s);
    return *this;
  }
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(StateVector a, const Scalar& s) { return a *= s; }
  friend StateVector operator*(const Scalar& s, StateVector a) { return a *= s; }
  StateVector operator-() const { return *this * Scalar(-1); }
  bool operator==(const StateVector& o) const { return terms_ == o.terms_; }
  bool operator!=(const StateVector& o) const { return !(*this == o); }

  /// Weight if homogeneous, -1 for the zero state, -2 if mixed.
  int homogeneous_weight() const {
    if (terms_.empty()) return -1;
    int w = terms_.begin()->first.weight();
    for (const auto& [m, c] : terms_)
      if (m.weight() != w) return -2;
    return w;
  }

 private:
  Map terms_;
};

using State = StateVector<Scalar>;
using FormState = StateVector<LinearForm>;

/// Multiply a state by a coefficient: Scalar-state times C gives a C-state.
template <class C>
StateVector<C> scale_state(const State& s, const C& c) {
  StateVector<C> out;
  if (c.is_zero()) return out;
  for (const auto& [m, x] : s) out.add(m, scale_coeff(c, x));
  return out;
}

inline State evaluate_state(const FormState& s, const std::vector<Scalar>& values) {
  State out;
  for (const auto& [m, f] : s) out.add(m, f.evaluate(values));
  return out;
}

/// All canonical monomials of the given weight, in canonical order.
inline std::vector<PbwMonomial> enumerate_basis(const std::vector<int>& gen_weights, int weight) {
  std::vector<PbwMonomial> out;
  if (weight < 0) return out;
  std::vector<Factor> cur;
  // Each next factor must not precede the previous one in canonical order.
  std::function<void(int, GeneratorId, int)> rec = [&](int remaining, GeneratorId min_gen, int max_depth) {
    if (remaining == 0) {
      out.push_back(PbwMonomial::from_canonical(cur));
      return;
    }
    for (GeneratorId g = min_gen; g < gen_weights.size(); ++g) {
      const int wg = gen_weights[g];
      const int dmax = std::min(remaining - wg + 1, g == min_gen ? max_depth : remaining - wg + 1);
      for (int d = dmax; d >= 1; --d) {
        cur.push_back(Factor{g, d, wg + d - 1});
        rec(remaining - (wg + d - 1), g, d);
        cur.pop_back();
      }
    }
  };
  rec(weight, 0, weight + 1);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string render_monomial(const PbwMonomial& m, const std::vector<std::string>& names) {
  std::string s;
  for (const auto& f : m.factors()) s += names.at(f.gen) + "(" + std::to_string(-f.depth) + ")";
  return s + "|0>";
}

/// Display order: longer monomials first, then canonical order.
template <class C>
std::vector<std::pair<const PbwMonomial*, const C*>> display_order(const StateVector<C>& s) {
  std::vector<std::pair<const PbwMonomial*, const C*>> v;
  for (const auto& [m, c] : s) v.emplace_back(&m, &c);
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first->length() > b.first->length(); });
  return v;
}

/// "2*w(-1)|0> + w(-4)|0>"; "0" for the zero state.
inline std::string render_state(const State& s, const std::vector<std::string>& names) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mp, cp] : display_order(s)) {
    const PbwMonomial& m = *mp;
    const Scalar& c = *cp;
    std::string mono = render_monomial(m, names);
    bool neg = false;
    std::string cs;
    if (c.is_constant()) {
      Rational v = c.constant_value();
      neg = v < 0;
      if (neg) v = -v;
      cs = (v == 1) ? "" : v.get_str() + "*";
    } else {
      cs = c.to_string() + "*";
    }
    if (first) {
      out += (neg ? "-" : "") + cs + mono;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + cs + mono;
    }
  }
  return out;
}

inline std::string render_form_state(const FormState& s, const std::vector<std::string>& names,
                                     const std::function<std::string(UnknownId)>& unknown_name) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, f] : display_order(s)) {
    if (!first) out += " + ";
    first = false;
    out += "(" + f->to_string(unknown_name) + ")*" + render_monomial(*m, names);
  }
  return out;
}

}  // namespace vadef
