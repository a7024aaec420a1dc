#pragma once

// Undeformed mode action on the PBW basis: generator modes, modes of
// arbitrary states (iterate formula), and the translation operator D.

#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "pbw.hpp"

namespace vadef {

struct EngineLimits {
  std::size_t reduction_budget = 1000000;
  std::size_t max_depth = 4000;
};

namespace detail {

struct GenKey {
  GeneratorId g;
  int n;
  PbwMonomial v;
  bool operator==(const GenKey& o) const { return g == o.g && n == o.n && v == o.v; }
};
struct GenKeyHash {
  std::size_t operator()(const GenKey& k) const {
    return k.v.hash() * 31 + (static_cast<std::size_t>(k.g) << 32) + static_cast<std::size_t>(k.n + (1 << 20));
  }
};
struct PairKey {
  PbwMonomial u;
  int n;
  PbwMonomial v;
  bool operator==(const PairKey& o) const { return n == o.n && u == o.u && v == o.v; }
};
struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const {
    return (k.u.hash() * 1000003u) ^ (k.v.hash() * 31) ^ static_cast<std::size_t>(k.n + (1 << 20));
  }
};

/// Guards recursion depth and counts fresh reductions.
class Budget {
 public:
  explicit Budget(EngineLimits l) : limits_(l) {}
  class Scope {
   public:
    explicit Scope(Budget& b) : b_(b) {
      if (++b_.depth_ > b_.limits_.max_depth)
        throw RecursionBudgetExceeded("recursion depth limit reached; the OPE table does not lower filtration");
      if (++b_.steps_ > b_.limits_.reduction_budget)
        throw RecursionBudgetExceeded("reduction budget of " + std::to_string(b_.limits_.reduction_budget) +
                                      " steps exhausted");
    }
    ~Scope() { --b_.depth_; }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    Budget& b_;
  };
  std::size_t steps() const { return steps_; }

 private:
  EngineLimits limits_;
  std::size_t depth_ = 0;
  std::size_t steps_ = 0;
};

template <class C>
void accumulate(StateVector<C>& out, const State& r, const C& c) {
  for (const auto& [m, x] : r) out.add(m, scale_coeff(c, x));
}

}  // namespace detail

/// Computes undeformed modes on canonical PBW states.  Results are memoized,
/// so an engine instance must not be shared between threads.
class ModeEngine {
 public:
  explicit ModeEngine(AlgebraSpec spec, EngineLimits limits = {}) : spec_(std::move(spec)), budget_(limits) {
    const std::size_t r = spec_.size();
    table_.assign(r, std::vector<std::vector<State>>(r));
    ready_.assign(r, std::vector<bool>(r, false));
    for (GeneratorId i = 0; i < r; ++i)
      for (GeneratorId j = i; j < r; ++j) {
        auto& row = table_[i][j];
        row.assign(static_cast<std::size_t>(spec_.top(i, j) + 1), State());
        for (int a = 0; a <= spec_.top(i, j); ++a)
          if (const State* s = spec_.ope.find(i, j, a)) row[static_cast<std::size_t>(a)] = *s;
        ready_[i][j] = true;
      }
  }

  const AlgebraSpec& spec() const { return spec_; }
  std::size_t steps() const { return budget_.steps(); }

  /// a^i_alpha a^j for any ordered pair; entries with i > j come from skew-symmetry.
  const State& entry(GeneratorId i, GeneratorId j, int alpha) {
    static const State zero;
    if (alpha < 0 || alpha > spec_.top(i, j)) return zero;
    if (!ready_[i][j]) derive_opposite(i, j);
    return table_[i][j][static_cast<std::size_t>(alpha)];
  }

  /// g_n applied to a canonical monomial.
  const State& gen_mode(GeneratorId g, int n, const PbwMonomial& v) {
    static const State zero;
    if (spec_.weight(g) - n - 1 + v.weight() < 0) return zero;
    detail::GenKey key{g, n, v};
    if (auto it = gen_memo_.find(key); it != gen_memo_.end()) return it->second;
    detail::Budget::Scope scope(budget_);
    State result;
    if (v.is_vacuum()) {
      if (n < 0) result.add(spec_.generator_monomial(g, -n), Scalar(1));
    } else if (n < 0 && v.accepts_front(spec_.factor(g, -n))) {
      result.add(v.prepended(spec_.factor(g, -n)), Scalar(1));
    } else {
      // g_n h_{-k} rest = h_{-k} g_n rest + sum_a binom(n,a) (g_a h)_{n-k-a} rest
      const Factor h = v.front();
      const PbwMonomial rest = v.tail();
      State inner = gen_mode(g, n, rest);
      result = apply_gen_mode(h.gen, -h.depth, inner);
      for (int a = 0; a <= spec_.top(g, h.gen); ++a) {
        const State& e = entry(g, h.gen, a);
        if (e.is_zero()) continue;
        Rational b = gen_binomial(n, a);
        if (b == 0) continue;
        result.add(apply_state_mode(e, n - h.depth - a, rest), Scalar(b));
      }
    }
    return gen_memo_.emplace(std::move(key), std::move(result)).first->second;
  }

  template <class C>
  StateVector<C> apply_gen_mode(GeneratorId g, int n, const StateVector<C>& v) {
    StateVector<C> out;
    for (const auto& [m, c] : v) {
      State r = gen_mode(g, n, m);
      detail::accumulate(out, r, c);
    }
    return out;
  }

  /// u_n v for monomials u, v via the iterate formula
  /// (g_{-p}u')_n = sum_i binom(p+i-1,i) [g_{-p-i} u'_{n+i} - (-1)^p u'_{n-p-i} g_i].
  const State& state_mode(const PbwMonomial& u, int n, const PbwMonomial& v) {
    static const State zero;
    if (u.weight() - n - 1 + v.weight() < 0) return zero;
    if (u.is_vacuum()) {
      if (n != -1) return zero;
    } else if (u.is_generator()) {
      return gen_mode(u.front().gen, n, v);
    }
    detail::PairKey key{u, n, v};
    if (auto it = pair_memo_.find(key); it != pair_memo_.end()) return it->second;
    detail::Budget::Scope scope(budget_);
    State result;
    if (u.is_vacuum()) {
      result.add(v, Scalar(1));
    } else {
      const Factor g = u.front();
      const PbwMonomial rest = u.tail();
      const int p = g.depth;
      const int imax1 = rest.weight() + v.weight() - n - 1;
      const int imax2 = spec_.weight(g.gen) + v.weight() - 1;
      const Scalar sgn(sign_power(p));
      for (int i = 0; i <= std::max(imax1, imax2); ++i) {
        const Scalar c(gen_binomial(p + i - 1, i));
        if (i <= imax1) {
          State x = state_mode(rest, n + i, v);
          if (!x.is_zero()) result.add(apply_gen_mode(g.gen, -p - i, x), c);
        }
        if (i <= imax2) {
          State y = gen_mode(g.gen, i, v);
          if (!y.is_zero()) result.add(apply_state_mode(rest, n - p - i, y), -(c * sgn));
        }
      }
    }
    return pair_memo_.emplace(std::move(key), std::move(result)).first->second;
  }

  /// u_n v for a state u with coefficients in C and a monomial v.
  template <class C>
  StateVector<C> apply_state_mode(const StateVector<C>& u, int n, const PbwMonomial& v) {
    StateVector<C> out;
    for (const auto& [m, c] : u) {
      State r = state_mode(m, n, v);
      detail::accumulate(out, r, c);
    }
    return out;
  }

  /// u_n v for a monomial u and a state v with coefficients in C.
  template <class C>
  StateVector<C> apply_state_mode(const PbwMonomial& u, int n, const StateVector<C>& v) {
    StateVector<C> out;
    for (const auto& [m, c] : v) {
      State r = state_mode(u, n, m);
      detail::accumulate(out, r, c);
    }
    return out;
  }

  /// D(h_{-k} rest) = k h_{-k-1} rest + h_{-k} D(rest)
  const State& translate(const PbwMonomial& v) {
    static const State zero;
    if (v.is_vacuum()) return zero;
    if (auto it = d_memo_.find(v); it != d_memo_.end()) return it->second;
    detail::Budget::Scope scope(budget_);
    const Factor h = v.front();
    const PbwMonomial rest = v.tail();
    State result = gen_mode(h.gen, -h.depth - 1, rest) * Scalar(h.depth);
    State drest = translate(rest);
    result += apply_gen_mode(h.gen, -h.depth, drest);
    return d_memo_.emplace(v, std::move(result)).first->second;
  }

  template <class C>
  StateVector<C> translate(const StateVector<C>& v) {
    StateVector<C> out;
    for (const auto& [m, c] : v) {
      State r = translate(m);
      detail::accumulate(out, r, c);
    }
    return out;
  }

  /// D^k v / k!
  template <class C>
  StateVector<C> divided_translate(const StateVector<C>& v, int k) {
    StateVector<C> out = v;
    for (int i = 1; i <= k; ++i) out = translate(out);
    out *= Scalar(inverse_factorial(k));
    return out;
  }

 private:
  // a^j_alpha a^i = sum_k (-1)^{alpha+k+1} D^k/k! a^i_{alpha+k} a^j
  void derive_opposite(GeneratorId i, GeneratorId j) {
    const int top = spec_.top(i, j);
    std::vector<State> row(static_cast<std::size_t>(top + 1));
    const auto& src = table_[j][i];
    for (int a = 0; a <= top; ++a) {
      State acc;
      for (int k = 0; a + k <= top; ++k) {
        const State& s = src[static_cast<std::size_t>(a + k)];
        if (s.is_zero()) continue;
        acc.add(divided_translate(s, k), Scalar(sign_power(a + k + 1)));
      }
      row[static_cast<std::size_t>(a)] = std::move(acc);
    }
    table_[i][j] = std::move(row);
    ready_[i][j] = true;
  }

  AlgebraSpec spec_;
  detail::Budget budget_;
  std::vector<std::vector<std::vector<State>>> table_;
  std::vector<std::vector<bool>> ready_;
  std::unordered_map<detail::GenKey, State, detail::GenKeyHash> gen_memo_;
  std::unordered_map<detail::PairKey, State, detail::PairKeyHash> pair_memo_;
  std::unordered_map<PbwMonomial, State, PbwMonomialHash> d_memo_;
};

/// Sorts factors into canonical order, swapping adjacent factors only when
/// `commute` says the two creation operators commute.
inline PbwMonomial canonicalize_free(std::vector<Factor> fs, const std::function<bool(const Factor&, const Factor&)>& commute) {
  for (std::size_t k = 1; k < fs.size(); ++k) {
    for (std::size_t t = k; t > 0 && fs[t] < fs[t - 1]; --t) {
      if (!commute(fs[t - 1], fs[t]))
        throw NotCanonicalizable("creation operators at positions " + std::to_string(t - 1) + " and " +
                                 std::to_string(t) + " do not commute");
      std::swap(fs[t - 1], fs[t]);
    }
  }
  return PbwMonomial::from_canonical(std::move(fs));
}

/// Creation operators g_{-a}, h_{-b} commute exactly when every g_alpha h is a
/// multiple of the vacuum: negative modes of |0> other than -1 vanish.
inline PbwMonomial canonicalize_free(std::vector<Factor> fs, const AlgebraSpec& spec) {
  auto commute = [&spec](const Factor& a, const Factor& b) {
    GeneratorId i = std::min(a.gen, b.gen), j = std::max(a.gen, b.gen);
    for (int al = 0; al <= spec.top(i, j); ++al)
      if (const State* s = spec.ope.find(i, j, al))
        for (const auto& [m, c] : *s)
          if (!m.is_vacuum()) return false;
    return true;
  };
  return canonicalize_free(std::move(fs), commute);
}

struct Violation {
  std::string identity;
  std::string witness;
};

/// Checks table shape, skew-consistency of diagonal entries and the
/// commutator formula [u_m, v_n]w = sum_a binom(m,a) (u_a v)_{m+n-a} w for
/// generators u, v and every basis state w of weight <= cap.
inline std::vector<Violation> validate_algebra(const AlgebraSpec& spec, int cap, EngineLimits limits = {}) {
  std::vector<Violation> out;
  const auto names = spec.names();
  const auto weights = spec.weights();
  for (GeneratorId g = 0; g < spec.size(); ++g)
    if (spec.weight(g) <= 0)
      out.push_back({"positive weight", spec.generators[g].name + " has weight " + std::to_string(spec.weight(g))});
  if (!out.empty()) return out;
  for (const auto& [key, s] : spec.ope.entries()) {
    auto [i, j, a] = key;
    std::string label = names.at(i) + "(" + std::to_string(a) + ")" + names.at(j);
    if (a < 0 || a > spec.top(i, j)) {
      out.push_back({"entry range", label + " lies outside 0.." + std::to_string(spec.top(i, j))});
      continue;
    }
    const int w = spec.top(i, j) - a;
    for (const auto& [m, c] : s)
      if (m.weight() != w || !m.is_canonical())
        out.push_back({"entry weight", label + " contains " + render_monomial(m, names)});
  }
  if (!out.empty()) return out;

  ModeEngine eng(spec, limits);
  for (GeneratorId i = 0; i < spec.size(); ++i) {
    for (int a = 0; a <= spec.top(i, i); ++a) {
      State lhs = eng.entry(i, i, a);
      State rhs;
      for (int k = 0; a + k <= spec.top(i, i); ++k)
        rhs.add(eng.divided_translate(eng.entry(i, i, a + k), k), Scalar(sign_power(a + k + 1)));
      if (lhs != rhs)
        out.push_back({"skew symmetry",
                       names[i] + "(" + std::to_string(a) + ")" + names[i] + ": " + render_state(lhs - rhs, names)});
    }
  }
  std::vector<PbwMonomial> targets;
  for (int w = 0; w <= cap; ++w)
    for (auto& m : enumerate_basis(weights, w)) targets.push_back(m);
  for (GeneratorId i = 0; i < spec.size(); ++i)
    for (GeneratorId j = 0; j < spec.size(); ++j)
      for (const auto& w : targets) {
        const int bound = spec.weight(i) + spec.weight(j) + w.weight() - 2;
        for (int m = 0; m <= bound; ++m)
          for (int n = 0; m + n <= bound; ++n) {
            State lhs = eng.apply_gen_mode(i, m, eng.gen_mode(j, n, w));
            lhs -= eng.apply_gen_mode(j, n, eng.gen_mode(i, m, w));
            for (int a = 0; a <= spec.top(i, j); ++a) {
              Rational b = gen_binomial(m, a);
              if (b == 0) continue;
              const State& e = eng.entry(i, j, a);
              if (e.is_zero()) continue;
              lhs.add(eng.apply_state_mode(e, m + n - a, w), Scalar(-b));
            }
            if (!lhs.is_zero())
              out.push_back({"commutator formula", "[" + names[i] + "(" + std::to_string(m) + "), " + names[j] + "(" +
                                                       std::to_string(n) + ")] on " + render_monomial(w, names) +
                                                       " leaves " + render_state(lhs, names)});
          }
      }
  return out;
}

}  // namespace vadef
