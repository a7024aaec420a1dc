#pragma once

// Brute-force second cohomology, independent of the def-mode recursion.
//
// Works in the algebra over Q[eps]/eps^2: the OPE table of the generators is
// perturbed to T + eps X with X symbolic, composite states are ordered words
// in the deformed modes, and everything is reduced by plain commutation.
// Cocycles are the X making the first-order parts of skew symmetry and the
// Jacobi identity on generator triples vanish.  Coboundaries are the X
// produced by a change of generators a -> a + eps phi(a).  Ranks come from a
// dense elimination written here.  Only the input table is shared with the
// library.

#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "vadef/algebra.hpp"
#include "vadef/linear_form.hpp"
#include "vadef/scalar.hpp"

namespace oracle {

using vadef::LinearForm;
using vadef::Rational;
using vadef::Scalar;

// (generator, n) stands for the mode a^g_{-n}, n >= 1
using Letter = std::pair<int, int>;
using Word = std::vector<Letter>;

struct Dual {
  Scalar v;
  LinearForm d;  // coefficient of eps

  bool is_zero() const { return v.is_zero() && d.is_zero(); }
  Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual out{a.v * b.v, a.d * b.v};
    out.d += b.d * a.v;
    return out;
  }
  friend Dual operator*(const Dual& a, const Scalar& s) { return Dual{a.v * s, a.d * s}; }
};

using Vec = std::map<Word, Dual>;

inline void accumulate(Vec& into, const Vec& x, const Dual& c) {
  if (c.is_zero()) return;
  for (const auto& [w, a] : x) {
    Dual t = a * c;
    if (t.is_zero()) continue;
    auto [it, fresh] = into.emplace(w, t);
    if (!fresh) {
      it->second += t;
      if (it->second.is_zero()) into.erase(it);
    }
  }
}

inline Dual constant(const Scalar& s) { return Dual{s, LinearForm()}; }

inline Rational binom(long m, long k) {
  Rational r(1);
  for (long t = 0; t < k; ++t) r = r * Rational(m - t) / Rational(t + 1);
  return r;
}

// a may be written before b in an ordered word
inline bool precedes(const Letter& a, const Letter& b) {
  return a.first < b.first || (a.first == b.first && a.second >= b.second);
}

class Algebra {
 public:
  Algebra(const vadef::AlgebraSpec& spec, std::map<std::tuple<int, int, int>, Vec> table)
      : weights_(spec.weights()), table_(std::move(table)) {}

  int weight(const Word& w) const {
    int s = 0;
    for (const auto& [g, n] : w) s += weights_[g] + n - 1;
    return s;
  }
  int gen_weight(int g) const { return weights_[g]; }
  int size() const { return static_cast<int>(weights_.size()); }

  /// a^i_(alpha) a^j for any ordered pair, the i > j half through skew symmetry
  const Vec& entry(int i, int j, int alpha) {
    static const Vec zero;
    if (alpha < 0 || alpha > weights_[i] + weights_[j] - 1) return zero;
    if (i <= j) {
      auto it = table_.find({i, j, alpha});
      return it == table_.end() ? zero : it->second;
    }
    auto key = std::make_tuple(i, j, alpha);
    if (auto it = skew_.find(key); it != skew_.end()) return it->second;
    Vec out;
    for (int k = 0; alpha + k <= weights_[i] + weights_[j] - 1; ++k) {
      Vec t = entry(j, i, alpha + k);
      for (int r = 1; r <= k; ++r) t = translate(t);
      Rational c = ((alpha + k + 1) % 2 == 0 ? Rational(1) : Rational(-1));
      for (int r = 2; r <= k; ++r) c /= r;
      accumulate(out, t, constant(Scalar(c)));
    }
    return skew_.emplace(key, std::move(out)).first->second;
  }

  Vec translate(const Vec& x) {
    Vec out;
    for (const auto& [w, c] : x) accumulate(out, word_mode(w, -2, Word()), c);
    return out;
  }

  /// a^i_m on an ordered word
  const Vec& gen_mode(int i, int m, const Word& w) {
    static const Vec zero;
    if (weights_[i] - m - 1 + weight(w) < 0) return zero;
    auto key = std::make_tuple(i, m, w);
    if (auto it = gen_memo_.find(key); it != gen_memo_.end()) return it->second;
    Vec out;
    if (m < 0 && (w.empty() || precedes({i, -m}, w.front()))) {
      Word x{{i, -m}};
      x.insert(x.end(), w.begin(), w.end());
      out.emplace(std::move(x), constant(Scalar(1)));
    } else if (!w.empty()) {
      const auto [g, n] = w.front();
      const Word rest(w.begin() + 1, w.end());
      for (const auto& [x, c] : gen_mode(i, m, rest)) accumulate(out, gen_mode(g, -n, x), c);
      for (int alpha = 0; alpha <= weights_[i] + weights_[g] - 1; ++alpha) {
        Rational b = binom(m, alpha);
        if (b == 0) continue;
        for (const auto& [u, c] : entry(i, g, alpha)) accumulate(out, word_mode(u, m - n - alpha, rest), c * Scalar(b));
      }
    }
    return gen_memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  /// mode k of the state u (a word) on the word v
  const Vec& word_mode(const Word& u, int k, const Word& v) {
    static const Vec zero;
    if (weight(u) - k - 1 + weight(v) < 0) return zero;
    if (u.empty()) {
      if (k != -1) return zero;
      auto [it, fresh] = vac_.emplace(v, Vec{});
      if (fresh) it->second.emplace(v, constant(Scalar(1)));
      return it->second;
    }
    if (u.size() == 1 && u[0].second == 1) return gen_mode(u[0].first, k, v);
    auto key = std::make_tuple(u, k, v);
    if (auto it = word_memo_.find(key); it != word_memo_.end()) return it->second;
    // (g_{-p} u')_k v = sum_j binom(p+j-1, j) [ g_{-p-j} u'_{k+j} v - (-1)^p u'_{k-p-j} g_j v ]
    const auto [g, p] = u.front();
    const Word rest(u.begin() + 1, u.end());
    const int jmax = std::max(weight(rest) + weight(v) - k - 1, weights_[g] + weight(v) - 1);
    Vec out;
    for (int j = 0; j <= jmax; ++j) {
      const Scalar c(binom(p + j - 1, j));
      for (const auto& [x, a] : word_mode(rest, k + j, v)) accumulate(out, gen_mode(g, -p - j, x), a * c);
      const Scalar s = p % 2 == 0 ? -c : c;
      for (const auto& [x, a] : gen_mode(g, j, v)) accumulate(out, word_mode(rest, k - p - j, x), a * s);
    }
    return word_memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  Vec mode(const Vec& u, int k, const Vec& v) {
    Vec out;
    for (const auto& [x, a] : u)
      for (const auto& [y, b] : v) accumulate(out, word_mode(x, k, y), a * b);
    return out;
  }
  Vec gen_mode(int i, int m, const Vec& v) {
    Vec out;
    for (const auto& [y, b] : v) accumulate(out, gen_mode(i, m, y), b);
    return out;
  }

 private:
  std::vector<int> weights_;
  std::map<std::tuple<int, int, int>, Vec> table_;
  std::map<std::tuple<int, int, int>, Vec> skew_;
  std::map<std::tuple<int, int, Word>, Vec> gen_memo_;
  std::map<std::tuple<Word, int, Word>, Vec> word_memo_;
  std::map<Word, Vec> vac_;
};

/// Ordered words of the given weight.
inline std::vector<Word> words(const std::vector<int>& weights, int weight) {
  std::vector<Word> out;
  Word cur;
  std::function<void(int, Letter)> rec = [&](int left, Letter bound) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int g = bound.first; g < static_cast<int>(weights.size()); ++g)
      for (int n = left - weights[g] + 1; n >= 1; --n) {
        if (g == bound.first && n > bound.second) continue;
        cur.push_back({g, n});
        rec(left - weights[g] - n + 1, {g, n});
        cur.pop_back();
      }
  };
  rec(weight, {0, 1 << 20});
  return out;
}

inline Vec word_vec(const vadef::State& s) {
  Vec out;
  for (const auto& [m, c] : s) {
    Word w;
    for (const auto& f : m.factors()) w.push_back({static_cast<int>(f.gen), f.depth});
    out.emplace(std::move(w), constant(c));
  }
  return out;
}

inline std::size_t dense_rank(std::vector<std::vector<Scalar>> a) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c].is_zero()) continue;
      Scalar f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

struct Result {
  std::size_t unknowns = 0;
  std::size_t cocycle_dim = 0;
  std::size_t coboundary_dim = 0;
  std::size_t dim_h2 = 0;
};

inline Result brute_force_h2(const vadef::AlgebraSpec& spec) {
  const auto weights = spec.weights();
  const int r = static_cast<int>(spec.size());
  auto top = [&](int i, int j) { return weights[i] + weights[j] - 1; };

  std::map<std::tuple<int, int, int>, Vec> base;
  for (const auto& [key, s] : spec.ope.entries())
    base[{static_cast<int>(std::get<0>(key)), static_cast<int>(std::get<1>(key)), std::get<2>(key)}] = word_vec(s);

  // coordinates of X: (i <= j, alpha, word of weight top - alpha)
  std::map<std::tuple<int, int, int, Word>, vadef::UnknownId> coord;
  auto deformed = base;
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j)
      for (int alpha = 0; alpha <= top(i, j); ++alpha)
        for (const Word& w : words(weights, top(i, j) - alpha)) {
          const auto id = static_cast<vadef::UnknownId>(coord.size());
          coord[{i, j, alpha, w}] = id;
          Vec& e = deformed[{i, j, alpha}];
          auto [it, fresh] = e.emplace(w, Dual{Scalar(), LinearForm::unknown(id)});
          if (!fresh) it->second.d += LinearForm::unknown(id);
        }
  const std::size_t n = coord.size();

  Algebra alg(spec, deformed);
  std::vector<LinearForm> rows;
  auto collect = [&](const Vec& residual) {
    for (const auto& [w, c] : residual) {
      if (!c.v.is_zero()) throw std::logic_error("undeformed identity fails in the oracle");
      if (!c.d.is_zero()) rows.push_back(c.d);
    }
  };

  // skew symmetry on diagonal pairs: a_(alpha) a = sum_k (-1)^{alpha+k+1} D^k/k! a_(alpha+k) a
  for (int i = 0; i < r; ++i)
    for (int alpha = 0; alpha <= top(i, i); ++alpha) {
      Vec res = alg.entry(i, i, alpha);
      for (int k = 0; alpha + k <= top(i, i); ++k) {
        Vec t = alg.entry(i, i, alpha + k);
        Rational c = ((alpha + k) % 2 == 0 ? Rational(1) : Rational(-1));
        for (int s = 1; s <= k; ++s) {
          t = alg.translate(t);
          c /= s;
        }
        accumulate(res, t, constant(Scalar(c)));
      }
      collect(res);
    }

  // Jacobi: a_m b_n c - b_n a_m c - sum_alpha binom(m, alpha) (a_(alpha) b)_{m+n-alpha} c
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        const Word c{{k, 1}};
        const int bound = weights[i] + weights[j] + weights[k] - 2;
        for (int m = 0; m <= bound; ++m)
          for (int nn = 0; m + nn <= bound; ++nn) {
            Vec res = alg.gen_mode(i, m, alg.gen_mode(j, nn, c));
            accumulate(res, alg.gen_mode(j, nn, alg.gen_mode(i, m, c)), constant(Scalar(-1)));
            for (int alpha = 0; alpha <= top(i, j); ++alpha) {
              Rational b = binom(m, alpha);
              if (b == 0) continue;
              Vec cv;
              cv.emplace(c, constant(Scalar(1)));
              accumulate(res, alg.mode(alg.entry(i, j, alpha), m + nn - alpha, cv), constant(Scalar(-b)));
            }
            collect(res);
          }
      }

  std::vector<std::vector<Scalar>> z(rows.size(), std::vector<Scalar>(n));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (const auto& [id, c] : rows[a].terms()) z[a][id] = c;
  const std::size_t zrank = dense_rank(z);

  // change of generators a^g -> a^g + eps phi_g, phi_g = sum_w y_{g,w} w over words of weight wt_g
  Algebra plain(spec, base);
  std::vector<Vec> phi(r);
  vadef::UnknownId ny = 0;
  for (int g = 0; g < r; ++g)
    for (const Word& w : words(weights, weights[g])) phi[g].emplace(w, Dual{Scalar(), LinearForm::unknown(ny++)});
  // old words in the new generators: w_old = w_new - eps psi(w)
  auto psi = [&](const Word& w) {
    Vec out;
    for (std::size_t k = 0; k < w.size(); ++k) {
      Vec suffix;
      suffix.emplace(Word(w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end()), constant(Scalar(1)));
      Vec x = plain.mode(phi[w[k].first], -w[k].second, suffix);
      for (std::size_t t = k; t-- > 0;) x = plain.gen_mode(w[t].first, -w[t].second, x);
      accumulate(out, x, constant(Scalar(1)));
    }
    return out;
  };
  std::vector<std::vector<Scalar>> b(n, std::vector<Scalar>(ny));
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j)
      for (int alpha = 0; alpha <= top(i, j); ++alpha) {
        Vec gj;
        gj.emplace(Word{{j, 1}}, constant(Scalar(1)));
        Vec x = plain.mode(phi[i], alpha, gj);
        accumulate(x, plain.gen_mode(i, alpha, phi[j]), constant(Scalar(1)));
        for (const auto& [w, c] : plain.entry(i, j, alpha)) accumulate(x, psi(w), c * Scalar(-1));
        for (const auto& [w, c] : x) {
          auto it = coord.find({i, j, alpha, w});
          if (it == coord.end()) throw std::logic_error("coboundary leaves the coordinate space");
          for (const auto& [y, s] : c.d.terms()) b[it->second][y] += s;
        }
      }

  // every coboundary must satisfy the cocycle rows
  for (const auto& row : rows)
    for (vadef::UnknownId y = 0; y < ny; ++y) {
      Scalar acc;
      for (const auto& [id, c] : row.terms()) acc += c * b[id][y];
      if (!acc.is_zero()) throw std::logic_error("coboundary is not a cocycle");
    }

  Result res;
  res.unknowns = n;
  res.cocycle_dim = n - zrank;
  res.coboundary_dim = dense_rank(b);
  res.dim_h2 = res.cocycle_dim - res.coboundary_dim;
  return res;
}

}  // namespace oracle
