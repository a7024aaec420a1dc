#pragma once

// First-order deformed modes u^def_m built from singular data on generator
// pairs.  DefEngine<LinearForm> keeps every coordinate symbolic;
// DefEngine<Scalar> evaluates a concrete deformation.

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "algebra.hpp"
#include "mode_calculus.hpp"
#include "pbw.hpp"

namespace vadef {

/// One unknown per coordinate of M_m(a^i, a^j) in the basis of
/// V_(wt_i + wt_j - 1 - m), for i <= j and 0 <= m <= wt_i + wt_j - 1.  The
/// top slot is the vacuum coefficient B(a^i, a^j).
class DeformationUnknowns {
 public:
  struct Info {
    GeneratorId i;
    GeneratorId j;
    int m;
    PbwMonomial mono;
  };

  explicit DeformationUnknowns(const AlgebraSpec& spec) : names_(spec.names()) {
    const auto weights = spec.weights();
    const std::size_t r = spec.size();
    slots_.assign(r, std::vector<std::vector<std::vector<UnknownId>>>(r));
    for (GeneratorId i = 0; i < r; ++i)
      for (GeneratorId j = i; j < r; ++j) {
        const int top = spec.top(i, j);
        slots_[i][j].resize(static_cast<std::size_t>(top + 1));
        for (int m = 0; m <= top; ++m)
          for (auto& b : enumerate_basis(weights, top - m)) {
            slots_[i][j][static_cast<std::size_t>(m)].push_back(static_cast<UnknownId>(info_.size()));
            info_.push_back({i, j, m, b});
          }
      }
  }

  std::size_t size() const { return info_.size(); }
  const Info& info(UnknownId id) const { return info_.at(id); }
  const std::vector<Info>& all() const { return info_; }
  const std::vector<UnknownId>& slot(GeneratorId i, GeneratorId j, int m) const {
    static const std::vector<UnknownId> none;
    if (i > j || m < 0 || static_cast<std::size_t>(m) >= slots_[i][j].size()) return none;
    return slots_[i][j][static_cast<std::size_t>(m)];
  }
  bool is_top(UnknownId id) const {
    const Info& x = info_.at(id);
    return static_cast<std::size_t>(x.m) + 1 == slots_[x.i][x.j].size();
  }

  std::string name(UnknownId id) const {
    const Info& x = info_.at(id);
    const std::string pair = "(" + names_[x.i] + "," + names_[x.j] + ")";
    if (is_top(id)) return "B" + pair;
    return "M" + std::to_string(x.m) + pair + "[" + render_monomial(x.mono, names_) + "]";
  }

  FormState symbolic_entry(GeneratorId i, GeneratorId j, int m) const {
    FormState s;
    for (UnknownId id : slot(i, j, m)) s.add(info_[id].mono, LinearForm::unknown(id));
    return s;
  }
  State resolved_entry(GeneratorId i, GeneratorId j, int m, const std::vector<Scalar>& values) const {
    State s;
    for (UnknownId id : slot(i, j, m)) s.add(info_[id].mono, values.at(id));
    return s;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Info> info_;
  std::vector<std::vector<std::vector<std::vector<UnknownId>>>> slots_;
};

namespace detail {

struct DefKey {
  GeneratorId g;
  int m;
  PbwMonomial v;
  bool operator==(const DefKey& o) const { return g == o.g && m == o.m && v == o.v; }
};
struct DefKeyHash {
  std::size_t operator()(const DefKey& k) const {
    return k.v.hash() * 131 + (static_cast<std::size_t>(k.g) << 24) + static_cast<std::size_t>(k.m + (1 << 20));
  }
};

}  // namespace detail

template <class C>
class DefEngine {
 public:
  using CState = StateVector<C>;

  /// `entry(i, j, m)` gives M_m(a^i, a^j) for i <= j and 0 <= m <= top.
  DefEngine(ModeEngine& modes, const std::function<CState(GeneratorId, GeneratorId, int)>& entry,
            EngineLimits limits = {})
      : modes_(modes), spec_(modes.spec()), budget_(limits) {
    const std::size_t r = spec_.size();
    sing_.assign(r, std::vector<std::vector<CState>>(r));
    for (GeneratorId i = 0; i < r; ++i)
      for (GeneratorId j = 0; j < r; ++j) sing_[i][j].resize(static_cast<std::size_t>(spec_.top(i, j) + 1));
    for (GeneratorId i = 0; i < r; ++i)
      for (GeneratorId j = i; j < r; ++j)
        for (int m = 0; m <= spec_.top(i, j); ++m) sing_[i][j][static_cast<std::size_t>(m)] = entry(i, j, m);
    // opposite order: M_m(j,i) = sum_a (-1)^{m+a+1} D^a/a! M_{m+a}(i,j)
    for (GeneratorId i = 0; i < r; ++i)
      for (GeneratorId j = i + 1; j < r; ++j)
        for (int m = 0; m <= spec_.top(i, j); ++m) {
          CState acc;
          for (int a = 0; m + a <= spec_.top(i, j); ++a) {
            const CState& s = sing_[i][j][static_cast<std::size_t>(m + a)];
            if (s.is_zero()) continue;
            acc.add(modes_.divided_translate(s, a), Scalar(sign_power(m + a + 1)));
          }
          sing_[j][i][static_cast<std::size_t>(m)] = std::move(acc);
        }
  }

  ModeEngine& modes() { return modes_; }
  const AlgebraSpec& spec() const { return spec_; }

  using Correction = std::function<CState(GeneratorId, int, const PbwMonomial&)>;

  /// Added to (a^i)^def_{-1} v whenever a^i does not follow the front factor
  /// of v and v is not a generator; lower modes on such v then follow from
  /// [D, (a^i)^def_m] = -m (a^i)^def_{m-1}.  Must be set before the first
  /// evaluation.
  void set_correction(Correction c) { creation_ = std::move(c); }

  /// (a^i)^def_m a^j for m >= 0.
  const CState& singular(GeneratorId i, int m, GeneratorId j) const {
    static const CState zero;
    if (m < 0 || m > spec_.top(i, j)) return zero;
    return sing_[i][j][static_cast<std::size_t>(m)];
  }

  /// (a^i)^def_{-n} a^j for n >= 1 from the singular data:
  ///   i <= j: 1/2 sum_a D^{n+a}/(n+a)! (-1)^a binom(n+a-1, a) M_a(i,j)
  ///   i >  j: 1/2 sum_a D^{n+a}/(n+a)! (-1)^{a+1} M_a(j,i)
  CState regular(GeneratorId i, int n, GeneratorId j) {
    CState out;
    const bool ordered = i <= j;
    const GeneratorId lo = ordered ? i : j, hi = ordered ? j : i;
    for (int a = 0; a <= spec_.top(lo, hi); ++a) {
      const CState& s = singular(lo, a, hi);
      if (s.is_zero()) continue;
      Rational coef = ordered ? Rational(sign_power(a)) * gen_binomial(n + a - 1, a) : Rational(sign_power(a + 1));
      out.add(modes_.divided_translate(s, n + a), Scalar(coef / 2));
    }
    return out;
  }

  /// (a^i)^def_m on a canonical monomial.
  const CState& def(GeneratorId i, int m, const PbwMonomial& v) {
    static const CState zero;
    if (v.is_vacuum() || spec_.weight(i) - m - 1 + v.weight() < 0) return zero;
    if (m >= 0 && v.is_generator()) return singular(i, m, v.front().gen);
    detail::DefKey key{i, m, v};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    detail::Budget::Scope scope(budget_);
    CState result;
    if (m >= 0)
      result = def_nonnegative(i, m, v);
    else if (i > v.front().gen)
      result = def_by_skew(i, m, v);
    else if (!creation_ || v.is_generator())
      result = def_negative(i, m, v);
    else if (m == -1)
      result = def_negative(i, m, v) + creation_(i, m, v);
    else
      result = def_by_translation(i, m, v);
    return memo_.emplace(std::move(key), std::move(result)).first->second;
  }

  CState def(GeneratorId i, int m, const State& v) {
    CState out;
    for (const auto& [mono, c] : v) out.add(def(i, m, mono), c);
    return out;
  }

  /// u^def_n v for monomials u, v:
  /// (g_{-p}u')^def_n v = sum_i binom(p+i-1,i) [ g^def_{-p-i}(u'_{n+i} v) + g_{-p-i}(u'^def_{n+i} v)
  ///     - (-1)^p (u'^def_{n-p-i}(g_i v) + u'_{n-p-i}(g^def_i v)) ] - (g^def_{-p} u')_n v
  const CState& composite(const PbwMonomial& u, int n, const PbwMonomial& v) {
    static const CState zero;
    if (u.is_vacuum() || u.weight() - n - 1 + v.weight() < 0) return zero;
    if (u.is_generator()) return def(u.front().gen, n, v);
    detail::PairKey key{u, n, v};
    if (auto it = comp_memo_.find(key); it != comp_memo_.end()) return it->second;
    detail::Budget::Scope scope(budget_);
    const Factor g = u.front();
    const PbwMonomial rest = u.tail();
    const int p = g.depth;
    const int imax1 = rest.weight() + v.weight() - n - 1;
    const int imax2 = spec_.weight(g.gen) + v.weight() - 1;
    const Scalar sgn(sign_power(p));
    CState result;
    for (int i = 0; i <= std::max(imax1, imax2); ++i) {
      const Scalar c(gen_binomial(p + i - 1, i));
      if (i <= imax1) {
        State a = modes_.state_mode(rest, n + i, v);
        if (!a.is_zero()) result.add(def(g.gen, -p - i, a), c);
        CState b = composite(rest, n + i, v);
        if (!b.is_zero()) result.add(modes_.apply_gen_mode(g.gen, -p - i, b), c);
      }
      if (i <= imax2) {
        State x = modes_.gen_mode(g.gen, i, v);
        if (!x.is_zero()) result.add(composite(rest, n - p - i, x), -(c * sgn));
        CState y = def(g.gen, i, v);
        if (!y.is_zero()) result.add(modes_.apply_state_mode(rest, n - p - i, y), -(c * sgn));
      }
    }
    CState head = def(g.gen, -p, rest);
    result.add(modes_.apply_state_mode(head, n, v), Scalar(-1));
    return comp_memo_.emplace(std::move(key), std::move(result)).first->second;
  }

  CState composite(const State& u, int n, const PbwMonomial& v) {
    CState out;
    for (const auto& [m, c] : u) out.add(composite(m, n, v), c);
    return out;
  }
  CState composite(const PbwMonomial& u, int n, const State& v) {
    CState out;
    for (const auto& [m, c] : v) out.add(composite(u, n, m), c);
    return out;
  }
  CState composite(const State& u, int n, const State& v) {
    CState out;
    for (const auto& [m, c] : u) out.add(composite(m, n, v), c);
    return out;
  }

 private:
  // sum_a binom(m,a) [ ((a^i)^def_a a^j)_{m-k-a} w + (a^i_a a^j)^def_{m-k-a} w ]
  CState insertion(GeneratorId i, int m, GeneratorId j, int k, const PbwMonomial& w) {
    CState x;
    for (int a = 0; a <= spec_.top(i, j); ++a) {
      Rational b = gen_binomial(m, a);
      if (b == 0) continue;
      const CState& s = singular(i, a, j);
      if (!s.is_zero()) x.add(modes_.apply_state_mode(s, m - k - a, w), Scalar(b));
      const State& e = modes_.entry(i, j, a);
      if (!e.is_zero()) x.add(composite(e, m - k - a, w), Scalar(b));
    }
    return x;
  }

  // m < 0, a^i not after any factor of v: one half of the sum over
  // positions of the symmetrized insertion, prefix modes reapplied to
  // restore canonical order.
  CState def_negative(GeneratorId i, int m, const PbwMonomial& v) {
    CState out;
    const auto& fs = v.factors();
    for (std::size_t k = 0; k < fs.size(); ++k) {
      CState x = insertion(i, m, fs[k].gen, fs[k].depth, v.tail(k + 1));
      for (std::size_t t = k; t-- > 0;) {
        if (x.is_zero()) break;
        x = modes_.apply_gen_mode(fs[t].gen, -fs[t].depth, x);
      }
      out += x;
    }
    out *= Scalar(make_rational(1, 2));
    return out;
  }

  // m < 0 with a^i after the front factor of v: the symmetric insertion
  // formula is not an identity there, so go through skew symmetry,
  //   (a^i)^def_m v = sum_k (-1)^{m+k+1} D^k/k! v^def_{m+k} a^i.
  // The composite mode only acts with generators of v, all before a^i.
  CState def_by_skew(GeneratorId i, int m, const PbwMonomial& v) {
    CState out;
    const PbwMonomial ai = spec_.generator_monomial(i);
    const int kmax = v.weight() + spec_.weight(i) - 1 - m;
    for (int k = 0; k <= kmax; ++k) {
      CState c = composite(v, m + k, ai);
      if (!c.is_zero()) out.add(modes_.divided_translate(c, k), Scalar(sign_power(m + k + 1)));
    }
    return out;
  }

  // (a^i)^def_m v = (D (a^i)^def_{m+1} v - (a^i)^def_{m+1} D v) / -(m+1)
  CState def_by_translation(GeneratorId i, int m, const PbwMonomial& v) {
    CState out = modes_.translate(def(i, m + 1, v));
    out -= def(i, m + 1, modes_.translate(v));
    out *= Scalar(make_rational(-1, m + 1));
    return out;
  }

  // m >= 0, v = a^j_{-n} rest:
  //   a^j_{-n} (a^i)^def_m rest + (a^j)^def_{-n} a^i_m rest - a^i_m (a^j)^def_{-n} rest + insertion
  CState def_nonnegative(GeneratorId i, int m, const PbwMonomial& v) {
    const Factor h = v.front();
    const PbwMonomial rest = v.tail();
    CState out = modes_.apply_gen_mode(h.gen, -h.depth, def(i, m, rest));
    State moved = modes_.gen_mode(i, m, rest);
    if (!moved.is_zero()) out += def(h.gen, -h.depth, moved);
    CState inner = def(h.gen, -h.depth, rest);
    if (!inner.is_zero()) out -= modes_.apply_gen_mode(i, m, inner);
    out += insertion(i, m, h.gen, h.depth, rest);
    return out;
  }

  ModeEngine& modes_;
  const AlgebraSpec& spec_;
  detail::Budget budget_;
  Correction creation_;
  std::vector<std::vector<std::vector<CState>>> sing_;
  std::unordered_map<detail::DefKey, CState, detail::DefKeyHash> memo_;
  std::unordered_map<detail::PairKey, CState, detail::PairKeyHash> comp_memo_;
};

inline DefEngine<LinearForm> symbolic_def_engine(ModeEngine& modes, const DeformationUnknowns& unk,
                                                 EngineLimits limits = {}) {
  return DefEngine<LinearForm>(
      modes, [&unk](GeneratorId i, GeneratorId j, int m) { return unk.symbolic_entry(i, j, m); }, limits);
}

inline DefEngine<Scalar> resolved_def_engine(ModeEngine& modes, const DeformationUnknowns& unk,
                                             const std::vector<Scalar>& values, EngineLimits limits = {}) {
  return DefEngine<Scalar>(
      modes, [&unk, &values](GeneratorId i, GeneratorId j, int m) { return unk.resolved_entry(i, j, m, values); },
      limits);
}

}  // namespace vadef
