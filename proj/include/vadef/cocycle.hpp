#pragma once

// Linear constraints on the singular data of a first-order deformation:
// skew symmetry of the diagonal entries and the commutator formula on every
// triple of generators.  All rows are coordinates of residual states whose
// coefficients are LinearForms in the deformation unknowns.

#include <string>
#include <unordered_set>
#include <vector>

#include "deformation.hpp"
#include "linalg.hpp"

namespace vadef {

struct ConstraintRow {
  SparseVector row;  // leading coefficient normalized to 1
  std::string origin;
};

struct LinearSystem {
  std::size_t columns = 0;
  std::vector<ConstraintRow> rows;

  ExactMatrix matrix() const {
    ExactMatrix m{columns, {}};
    for (const auto& r : rows) m.rows.push_back(r.row);
    return m;
  }

  /// Adds one row per nonzero coordinate of `residual`; duplicates dropped.
  void add_residual(const FormState& residual, const std::string& origin) {
    for (const auto& [mono, form] : residual) {
      if (form.is_zero()) continue;
      SparseVector r = form;
      r *= Scalar(1) / r.terms().front().second;
      std::string key = r.to_string([](UnknownId id) { return "x" + std::to_string(id); });
      if (!seen_.insert(key).second) continue;
      (void)mono;
      rows.push_back({std::move(r), origin});
    }
  }

 private:
  std::unordered_set<std::string> seen_;
};

/// M_m(i,i) + sum_a (-1)^{m+a} D^a/a! M_{m+a}(i,i) for 0 <= m <= 2 wt_i - 1.
inline FormState self_skew_residual(DefEngine<LinearForm>& def, GeneratorId i, int m) {
  ModeEngine& modes = def.modes();
  const int top = def.spec().top(i, i);
  FormState r = def.singular(i, m, i);
  for (int a = 0; m + a <= top; ++a) {
    const FormState& s = def.singular(i, m + a, i);
    if (!s.is_zero()) r.add(modes.divided_translate(s, a), Scalar(sign_power(m + a)));
  }
  return r;
}

/// [u^def_m, v_n] w + [u_m, v^def_n] w - sum_a binom(m,a) [ (u^def_a v)_{m+n-a} w + (u_a v)^def_{m+n-a} w ]
/// for u = a^i and arbitrary monomials v, w.
template <class C>
StateVector<C> commutator_residual(DefEngine<C>& def, GeneratorId i, int m, const PbwMonomial& v, int n,
                                   const PbwMonomial& w) {
  ModeEngine& modes = def.modes();
  StateVector<C> r;
  State vw = modes.state_mode(v, n, w);
  if (!vw.is_zero()) r += def.def(i, m, vw);
  const StateVector<C>& iw = def.def(i, m, w);
  if (!iw.is_zero()) r -= modes.apply_state_mode(v, n, iw);
  StateVector<C> dvw = def.composite(v, n, w);
  if (!dvw.is_zero()) r += modes.apply_gen_mode(i, m, dvw);
  const State& uw = modes.gen_mode(i, m, w);
  if (!uw.is_zero()) r -= def.composite(v, n, uw);
  const int amax = def.spec().weight(i) + v.weight() - 1;
  for (int a = 0; a <= amax; ++a) {
    Rational b = gen_binomial(m, a);
    if (b == 0) continue;
    const StateVector<C>& dv = def.def(i, a, v);
    if (!dv.is_zero()) r.add(modes.apply_state_mode(dv, m + n - a, w), Scalar(-b));
    const State& uv = modes.gen_mode(i, a, v);
    if (!uv.is_zero()) r.add(def.composite(uv, m + n - a, w), Scalar(-b));
  }
  return r;
}

inline void add_self_skew_constraints(LinearSystem& sys, DefEngine<LinearForm>& def, GeneratorId i) {
  const auto& names = def.spec().names();
  for (int m = 0; m <= def.spec().top(i, i); ++m)
    sys.add_residual(self_skew_residual(def, i, m), "skew (" + names[i] + "," + names[i] + ") m=" + std::to_string(m));
}

/// Commutator rows on (a^i, a^j, a^k) for m, n >= 0 and
/// m + n <= wt_i + wt_j + wt_k - 2 + extra.
inline void add_commutator_constraints(LinearSystem& sys, DefEngine<LinearForm>& def, GeneratorId i, GeneratorId j,
                                       GeneratorId k, int extra = 0) {
  const AlgebraSpec& spec = def.spec();
  const auto& names = spec.names();
  const int bound = spec.weight(i) + spec.weight(j) + spec.weight(k) - 2 + extra;
  const PbwMonomial v = spec.generator_monomial(j);
  const PbwMonomial w = spec.generator_monomial(k);
  for (int m = 0; m <= bound; ++m)
    for (int n = 0; m + n <= bound; ++n)
      sys.add_residual(commutator_residual(def, i, m, v, n, w), "commutator (" + names[i] + "," + names[j] + "," +
                                                                   names[k] + ") m=" + std::to_string(m) +
                                                                   " n=" + std::to_string(n));
}

/// The full cocycle system: self skew for every generator, commutator
/// rows for every ordered triple.
inline LinearSystem assemble_system(DefEngine<LinearForm>& def, std::size_t columns, int extra = 0) {
  LinearSystem sys;
  sys.columns = columns;
  const std::size_t r = def.spec().size();
  for (GeneratorId i = 0; i < r; ++i) add_self_skew_constraints(sys, def, i);
  for (GeneratorId i = 0; i < r; ++i)
    for (GeneratorId j = 0; j < r; ++j)
      for (GeneratorId k = 0; k < r; ++k) add_commutator_constraints(sys, def, i, j, k, extra);
  return sys;
}

}  // namespace vadef
