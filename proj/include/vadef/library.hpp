#pragma once

// Built-in algebras: Virasoro, Heisenberg, affine, W3.

#include <array>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "scalar.hpp"

namespace vadef {

namespace detail {

inline void set_parameter(AlgebraSpec& spec, const std::string& label, const Scalar& value) {
  if (!value.is_constant()) {
    if (!spec.parameter.empty() && spec.parameter != value.parameter_name())
      throw ParameterMismatch(spec.parameter, value.parameter_name());
    spec.parameter = value.parameter_name();
    spec.parameter_values.push_back({label, value.parameter_name()});
  } else {
    spec.parameter_values.push_back({label, value.constant_value().get_str()});
  }
}

inline long binomial_long(long n, long k) {
  if (k < 0 || k > n) return 0;
  return gen_binomial(n, k).get_num().get_si();
}

}  // namespace detail

/// Vir: w(3)w = c/2|0>, w(1)w = 2w, w(0)w = Dw.
inline AlgebraSpec virasoro(const Scalar& c) {
  AlgebraSpec s;
  s.name = "virasoro";
  detail::set_parameter(s, "c", c);
  s.generators = {{"w", 2}};
  s.ope.set(0, 0, 3, State(PbwMonomial(), c / Scalar(2)));
  s.ope.set(0, 0, 1, State(s.generator_monomial(0), Scalar(2)));
  s.ope.set(0, 0, 0, State(s.generator_monomial(0, 2)));
  return s;
}

/// Rank-r Heisenberg algebra at level l: e_i(1)e_j = l delta_ij |0>.
inline AlgebraSpec heisenberg(int rank, const Scalar& level) {
  if (rank < 1) throw InvalidRank("Heisenberg rank must be at least 1, got " + std::to_string(rank));
  AlgebraSpec s;
  s.name = "heisenberg";
  detail::set_parameter(s, "l", level);
  s.parameter_values.insert(s.parameter_values.begin(), {"rank", std::to_string(rank)});
  for (int i = 1; i <= rank; ++i) s.generators.push_back({"e" + std::to_string(i), 1});
  for (GeneratorId i = 0; i < static_cast<GeneratorId>(rank); ++i) s.ope.set(i, i, 1, State(PbwMonomial(), level));
  // Cocycles are symmetric B plus totally antisymmetric M; coboundaries fill B
  // when l != 0.  The closed form below counts l = 0 separately.
  if (level.is_constant() && level.constant_value() == 0) {
    s.reference_dim_h2 = 3 * detail::binomial_long(rank + 1, 3);
    s.reference_note = "closed form 3*binom(r+1,3) for level 0";
  } else {
    s.reference_dim_h2 = detail::binomial_long(rank, 3);
    s.reference_note = "closed form binom(r,3) for nonzero level";
  }
  return s;
}

/// Finite-dimensional Lie algebra with structure constants and an invariant
/// symmetric bilinear form, in a fixed basis.
struct LieData {
  std::vector<std::string> basis;
  /// bracket[a][b][k]: coefficient of basis k in [a,b]
  std::vector<std::vector<std::vector<Rational>>> bracket;
  std::vector<std::vector<Rational>> form;

  std::size_t dim() const { return basis.size(); }

  /// sl2 in the basis (e, h, f) with <e,f> = 1, <h,h> = 2.
  static LieData sl2() {
    LieData d;
    d.basis = {"e", "h", "f"};
    d.bracket.assign(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, Rational(0))));
    d.form.assign(3, std::vector<Rational>(3, Rational(0)));
    const int e = 0, h = 1, f = 2;
    d.bracket[h][e][e] = 2;
    d.bracket[e][h][e] = -2;
    d.bracket[h][f][f] = -2;
    d.bracket[f][h][f] = 2;
    d.bracket[e][f][h] = 1;
    d.bracket[f][e][h] = -1;
    d.form[e][f] = d.form[f][e] = 1;
    d.form[h][h] = 2;
    return d;
  }

  /// Antisymmetry, Jacobi identity, symmetry and invariance of the form.
  void validate() const {
    const std::size_t n = dim();
    auto br = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
      std::vector<Rational> z(n, Rational(0));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (x[a] != 0 && y[b] != 0)
            for (std::size_t k = 0; k < n; ++k) z[k] += x[a] * y[b] * bracket[a][b][k];
      return z;
    };
    auto unit = [&](std::size_t a) {
      std::vector<Rational> v(n, Rational(0));
      v[a] = 1;
      return v;
    };
    auto pair = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
      Rational s = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) s += x[a] * y[b] * form[a][b];
      return s;
    };
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (form[a][b] != form[b][a]) throw ValidationFailure("Lie data: form is not symmetric");
        for (std::size_t k = 0; k < n; ++k)
          if (bracket[a][b][k] != -bracket[b][a][k]) throw ValidationFailure("Lie data: bracket is not antisymmetric");
        for (std::size_t c = 0; c < n; ++c) {
          auto x = br(unit(a), br(unit(b), unit(c)));
          auto y = br(unit(b), br(unit(c), unit(a)));
          auto z = br(unit(c), br(unit(a), unit(b)));
          for (std::size_t k = 0; k < n; ++k)
            if (x[k] + y[k] + z[k] != 0) throw ValidationFailure("Lie data: Jacobi identity fails");
          if (pair(br(unit(a), unit(b)), unit(c)) != pair(unit(a), br(unit(b), unit(c))))
            throw ValidationFailure("Lie data: form is not invariant");
        }
      }
  }
};

/// Universal affine vertex algebra: a(0)b = [a,b], a(1)b = l<a,b>|0>.
inline AlgebraSpec affine(const LieData& lie, const Scalar& level, const std::string& lie_name = "sl2") {
  lie.validate();
  AlgebraSpec s;
  s.name = "affine";
  s.parameter_values.push_back({"lie", lie_name});
  detail::set_parameter(s, "l", level);
  for (const auto& b : lie.basis) s.generators.push_back({b, 1});
  const auto n = static_cast<GeneratorId>(lie.dim());
  for (GeneratorId a = 0; a < n; ++a)
    for (GeneratorId b = a; b < n; ++b) {
      State br;
      for (GeneratorId k = 0; k < n; ++k)
        if (lie.bracket[a][b][k] != 0) br.add(s.generator_monomial(k), Scalar(lie.bracket[a][b][k]));
      s.ope.set(a, b, 0, br);
      if (lie.form[a][b] != 0) s.ope.set(a, b, 1, State(PbwMonomial(), level * Scalar(lie.form[a][b])));
    }
  if (lie_name == "sl2") {
    s.reference_dim_h2 = 1;
    s.reference_note = "one-parameter family given by the level";
  }
  return s;
}

/// W3 with generators w (weight 2) and W (weight 3).  At 22 + 5c = 0 the
/// usual normalization breaks down; there W is rescaled by sqrt(22+5c), which
/// kills W(5)W, W(3)W and W(2)W and keeps finite W(1)W and W(0)W.
inline AlgebraSpec w3(const Scalar& c) {
  AlgebraSpec s;
  s.name = "w3";
  detail::set_parameter(s, "c", c);
  s.generators = {{"w", 2}, {"W", 3}};
  const GeneratorId L = 0, W = 1;
  auto mono = [&](std::vector<std::pair<GeneratorId, int>> fs) {
    std::vector<Factor> out;
    for (auto [g, d] : fs) out.push_back(s.factor(g, d));
    return PbwMonomial::from_canonical(out);
  };
  s.ope.set(L, L, 3, State(PbwMonomial(), c / Scalar(2)));
  s.ope.set(L, L, 1, State(mono({{L, 1}}), Scalar(2)));
  s.ope.set(L, L, 0, State(mono({{L, 2}})));
  s.ope.set(L, W, 1, State(mono({{W, 1}}), Scalar(3)));
  s.ope.set(L, W, 0, State(mono({{W, 2}})));

  const Scalar k = Scalar(22) + Scalar(5) * c;
  const bool degenerate = k.is_zero();
  // W(1)W = a*w(-1)w(-1)|0> + b*w(-3)|0>, W(0)W = a*w(-2)w(-1)|0> + d*w(-4)|0>
  // where D^2 w = 2 w(-3)|0> and D^3 w = 6 w(-4)|0>.
  Scalar a, b, d;
  if (!degenerate) {
    a = Scalar(32) / k;
    b = Scalar(3) * (c - Scalar(2)) / (Scalar(2) * k) * Scalar(2);
    d = (c - Scalar(2)) / (Scalar(3) * k) * Scalar(6);
    s.ope.set(W, W, 5, State(PbwMonomial(), c / Scalar(3)));
    s.ope.set(W, W, 3, State(mono({{L, 1}}), Scalar(2)));
    s.ope.set(W, W, 2, State(mono({{L, 2}})));
  } else {
    a = Scalar(32);
    b = Scalar(make_rational(-48, 5)) * Scalar(2);
    d = Scalar(make_rational(-32, 15)) * Scalar(6);
  }
  State w1, w0;
  w1.add(mono({{L, 1}, {L, 1}}), a);
  w1.add(mono({{L, 3}}), b);
  w0.add(mono({{L, 2}, {L, 1}}), a);
  w0.add(mono({{L, 4}}), d);
  s.ope.set(W, W, 1, w1);
  s.ope.set(W, W, 0, w0);
  s.reference_dim_h2 = 1;
  s.reference_note = "one-parameter family given by the central charge";
  return s;
}

/// Same as w3 at c = -22/5 but keeping W(5)W = c/3, W(3)W = 2w, W(2)W = Dw
/// next to the finite W(1)W and W(0)W.  Kept for comparison: this mixed table
/// fails the commutator formula.
inline AlgebraSpec w3_mixed_degenerate() {
  AlgebraSpec s = w3(Scalar(make_rational(-22, 5)));
  const Scalar c(make_rational(-22, 5));
  s.name = "w3-mixed";
  s.ope.set(1, 1, 5, State(PbwMonomial(), c / Scalar(3)));
  s.ope.set(1, 1, 3, State(s.generator_monomial(0), Scalar(2)));
  s.ope.set(1, 1, 2, State(s.generator_monomial(0, 2)));
  return s;
}

}  // namespace vadef
