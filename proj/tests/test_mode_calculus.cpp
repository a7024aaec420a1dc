#include <gtest/gtest.h>

#include <map>

#include "vadef/library.hpp"
#include "vadef/mode_calculus.hpp"
#include "vadef/text.hpp"

using namespace vadef;

namespace {

Scalar c() { return Scalar::parameter("c"); }

// Virasoro states as sorted lists of L-mode indices (L_{-a1}...L_{-ap}|0>,
// a1 >= ... >= ap >= 2), evaluated with [L_m,L_n] = (m-n)L_{m+n} + c/12(m^3-m)delta.
using VirWord = std::vector<int>;
using VirState = std::map<VirWord, Scalar>;

VirState vir_apply(int n, const VirWord& w, const Scalar& cc) {
  VirState out;
  if (w.empty()) {
    if (n <= -2) out[{-n}] = Scalar(1);
    return out;
  }
  if (n <= -2 && -n >= w.front()) {
    VirWord x = w;
    x.insert(x.begin(), -n);
    out[x] = Scalar(1);
    return out;
  }
  const int a = w.front();
  VirWord rest(w.begin() + 1, w.end());
  auto add = [&](const VirState& s, const Scalar& k) {
    for (const auto& [x, v] : s) {
      out[x] += v * k;
      if (out[x].is_zero()) out.erase(x);
    }
  };
  for (const auto& [x, v] : vir_apply(n, rest, cc)) add(vir_apply(-a, x, cc), v);
  add(vir_apply(n - a, rest, cc), Scalar(n + a));
  if (n == a) {
    VirState r;
    r[rest] = Scalar(1);
    add(r, cc * Scalar(make_rational(static_cast<long>(n) * n * n - n, 12)));
  }
  return out;
}

State vir_to_state(const VirState& s, const AlgebraSpec& spec) {
  State out;
  for (const auto& [w, v] : s) {
    std::vector<Factor> fs;
    for (int a : w) fs.push_back(spec.factor(0, a - 1));
    out.add(PbwMonomial::from_canonical(fs), v);
  }
  return out;
}

VirWord vir_word(const PbwMonomial& m) {
  VirWord w;
  for (const auto& f : m.factors()) w.push_back(f.depth + 1);
  return w;
}

// Heisenberg: creation operators commute, a^i_n (n > 0) acts as l*n*d/da^i_{-n}.
State heis_apply(const AlgebraSpec& spec, const Scalar& l, GeneratorId g, int n, const PbwMonomial& m) {
  State out;
  auto fs = m.factors();
  if (n < 0) {
    fs.push_back(spec.factor(g, -n));
    std::sort(fs.begin(), fs.end());
    out.add(PbwMonomial::from_canonical(fs), Scalar(1));
    return out;
  }
  if (n == 0) return out;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    if (fs[k].gen != g || fs[k].depth != n) continue;
    auto rest = fs;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    out.add(PbwMonomial::from_canonical(rest), l * Scalar(n));
  }
  return out;
}

int filtration(const AlgebraSpec& spec, const PbwMonomial& m) {
  int f = 0;
  for (const auto& x : m.factors()) f += spec.weight(x.gen);
  return f;
}

}  // namespace

TEST(ModeCalculus, VirasoroExamples) {
  AlgebraSpec v = virasoro(c());
  ModeEngine e(v);
  EXPECT_EQ(e.gen_mode(0, 1, parse_monomial("w(-1)|0>", v)), parse_state("2*w(-1)|0>", v));
  EXPECT_EQ(e.gen_mode(0, -1, parse_monomial("w(-2)|0>", v)), parse_state("w(-2)w(-1)|0> + w(-4)|0>", v));
  EXPECT_EQ(e.gen_mode(0, 3, parse_monomial("w(-1)|0>", v)), parse_state("(1/2*c)*|0>", v));
}

TEST(ModeCalculus, HeisenbergExamples) {
  Scalar l = Scalar::parameter("l");
  AlgebraSpec h = heisenberg(2, l);
  ModeEngine e(h);
  EXPECT_TRUE(e.gen_mode(0, 1, parse_monomial("e2(-1)|0>", h)).is_zero());
  EXPECT_EQ(e.state_mode(parse_monomial("e1(-1)e2(-1)|0>", h), 1, parse_monomial("e1(-1)|0>", h)),
            parse_state("l*e2(-1)|0>", h));
}

TEST(ModeCalculus, VacuumActsAsIdentity) {
  AlgebraSpec v = virasoro(c());
  ModeEngine e(v);
  for (int w = 0; w <= 6; ++w)
    for (const auto& m : enumerate_basis(v.weights(), w)) {
      EXPECT_EQ(e.state_mode(PbwMonomial(), -1, m), State(m));
      EXPECT_TRUE(e.state_mode(PbwMonomial(), 0, m).is_zero());
      EXPECT_TRUE(e.state_mode(PbwMonomial(), -2, m).is_zero());
    }
}

TEST(ModeCalculus, NegativeOutputWeightVanishes) {
  AlgebraSpec v = virasoro(c());
  ModeEngine e(v);
  auto u = parse_monomial("w(-2)w(-1)|0>", v);
  auto x = parse_monomial("w(-1)|0>", v);
  EXPECT_TRUE(e.state_mode(u, 7, x).is_zero());
  EXPECT_FALSE(e.state_mode(u, 6, x).is_zero() && e.state_mode(u, 5, x).is_zero() && e.state_mode(u, 4, x).is_zero());
}

TEST(ModeCalculus, VirasoroAgreesWithBracketOracle) {
  for (const Scalar& cc : {c(), Scalar(make_rational(1, 2))}) {
    AlgebraSpec v = virasoro(cc);
    ModeEngine e(v);
    for (int w = 0; w <= 6; ++w)
      for (const auto& m : enumerate_basis(v.weights(), w))
        for (int n = -4; n <= w + 2; ++n) {
          State expect = vir_to_state(vir_apply(n - 1, vir_word(m), cc), v);
          EXPECT_EQ(e.gen_mode(0, n, m), expect) << render_monomial(m, v.names()) << " n=" << n;
        }
  }
}

TEST(ModeCalculus, HeisenbergAgreesWithBracketOracle) {
  Scalar l = Scalar::parameter("l");
  AlgebraSpec h = heisenberg(3, l);
  ModeEngine e(h);
  for (int w = 0; w <= 6; ++w)
    for (const auto& m : enumerate_basis(h.weights(), w))
      for (GeneratorId g = 0; g < 3; ++g)
        for (int n = -4; n <= w + 1; ++n)
          EXPECT_EQ(e.gen_mode(g, n, m), heis_apply(h, l, g, n, m)) << render_monomial(m, h.names()) << " n=" << n;
}

TEST(ModeCalculus, GradingAndFiltration) {
  for (const AlgebraSpec& spec : {virasoro(c()), heisenberg(3, Scalar(1)), w3(c()), affine(LieData::sl2(), Scalar(1))}) {
    ModeEngine e(spec);
    for (int w = 0; w <= 5; ++w)
      for (const auto& m : enumerate_basis(spec.weights(), w))
        for (GeneratorId g = 0; g < spec.size(); ++g)
          for (int n = -2; n <= spec.weight(g) + w; ++n) {
            const State& r = e.gen_mode(g, n, m);
            if (r.is_zero()) continue;
            EXPECT_EQ(r.homogeneous_weight(), spec.weight(g) - n - 1 + w);
            if (n >= 0)
              for (const auto& [x, k] : r) EXPECT_LE(filtration(spec, x), filtration(spec, m) + spec.weight(g) - 1);
          }
  }
}

TEST(ModeCalculus, StateModeMatchesNormalOrderedProduct) {
  // (a_{-1}b)_n = sum_{i>=0} a_{-1-i} b_{n+i} + b_{n-1-i} a_i for generators a, b.
  AlgebraSpec spec = affine(LieData::sl2(), Scalar::parameter("l"));
  ModeEngine e(spec);
  for (GeneratorId a = 0; a < 3; ++a)
    for (GeneratorId b = 0; b < 3; ++b) {
      State ab = e.gen_mode(a, -1, spec.generator_monomial(b));
      for (int w = 0; w <= 3; ++w)
        for (const auto& v : enumerate_basis(spec.weights(), w))
          for (int n = -2; n <= w + 1; ++n) {
            State lhs = e.apply_state_mode(ab, n, v);
            State rhs;
            for (int i = 0; i <= w + 3; ++i) {
              rhs += e.apply_gen_mode(a, -1 - i, e.gen_mode(b, n + i, v));
              rhs += e.apply_gen_mode(b, n - 1 - i, e.gen_mode(a, i, v));
            }
            EXPECT_EQ(lhs, rhs);
          }
    }
}

TEST(ModeCalculus, ValidateBuiltins) {
  EXPECT_TRUE(validate_algebra(virasoro(c()), 6).empty());
  EXPECT_TRUE(validate_algebra(heisenberg(3, Scalar::parameter("l")), 4).empty());
  EXPECT_TRUE(validate_algebra(affine(LieData::sl2(), Scalar::parameter("l")), 4).empty());
  EXPECT_TRUE(validate_algebra(w3(Scalar(2)), 6).empty());
  EXPECT_TRUE(validate_algebra(w3(Scalar(make_rational(-22, 5))), 6).empty());
}

TEST(ModeCalculus, ValidateW3SymbolicCap8) {
  auto report = validate_algebra(w3(c()), 8);
  for (const auto& v : report) ADD_FAILURE() << v.identity << ": " << v.witness;
}

TEST(ModeCalculus, MixedDegenerateW3TableIsInconsistent) {
  EXPECT_FALSE(validate_algebra(w3_mixed_degenerate(), 3).empty());
}

TEST(ModeCalculus, CorruptedTableIsReported) {
  AlgebraSpec v = virasoro(c());
  v.ope.set(0, 0, 1, State(v.generator_monomial(0), Scalar(3)));
  auto report = validate_algebra(v, 2);
  ASSERT_FALSE(report.empty());
  bool commutator = false;
  for (const auto& r : report) commutator |= r.identity == "commutator formula";
  EXPECT_TRUE(commutator);
}

TEST(ModeCalculus, ReductionBudgetIsEnforced) {
  AlgebraSpec s = w3(c());
  ModeEngine e(s, EngineLimits{20, 4000});
  EXPECT_THROW(e.gen_mode(1, 0, parse_monomial("w(-1)W(-2)W(-1)|0>", s)), RecursionBudgetExceeded);
  ModeEngine ok(s);
  EXPECT_NO_THROW(ok.gen_mode(1, 0, parse_monomial("w(-1)W(-2)W(-1)|0>", s)));
}

TEST(ModeCalculus, Deterministic) {
  AlgebraSpec s = w3(c());
  ModeEngine a(s), b(s);
  auto m = parse_monomial("w(-2)W(-1)|0>", s);
  for (int n = -2; n <= 5; ++n) EXPECT_EQ(a.gen_mode(1, n, m), b.gen_mode(1, n, m));
}
