#include <gtest/gtest.h>

#include "vadef/cocycle.hpp"
#include "vadef/library.hpp"
#include "vadef/linalg.hpp"
#include "test_support.hpp"

using namespace vadef;

namespace {

UnknownId id_of(const DeformationUnknowns& u, const std::string& name) {
  for (UnknownId id = 0; id < u.size(); ++id)
    if (u.name(id) == name) return id;
  ADD_FAILURE() << "no unknown " << name;
  return 0;
}

struct Bench {
  explicit Bench(AlgebraSpec s) : spec(std::move(s)), modes(spec), unk(spec), def(symbolic_def_engine(modes, unk)) {}
  AlgebraSpec spec;
  ModeEngine modes;
  DeformationUnknowns unk;
  DefEngine<LinearForm> def;
};

std::vector<AlgebraSpec> builtins() {
  return {virasoro(Scalar::parameter("c")), heisenberg(3, Scalar::parameter("l")),
          affine(LieData::sl2(), Scalar::parameter("l")), w3(Scalar(2))};
}

}  // namespace

TEST(Cocycle, VirasoroHasOneSkewRow) {
  Bench s(virasoro(Scalar::parameter("c")));
  LinearSystem sys = assemble_system(s.def, s.unk.size());
  ASSERT_EQ(sys.rows.size(), 1u);
  // M0 - M1/2, that is a(1) = 2 a(2) in the (B, M1, M0) = (a(0), a(1), a(2)) naming
  SparseVector expect = LinearForm::unknown(id_of(s.unk, "M0(w,w)[w(-2)|0>]"));
  expect += LinearForm::unknown(id_of(s.unk, "M1(w,w)[w(-1)|0>]"), Scalar(make_rational(-1, 2)));
  EXPECT_EQ(sys.rows[0].row, expect);
  EXPECT_EQ(sys.rows[0].origin, "skew (w,w) m=0");
  EXPECT_EQ(nullspace(sys.matrix()).size(), 2u);
}

TEST(Cocycle, HeisenbergLevelControlsTheRank) {
  Bench one(heisenberg(3, Scalar(1)));
  Bench zero(heisenberg(3, Scalar(0)));
  Bench sym(heisenberg(3, Scalar::parameter("l")));
  EXPECT_EQ(rank(assemble_system(one.def, one.unk.size()).matrix()), 17u);
  EXPECT_EQ(rank(assemble_system(sym.def, sym.unk.size()).matrix()), 17u);
  // at level zero only the skew rows survive
  LinearSystem z = assemble_system(zero.def, zero.unk.size());
  EXPECT_EQ(rank(z.matrix()), 9u);
  for (const auto& r : z.rows) EXPECT_EQ(r.origin.rfind("skew", 0), 0u) << r.origin;
}

TEST(Cocycle, HeisenbergMPartIsCyclic) {
  Bench s(heisenberg(3, Scalar::parameter("l")));
  LinearSystem sys = assemble_system(s.def, s.unk.size());
  const std::size_t n = s.unk.size();
  auto m = [&](const std::string& i, const std::string& j, const std::string& k) {
    return LinearForm::unknown(id_of(s.unk, "M0(" + i + "," + j + ")[" + k + "(-1)|0>]"));
  };
  std::vector<SparseVector> rows;
  for (const auto& r : sys.rows) rows.push_back(r.row);
  // l M_{12}^3 = l M_{23}^1 and its antisymmetric partner
  EXPECT_TRUE(in_span(rows, m("e1", "e2", "e3") - m("e2", "e3", "e1"), n));
  EXPECT_TRUE(in_span(rows, m("e1", "e2", "e3") + m("e1", "e3", "e2"), n));
  bool two_term = false;
  for (const auto& r : rows)
    if (r.size() == 2 && (r == m("e1", "e2", "e3") - m("e2", "e3", "e1") || r == m("e1", "e2", "e3") + m("e1", "e3", "e2")))
      two_term = true;
  EXPECT_TRUE(two_term);
  EXPECT_EQ(nullspace(sys.matrix()).size(), 7u);
}

TEST(Cocycle, RankOneHeisenbergCocyclesAreCentral) {
  Bench s(heisenberg(1, Scalar(1)));
  auto ns = nullspace(assemble_system(s.def, s.unk.size()).matrix());
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_EQ(ns[0], LinearForm::unknown(id_of(s.unk, "B(e1,e1)")));
}

TEST(Cocycle, DiagonalPairWithVanishingDataGivesZeroRow) {
  Bench s(virasoro(Scalar(1)));
  std::vector<Scalar> values(s.unk.size());
  auto def = resolved_def_engine(s.modes, s.unk, values);
  for (int m = 0; m <= 3; ++m) {
    State r = def.singular(0, m, 0);
    EXPECT_TRUE(r.is_zero());
  }
  EXPECT_TRUE(self_skew_residual(s.def, 0, 3).is_zero());
}

TEST(Cocycle, LargerCommutatorWindowAddsNoRank) {
  for (const AlgebraSpec& spec : builtins()) {
    Bench s(spec);
    const std::size_t base = rank(assemble_system(s.def, s.unk.size()).matrix());
    EXPECT_EQ(rank(assemble_system(s.def, s.unk.size(), 2).matrix()), base) << spec.name;
  }
}

TEST(Cocycle, VacuumCommutatorRowsVanish) {
  for (const AlgebraSpec& spec : builtins()) {
    Bench s(spec);
    for (GeneratorId i = 0; i < spec.size(); ++i)
      for (GeneratorId j = 0; j < spec.size(); ++j)
        for (int m = 0; m <= spec.top(i, j) + 1; ++m)
          for (int n = -3; n <= 3; ++n)
            EXPECT_TRUE(commutator_residual(s.def, i, m, spec.generator_monomial(j), n, PbwMonomial()).is_zero())
                << spec.name << " i=" << i << " j=" << j << " m=" << m << " n=" << n;
  }
}

// on cocycles:
// sum_a binom(m,a)[(u^def_a v)_{m+n-a} + (u_a v)^def_{m+n-a}] w
//   = -sum_a binom(n,a)[(v^def_a u)_{m+n-a} + (v_a u)^def_{m+n-a}] w
TEST(Cocycle, InsertionSumIsAntisymmetric) {
  for (const AlgebraSpec& spec : builtins()) {
    Bench s(spec);
    for (const auto& z : nullspace(assemble_system(s.def, s.unk.size()).matrix())) {
      std::vector<Scalar> values(s.unk.size());
      for (const auto& [id, c] : z.terms()) values[id] = c;
      auto def = resolved_def_engine(s.modes, s.unk, values);
      for (GeneratorId i = 0; i < spec.size(); ++i)
        for (GeneratorId j = 0; j < spec.size(); ++j)
          for (GeneratorId k = 0; k < spec.size(); ++k) {
            const PbwMonomial w = spec.generator_monomial(k);
            const int bound = spec.weight(i) + spec.weight(j) + spec.weight(k) - 2;
            auto side = [&](GeneratorId a, GeneratorId b, int m, int n) {
              State out;
              for (int al = 0; al <= spec.top(a, b); ++al) {
                Rational c = gen_binomial(m, al);
                if (c == 0) continue;
                const State& d = def.singular(a, al, b);
                if (!d.is_zero()) out.add(s.modes.apply_state_mode(d, m + n - al, w), Scalar(c));
                const State& e = s.modes.entry(a, b, al);
                if (!e.is_zero()) out.add(def.composite(e, m + n - al, w), Scalar(c));
              }
              return out;
            };
            for (int m = -bound; m <= bound; ++m)
              for (int n = -bound; n <= bound; ++n) {
                State r = side(i, j, m, n);
                r += side(j, i, n, m);
                EXPECT_TRUE(r.is_zero()) << spec.name << " (" << i << j << k << ") m=" << m << " n=" << n;
              }
          }
    }
  }
}

TEST(Cocycle, DerivativePropertyOnCocycles) {
  for (const AlgebraSpec& spec : builtins()) {
    Bench s(spec);
    for (const auto& z : nullspace(assemble_system(s.def, s.unk.size()).matrix())) {
      std::vector<Scalar> values(s.unk.size());
      for (const auto& [id, c] : z.terms()) values[id] = c;
      auto def = resolved_def_engine(s.modes, s.unk, values);
      for (GeneratorId i = 0; i < spec.size(); ++i)
        for (GeneratorId j = 0; j < spec.size(); ++j) {
          const PbwMonomial aj = spec.generator_monomial(j);
          for (int m = -3; m <= spec.top(i, j) + 1; ++m) {
            State r = s.modes.translate(def.def(i, m, aj));
            r -= def.def(i, m, s.modes.translate(aj));
            r.add(def.def(i, m - 1, aj), Scalar(m));
            EXPECT_TRUE(r.is_zero()) << spec.name << " i=" << i << " j=" << j << " m=" << m;
          }
        }
    }
  }
}
