#pragma once

// Checking a concrete first-order deformation against the axioms, and
// completing its negative modes on composite states.
//
// The symmetrized insertion rule for (a^i)^def_m v, m < 0, reproduces the
// regular parts on generators but is not D-compatible on longer targets as
// soon as the M entries are nonzero (Virasoro with M0 = 1, M1 = 2 already
// fails [D, w(-1)] on w(-1)w(-1)|0>).  Those modes are gauge data: any
// choice compatible with the axioms gives the same class.  extend_deformation
// makes a correction to each (a^i)^def_{-1} v an unknown, takes the lower
// modes from the D-derivative property, and solves the identities up to a
// weight cap; a solution exists iff the singular data extend that far.

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "cocycle.hpp"
#include "deformation.hpp"
#include "linalg.hpp"
#include "mode_calculus.hpp"
#include "text.hpp"

namespace vadef {

using CorrectionKey = std::tuple<GeneratorId, int, PbwMonomial>;
using CorrectionTable = std::map<CorrectionKey, State>;

namespace detail {

inline std::string mode_label(const std::string& a, int m, const std::string& b) {
  return a + "(" + std::to_string(m) + ")" + b;
}

/// Every identity checked for a deformation: vacuum, D-derivative, skew
/// symmetry on generator pairs (singular and regular modes) and the
/// commutator formula for u a generator, v a basis state of weight <= cap
/// and w a generator.  `report(identity, where, residual)` sees each
/// residual; `where` is only built on demand.
template <class C, class Report>
void walk_identities(DefEngine<C>& def, int cap, Report&& report) {
  ModeEngine& modes = def.modes();
  const AlgebraSpec& spec = def.spec();
  const auto names = spec.names();
  const auto weights = spec.weights();
  const int reg = spec.max_pair_weight();
  using CState = StateVector<C>;

  std::vector<PbwMonomial> states;
  for (int w = 1; w <= cap; ++w)
    for (auto& m : enumerate_basis(weights, w)) states.push_back(m);

  for (const auto& u : states)
    for (int n = -2; n < u.weight(); ++n)
      report("vacuum", [&] { return "(" + render_monomial(u, names) + ")(" + std::to_string(n) + ")|0>"; },
             def.composite(u, n, PbwMonomial()));

  for (GeneratorId i = 0; i < spec.size(); ++i)
    for (const auto& x : states) {
      if (x.weight() >= cap) continue;
      for (int m = -2; m <= spec.weight(i) + x.weight(); ++m) {
        CState r = modes.translate(def.def(i, m, x));
        r -= def.def(i, m, modes.translate(x));
        r.add(def.def(i, m - 1, x), Scalar(m));
        report("D-derivative",
               [&] { return mode_label("[D, " + names[i], m, "]") + " on " + render_monomial(x, names); }, r);
      }
    }

  for (GeneratorId i = 0; i < spec.size(); ++i)
    for (GeneratorId j = 0; j < spec.size(); ++j)
      for (int m = -reg; m <= spec.top(i, j); ++m) {
        CState r = def.def(i, m, spec.generator_monomial(j));
        for (int k = 0; m + k <= spec.top(i, j); ++k) {
          const CState& s = def.def(j, m + k, spec.generator_monomial(i));
          if (!s.is_zero()) r.add(modes.divided_translate(s, k), Scalar(sign_power(m + k)));
        }
        report("skew symmetry", [&] { return mode_label(names[i], m, names[j]); }, r);
      }

  for (GeneratorId i = 0; i < spec.size(); ++i)
    for (const auto& v : states)
      for (GeneratorId k = 0; k < spec.size(); ++k) {
        const PbwMonomial w = spec.generator_monomial(k);
        const int bound = spec.weight(i) + v.weight() + spec.weight(k) - 2;
        for (int m = 0; m <= bound; ++m)
          for (int n = 0; m + n <= bound; ++n)
            report("commutator formula",
                   [&] {
                     return "[" + names[i] + "(" + std::to_string(m) + "), (" + render_monomial(v, names) + ")(" +
                            std::to_string(n) + ")] on " + names[k];
                   },
                   commutator_residual(def, i, m, v, n, w));
      }
}

/// Indices of rows independent at a sample value of the parameter, or
/// nothing when every coefficient is rational.
template <class Forms>
std::optional<std::vector<std::size_t>> independent_at_sample(const Forms& forms) {
  bool parametric = false;
  for (const auto& f : forms)
    for (const auto& [id, c] : f.first.terms())
      if (!c.is_constant()) parametric = true;
  if (!parametric) return std::nullopt;
  for (const Rational& x : {make_rational(7919, 13), make_rational(-104729, 31), make_rational(1299709, 7)}) {
    try {
      Echelon e(0);
      std::vector<std::size_t> out;
      for (std::size_t k = 0; k < forms.size(); ++k) {
        LinearForm g;
        for (const auto& [id, c] : forms[k].first.terms()) {
          Rational v = c.specialize(x);
          if (v != 0) g += LinearForm::unknown(id, Scalar(v));
        }
        if (e.insert(g)) out.push_back(k);
      }
      return out;
    } catch (const PoleAtValue&) {
    }
  }
  return std::nullopt;
}

/// True when the particular solution read off `rows` (free unknowns zero,
/// constant column `one`) satisfies every form.
template <class Forms>
bool solves_all(const Echelon& rows, const Forms& forms, UnknownId one) {
  std::unordered_map<UnknownId, Scalar> x;
  for (const auto& row : rows.reduced_rows()) x[row.terms().front().first] = -row.coeff(one);
  for (const auto& f : forms) {
    Scalar acc;
    for (const auto& [id, c] : f.first.terms()) {
      if (id == one) {
        acc += c;
      } else if (auto it = x.find(id); it != x.end()) {
        acc += c * it->second;
      }
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

}  // namespace detail

/// Residuals of every checked identity for a concrete assignment of the
/// singular data.  With a correction table (even an empty one) the modes
/// below -1 on composite targets come from the D-derivative property
/// instead of the insertion formula, and the table adds to the -1 modes.
inline std::vector<Violation> verify_deformation(const AlgebraSpec& spec, const std::vector<Scalar>& values, int cap,
                                                 EngineLimits limits = {},
                                                 const CorrectionTable* corrections = nullptr) {
  std::vector<Violation> out;
  ModeEngine modes(spec, limits);
  DeformationUnknowns unk(spec);
  auto def = resolved_def_engine(modes, unk, values, limits);
  if (corrections)
    def.set_correction([corrections](GeneratorId i, int m, const PbwMonomial& v) {
      auto it = corrections->find({i, m, v});
      return it == corrections->end() ? State() : it->second;
    });
  const auto names = spec.names();
  detail::walk_identities(def, cap, [&](const char* identity, auto&& where, const State& r) {
    if (!r.is_zero()) out.push_back({identity, where() + " leaves " + render_state(r, names)});
  });
  return out;
}

struct Extension {
  bool consistent = false;
  CorrectionTable corrections;  // only nonzero entries
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  std::string obstruction;  // first identity with no solution
};

/// Solves for corrections to the negative modes on composite targets so
/// that every identity of verify_deformation holds up to `cap`.  Free
/// coordinates are set to zero.
inline Extension extend_deformation(const AlgebraSpec& spec, const std::vector<Scalar>& values, int cap,
                                    EngineLimits limits = {}, const std::set<CorrectionKey>* allowed = nullptr) {
  // the constant column sits last, so it is never a pivot of a solvable row
  constexpr UnknownId kOne = std::numeric_limits<UnknownId>::max();
  const LinearForm one = LinearForm::unknown(kOne);
  ModeEngine modes(spec, limits);
  DeformationUnknowns unk(spec);
  DefEngine<LinearForm> def(
      modes, [&](GeneratorId i, GeneratorId j, int m) { return scale_state(unk.resolved_entry(i, j, m, values), one); },
      limits);

  std::map<CorrectionKey, std::vector<std::pair<PbwMonomial, UnknownId>>> slots;
  UnknownId next = 0;
  const auto weights = spec.weights();
  def.set_correction([&](GeneratorId i, int m, const PbwMonomial& v) {
    FormState out;
    if (allowed && !allowed->contains({i, m, v})) return out;
    auto& slot = slots[{i, m, v}];
    if (slot.empty())
      for (auto& b : enumerate_basis(weights, spec.weight(i) - m - 1 + v.weight())) slot.emplace_back(b, next++);
    for (const auto& [b, id] : slot) out.add(b, LinearForm::unknown(id));
    return out;
  });

  // short rows first keeps fill-in low, which matters over Q(c)
  std::vector<std::pair<LinearForm, std::size_t>> forms;
  std::vector<std::string> origins;
  detail::walk_identities(def, cap, [&](const char* identity, auto&& where, const FormState& r) {
    if (r.is_zero()) return;
    origins.push_back(std::string(identity) + ": " + where());
    for (const auto& [mono, form] : r) {
      (void)mono;
      if (!form.is_zero()) forms.emplace_back(form, origins.size() - 1);
    }
  });
  std::stable_sort(forms.begin(), forms.end(),
                   [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });

  Extension ext;
  ext.unknowns = next;
  auto eliminate = [&](const std::vector<std::size_t>& use, Echelon& rows) {
    ext.obstruction.clear();
    for (std::size_t k : use)
      if (rows.insert(forms[k].first) && ext.obstruction.empty() && rows.contains(one))
        ext.obstruction = origins[forms[k].second];
  };
  std::vector<std::size_t> all(forms.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;

  Echelon rows(0);
  auto sample = detail::independent_at_sample(forms);
  if (!sample) {
    eliminate(all, rows);
  } else {
    // rows independent at a sample value are independent over Q(p); the
    // solution is checked against every row before it is trusted
    eliminate(*sample, rows);
    if (ext.obstruction.empty() && !detail::solves_all(rows, forms, kOne)) {
      rows = Echelon(0);
      eliminate(all, rows);
    }
  }
  ext.rank = rows.rank();
  ext.consistent = ext.obstruction.empty();
  if (!ext.consistent) return ext;

  std::vector<Scalar> x(next);
  for (const auto& row : rows.reduced_rows()) x.at(row.terms().front().first) = -row.coeff(kOne);
  for (const auto& [key, slot] : slots) {
    State s;
    for (const auto& [b, id] : slot) s.add(b, x[id]);
    if (!s.is_zero()) ext.corrections.emplace(key, std::move(s));
  }
  return ext;
}

}  // namespace vadef
