#pragma once

// Coboundaries Y_phi(a,x)b = Y(phi a,x)b - phi(Y(a,x)b) + Y(a,x)phi(b) of
// weight-preserving maps phi that commute with D and kill the vacuum.
//
// Cocycles are recorded by their singular parts, with regular parts on
// generator pairs fixed by the symmetric formula of DefEngine::regular.  A
// coboundary only lies in that slice when its own regular parts obey the same
// formula, so phi is also constrained on the modes a_{-n} b, n = 1..depth.
// Without this W3 produces coboundaries outside the cocycle space (phi on
// w(-1)w(-1)|0> feeds into the singular parts of W(m)W).

#include <map>
#include <string>
#include <vector>

#include "cocycle.hpp"
#include "deformation.hpp"
#include "linalg.hpp"

namespace vadef {

/// phi on V_1 .. V_W as one matrix per weight: unknown phi[w](s -> t) for
/// basis monomials s, t of weight w.  W = max pair weight + gauge depth.
class PhiParametrization {
 public:
  explicit PhiParametrization(const AlgebraSpec& spec, int gauge_depth = 1)
      : gauge_depth_(gauge_depth), max_weight_(spec.max_pair_weight() + gauge_depth) {
    const auto weights = spec.weights();
    for (int w = 1; w <= max_weight_; ++w) {
      auto basis = enumerate_basis(weights, w);
      for (const auto& s : basis) {
        std::vector<std::pair<PbwMonomial, UnknownId>> row;
        for (const auto& t : basis) {
          row.emplace_back(t, static_cast<UnknownId>(size_));
          ++size_;
        }
        image_.emplace(s, std::move(row));
      }
    }
  }

  int max_weight() const { return max_weight_; }
  int gauge_depth() const { return gauge_depth_; }
  std::size_t size() const { return size_; }

  /// phi(s) as a state with LinearForm coefficients; s of weight 1..Wmax.
  FormState apply(const PbwMonomial& s) const {
    FormState out;
    auto it = image_.find(s);
    if (it == image_.end()) return out;
    for (const auto& [t, id] : it->second) out.add(t, LinearForm::unknown(id));
    return out;
  }
  FormState apply(const State& s) const {
    FormState out;
    for (const auto& [m, c] : s) out.add(apply(m), c);
    return out;
  }

 private:
  int gauge_depth_;
  int max_weight_;
  std::size_t size_ = 0;
  std::map<PbwMonomial, std::vector<std::pair<PbwMonomial, UnknownId>>> image_;
};

/// Rows of phi(D v) - D phi(v) = 0 for basis v of weight 1 .. Wmax - 1.
inline LinearSystem phi_constraints(ModeEngine& modes, const PhiParametrization& phi) {
  LinearSystem sys;
  sys.columns = phi.size();
  const auto weights = modes.spec().weights();
  for (int w = 1; w < phi.max_weight(); ++w)
    for (const auto& v : enumerate_basis(weights, w)) {
      FormState r = phi.apply(modes.translate(v));
      r -= modes.translate(phi.apply(v));
      sys.add_residual(r, "phi commutes with D on " + render_monomial(v, modes.spec().names()));
    }
  return sys;
}

/// (a^i)^phi_m a^j = (phi a^i)_m a^j - phi(a^i_m a^j) + a^i_m phi(a^j), any m.
inline FormState coboundary_mode(ModeEngine& modes, const PhiParametrization& phi, GeneratorId i, int m,
                                 GeneratorId j) {
  const AlgebraSpec& spec = modes.spec();
  const PbwMonomial ai = spec.generator_monomial(i), aj = spec.generator_monomial(j);
  FormState y = modes.apply_state_mode(phi.apply(ai), m, aj);
  y -= phi.apply(modes.gen_mode(i, m, aj));
  y += modes.apply_gen_mode(i, m, phi.apply(aj));
  return y;
}

/// Rows forcing the regular parts of Y_phi on generator pairs to follow the
/// symmetric formula for its own singular parts, for n = 1..depth.
inline LinearSystem gauge_constraints(ModeEngine& modes, const PhiParametrization& phi) {
  LinearSystem sys;
  sys.columns = phi.size();
  const AlgebraSpec& spec = modes.spec();
  DefEngine<LinearForm> sing(modes, [&](GeneratorId i, GeneratorId j, int m) {
    return coboundary_mode(modes, phi, i, m, j);
  });
  const auto names = spec.names();
  for (GeneratorId i = 0; i < spec.size(); ++i)
    for (GeneratorId j = 0; j < spec.size(); ++j)
      for (int n = 1; n <= phi.gauge_depth(); ++n) {
        FormState r = coboundary_mode(modes, phi, i, -n, j);
        r -= sing.regular(i, n, j);
        sys.add_residual(r, "regular part of " + names[i] + "(" + std::to_string(-n) + ")" + names[j]);
      }
  return sys;
}

/// Singular coordinates of Y_phi as linear forms in the phi unknowns,
/// indexed by deformation unknown.
inline std::vector<LinearForm> coboundary_data(ModeEngine& modes, const DeformationUnknowns& unk,
                                               const PhiParametrization& phi) {
  const AlgebraSpec& spec = modes.spec();
  std::vector<LinearForm> out(unk.size());
  for (GeneratorId i = 0; i < spec.size(); ++i)
    for (GeneratorId j = i; j < spec.size(); ++j)
      for (int m = 0; m <= spec.top(i, j); ++m) {
        FormState y = coboundary_mode(modes, phi, i, m, j);
        for (UnknownId id : unk.slot(i, j, m)) out[id] = y.coeff(unk.info(id).mono);
      }
  return out;
}

/// Evaluate coboundary data at one phi assignment.
inline SparseVector coboundary_vector(const std::vector<LinearForm>& data, const SparseVector& phi_values) {
  SparseVector v;
  for (std::size_t id = 0; id < data.size(); ++id) {
    Scalar x;
    for (const auto& [p, c] : data[id].terms()) {
      Scalar y = phi_values.coeff(p);
      if (!y.is_zero()) x += c * y;
    }
    if (!x.is_zero()) v += LinearForm::unknown(static_cast<UnknownId>(id), x);
  }
  return v;
}

struct CoboundarySpace {
  std::vector<SparseVector> phi_basis;  // admissible phi, one per free column
  std::vector<SparseVector> image;      // reduced echelon, deformation coordinates
};

/// Rank check that D maps V_w injectively into V_{w+1} for w = 1 .. Wmax.
/// Returns the first failing weight or 0.
inline int d_injectivity_failure(ModeEngine& modes, int max_weight) {
  const auto weights = modes.spec().weights();
  for (int w = 1; w <= max_weight; ++w) {
    auto basis = enumerate_basis(weights, w);
    auto target = enumerate_basis(weights, w + 1);
    std::map<PbwMonomial, UnknownId> col;
    for (const auto& t : target) col.emplace(t, static_cast<UnknownId>(col.size()));
    Echelon e(target.size());
    for (const auto& b : basis) {
      SparseVector row;
      for (const auto& [m, c] : modes.translate(b)) row += LinearForm::unknown(col.at(m), c);
      e.insert(row);
    }
    if (e.rank() != basis.size()) return w;
  }
  return 0;
}

inline CoboundarySpace coboundary_image(ModeEngine& modes, const DeformationUnknowns& unk, int gauge_depth = 1) {
  const AlgebraSpec& spec = modes.spec();
  PhiParametrization phi(spec, gauge_depth);
  if (int w = d_injectivity_failure(modes, phi.max_weight()))
    throw DInjectivityFailure("D is not injective on weight " + std::to_string(w) + " of " + spec.name);
  CoboundarySpace out;
  ExactMatrix rows = phi_constraints(modes, phi).matrix();
  for (auto& r : gauge_constraints(modes, phi).rows) rows.rows.push_back(std::move(r.row));
  out.phi_basis = nullspace(rows);
  const auto data = coboundary_data(modes, unk, phi);
  std::vector<SparseVector> images;
  for (const auto& p : out.phi_basis) images.push_back(coboundary_vector(data, p));
  out.image = row_space_basis(images, unk.size());
  return out;
}

}  // namespace vadef
