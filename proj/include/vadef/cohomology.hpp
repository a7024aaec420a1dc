#pragma once

// Classification of first-order deformations: cocycles modulo coboundaries,
// with representatives checked against the deformed vertex algebra axioms.

#include <algorithm>
#include <future>
#include <string>
#include <vector>

#include "coboundary.hpp"
#include "cocycle.hpp"
#include "deformation.hpp"
#include "extension.hpp"
#include "linalg.hpp"
#include "mode_calculus.hpp"

namespace vadef {

struct ClassifyOptions {
  int validation_cap = -1;  // default: max pair weight + 1
  bool verify = true;
  int verify_cap = -1;  // default: max pair weight + 2
  int gauge_depth = 1;  // regular modes a_{-1}b .. a_{-depth}b constrained on coboundaries
  unsigned jobs = 1;
  EngineLimits limits{};
};

struct CohomologyResult {
  std::size_t dim_h2 = 0;
  std::size_t cocycle_dim = 0;
  std::size_t coboundary_dim = 0;
  std::size_t unknowns = 0;
  std::size_t constraint_rows = 0;
  std::vector<std::string> unknown_names;
  std::vector<SparseVector> cocycle_basis;
  std::vector<SparseVector> coboundary_basis;
  std::vector<std::vector<Scalar>> representatives;  // one value per unknown
  std::vector<Violation> verification;
  std::vector<std::string> diagnostics;
};

inline std::vector<Scalar> dense_values(const SparseVector& v, std::size_t n) {
  std::vector<Scalar> out(n);
  for (const auto& [id, c] : v.terms()) out.at(id) = c;
  return out;
}

struct Certification {
  std::vector<Violation> violations;
  bool insertion_only = true;  // otherwise modes below -1 on composites come from D
  CorrectionTable corrections;
};

/// verify_deformation with the insertion formula throughout, then with the
/// modes below -1 on composite states taken from the D-derivative, then with
/// solved corrections to the -1 modes.  The first scheme that passes wins.
inline Certification certify(const AlgebraSpec& spec, const std::vector<Scalar>& values, int cap,
                             EngineLimits limits = {}) {
  Certification out;
  out.violations = verify_deformation(spec, values, cap, limits);
  if (out.violations.empty()) return out;
  out.insertion_only = false;
  out.violations = verify_deformation(spec, values, cap, limits, &out.corrections);
  if (out.violations.empty()) return out;
  Extension ext = extend_deformation(spec, values, cap, limits);
  if (!ext.consistent) {
    out.violations = {{"extension", "no consistent negative modes up to weight " + std::to_string(cap) +
                                        ", first failing " + ext.obstruction}};
    return out;
  }
  out.corrections = std::move(ext.corrections);
  out.violations = verify_deformation(spec, values, cap, limits, &out.corrections);
  return out;
}

inline std::vector<Violation> certify_deformation(const AlgebraSpec& spec, const std::vector<Scalar>& values, int cap,
                                                  EngineLimits limits = {}) {
  return certify(spec, values, cap, limits).violations;
}

/// v times the parameter denominators of its coordinates.
inline SparseVector clear_denominators(SparseVector v) {
  for (bool again = true; again;) {
    again = false;
    for (const auto& [id, c] : v.terms())
      if (!c.denominator().is_constant()) {
        v *= Scalar::fraction(c.denominator(), Polynomial(Rational(1)), c.parameter_name());
        again = true;
        break;
      }
  }
  return v;
}

inline CohomologyResult classify(const AlgebraSpec& spec, const ClassifyOptions& opt = {}) {
  CohomologyResult res;
  const int pair_weight = spec.max_pair_weight();
  const int vcap = opt.validation_cap >= 0 ? opt.validation_cap : pair_weight + 1;
  auto problems = validate_algebra(spec, vcap, opt.limits);
  if (!problems.empty())
    throw ValidationFailure(spec.name + ": " + problems.front().identity + ": " + problems.front().witness);

  ModeEngine modes(spec, opt.limits);
  DeformationUnknowns unk(spec);
  auto def = symbolic_def_engine(modes, unk, opt.limits);
  LinearSystem sys = assemble_system(def, unk.size());
  res.unknowns = unk.size();
  res.constraint_rows = sys.rows.size();
  for (UnknownId id = 0; id < unk.size(); ++id) res.unknown_names.push_back(unk.name(id));

  res.cocycle_basis = nullspace(sys.matrix());
  CoboundarySpace cob = coboundary_image(modes, unk, opt.gauge_depth);
  res.coboundary_basis = cob.image;
  res.cocycle_dim = res.cocycle_basis.size();
  res.coboundary_dim = cob.image.size();
  res.dim_h2 = quotient_dim(res.cocycle_basis, cob.image, unk.size());

  // complement of the coboundaries inside the cocycles, preferring the
  // basis vectors of the latest free columns (vacuum coefficients first).
  // Each one is reduced modulo the coboundaries, which clears the pivot
  // columns of the image (typically the M entries of the lowest pairs), and
  // cleared of parameter denominators.
  Echelon boundaries(unk.size());
  for (const auto& b : cob.image) boundaries.insert(b);
  Echelon span = boundaries;
  for (auto it = res.cocycle_basis.rbegin(); it != res.cocycle_basis.rend(); ++it)
    if (span.insert(*it)) res.representatives.push_back(dense_values(clear_denominators(boundaries.reduce(*it)), unk.size()));
  if (res.representatives.size() != res.dim_h2)
    throw Error("representative count " + std::to_string(res.representatives.size()) + " differs from dim H2 " +
                std::to_string(res.dim_h2));

  if (opt.verify) {
    const int cap = opt.verify_cap >= 0 ? opt.verify_cap : pair_weight + 2;
    std::vector<std::future<std::vector<Violation>>> tasks;
    const unsigned jobs = std::max(1u, opt.jobs);
    std::vector<std::vector<Violation>> reports(res.representatives.size());
    for (std::size_t start = 0; start < res.representatives.size(); start += jobs) {
      tasks.clear();
      for (std::size_t r = start; r < std::min(res.representatives.size(), start + jobs); ++r)
        tasks.push_back(std::async(std::launch::async, [&, r] {
          return certify_deformation(spec, res.representatives[r], cap, opt.limits);
        }));
      for (std::size_t t = 0; t < tasks.size(); ++t) reports[start + t] = tasks[t].get();
    }
    for (std::size_t r = 0; r < reports.size(); ++r)
      for (auto& v : reports[r]) {
        v.witness = "representative " + std::to_string(r) + ": " + v.witness;
        res.verification.push_back(std::move(v));
      }
    res.diagnostics.push_back("representatives verified up to weight " + std::to_string(cap) + ": " +
                              (res.verification.empty() ? "ok" : std::to_string(res.verification.size()) +
                                                                     " violations"));
  }

  if (spec.reference_dim_h2) {
    const long ref = *spec.reference_dim_h2;
    const long got = static_cast<long>(res.dim_h2);
    if (ref != got)
      res.diagnostics.push_back("reference value " + std::to_string(ref) + " (" + spec.reference_note +
                                ") differs from computed " + std::to_string(got) + " by " + std::to_string(got - ref));
    else
      res.diagnostics.push_back("matches reference value " + std::to_string(ref) + " (" + spec.reference_note + ")");
  }
  return res;
}

}  // namespace vadef
