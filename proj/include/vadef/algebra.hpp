#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "pbw.hpp"

namespace vadef {

struct GeneratorInfo {
  std::string name;
  int weight = 1;
};

/// Singular OPE data a^i_alpha a^j for i <= j.  Missing entries are zero.
class OpeTable {
 public:
  using Key = std::tuple<GeneratorId, GeneratorId, int>;

  void set(GeneratorId i, GeneratorId j, int alpha, State s) {
    if (i > j) throw ValidationFailure("OPE entries are stored only for ordered pairs i <= j");
    if (s.is_zero()) {
      entries_.erase(Key{i, j, alpha});
      return;
    }
    entries_[Key{i, j, alpha}] = std::move(s);
  }
  const State* find(GeneratorId i, GeneratorId j, int alpha) const {
    auto it = entries_.find(Key{i, j, alpha});
    return it == entries_.end() ? nullptr : &it->second;
  }
  const std::map<Key, State>& entries() const { return entries_; }
  bool operator==(const OpeTable& o) const { return entries_ == o.entries_; }

 private:
  std::map<Key, State> entries_;
};

/// A freely generated vertex algebra presented by generators, weights and
/// the singular part of the OPE between generators.
struct AlgebraSpec {
  std::string name;
  /// Empty for coefficients in Q, otherwise the name of the parameter of Q(p).
  std::string parameter;
  std::vector<GeneratorInfo> generators;
  OpeTable ope;
  /// Human-readable parameter values, e.g. {"c", "1/2"}.
  std::vector<std::pair<std::string, std::string>> parameter_values;
  /// Closed-form value from the literature, when one exists, and how it reads.
  std::optional<long> reference_dim_h2;
  std::string reference_note;

  std::size_t size() const { return generators.size(); }
  int weight(GeneratorId g) const { return generators.at(g).weight; }
  std::vector<int> weights() const {
    std::vector<int> w;
    for (const auto& g : generators) w.push_back(g.weight);
    return w;
  }
  std::vector<std::string> names() const {
    std::vector<std::string> n;
    for (const auto& g : generators) n.push_back(g.name);
    return n;
  }
  std::optional<GeneratorId> find(const std::string& n) const {
    for (GeneratorId g = 0; g < generators.size(); ++g)
      if (generators[g].name == n) return g;
    return std::nullopt;
  }
  int max_weight() const {
    int m = 0;
    for (const auto& g : generators) m = std::max(m, g.weight);
    return m;
  }
  /// Largest alpha with a^i_alpha a^j possibly nonzero.
  int top(GeneratorId i, GeneratorId j) const { return weight(i) + weight(j) - 1; }
  /// Largest weight of a singular entry, max over pairs of wt_i + wt_j - 1.
  int max_pair_weight() const { return 2 * max_weight() - 1; }
  PbwMonomial generator_monomial(GeneratorId g, int depth = 1) const {
    return PbwMonomial::generator(g, weight(g), depth);
  }
  State generator_state(GeneratorId g) const { return State(generator_monomial(g)); }
  Factor factor(GeneratorId g, int depth) const { return Factor{g, depth, weight(g) + depth - 1}; }
};

}  // namespace vadef
