// vadef: classify first-order deformations of freely generated vertex
// algebras, evaluate modes, and check tables.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include "vadef/cohomology.hpp"
#include "vadef/library.hpp"
#include "vadef/text.hpp"

using namespace vadef;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kViolations = 1, kUserError = 2, kInternal = 3 };

constexpr const char* kFreeWarning =
    "note: the method assumes the algebra is freely generated by its generators; "
    "with relations among PBW monomials the result is not meaningful";

struct Source {
  std::string algebra;
  std::string file;
  std::string param;
  std::string c;
  std::string level;
  int rank = 3;
};

void add_source(CLI::App* cmd, Source& src) {
  auto* a = cmd->add_option("--algebra", src.algebra, "built-in algebra: virasoro, heisenberg, sl2, w3")
                ->check(CLI::IsMember({"virasoro", "heisenberg", "sl2", "affine", "w3"}));
  auto* f = cmd->add_option("--file", src.file, "algebra file")->check(CLI::ExistingFile);
  a->excludes(f);
  cmd->add_option("--param", src.param, "keep the parameter symbolic under this name");
  cmd->add_option("--c", src.c, "central charge (virasoro, w3)");
  cmd->add_option("--level", src.level, "level (heisenberg, sl2)");
  cmd->add_option("--rank", src.rank, "Heisenberg rank")->check(CLI::PositiveNumber);
}

Scalar parameter_value(const Source& src, const std::string& given, const std::string& fallback_name) {
  if (!given.empty() && !src.param.empty()) throw CLI::ValidationError("give either --param or a numeric value");
  if (!given.empty()) {
    Scalar v = parse_scalar(given, "");
    if (!v.is_constant()) throw CLI::ValidationError("numeric value expected, got " + given);
    return v;
  }
  return Scalar::parameter(src.param.empty() ? fallback_name : src.param);
}

AlgebraSpec load(const Source& src) {
  if (src.algebra.empty() == src.file.empty()) throw CLI::ValidationError("give exactly one of --algebra, --file");
  if (!src.file.empty()) {
    std::ifstream in(src.file);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_algebra(buf.str());
  }
  if (src.algebra == "virasoro") return virasoro(parameter_value(src, src.c, "c"));
  if (src.algebra == "w3") return w3(parameter_value(src, src.c, "c"));
  if (src.algebra == "heisenberg") return heisenberg(src.rank, parameter_value(src, src.level, "l"));
  return affine(LieData::sl2(), parameter_value(src, src.level, "l"));
}

std::string describe(const AlgebraSpec& spec) {
  std::string out = spec.name;
  for (std::size_t k = 0; k < spec.parameter_values.size(); ++k)
    out += (k ? ", " : " (") + spec.parameter_values[k].first + " = " + spec.parameter_values[k].second;
  return spec.parameter_values.empty() ? out : out + ")";
}

struct Entry {
  GeneratorId i, j;
  int m;
  State value;
};

// singular entries from the top mode down, then regular modes -1 .. -regular
std::vector<Entry> representative_entries(const AlgebraSpec& spec, const std::vector<Scalar>& values, int regular) {
  ModeEngine modes(spec);
  DeformationUnknowns unk(spec);
  auto def = resolved_def_engine(modes, unk, values);
  std::vector<Entry> out;
  for (GeneratorId i = 0; i < spec.size(); ++i)
    for (GeneratorId j = i; j < spec.size(); ++j) {
      for (int m = spec.top(i, j); m >= 0; --m) {
        State s = unk.resolved_entry(i, j, m, values);
        if (!s.is_zero()) out.push_back({i, j, m, std::move(s)});
      }
      for (int n = 1; n <= regular; ++n) {
        State s = def.regular(i, n, j);
        if (!s.is_zero()) out.push_back({i, j, -n, std::move(s)});
      }
    }
  return out;
}

struct ClassifyArgs {
  bool json = false;
  bool no_verify = false;
  int weight_cap = -1;
  unsigned jobs = 1;
  int regular = 1;
};

int cmd_classify(const AlgebraSpec& spec, const ClassifyArgs& args) {
  ClassifyOptions opt;
  opt.verify = !args.no_verify;
  opt.verify_cap = args.weight_cap;
  opt.jobs = args.jobs;
  CohomologyResult res = classify(spec, opt);
  const auto names = spec.names();
  std::vector<std::string> diagnostics = res.diagnostics;
  for (const auto& v : res.verification) diagnostics.push_back(v.identity + ": " + v.witness);

  if (args.json) {
    ordered_json j;
    j["algebra"] = spec.name;
    j["parameters"] = ordered_json::object();
    for (const auto& [k, v] : spec.parameter_values) j["parameters"][k] = v;
    j["dim_h2"] = res.dim_h2;
    j["cocycle_dim"] = res.cocycle_dim;
    j["coboundary_dim"] = res.coboundary_dim;
    j["representatives"] = ordered_json::array();
    for (std::size_t r = 0; r < res.representatives.size(); ++r)
      for (const auto& e : representative_entries(spec, res.representatives[r], args.regular))
        j["representatives"].push_back({{"representative", r},
                                        {"pair", {names[e.i], names[e.j]}},
                                        {"m", e.m},
                                        {"value", render_state(e.value, names)}});
    j["diagnostics"] = diagnostics;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "algebra: " << describe(spec) << "\n";
    std::cout << "cocycles: " << res.cocycle_dim << "\n";
    std::cout << "coboundaries: " << res.coboundary_dim << "\n";
    std::cout << "dim H2 = " << res.dim_h2 << "\n";
    for (std::size_t r = 0; r < res.representatives.size(); ++r) {
      std::cout << "representative " << r << ":\n";
      for (const auto& e : representative_entries(spec, res.representatives[r], args.regular))
        std::cout << "  " << names[e.i] << "(" << e.m << ")" << names[e.j] << " = " << render_state(e.value, names)
                  << "\n";
    }
    for (const auto& d : diagnostics) std::cout << "diagnostic: " << d << "\n";
  }
  return res.verification.empty() ? kOk : kInternal;
}

struct ModeArgs {
  std::string expr;
  int rep = -1;
  int weight_cap = -1;
};

int cmd_mode(const AlgebraSpec& spec, const ModeArgs& args) {
  static const std::regex shape(R"(^\s*(def\s+)?([A-Za-z_][A-Za-z0-9_]*)\(\s*(-?[0-9]+)\s*\)\s*(.+)$)");
  std::smatch m;
  if (!std::regex_match(args.expr, m, shape)) throw ParseError("expected '<gen>(<n>) <state>' or 'def <gen>(<n>) <state>'", 1, 1);
  const bool deformed = m[1].matched;
  const std::string gen = m[2];
  auto g = spec.find(gen);
  if (!g) throw ParseError("unknown generator '" + gen + "'", 1, static_cast<int>(m.position(2)) + 1);
  const int n = std::stoi(m[3]);
  const State v = parse_state(m[4], spec);
  const auto names = spec.names();
  ModeEngine modes(spec);
  if (!deformed) {
    std::cout << render_state(modes.apply_gen_mode(*g, n, v), names) << "\n";
    return kOk;
  }
  if (args.rep < 0) throw CLI::ValidationError("def needs --rep <index>");
  ClassifyOptions opt;
  opt.verify = false;
  CohomologyResult res = classify(spec, opt);
  if (static_cast<std::size_t>(args.rep) >= res.representatives.size())
    throw CLI::ValidationError("representative index out of range, dim H2 = " + std::to_string(res.dim_h2));
  const auto& values = res.representatives[static_cast<std::size_t>(args.rep)];
  const int cap = args.weight_cap >= 0 ? args.weight_cap : spec.max_pair_weight() + 2;
  Certification cert = certify(spec, values, cap);
  DeformationUnknowns unk(spec);
  auto def = resolved_def_engine(modes, unk, values);
  if (!cert.insertion_only)
    def.set_correction([&cert](GeneratorId i, int k, const PbwMonomial& u) {
      auto it = cert.corrections.find({i, k, u});
      return it == cert.corrections.end() ? State() : it->second;
    });
  std::cout << render_state(def.def(*g, n, v), names) << "\n";
  return kOk;
}

struct CheckArgs {
  int weight_cap = -1;
  bool representatives = false;
};

int cmd_check(const AlgebraSpec& spec, const CheckArgs& args) {
  const int cap = args.weight_cap >= 0 ? args.weight_cap : 2 * spec.max_weight() + 2;
  auto problems = validate_algebra(spec, cap);
  std::cout << "algebra: " << describe(spec) << "\n";
  std::cout << "table up to weight " << cap << ": " << (problems.empty() ? "ok" : std::to_string(problems.size()) + " violations")
            << "\n";
  for (const auto& p : problems) std::cout << "  " << p.identity << ": " << p.witness << "\n";
  if (!problems.empty() || !args.representatives) return problems.empty() ? kOk : kViolations;

  ClassifyOptions opt;
  opt.verify = false;
  CohomologyResult res = classify(spec, opt);
  const int vcap = spec.max_pair_weight() + 2;
  bool clean = true;
  for (std::size_t r = 0; r < res.representatives.size(); ++r) {
    auto report = certify_deformation(spec, res.representatives[r], vcap);
    std::cout << "representative " << r << " up to weight " << vcap << ": "
              << (report.empty() ? "ok" : std::to_string(report.size()) + " violations") << "\n";
    for (const auto& p : report) std::cout << "  " << p.identity << ": " << p.witness << "\n";
    clean = clean && report.empty();
  }
  return clean ? kOk : kViolations;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-order deformations of freely generated vertex algebras"};
  app.require_subcommand(1);

  Source src;
  ClassifyArgs cargs;
  auto* classify_cmd = app.add_subcommand("classify", "compute dim H2 with representatives");
  add_source(classify_cmd, src);
  classify_cmd->add_flag("--json", cargs.json, "machine-readable output");
  classify_cmd->add_flag("--no-verify", cargs.no_verify, "skip checking the representatives");
  classify_cmd->add_option("--weight-cap", cargs.weight_cap, "verification cap (default: max pair weight + 2)");
  classify_cmd->add_option("--jobs", cargs.jobs, "representatives checked in parallel")->check(CLI::PositiveNumber);
  classify_cmd->add_option("--regular", cargs.regular, "regular modes -1 .. -N shown per pair")
      ->check(CLI::NonNegativeNumber);

  ModeArgs margs;
  auto* mode_cmd = app.add_subcommand("mode", "evaluate u_n v or u^def_n v");
  add_source(mode_cmd, src);
  mode_cmd->add_option("expr", margs.expr, "'<gen>(<n>) <state>' or 'def <gen>(<n>) <state>'")->required();
  mode_cmd->add_option("--rep", margs.rep, "representative index for def");
  mode_cmd->add_option("--weight-cap", margs.weight_cap, "cap used to fix the def modes on composite states");

  CheckArgs kargs;
  auto* check_cmd = app.add_subcommand("check", "validate the table and optionally the representatives");
  add_source(check_cmd, src);
  check_cmd->add_option("--weight-cap", kargs.weight_cap, "validation cap (default: 2 max weight + 2)");
  check_cmd->add_flag("--representatives", kargs.representatives, "also verify every representative");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUserError;
  }

  try {
    AlgebraSpec spec = load(src);
    if (!*mode_cmd) std::cerr << kFreeWarning << "\n";
    if (*classify_cmd) return cmd_classify(spec, cargs);
    if (*mode_cmd) return cmd_mode(spec, margs);
    return cmd_check(spec, kargs);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUserError;
  } catch (const ValidationFailure& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return kUserError;
  } catch (const DInjectivityFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const InvalidRank& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const PoleAtValue& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const DivisionByZero& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
