#include "oprep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oprep/bases.hpp"
#include "oprep/criteria.hpp"
#include "oprep/errors.hpp"
#include "oprep/measures.hpp"
#include "oprep/rng.hpp"
#include "oprep/state_file.hpp"
#include "oprep/states.hpp"
#include "oprep/tolerances.hpp"

namespace oprep::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultProbeSeed = 0x5eed;

// Everything one invocation accumulates before rendering.
struct Context {
  std::vector<std::string> args;
  std::string format = "json";
  json results = json::array();
  json warnings = json::array();
  json seeds = json::array();
  std::optional<std::string> digest;
  std::string err;
  int exit_code = kOk;
  // Set when the command writes its own stdout payload instead of a report.
  std::optional<std::string> raw_out;

  void warn(const std::string& message) {
    warnings.push_back(message);
    err += "warning: " + message + "\n";
  }

  void numeric_failure(const std::string& message) {
    exit_code = kNumericError;
    err += json{{"error", "numeric"}, {"exit_code", kNumericError}, {"message", message}}.dump() + "\n";
  }
};

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json to_json(const MeasureResult& r) {
  return json{{"type", "measure"},
              {"n", r.n},
              {"value", r.value},
              {"method", to_string(r.method)},
              {"basis_labels", r.basis_labels},
              {"imag_residual", r.imag_residual}};
}

json to_json(const CriterionReport& r) {
  json j{{"type", "criterion"},
         {"criterion", to_string(r.criterion)},
         {"value", r.value},
         {"threshold", r.threshold},
         {"verdict", to_string(r.verdict)},
         {"basis", r.basis_name},
         {"metadata", r.metadata}};
  j["b_side"] = r.b_side ? json(to_string(*r.b_side)) : json(nullptr);
  return j;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::size_t parse_size(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != text.size() || text.empty() || text[0] == '-') {
    throw ArgumentError(what + ": '" + text + "' is not a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != text.size() || !std::isfinite(v)) throw ArgumentError(what + ": '" + text + "' is not a number");
  return v;
}

std::vector<std::size_t> parse_index_list(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_size(part, what));
  if (out.empty()) throw ArgumentError(what + ": empty list");
  return out;
}

// start:stop:step, inclusive of stop; points are rounded to 12 decimals so
// that 0:1:0.1 yields the doubles nearest 0.1, 0.2, ...
std::vector<double> parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ArgumentError("--grid must have the form start:stop:step, got '" + text + "'");
  const double start = parse_real(parts[0], "--grid start");
  const double stop = parse_real(parts[1], "--grid stop");
  const double step = parse_real(parts[2], "--grid step");
  if (!(step > 0.0)) throw ArgumentError("--grid step must be positive");
  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double p = start + static_cast<double>(k) * step;
    if (p > stop + 1e-9 * step) break;
    grid.push_back(std::round(p * 1e12) / 1e12);
  }
  if (grid.empty()) throw ArgumentError("--grid '" + text + "' contains no points");
  return grid;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open state file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

AnyState load_state(const std::string& path, Context& ctx) {
  const std::string text = read_file(path);
  ctx.digest = content_digest(text);
  return to_state(parse_state_file(text));
}

DensityMatrix as_density(const AnyState& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) return DensityMatrix(*psi);
  return std::get<DensityMatrix>(state);
}

std::size_t kept_dim(const TensorStructure& s, const std::vector<std::size_t>& keep) {
  std::size_t d = 1;
  for (auto k : keep) {
    if (k >= s.factors()) throw ArgumentError("--keep: factor index " + std::to_string(k) + " out of range");
    d *= s[k];
  }
  return d;
}

OperatorBasis hermitian_basis(const std::string& name, std::size_t d) {
  const std::string chosen = name.empty() ? (d == 2 ? "pauli" : "gellmann") : name;
  auto basis = make_basis(chosen, d);
  if (!basis.is_hermitian) {
    throw ArgumentError("uncertainty criteria require a Hermitian basis (pauli or gellmann), got '" + chosen + "'");
  }
  return basis;
}

// measure

struct MeasureOptions {
  std::string state;
  int n = 2;
  std::string method = "direct";
  std::vector<std::string> bases;
  std::string keep = "0";
};

void cmd_measure(const MeasureOptions& o, Context& ctx) {
  const auto state = load_state(o.state, ctx);
  const PureState& psi = require_pure(state);
  const auto keep = parse_index_list(o.keep, "--keep");
  const bool keep_is_a = keep.size() == 1 && keep[0] == 0;

  if (o.method == "direct") {
    ctx.results.push_back(to_json(me_direct(psi, o.n, keep)));
  } else if (o.method == "chain") {
    if (o.bases.empty()) throw ArgumentError("--method chain needs at least one --basis");
    if (o.n < 2) throw ArgumentError("measure order n must be >= 2, got " + std::to_string(o.n));
    const std::size_t slots = static_cast<std::size_t>(o.n - 1);
    if (o.bases.size() != 1 && o.bases.size() != slots) {
      throw ArgumentError("--method chain with --n " + std::to_string(o.n) + " needs 1 or " +
                          std::to_string(slots) + " --basis flags, got " + std::to_string(o.bases.size()));
    }
    const std::size_t d = kept_dim(psi.structure(), keep);
    std::vector<OperatorBasis> bases;
    for (std::size_t k = 0; k < slots; ++k) bases.push_back(make_basis(o.bases.size() == 1 ? o.bases[0] : o.bases[k], d));
    auto j = to_json(me_chain(psi, o.n, bases, keep));
    if (o.n == 2) {
      const auto e = me2_expectations(psi, bases[0], keep);
      json ex = json::array();
      for (auto c : e.expectations) ex.push_back(complex_json(c));
      j["expectations"] = std::move(ex);
      j["expectation_labels"] = bases[0].labels;
      j["i_concurrence"] = e.i_concurrence;
    }
    ctx.results.push_back(std::move(j));
  } else if (o.method == "gellmann" || o.method == "weyl") {
    if (o.n != 2) throw ArgumentError("--method " + o.method + " evaluates M_e(2) only; use --n 2");
    if (!keep_is_a) throw ArgumentError("--method " + o.method + " acts on factor 0; use --keep 0");
    ctx.results.push_back(to_json(o.method == "gellmann" ? me2_gellmann_closed_form(psi) : me2_weyl_closed_form(psi)));
  } else if (o.method == "identical") {
    if (o.n != 2) throw ArgumentError("--method identical evaluates M_e(2) only; use --n 2");
    if (o.bases.size() > 1) throw ArgumentError("--method identical takes at most one --basis");
    const std::size_t d = psi.structure()[0];
    const auto result = o.bases.empty() ? me2_identical(psi) : me2_identical(psi, make_basis(o.bases[0], d));
    auto j = to_json(result.result);
    j["per_particle"] = result.per_particle;
    j["particles_agree"] = result.particles_agree;
    j["symmetry"] = json{{"symmetric_residual", result.symmetry.symmetric_residual},
                         {"antisymmetric_residual", result.symmetry.antisymmetric_residual}};
    ctx.results.push_back(std::move(j));
    if (!result.symmetry.is_symmetric() && !result.symmetry.is_antisymmetric()) {
      ctx.warn("state is neither exchange-symmetric nor antisymmetric; identical-particle interpretation is questionable");
    }
    if (!result.particles_agree) {
      ctx.warn("single-particle reduced states differ between particles; per_particle lists each value");
    }
  } else {
    throw ArgumentError("unknown --method '" + o.method + "' (expected direct, chain, gellmann, weyl or identical)");
  }
}

// criterion

struct CriterionOptions {
  std::string state;
  std::string type;
  std::string basis;
  std::string b_side = "conjugate";
};

void cmd_criterion(const CriterionOptions& o, Context& ctx) {
  const BSide b_side = parse_b_side(o.b_side);
  const auto state = load_state(o.state, ctx);
  const auto rho = as_density(state);
  const auto& s = rho.structure();

  if (o.type == "identity") {
    const auto basis = hermitian_basis(o.basis, rho.dim());
    const auto report = uncertainty_identity_report(rho, basis);
    ctx.results.push_back(to_json(report));
    const double residual = uncertainty_identity(rho, basis).residual;
    if (residual > kTol.eq) ctx.numeric_failure("uncertainty identity residual " + std::to_string(residual) + " exceeds 1e-10");
  } else if (o.type == "local") {
    if (s.factors() != 2) throw ArgumentError("--type local needs a bipartite state");
    ctx.results.push_back(to_json(local_uncertainty_criterion(rho, hermitian_basis(o.basis, s[0]), b_side)));
  } else if (o.type == "collective") {
    ctx.results.push_back(to_json(collective_uncertainty_criterion(rho, hermitian_basis(o.basis, s[0]))));
  } else if (o.type == "ppt") {
    if (s.factors() != 2) throw ArgumentError("--type ppt needs a bipartite state");
    ctx.results.push_back(to_json(ppt_criterion(rho)));
  } else {
    throw ArgumentError("unknown --type '" + o.type + "' (expected identity, local, collective or ppt)");
  }
}

// basis-check

struct BasisCheckOptions {
  std::string type;
  std::size_t dim = 2;
  int probes = 20;
  std::uint64_t seed = kDefaultProbeSeed;
};

void cmd_basis_check(const BasisCheckOptions& o, Context& ctx) {
  if (o.probes < 1) throw ArgumentError("--probes must be >= 1");
  const auto basis = make_basis(o.type, o.dim);
  ctx.seeds.push_back(o.seed);

  const double gram = gram_residual(basis);
  const double completeness = verify_completeness(basis, o.probes, o.seed);
  json j{{"type", "basis_check"},
         {"basis", basis.name},
         {"dim", basis.dim},
         {"elements", basis.elements.size()},
         {"labels", basis.labels},
         {"is_hermitian", basis.is_hermitian},
         {"is_unitary_scaled", basis.is_unitary_scaled},
         {"probes", o.probes},
         {"gram_residual", gram},
         {"completeness_residual", completeness},
         {"tolerance", kTol.eq}};
  double worst = std::max(gram, completeness);
  if (basis.is_hermitian) {
    const double sum_rule = verify_hermitian_sum_rule(basis);
    j["sum_rule_residual"] = sum_rule;
    worst = std::max(worst, sum_rule);
  } else {
    j["sum_rule_residual"] = nullptr;
    j["notice"] = "sum rule sum_i O_i^2 = d I skipped: basis is not Hermitian";
  }
  ctx.results.push_back(std::move(j));
  if (worst > kTol.eq) ctx.numeric_failure("basis identity residual " + std::to_string(worst) + " exceeds 1e-10");
}

// schmidt

void cmd_schmidt(const std::string& path, Context& ctx) {
  const auto state = load_state(path, ctx);
  const PureState& psi = require_pure(state);
  const auto spectrum = schmidt_spectrum(psi);
  ctx.results.push_back(json{{"type", "schmidt"}, {"coefficients", spectrum.coefficients}});
  const std::size_t keep[] = {0};
  for (int n = 2; n <= 5; ++n) ctx.results.push_back(to_json(me_direct(psi, n, keep)));
}

// scan

struct ScanOptions {
  std::string family = "werner";
  std::string grid;
  std::string criteria = "local,ppt";
  std::string b_side = "conjugate";
  std::string basis = "pauli";
};

void cmd_scan(const ScanOptions& o, Context& ctx) {
  if (o.family != "werner") throw ArgumentError("unknown --family '" + o.family + "' (expected werner)");
  const auto grid = parse_grid(o.grid);
  const BSide b_side = parse_b_side(o.b_side);
  const auto basis = hermitian_basis(o.basis, 2);

  std::vector<CriterionSpec> specs;
  for (const auto& name : split(o.criteria, ',')) {
    if (name == "local") {
      specs.push_back({name, [&](const DensityMatrix& r) { return local_uncertainty_criterion(r, basis, b_side); }});
    } else if (name == "ppt") {
      specs.push_back({name, [](const DensityMatrix& r) { return ppt_criterion(r); }});
    } else if (name == "collective") {
      specs.push_back({name, [&](const DensityMatrix& r) { return collective_uncertainty_criterion(r, basis); }});
    } else {
      throw ArgumentError("unknown criterion '" + name + "' in --criteria (expected local, ppt or collective)");
    }
  }
  const auto rows = criterion_scan(werner_state, specs, grid);

  json table = json::array();
  for (const auto& row : rows) {
    json reports = json::array();
    for (const auto& r : row.reports) reports.push_back(to_json(r));
    table.push_back(json{{"parameter", row.parameter}, {"reports", std::move(reports)}});
  }
  std::vector<std::string> names;
  for (const auto& s : specs) names.push_back(s.name);
  ctx.results.push_back(json{{"type", "scan"}, {"family", o.family}, {"criteria", names}, {"rows", std::move(table)}});
}

// sample

struct SampleOptions {
  std::string family;
  std::string dims = "2,2";
  double param = 0.5;
  std::uint64_t seed = 1;
  std::size_t ancilla = 4;
  std::size_t terms = 4;
  std::size_t particles = 3;
  std::string out;
};

void cmd_sample(const SampleOptions& o, Context& ctx) {
  const auto dims = parse_index_list(o.dims, "--dims");
  const TensorStructure structure(dims);
  std::optional<AnyState> state;
  bool seeded = false;
  if (o.family == "bell") {
    state = maximally_entangled(2);
  } else if (o.family == "maximally-entangled") {
    state = maximally_entangled(dims[0]);
  } else if (o.family == "singlet") {
    state = singlet();
  } else if (o.family == "product") {
    state = basis_state(structure, std::vector<std::size_t>(dims.size(), 0));
  } else if (o.family == "w") {
    state = w_state(o.particles);
  } else if (o.family == "ghz") {
    state = ghz_state(o.particles);
  } else if (o.family == "werner") {
    state = werner_state(o.param);
  } else if (o.family == "haar") {
    state = haar_random_pure(structure, o.seed);
    seeded = true;
  } else if (o.family == "mixed") {
    const auto rho = random_mixed(structure.total(), o.ancilla, o.seed);
    state = DensityMatrix(rho.matrix(), structure);
    seeded = true;
  } else if (o.family == "separable") {
    state = random_separable(structure, o.terms, o.seed);
    seeded = true;
  } else {
    throw ArgumentError("unknown --family '" + o.family +
                        "' (expected bell, maximally-entangled, singlet, product, w, ghz, werner, haar, mixed, separable)");
  }
  const std::string text = serialize_state_file(to_state_file(*state));
  if (seeded) ctx.seeds.push_back(o.seed);

  if (o.out.empty()) {
    ctx.raw_out = text;
    if (seeded) ctx.err += "seed: " + std::to_string(o.seed) + " rng: " + std::string(Rng::kAlgorithm) + "\n";
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw ArgumentError("cannot write '" + o.out + "'");
  file << text;
  ctx.results.push_back(json{{"type", "sample"}, {"family", o.family}, {"output", o.out}, {"digest", content_digest(text)}});
}

// rendering

std::string render_value(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string render_text(const json& report) {
  std::ostringstream out;
  out << report["tool"].get<std::string>() << " " << report["version"].get<std::string>() << "\n";
  if (!report["input_digest"].is_null()) out << "input: " << report["input_digest"].get<std::string>() << "\n";
  if (!report["seeds"].empty()) out << "seeds: " << report["seeds"].dump() << " (" << report["rng"].get<std::string>() << ")\n";
  for (const auto& r : report["results"]) {
    out << "\n[" << r["type"].get<std::string>() << "]\n";
    for (const auto& [key, value] : r.items()) {
      if (key == "type") continue;
      if (key == "rows") {
        for (const auto& row : value) {
          out << "  p=" << row["parameter"].dump();
          for (const auto& rep : row["reports"]) {
            out << "  " << rep["criterion"].get<std::string>() << " value=" << rep["value"].dump()
                << " threshold=" << rep["threshold"].dump() << " " << rep["verdict"].get<std::string>();
          }
          out << "\n";
        }
        continue;
      }
      out << "  " << key << ": " << render_value(value) << "\n";
    }
  }
  return out.str();
}

std::string render(const Context& ctx) {
  if (ctx.raw_out) return *ctx.raw_out;
  json report{{"schema", kReportSchema},
              {"tool", kToolName},
              {"version", kToolVersion},
              {"command", ctx.args},
              {"seeds", ctx.seeds},
              {"rng", std::string(Rng::kAlgorithm)},
              {"results", ctx.results},
              {"warnings", ctx.warnings}};
  report["input_digest"] = ctx.digest ? json(*ctx.digest) : json(nullptr);
  return ctx.format == "text" ? render_text(report) : report.dump(2) + "\n";
}

std::string diagnostic(const char* kind, int code, const std::string& message) {
  return json{{"error", kind}, {"exit_code", code}, {"message", message}}.dump() + "\n";
}

void add_format(CLI::App* sub, Context& ctx) {
  sub->add_option("--format", ctx.format, "Report format")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

CommandOutput run(const std::vector<std::string>& args) {
  Context ctx;
  ctx.args = args;

  CLI::App app{"Operator-basis entanglement measures and sum-uncertainty entanglement criteria", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  MeasureOptions measure;
  auto* m = app.add_subcommand("measure", "Evaluate M_e(n) = 1 - Tr rho_A^n for a pure state");
  m->add_option("--state", measure.state, "State file")->required();
  m->add_option("--n", measure.n, "Order n >= 2");
  m->add_option("--method", measure.method, "direct | chain | gellmann | weyl | identical");
  m->add_option("--basis", measure.bases, "pauli | gellmann | weyl (repeat once per chain slot, or once to broadcast)");
  m->add_option("--keep", measure.keep, "Comma-separated factors forming subsystem A");
  add_format(m, ctx);

  CriterionOptions criterion;
  auto* c = app.add_subcommand("criterion", "Apply an entanglement criterion to a state");
  c->add_option("--state", criterion.state, "State file")->required();
  c->add_option("--type", criterion.type, "identity | local | collective | ppt")->required();
  c->add_option("--basis", criterion.basis, "pauli | gellmann (default: pauli for d=2, else gellmann)");
  c->add_option("--b-side", criterion.b_side, "same | conjugate");
  add_format(c, ctx);

  BasisCheckOptions check;
  auto* b = app.add_subcommand("basis-check", "Verify orthonormality and completeness identities of an operator basis");
  b->add_option("--type", check.type, "pauli | gellmann | weyl")->required();
  b->add_option("--dim", check.dim, "Local dimension d")->required();
  b->add_option("--probes", check.probes, "Random probe count");
  b->add_option("--seed", check.seed, "Probe seed");
  add_format(b, ctx);

  std::string schmidt_state;
  auto* s = app.add_subcommand("schmidt", "Schmidt spectrum and M_e(2..5) of a bipartite pure state");
  s->add_option("--state", schmidt_state, "State file")->required();
  add_format(s, ctx);

  ScanOptions scan;
  auto* g = app.add_subcommand("scan", "Scan criteria across a parametrized state family");
  g->add_option("--family", scan.family, "werner");
  g->add_option("--grid", scan.grid, "start:stop:step")->required();
  g->add_option("--criteria", scan.criteria, "Comma-separated: local, ppt, collective");
  g->add_option("--b-side", scan.b_side, "same | conjugate");
  g->add_option("--basis", scan.basis, "pauli | gellmann");
  add_format(g, ctx);

  SampleOptions sample;
  auto* w = app.add_subcommand("sample", "Write a state file for a named or random state");
  w->add_option("--family", sample.family,
                "bell | maximally-entangled | singlet | product | w | ghz | werner | haar | mixed | separable")
      ->required();
  w->add_option("--dims", sample.dims, "Comma-separated factor dimensions");
  w->add_option("--param", sample.param, "Werner mixing parameter p");
  w->add_option("--seed", sample.seed, "Sampler seed");
  w->add_option("--ancilla", sample.ancilla, "Purification ancilla dimension (mixed)");
  w->add_option("--terms", sample.terms, "Number of product terms (separable)");
  w->add_option("--particles", sample.particles, "Qubit count (w, ghz)");
  w->add_option("--out", sample.out, "Output path (default: stdout)");
  add_format(w, ctx);

  CommandOutput result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.out = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::CallForVersion&) {
    result.out = std::string(kToolVersion) + "\n";
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = kArgumentError;
    result.err = diagnostic("argument", kArgumentError, e.what());
    return result;
  }

  try {
    if (m->parsed()) cmd_measure(measure, ctx);
    else if (c->parsed()) cmd_criterion(criterion, ctx);
    else if (b->parsed()) cmd_basis_check(check, ctx);
    else if (s->parsed()) cmd_schmidt(schmidt_state, ctx);
    else if (g->parsed()) cmd_scan(scan, ctx);
    else if (w->parsed()) cmd_sample(sample, ctx);
  } catch (const ArgumentError& e) {
    result.exit_code = kArgumentError;
    result.err = ctx.err + diagnostic("argument", kArgumentError, e.what());
    return result;
  } catch (const ShapeError& e) {
    result.exit_code = kArgumentError;
    result.err = ctx.err + diagnostic("argument", kArgumentError, e.what());
    return result;
  } catch (const StateError& e) {
    result.exit_code = kStateError;
    result.err = ctx.err + diagnostic("state", kStateError, e.what());
    return result;
  } catch (const DomainError& e) {
    result.exit_code = kStateError;
    result.err = ctx.err + diagnostic("state", kStateError, e.what());
    return result;
  } catch (const NumericError& e) {
    result.exit_code = kNumericError;
    result.err = ctx.err + diagnostic("numeric", kNumericError, e.what());
    return result;
  } catch (const std::exception& e) {
    result.exit_code = kUnexpected;
    result.err = ctx.err + diagnostic("internal", kUnexpected, e.what());
    return result;
  }

  result.exit_code = ctx.exit_code;
  result.out = render(ctx);
  result.err = ctx.err;
  return result;
}

}  // namespace oprep::cli
