// Copyright 2026 The drnmf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>

#include "drnmf/drnmf.hpp"

namespace drnmf::cli {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) out += (k ? "," : "") + fmt(values[k]);
  return out;
}

struct Flags {
  std::string input;
  std::size_t rank = 0;
  std::vector<double> betas;
  std::vector<double> weights;
  std::vector<double> ref_errors;
  std::size_t iters = 1000;
  std::uint64_t seed = 0;
  std::string init = "random";
  bool sparse = false;
  std::string output;
  std::string trace;
  std::size_t log_every = 1;
  std::size_t grid = 11;
};

void add_solver_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--input,-i", f.input, "Data matrix (CSV, MatrixMarket or 3-column)")
      ->required();
  cmd->add_option("--rank,-r", f.rank, "Factorization rank (taken from --init PATH if omitted)");
  cmd->add_option("--iters", f.iters, "Iterations per solve")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Seed for random initialization")->capture_default_str();
  cmd->add_option("--init", f.init, "random, svd, or a JSON file holding W and H")
      ->capture_default_str();
  cmd->add_flag("--sparse", f.sparse, "Read --input as a sparse file regardless of extension");
  cmd->add_option("--ref-errors", f.ref_errors, "Reference error per beta (skips reference solves)")
      ->delimiter(',');
}

/// Loads --input, choosing the sparse path when possible. Sparse data paired
/// with beta outside {1, 2} is densified; dense data for beta < 1 is raised
/// to kDataFloor.
DataMatrix load_input(const Flags& f, const std::vector<Beta>& betas, std::ostream& err) {
  const bool sparse = f.sparse || looks_sparse(f.input);
  DataMatrix X;
  if (sparse) {
    X = load_sparse(f.input);
    const bool supported = std::all_of(betas.begin(), betas.end(),
                                       [](Beta b) { return b.supports_sparse(); });
    if (!supported) {
      err << "warning: beta outside {1, 2} needs dense storage; densifying " << rows_of(X) << "x"
          << cols_of(X) << " input\n";
      X = densify(X);
    }
  } else {
    X = load_dense(f.input);
  }
  if (auto* dense = std::get_if<DenseMatrix>(&X); dense && needs_positive_data(betas)) {
    const std::size_t raised = clamp_data(*dense);
    if (raised > 0)
      err << "note: raised " << raised << " entries below " << fmt(kDataFloor) << " to "
          << fmt(kDataFloor) << " (beta < 1 needs positive data)\n";
  }
  return X;
}

FactorPair make_init(const DataMatrix& X, const Flags& f) {
  if (f.init == "random" || f.init == "svd") {
    if (f.rank == 0) throw ValidationError("--rank is required with --init " + f.init);
    return init_factors(X, f.rank, f.init == "svd" ? InitMode::Svd : InitMode::Random, f.seed);
  }
  FactorPair init = load_factors(f.init);
  if (f.rank != 0 && f.rank != init.rank())
    throw ValidationError("--rank " + std::to_string(f.rank) + " disagrees with rank " +
                          std::to_string(init.rank()) + " of '" + f.init + "'");
  check_factor_shapes(rows_of(X), cols_of(X), init);
  return init;
}

SolverConfig make_config(const Flags& f) {
  SolverConfig cfg;
  cfg.max_iters = f.iters;
  cfg.seed = f.seed;
  cfg.log_stride = f.log_every;
  cfg.validate();
  return cfg;
}

struct References {
  std::vector<double> values;
  std::vector<bool> floored;
  std::string source;
};

References resolve_references(const DataMatrix& X, const FactorPair& init,
                              const std::vector<Beta>& betas, const Flags& f, bool allow_unit,
                              std::ostream& err) {
  References out;
  if (!f.ref_errors.empty()) {
    if (f.ref_errors.size() != betas.size())
      throw ValidationError("--ref-errors needs one value per beta");
    out.values = f.ref_errors;
    out.floored.assign(betas.size(), false);
    out.source = "user";
    return out;
  }
  if (allow_unit && betas.size() == 1) {
    out.values = {1.0};
    out.floored = {false};
    out.source = "unit";
    return out;
  }
  SolverConfig cfg = make_config(f);
  cfg.log_stride = std::max<std::size_t>(cfg.max_iters, 1);
  const ReferenceErrors refs = compute_reference_errors(X, init, betas, cfg);
  for (std::size_t b = 0; b < betas.size(); ++b)
    if (refs.floored[b])
      err << "warning: reference error for beta=" << to_string(betas[b]) << " raised to "
          << fmt(kMinReferenceError) << "\n";
  out.values = refs.values;
  out.floored = refs.floored;
  out.source = "computed";
  return out;
}

std::filesystem::path trace_path(const Flags& f) {
  if (!f.trace.empty()) return f.trace;
  std::filesystem::path p(f.output);
  p.replace_extension(".trace.csv");
  return p;
}

void write_trace(const Flags& f, const SolveTrace& trace) {
  const auto path = trace_path(f);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ValidationError("cannot open '" + path.string() + "' for writing");
  os << "# seed=" << f.seed << " iters=" << f.iters << " log_every=" << f.log_every << "\n";
  write_trace_csv(os, trace);
  if (!os) throw ValidationError("failed writing '" + path.string() + "'");
}

Model base_model(const std::string& kind, const DataMatrix& X, const Flags& f,
                 const References& refs) {
  Model model;
  model.kind = kind;
  model.m = rows_of(X);
  model.n = cols_of(X);
  model.seed = f.seed;
  model.ref_floored = refs.floored;
  model.config = {f.input, f.init, f.iters, f.log_every, std::holds_alternative<SparseMatrix>(X),
                  refs.source};
  return model;
}

void print_errors(std::ostream& out, const std::vector<Beta>& betas, const Evaluation& eval) {
  for (std::size_t b = 0; b < betas.size(); ++b)
    out << "beta=" << to_string(betas[b]) << " d=" << fmt(eval.raw[b])
        << " dbar=" << fmt(eval.normalized[b]) << "\n";
}

int cmd_factorize(Flags f, std::ostream& out, std::ostream& err) {
  if (f.betas.empty()) f.betas = {2.0};
  const auto betas = make_betas(f.betas);
  std::vector<double> weights = f.weights;
  if (weights.empty()) weights.assign(betas.size(), 1.0);
  if (weights.size() != betas.size()) throw ValidationError("--weights needs one value per beta");
  const SolverConfig cfg = make_config(f);

  const DataMatrix X = load_input(f, betas, err);
  const FactorPair init = make_init(X, f);
  const References refs = resolve_references(X, init, betas, f, true, err);
  const ObjectiveSet obj = build_objective_set(betas, refs.values, weights);
  const SolveResult res = solve_weighted(X, init, obj, cfg);

  Model model = base_model("factorize", X, f, refs);
  model.objective = obj;
  model.factors = res.factors;
  model.final_raw = res.final_eval.raw;
  model.final_normalized = res.final_eval.normalized;
  save_model(f.output, model);
  write_trace(f, res.trace);

  print_errors(out, betas, res.final_eval);
  out << "weighted=" << fmt(res.final_eval.weighted)
      << " violations=" << res.trace.monotonicity_violations() << " stalls=" << res.trace.stalls
      << "\n";
  return kExitOk;
}

int cmd_dr(Flags f, std::ostream& out, std::ostream& err) {
  if (f.betas.size() < 2)
    throw ValidationError("dr needs at least two betas; use 'factorize' for a single divergence");
  const auto betas = make_betas(f.betas);
  const SolverConfig cfg = make_config(f);

  const DataMatrix X = load_input(f, betas, err);
  const FactorPair init = make_init(X, f);
  const References refs = resolve_references(X, init, betas, f, false, err);
  const DrResult res = solve_dr(X, init, betas, refs.values, cfg);

  Model model = base_model("dr", X, f, refs);
  model.objective = res.objective;
  model.factors = res.factors;
  model.final_raw = res.final_eval.raw;
  model.final_normalized = res.final_eval.normalized;
  model.trace = res.trace.entries;
  save_model(f.output, model);
  write_trace(f, res.trace);

  print_errors(out, betas, res.final_eval);
  const auto& nrm = res.final_eval.normalized;
  const auto [lo, hi] = std::minmax_element(nrm.begin(), nrm.end());
  out << "lambda=" << join(res.objective.weights) << " max_dbar=" << fmt(*hi)
      << " gap=" << fmt(*hi - *lo) << "\n";
  return kExitOk;
}

int cmd_pareto(Flags f, std::ostream& out, std::ostream& err) {
  if (f.betas.size() != 2) throw ValidationError("pareto needs exactly two betas");
  const auto betas = make_betas(f.betas);
  const SolverConfig cfg = make_config(f);

  const DataMatrix X = load_input(f, betas, err);
  const FactorPair init = make_init(X, f);
  const References refs = resolve_references(X, init, betas, f, false, err);
  const auto points = pareto_sweep(X, init, betas, refs.values, f.grid, cfg);

  std::ofstream os(f.output, std::ios::binary | std::ios::trunc);
  if (!os) throw ValidationError("cannot open '" + f.output + "' for writing");
  os << "# seed=" << f.seed << " grid=" << f.grid << " iters=" << f.iters
     << " ref_errors=" << join(refs.values) << "\n";
  write_pareto_csv(os, betas, points);
  if (!os) throw ValidationError("failed writing '" + f.output + "'");

  const auto dominated = dominated_points(points, 0.0);
  out << "points=" << points.size() << " dominated=" << dominated.size()
      << " ref_errors=" << join(refs.values) << "\n";
  return kExitOk;
}

struct SynthFlags {
  SynthSpec spec;
  std::vector<double> noise_betas{0.0, 1.0, 2.0};
  std::string output;
  std::string truth;
};

int cmd_synth(SynthFlags f, std::ostream& out, std::ostream& err) {
  f.spec.noise_betas = make_betas(f.noise_betas);
  const SynthData data = synth_generate(f.spec);
  if (data.seed_used != f.spec.seed)
    err << "warning: degenerate noise draw, regenerated with seed " << data.seed_used << "\n";
  save_dense(f.output, data.X,
             {"synth m=" + std::to_string(f.spec.m) + " n=" + std::to_string(f.spec.n) +
                  " r=" + std::to_string(f.spec.r),
              "seed=" + std::to_string(f.spec.seed) + " seed_used=" +
                  std::to_string(data.seed_used),
              "noise=" + fmt(f.spec.noise_level) + " noise_betas=" + join(f.noise_betas),
              "clipped=" + std::to_string(data.clipped)});
  if (!f.truth.empty()) save_factors(f.truth, {data.W_true, data.H_true}, data.seed_used);
  out << "wrote " << f.spec.m << "x" << f.spec.n << " clipped=" << data.clipped << "\n";
  return kExitOk;
}

struct EvalFlags {
  std::string model;
  std::string labels;
  std::string input;
  bool sparse = false;
  std::string output;
};

int cmd_eval(const EvalFlags& f, std::ostream& out, std::ostream& err) {
  if (f.labels.empty() && f.input.empty())
    throw ValidationError("eval needs --labels, --input, or both");
  const Model model = load_model(f.model);
  nlohmann::json report;
  report["seed"] = model.seed;
  report["kind"] = model.kind;
  report["r"] = model.rank();

  if (!f.labels.empty()) {
    const Labels labels = load_labels(f.labels);
    if (labels.index.size() != model.m)
      throw ValidationError("labels has " + std::to_string(labels.index.size()) +
                            " rows, model has m=" + std::to_string(model.m));
    const auto clusters = cluster_assign(model.factors.W);
    const double acc = clustering_accuracy(clusters, labels.index);
    report["accuracy"] = acc;
    report["classes"] = labels.classes();
    out << "accuracy=" << fmt(acc) << " classes=" << labels.classes() << "\n";
  }

  if (!f.input.empty()) {
    if (model.config.references == "unit" && model.objective.size() == 1)
      err << "note: model has no reference error; relative errors use e=1\n";
    Flags lf;
    lf.input = f.input;
    lf.sparse = f.sparse;
    const DataMatrix X = load_input(lf, model.objective.betas, err);
    if (rows_of(X) != model.m || cols_of(X) != model.n)
      throw ValidationError("input shape differs from the model's");
    const auto rel = relative_errors(X, model.factors.W, model.factors.H, model.objective);
    nlohmann::json pct = nlohmann::json::object();
    for (std::size_t b = 0; b < rel.size(); ++b) {
      const std::string key = to_string(model.objective.betas[b]);
      pct[key] = 100.0 * rel[b];
      out << "beta=" << key << " rel_error_pct=" << fmt(100.0 * rel[b]) << "\n";
    }
    report["relative_error_percent"] = std::move(pct);
  }

  if (!f.output.empty()) {
    std::ofstream os(f.output, std::ios::binary | std::ios::trunc);
    if (!os) throw ValidationError("cannot open '" + f.output + "' for writing");
    os << report.dump(1) << "\n";
    if (!os) throw ValidationError("failed writing '" + f.output + "'");
  }
  return kExitOk;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

int fail(std::ostream& err, const char* kind, int code, const std::string& message) {
  err << "error kind=" << kind << " code=" << code << " message=\"" << one_line(message) << "\"\n";
  return code;
}

}  // namespace

void apply_thread_env() {
  const char* env = std::getenv("DRNMF_THREADS");
  if (env == nullptr || *env == '\0') return;
  const std::string_view s(env);
  int n = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), n);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || n < 1)
    throw ValidationError("DRNMF_THREADS must be a positive integer, got '" + std::string(s) + "'");
  kernels::set_num_threads(n);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonnegative matrix factorization with beta-divergences"};
  app.name("drnmf");
  app.require_subcommand(1);

  Flags fact, dr, par;
  SynthFlags syn;
  EvalFlags ev;

  auto* c_fact = app.add_subcommand("factorize", "Weighted-sum factorization for fixed weights");
  add_solver_flags(c_fact, fact);
  c_fact->add_option("--betas", fact.betas, "Divergences, e.g. 1,2 (default 2)")->delimiter(',');
  c_fact->add_option("--weights", fact.weights, "Weight per beta (renormalized)")->delimiter(',');
  c_fact->add_option("--output,-o", fact.output, "Model JSON")->required();
  c_fact->add_option("--trace", fact.trace, "Trace CSV (default: <output>.trace.csv)");
  c_fact->add_option("--log-every", fact.log_every, "Trace stride")->capture_default_str();

  auto* c_dr = app.add_subcommand("dr", "Minimize the worst normalized divergence");
  add_solver_flags(c_dr, dr);
  c_dr->add_option("--betas", dr.betas, "Two or more divergences, e.g. 1,2")
      ->delimiter(',')
      ->required();
  c_dr->add_option("--output,-o", dr.output, "Model JSON")->required();
  c_dr->add_option("--trace", dr.trace, "Trace CSV (default: <output>.trace.csv)");
  c_dr->add_option("--log-every", dr.log_every, "Trace stride")->capture_default_str();

  auto* c_par = app.add_subcommand("pareto", "Sweep weights (l, 1 - l) over a grid");
  add_solver_flags(c_par, par);
  c_par->add_option("--betas", par.betas, "Exactly two divergences, e.g. 0,2")
      ->delimiter(',')
      ->required();
  c_par->add_option("--grid", par.grid, "Number of grid points, including both ends")
      ->capture_default_str();
  c_par->add_option("--output,-o", par.output, "Sweep CSV")->required();

  auto* c_syn = app.add_subcommand("synth", "Generate noisy low-rank test data");
  c_syn->add_option("--m", syn.spec.m, "Rows")->capture_default_str();
  c_syn->add_option("--n", syn.spec.n, "Columns")->capture_default_str();
  c_syn->add_option("--rank,-r", syn.spec.r, "Rank of the clean part")->capture_default_str();
  c_syn->add_option("--noise", syn.spec.noise_level, "||N|| / ||X~||")->capture_default_str();
  c_syn->add_option("--noise-betas", syn.noise_betas, "Noise families from {0,1,2}")
      ->delimiter(',')
      ->capture_default_str();
  c_syn->add_option("--seed", syn.spec.seed, "RNG seed")->capture_default_str();
  c_syn->add_option("--output,-o", syn.output, "Data CSV")->required();
  c_syn->add_option("--truth", syn.truth, "Also write the true W and H as JSON (usable as --init)");

  auto* c_ev = app.add_subcommand("eval", "Clustering accuracy and relative errors of a model");
  c_ev->add_option("--model", ev.model, "Model JSON")->required();
  c_ev->add_option("--labels", ev.labels, "One integer class label per row");
  c_ev->add_option("--input,-i", ev.input, "Data matrix for relative errors");
  c_ev->add_flag("--sparse", ev.sparse, "Read --input as a sparse file");
  c_ev->add_option("--output,-o", ev.output, "Report JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, "usage", kExitValidation, e.what());
  }

  try {
    apply_thread_env();
    if (c_fact->parsed()) return cmd_factorize(fact, out, err);
    if (c_dr->parsed()) return cmd_dr(dr, out, err);
    if (c_par->parsed()) return cmd_pareto(par, out, err);
    if (c_syn->parsed()) return cmd_synth(syn, out, err);
    if (c_ev->parsed()) return cmd_eval(ev, out, err);
  } catch (const ParseError& e) {
    return fail(err, "parse", kExitValidation, e.what());
  } catch (const DimensionError& e) {
    return fail(err, "dimension", kExitValidation, e.what());
  } catch (const DomainError& e) {
    return fail(err, "domain", kExitValidation, e.what());
  } catch (const ValidationError& e) {
    return fail(err, "validation", kExitValidation, e.what());
  } catch (const NumericError& e) {
    return fail(err, "numeric", kExitNumeric, e.what());
  } catch (const std::bad_alloc&) {
    return fail(err, "numeric", kExitNumeric, "out of memory");
  } catch (const std::exception& e) {
    return fail(err, "internal", kExitNumeric, e.what());
  }
  return fail(err, "usage", kExitValidation, "no command given");
}

}  // namespace drnmf::cli
