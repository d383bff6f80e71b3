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

#include "drnmf/model_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "drnmf/error.hpp"
#include "format.hpp"

namespace drnmf {

namespace {

using nlohmann::json;

json matrix_json(const DenseMatrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    const auto row = M.row(i);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

DenseMatrix matrix_from_json(const json& j, const char* name) {
  if (!j.is_array() || j.empty())
    throw ValidationError(std::string("model: '") + name + "' must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().size();
  std::vector<double> values;
  values.reserve(rows * cols);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols)
      throw ValidationError(std::string("model: '") + name + "' has ragged rows");
    for (const auto& v : row) values.push_back(v.get<double>());
  }
  return DenseMatrix(rows, cols, std::move(values));
}

std::vector<double> betas_as_doubles(const std::vector<Beta>& betas) {
  std::vector<double> out;
  for (Beta b : betas) out.push_back(b.value());
  return out;
}

}  // namespace

std::string model_to_json(const Model& model) {
  json j;
  j["kind"] = model.kind;
  j["m"] = model.m;
  j["n"] = model.n;
  j["r"] = model.rank();
  j["seed"] = model.seed;
  j["betas"] = betas_as_doubles(model.objective.betas);
  j["ref_errors"] = model.objective.ref_errors;
  j["ref_floored"] = model.ref_floored;
  j["lambda"] = model.objective.weights;
  j["final_raw"] = model.final_raw;
  j["final_normalized"] = model.final_normalized;
  j["config"] = {{"input", model.config.input},
                 {"init", model.config.init},
                 {"iters", model.config.iters},
                 {"log_every", model.config.log_every},
                 {"sparse", model.config.sparse},
                 {"references", model.config.references}};
  if (!model.trace.empty()) {
    json trace = json::array();
    for (const auto& e : model.trace)
      trace.push_back({{"iteration", e.iteration},
                       {"normalized", e.normalized},
                       {"max_normalized", e.max_normalized},
                       {"lambda", e.lambda}});
    j["trace"] = std::move(trace);
  }
  j["W"] = matrix_json(model.factors.W);
  j["H"] = matrix_json(model.factors.H);
  return j.dump(1) + "\n";
}

Model model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("model: invalid JSON: ") + e.what());
  }
  Model model;
  try {
    model.kind = j.at("kind").get<std::string>();
    model.m = j.at("m").get<std::size_t>();
    model.n = j.at("n").get<std::size_t>();
    model.seed = j.at("seed").get<std::uint64_t>();
    model.objective.betas = make_betas(j.at("betas").get<std::vector<double>>());
    model.objective.ref_errors = j.at("ref_errors").get<std::vector<double>>();
    model.objective.weights = j.at("lambda").get<std::vector<double>>();
    model.ref_floored = j.value("ref_floored", std::vector<bool>{});
    model.final_raw = j.value("final_raw", std::vector<double>{});
    model.final_normalized = j.value("final_normalized", std::vector<double>{});
    if (j.contains("config")) {
      const auto& c = j["config"];
      model.config.input = c.value("input", std::string{});
      model.config.init = c.value("init", std::string{});
      model.config.iters = c.value("iters", std::size_t{0});
      model.config.log_every = c.value("log_every", std::size_t{1});
      model.config.sparse = c.value("sparse", false);
      model.config.references = c.value("references", std::string{"unit"});
    }
    if (j.contains("trace")) {
      for (const auto& t : j["trace"]) {
        TraceEntry e;
        e.iteration = t.at("iteration").get<std::size_t>();
        e.normalized = t.at("normalized").get<std::vector<double>>();
        e.max_normalized = t.at("max_normalized").get<double>();
        e.lambda = t.at("lambda").get<std::vector<double>>();
        model.trace.push_back(std::move(e));
      }
    }
    model.factors.W = matrix_from_json(j.at("W"), "W");
    model.factors.H = matrix_from_json(j.at("H"), "H");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model: ") + e.what());
  }
  check_factor_shapes(model.m, model.n, model.factors);
  model.objective.validate();
  return model;
}

void save_model(const std::filesystem::path& path, const Model& model) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  out << model_to_json(model);
  if (!out) throw ValidationError("failed writing '" + path.string() + "'");
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

void save_factors(const std::filesystem::path& path, const FactorPair& factors,
                  std::uint64_t seed) {
  json j;
  j["kind"] = "factors";
  j["seed"] = seed;
  j["r"] = factors.rank();
  j["W"] = matrix_json(factors.W);
  j["H"] = matrix_json(factors.H);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  out << j.dump(1) << '\n';
  if (!out) throw ValidationError("failed writing '" + path.string() + "'");
}

FactorPair load_factors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "' for reading");
  json j;
  try {
    j = json::parse(in);
    FactorPair f{matrix_from_json(j.at("W"), "W"), matrix_from_json(j.at("H"), "H")};
    if (f.W.cols() != f.H.rows())
      throw DimensionError("factors: W has " + std::to_string(f.W.cols()) + " columns, H has " +
                           std::to_string(f.H.rows()) + " rows");
    return f;
  } catch (const json::exception& e) {
    throw ValidationError("factors '" + path.string() + "': " + e.what());
  }
}

void write_trace_csv(std::ostream& os, const SolveTrace& trace) {
  os << "iteration,weighted,max_dbar,worst_beta,halvings_w,halvings_h,stalled,delta";
  for (const char* prefix : {"d_", "dbar_", "lambda_"})
    for (Beta b : trace.betas) os << ',' << prefix << to_string(b);
  os << '\n';
  for (const auto& e : trace.entries) {
    os << e.iteration << ',' << format_double(e.weighted) << ',' << format_double(e.max_normalized)
       << ',' << to_string(trace.betas.at(e.worst)) << ',' << e.halvings_w << ',' << e.halvings_h
       << ',' << (e.stalled ? 1 : 0) << ',' << format_double(e.delta);
    for (const auto* column : {&e.raw, &e.normalized, &e.lambda})
      for (double v : *column) os << ',' << format_double(v);
    os << '\n';
  }
}

}  // namespace drnmf
