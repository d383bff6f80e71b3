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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

#include "drnmf/data.hpp"
#include "drnmf/error.hpp"
#include "format.hpp"

namespace drnmf {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

double parse_real(std::string_view tok, std::size_t line) {
  tok = trim(tok);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ParseError("not a number: '" + std::string(tok) + "'", line);
  if (!std::isfinite(v)) throw ParseError("non-finite value", line);
  return v;
}

long long parse_integer(std::string_view tok, std::size_t line) {
  tok = trim(tok);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  long long v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ParseError("not an integer: '" + std::string(tok) + "'", line);
  return v;
}

std::size_t parse_index(std::string_view tok, std::size_t limit, std::size_t line) {
  const long long v = parse_integer(tok, line);
  if (v < 1 || (limit != 0 && static_cast<unsigned long long>(v) > limit))
    throw ParseError("index " + std::string(trim(tok)) + " out of range", line);
  return static_cast<std::size_t>(v - 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

struct PendingEntry {
  Triplet t;
  std::size_t line;
};

SparseMatrix assemble(std::size_t rows, std::size_t cols, std::vector<PendingEntry> entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const PendingEntry& a, const PendingEntry& b) {
    return a.t.row != b.t.row ? a.t.row < b.t.row : a.t.col < b.t.col;
  });
  std::vector<Triplet> triplets;
  triplets.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (k > 0 && entries[k].t.row == entries[k - 1].t.row && entries[k].t.col == entries[k - 1].t.col)
      throw ParseError("duplicate entry (" + std::to_string(entries[k].t.row + 1) + ", " +
                           std::to_string(entries[k].t.col + 1) + ")",
                       std::max(entries[k].line, entries[k - 1].line));
    if (entries[k].t.value > 0.0) triplets.push_back(entries[k].t);
  }
  return SparseMatrix::from_triplets(rows, cols, std::move(triplets));
}

SparseMatrix load_matrix_market(std::istream& in, const std::string& banner) {
  const auto words = split_ws(banner);
  if (words.size() < 5 || lower(words[1]) != "matrix")
    throw ParseError("malformed MatrixMarket banner", 1);
  if (lower(words[2]) != "coordinate")
    throw ParseError("only MatrixMarket 'coordinate' matrices are supported (use CSV for dense)", 1);
  const std::string field = lower(words[3]);
  if (field != "real" && field != "integer" && field != "pattern" && field != "double")
    throw ParseError("unsupported MatrixMarket field '" + field + "'", 1);
  if (lower(words[4]) != "general")
    throw ParseError("only 'general' MatrixMarket symmetry is supported", 1);
  const bool pattern = field == "pattern";

  std::string text;
  std::size_t line = 1;
  std::size_t rows = 0, cols = 0, declared = 0;
  bool have_size = false;
  std::vector<PendingEntry> entries;
  while (std::getline(in, text)) {
    ++line;
    const auto s = trim(text);
    if (s.empty() || s.front() == '%') continue;
    const auto tok = split_ws(s);
    if (!have_size) {
      if (tok.size() != 3) throw ParseError("expected 'rows cols nnz'", line);
      const long long r = parse_integer(tok[0], line);
      const long long c = parse_integer(tok[1], line);
      const long long k = parse_integer(tok[2], line);
      if (r < 1 || c < 1 || k < 0) throw ParseError("invalid matrix size", line);
      rows = static_cast<std::size_t>(r);
      cols = static_cast<std::size_t>(c);
      declared = static_cast<std::size_t>(k);
      have_size = true;
      entries.reserve(declared);
      continue;
    }
    if (tok.size() != (pattern ? 2u : 3u))
      throw ParseError(pattern ? "expected 'row col'" : "expected 'row col value'", line);
    const std::size_t i = parse_index(tok[0], rows, line);
    const std::size_t j = parse_index(tok[1], cols, line);
    const double v = pattern ? 1.0 : parse_real(tok[2], line);
    if (v < 0.0) throw ParseError("negative value " + std::string(tok[2]), line);
    entries.push_back({{i, j, v}, line});
  }
  if (!have_size) throw ParseError("missing size line", line);
  if (entries.size() != declared)
    throw ParseError("expected " + std::to_string(declared) + " entries, found " +
                         std::to_string(entries.size()),
                     line);
  return assemble(rows, cols, std::move(entries));
}

SparseMatrix load_triplets(std::istream& in, const std::string& first_line) {
  std::vector<PendingEntry> entries;
  std::size_t rows = 0, cols = 0;
  std::size_t line = 0;
  auto consume = [&](const std::string& text) {
    ++line;
    const auto s = trim(text);
    if (s.empty() || s.front() == '#' || s.front() == '%') return;
    const auto tok = split_ws(s);
    if (tok.size() != 3) throw ParseError("expected 'row col value'", line);
    const std::size_t i = parse_index(tok[0], 0, line);
    const std::size_t j = parse_index(tok[1], 0, line);
    const double v = parse_real(tok[2], line);
    if (v < 0.0) throw ParseError("negative value " + std::string(tok[2]), line);
    rows = std::max(rows, i + 1);
    cols = std::max(cols, j + 1);
    entries.push_back({{i, j, v}, line});
  };
  consume(first_line);
  std::string text;
  while (std::getline(in, text)) consume(text);
  if (entries.empty()) throw ParseError("no entries", line);
  return assemble(rows, cols, std::move(entries));
}

}  // namespace

SparseMatrix load_sparse(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string first;
  if (!std::getline(in, first)) throw ParseError("empty file", 0);
  if (lower(trim(first)).rfind("%%matrixmarket", 0) == 0) return load_matrix_market(in, first);
  return load_triplets(in, first);
}

void save_sparse(const std::filesystem::path& path, const SparseMatrix& X) {
  auto out = open_output(path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << X.rows() << ' ' << X.cols() << ' ' << X.nnz() << '\n';
  for (const auto& t : X.triplets())
    out << t.row + 1 << ' ' << t.col + 1 << ' ' << format_double(t.value) << '\n';
  if (!out) throw ValidationError("failed writing '" + path.string() + "'");
}

DenseMatrix load_dense(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line = 0;
  std::string text;
  while (std::getline(in, text)) {
    ++line;
    const auto s = trim(text);
    if (s.empty() || s.front() == '#') continue;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = s.find(',', start);
      const auto field = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
      const double v = parse_real(field, line);
      if (v < 0.0) throw ParseError("negative value " + std::string(trim(field)), line);
      values.push_back(v);
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw ParseError("row has " + std::to_string(count) + " columns, expected " +
                           std::to_string(cols),
                       line);
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("no data rows", line);
  return DenseMatrix(rows, cols, std::move(values));
}

void save_dense(const std::filesystem::path& path, const DenseMatrix& X,
                const std::vector<std::string>& header_lines) {
  auto out = open_output(path);
  for (const auto& h : header_lines) out << "# " << h << '\n';
  for (std::size_t i = 0; i < X.rows(); ++i) {
    const auto row = X.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << format_double(row[j]);
    }
    out << '\n';
  }
  if (!out) throw ValidationError("failed writing '" + path.string() + "'");
}

std::vector<std::size_t> Labels::class_sizes() const {
  std::vector<std::size_t> sizes(classes(), 0);
  for (std::size_t c : index) ++sizes[c];
  return sizes;
}

Labels load_labels(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<long long> raw;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto s = trim(text);
    if (s.empty() || s.front() == '#') continue;
    raw.push_back(parse_integer(s, line));
  }
  if (raw.empty()) throw ParseError("no labels", line);
  Labels out;
  out.original_values = raw;
  std::sort(out.original_values.begin(), out.original_values.end());
  out.original_values.erase(std::unique(out.original_values.begin(), out.original_values.end()),
                            out.original_values.end());
  out.index.reserve(raw.size());
  for (long long v : raw) {
    const auto it = std::lower_bound(out.original_values.begin(), out.original_values.end(), v);
    out.index.push_back(static_cast<std::size_t>(it - out.original_values.begin()));
  }
  return out;
}

bool looks_sparse(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".mtx" || ext == ".coo" || ext == ".triplets") return true;
  if (ext == ".csv") return false;
  std::ifstream in(path);
  std::string first;
  if (in && std::getline(in, first)) return lower(trim(first)).rfind("%%matrixmarket", 0) == 0;
  return false;
}

}  // namespace drnmf
