#include "foursplit/datasets.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace foursplit {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do u1 = uniform();
  while (u1 == 0.0);
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = rad * std::sin(ang);
  has_spare_ = true;
  return rad * std::cos(ang);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ArgumentError("Rng::below: empty range");
  // Rejection keeps the result unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do v = engine_();
  while (v >= limit);
  return v % n;
}

Matrix SparseDataset::to_dense() const {
  Matrix a = Matrix::Zero(rows(), cols);
  for (Index i = 0; i < rows(); ++i)
    for (const auto& [j, v] : samples[static_cast<std::size_t>(i)]) a(i, j) = v;
  return a;
}

Vector SparseDataset::label_vector() const {
  return Eigen::Map<const Vector>(labels.data(), static_cast<Index>(labels.size()));
}

namespace {

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

void append_double(std::string& out, double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

SparseDataset parse_sparse_dataset(std::istream& in) {
  SparseDataset data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string token;
    std::size_t pos = 0;
    SparseDataset::Row row;
    double label = 0.0;
    while (ls >> token) {
      ++pos;
      if (pos == 1) {
        if (!parse_number(token, label) || !std::isfinite(label)) throw ParseError(lineno, pos, "bad label '" + token + "'");
        continue;
      }
      const auto colon = token.find(':');
      if (colon == std::string::npos) throw ParseError(lineno, pos, "expected index:value, got '" + token + "'");
      long long idx = 0;
      double val = 0.0;
      const std::string_view sv(token);
      if (!parse_number(sv.substr(0, colon), idx)) throw ParseError(lineno, pos, "bad index in '" + token + "'");
      if (idx < 1) throw ParseError(lineno, pos, "index must be at least 1");
      if (!parse_number(sv.substr(colon + 1), val) || !std::isfinite(val))
        throw ParseError(lineno, pos, "bad value in '" + token + "'");
      const Index j = static_cast<Index>(idx - 1);
      if (!row.empty() && j <= row.back().first) throw ParseError(lineno, pos, "indices must increase");
      row.emplace_back(j, val);
    }
    if (pos == 0) continue;
    if (!row.empty()) data.cols = std::max(data.cols, row.back().first + 1);
    data.samples.push_back(std::move(row));
    data.labels.push_back(label);
  }
  if (in.bad()) throw IoError("read error while parsing dataset");
  return data;
}

SparseDataset parse_sparse_dataset(const std::string& text) {
  std::istringstream in(text);
  return parse_sparse_dataset(in);
}

SparseDataset load_sparse_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset '" + path + "'");
  return parse_sparse_dataset(in);
}

void write_sparse_dataset(std::ostream& out, const SparseDataset& data) {
  out << write_sparse_dataset(data);
  if (!out) throw IoError("write error while saving dataset");
}

std::string write_sparse_dataset(const SparseDataset& data) {
  if (data.labels.size() != data.samples.size()) throw ArgumentError("dataset: label count mismatch");
  std::string out;
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    append_double(out, data.labels[i]);
    for (const auto& [j, v] : data.samples[i]) {
      out += ' ';
      out += std::to_string(j + 1);
      out += ':';
      append_double(out, v);
    }
    out += '\n';
  }
  return out;
}

void scale_columns(Matrix& a) {
  for (Index j = 0; j < a.cols(); ++j) {
    const double n = a.col(j).norm();
    if (n > 0.0) a.col(j) /= n;
  }
}

CompletionInstance gen_lowrank_instance(Index m, Index n, Index r, Index s, std::uint64_t seed) {
  if (m < 1 || n < 1) throw ArgumentError("gen_lowrank_instance: empty shape");
  if (r < 0 || r > std::min(m, n)) throw ArgumentError("gen_lowrank_instance: rank out of range");
  if (s < 0 || s > m * n) throw ArgumentError("gen_lowrank_instance: more samples than entries");
  Rng rng(seed);
  Matrix u(m, r), v(r, n);
  for (Index j = 0; j < r; ++j)
    for (Index i = 0; i < m; ++i) u(i, j) = rng.normal();
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < r; ++i) v(i, j) = rng.normal();
  CompletionInstance inst;
  inst.seed = seed;
  inst.m = u * v;
  // Partial Fisher-Yates over the column-major linear indices.
  std::vector<Index> pool(static_cast<std::size_t>(m * n));
  for (Index i = 0; i < m * n; ++i) pool[static_cast<std::size_t>(i)] = i;
  inst.omega.reserve(static_cast<std::size_t>(s));
  for (Index t = 0; t < s; ++t) {
    const auto pick = static_cast<std::size_t>(t) + rng.below(static_cast<std::uint64_t>(m * n - t));
    std::swap(pool[static_cast<std::size_t>(t)], pool[pick]);
    const Index lin = pool[static_cast<std::size_t>(t)];
    inst.omega.emplace_back(lin % m, lin / m);
  }
  return inst;
}

std::pair<Matrix, Vector> gen_gaussian_ls(Index m, Index n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw ArgumentError("gen_gaussian_ls: empty shape");
  Rng rng(seed);
  Matrix a(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) a(i, j) = rng.normal();
  Vector b(m);
  for (Index i = 0; i < m; ++i) b(i) = rng.normal();
  return {std::move(a), std::move(b)};
}

}  // namespace foursplit
