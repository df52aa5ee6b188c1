#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "foursplit/problems.hpp"

namespace foursplit {

/// Seeded generator with a fixed, platform-independent stream: 64-bit
/// Mersenne twister, 53-bit uniforms and Box-Muller normals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Rows of (feature, value) pairs with 0-based, strictly increasing features.
struct SparseDataset {
  using Row = std::vector<std::pair<Index, double>>;

  std::vector<Row> samples;
  std::vector<double> labels;
  Index cols = 0;  // one past the largest feature index seen

  Index rows() const { return static_cast<Index>(samples.size()); }
  Matrix to_dense() const;
  Vector label_vector() const;

  bool operator==(const SparseDataset&) const = default;
};

/// Reads "label idx:value idx:value ..." lines with 1-based indices. Blank
/// lines are skipped. Errors report the line and the token position, the
/// label being token 1.
SparseDataset parse_sparse_dataset(std::istream& in);
SparseDataset parse_sparse_dataset(const std::string& text);
SparseDataset load_sparse_dataset(const std::string& path);

/// Writes the text format with shortest round-trip number formatting.
void write_sparse_dataset(std::ostream& out, const SparseDataset& data);
std::string write_sparse_dataset(const SparseDataset& data);

/// Scales each column of A to unit Euclidean norm; zero columns are left alone.
void scale_columns(Matrix& a);

struct CompletionInstance {
  Matrix m;
  EntryList omega;
  std::uint64_t seed = 0;
};

/// M = U V with standard normal U (m x r) and V (r x n), and s observed
/// entries drawn uniformly without replacement.
CompletionInstance gen_lowrank_instance(Index m, Index n, Index r, Index s, std::uint64_t seed);

/// Standard normal A (m x n) and b (m).
std::pair<Matrix, Vector> gen_gaussian_ls(Index m, Index n, std::uint64_t seed);

}  // namespace foursplit
