#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gasr/common.hpp"

namespace gasr {

/// One observed cell of the data matrix, 0-based dense indices.
struct Entry {
  int row = 0;
  int col = 0;
  double value = 0.0;

  bool operator==(const Entry&) const = default;
};

/// Sparse observed matrix: dimensions plus the list of observed entries.
/// Indices must be in range and (row, col) pairs unique; there must be at
/// least one entry before the matrix reaches the sampler.
struct ObservedMatrix {
  int m = 0;
  int n = 0;
  std::vector<Entry> entries;

  std::size_t n_obs() const { return entries.size(); }

  /// Throws DataError on out-of-range indices or duplicate cells.
  void validate() const;

  /// (min, max) over observed values; requires at least one entry.
  std::pair<double, double> value_range() const;

  /// Unbiased sample variance of the observed values; 1.0 when fewer than
  /// two entries are present.
  double sample_variance() const;
};

/// Insertion-ordered external-id -> dense-index table. Stable across runs,
/// which keeps remapped matrices reproducible.
class IdMap {
 public:
  int intern(const std::string& id);
  int lookup(const std::string& id) const;  // -1 when absent
  const std::string& external(int index) const { return ids_[index]; }
  int size() const { return static_cast<int>(ids_.size()); }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
};

/// A parsed triplet file: the dense matrix plus the id remapping tables.
struct TripletTable {
  ObservedMatrix matrix;
  IdMap rows;
  IdMap cols;
};

enum class DuplicatePolicy { Error, KeepFirst };

/// Parse delimited triplet text: row-id, col-id, value per non-empty line
/// (extra fields ignored). Ids are remapped to dense 0-based indices in
/// first-appearance order. A header line is skipped when its first field is
/// not numeric. Malformed lines and (by default) duplicate cells raise
/// DataError with the offending line number.
TripletTable parse_csv_triplets(std::string_view text, std::string_view delimiter = ",",
                                DuplicatePolicy duplicates = DuplicatePolicy::Error);

/// MovieLens ratings layout: userID::movieID::rating::timestamp.
TripletTable parse_movielens(std::string_view text,
                             DuplicatePolicy duplicates = DuplicatePolicy::Error);

/// Parse triplets whose ids are already dense 0-based indices; no
/// remapping, dimensions taken as max index + 1 (or the explicit m, n).
/// Used for synthetic exports where empty rows must keep their position.
ObservedMatrix parse_indexed_csv(std::string_view text, int m = -1, int n = -1);

/// Serialize as `row,col,value` lines with 17 significant digits, entries
/// in stored order.
std::string to_csv(const ObservedMatrix& matrix);

/// Ratings clean-up: drop duplicate cells (keep first occurrence), drop
/// rows with fewer than min_row_ratings entries, remap values through
/// value_map (keys matched within 1e-9; unmatched values raise DataError),
/// and rebuild the row id table densely.
TripletTable preprocess_ratings(const TripletTable& raw, int min_row_ratings,
                                const std::vector<std::pair<double, double>>& value_map);

/// Randomly partition entries into parts with the given fractions
/// (positive, summing to 1 within 1e-9). Sizes are floored with the
/// remainder assigned one-by-one in declaration order; the same seed always
/// yields the same partition. Parts keep the source dimensions.
std::vector<ObservedMatrix> split(const ObservedMatrix& src, const std::vector<double>& fractions,
                                  std::uint64_t seed);

/// Train/test split of one source matrix; train and test index sets are
/// disjoint and exhaustive.
struct EvaluationSplit {
  ObservedMatrix train;
  ObservedMatrix test;
  std::uint64_t seed = 0;
};

EvaluationSplit make_evaluation_split(const ObservedMatrix& src, double train_fraction,
                                      std::uint64_t seed);

}  // namespace gasr
