#include "gasr/observed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_set>

#include "gasr/rng.hpp"

namespace gasr {

namespace {

inline std::uint64_t cell_key(int i, int j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}

bool parse_double(std::string_view field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_int(std::string_view field, int& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

std::vector<std::string_view> split_fields(std::string_view line, std::string_view delim) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(delim, pos);
    if (next == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + delim.size();
  }
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

void ObservedMatrix::validate() const {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(entries.size());
  for (const Entry& e : entries) {
    if (e.row < 0 || e.row >= m || e.col < 0 || e.col >= n)
      throw DataError("entry index (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                      ") outside " + std::to_string(m) + "x" + std::to_string(n));
    if (!seen.insert(cell_key(e.row, e.col)).second)
      throw DataError("duplicate entry at (" + std::to_string(e.row) + ", " +
                      std::to_string(e.col) + ")");
  }
}

std::pair<double, double> ObservedMatrix::value_range() const {
  if (entries.empty()) throw DataError("value_range: matrix has no entries");
  double lo = entries.front().value, hi = lo;
  for (const Entry& e : entries) {
    lo = std::min(lo, e.value);
    hi = std::max(hi, e.value);
  }
  return {lo, hi};
}

double ObservedMatrix::sample_variance() const {
  if (entries.size() < 2) return 1.0;
  double mean = 0.0;
  for (const Entry& e : entries) mean += e.value;
  mean /= static_cast<double>(entries.size());
  double ss = 0.0;
  for (const Entry& e : entries) ss += (e.value - mean) * (e.value - mean);
  return ss / static_cast<double>(entries.size() - 1);
}

int IdMap::intern(const std::string& id) {
  auto [it, inserted] = index_.try_emplace(id, static_cast<int>(ids_.size()));
  if (inserted) ids_.push_back(id);
  return it->second;
}

int IdMap::lookup(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

TripletTable parse_csv_triplets(std::string_view text, std::string_view delimiter,
                                DuplicatePolicy duplicates) {
  if (delimiter.empty()) throw std::invalid_argument("parse_csv_triplets: empty delimiter");
  TripletTable table;
  std::unordered_set<std::uint64_t> seen;
  bool any_line = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;

    const auto fields = split_fields(line, delimiter);
    if (!any_line) {
      any_line = true;
      double probe;
      if (!parse_double(fields[0], probe)) continue;  // header line
    }
    if (fields.size() < 3)
      throw DataError("line " + std::to_string(line_no) + ": expected at least 3 fields");
    double value;
    if (!parse_double(fields[2], value))
      throw DataError("line " + std::to_string(line_no) + ": value field does not parse: '" +
                      std::string(fields[2]) + "'");
    const int i = table.rows.intern(std::string(fields[0]));
    const int j = table.cols.intern(std::string(fields[1]));
    if (!seen.insert(cell_key(i, j)).second) {
      if (duplicates == DuplicatePolicy::Error)
        throw DataError("line " + std::to_string(line_no) + ": duplicate entry for (" +
                        std::string(fields[0]) + ", " + std::string(fields[1]) + ")");
      continue;  // keep first occurrence
    }
    table.matrix.entries.push_back({i, j, value});
  }
  if (!any_line) throw DataError("parse_csv_triplets: empty input");
  if (table.matrix.entries.empty()) throw DataError("parse_csv_triplets: no data rows");
  table.matrix.m = table.rows.size();
  table.matrix.n = table.cols.size();
  return table;
}

TripletTable parse_movielens(std::string_view text, DuplicatePolicy duplicates) {
  return parse_csv_triplets(text, "::", duplicates);
}

ObservedMatrix parse_indexed_csv(std::string_view text, int m, int n) {
  const TripletTable table = parse_csv_triplets(text, ",", DuplicatePolicy::Error);
  ObservedMatrix out;
  int max_i = -1, max_j = -1;
  out.entries.reserve(table.matrix.entries.size());
  for (const Entry& e : table.matrix.entries) {
    int i, j;
    const std::string& ri = table.rows.external(e.row);
    const std::string& cj = table.cols.external(e.col);
    if (!parse_int(ri, i) || !parse_int(cj, j))
      throw DataError("parse_indexed_csv: non-integer index '" + ri + "'/'" + cj + "'");
    if (i < 0 || j < 0) throw DataError("parse_indexed_csv: negative index");
    max_i = std::max(max_i, i);
    max_j = std::max(max_j, j);
    out.entries.push_back({i, j, e.value});
  }
  out.m = (m >= 0) ? m : max_i + 1;
  out.n = (n >= 0) ? n : max_j + 1;
  out.validate();
  return out;
}

std::string to_csv(const ObservedMatrix& matrix) {
  std::string out;
  out.reserve(matrix.entries.size() * 24);
  char buf[64];
  for (const Entry& e : matrix.entries) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", e.row, e.col, e.value);
    out += buf;
  }
  return out;
}

TripletTable preprocess_ratings(const TripletTable& raw, int min_row_ratings,
                                const std::vector<std::pair<double, double>>& value_map) {
  if (min_row_ratings < 0) throw std::invalid_argument("preprocess_ratings: min_row_ratings < 0");

  // Keep-first dedup, then per-row counts over the deduped set.
  std::unordered_set<std::uint64_t> seen;
  std::vector<Entry> deduped;
  deduped.reserve(raw.matrix.entries.size());
  for (const Entry& e : raw.matrix.entries)
    if (seen.insert(cell_key(e.row, e.col)).second) deduped.push_back(e);

  std::vector<int> row_count(raw.matrix.m, 0);
  for (const Entry& e : deduped) ++row_count[e.row];

  auto map_value = [&](double v) {
    for (const auto& [from, to] : value_map)
      if (std::abs(v - from) <= 1e-9) return to;
    throw DataError("preprocess_ratings: value " + std::to_string(v) + " not in rating map");
  };

  TripletTable out;
  out.cols = raw.cols;
  out.matrix.n = raw.matrix.n;
  for (const Entry& e : deduped) {
    if (row_count[e.row] < min_row_ratings) continue;
    const int i = out.rows.intern(raw.rows.external(e.row));
    out.matrix.entries.push_back({i, e.col, map_value(e.value)});
  }
  out.matrix.m = out.rows.size();
  return out;
}

std::vector<ObservedMatrix> split(const ObservedMatrix& src, const std::vector<double>& fractions,
                                  std::uint64_t seed) {
  if (fractions.empty()) throw std::invalid_argument("split: no fractions given");
  double sum = 0.0;
  for (double f : fractions) {
    if (!(f > 0.0)) throw std::invalid_argument("split: fractions must be positive");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("split: fractions must sum to 1 (got " + std::to_string(sum) + ")");

  const std::size_t total = src.entries.size();
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  RngStream rng(seed, 0);
  for (std::size_t i = total; i > 1; --i) {
    const std::size_t j = rng.next_below(i);
    std::swap(order[i - 1], order[j]);
  }

  // Floor each part, then hand leftovers to parts in declaration order.
  const std::size_t parts = fractions.size();
  std::vector<std::size_t> sizes(parts);
  std::size_t assigned = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    sizes[p] = static_cast<std::size_t>(fractions[p] * static_cast<double>(total));
    assigned += sizes[p];
  }
  for (std::size_t p = 0; assigned < total; p = (p + 1) % parts) {
    ++sizes[p];
    ++assigned;
  }

  std::vector<ObservedMatrix> out(parts);
  std::size_t cursor = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    out[p].m = src.m;
    out[p].n = src.n;
    std::vector<std::size_t> picked(order.begin() + cursor, order.begin() + cursor + sizes[p]);
    cursor += sizes[p];
    std::sort(picked.begin(), picked.end());  // keep source order within each part
    out[p].entries.reserve(picked.size());
    for (std::size_t idx : picked) out[p].entries.push_back(src.entries[idx]);
  }
  return out;
}

EvaluationSplit make_evaluation_split(const ObservedMatrix& src, double train_fraction,
                                      std::uint64_t seed) {
  if (!(train_fraction > 0.0) || !(train_fraction < 1.0))
    throw std::invalid_argument("make_evaluation_split: train_fraction must lie in (0, 1)");
  auto parts = split(src, {train_fraction, 1.0 - train_fraction}, seed);
  return {std::move(parts[0]), std::move(parts[1]), seed};
}

}  // namespace gasr
