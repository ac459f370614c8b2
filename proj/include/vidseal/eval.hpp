#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vidseal/detector.hpp"
#include "vidseal/hash_store.hpp"

namespace vidseal {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// (tp + tn) / total. Throws EmptyEvaluation when total is 0.
double accuracy(const ConfusionCounts& c);

// Block-level predictions: score >= d is positive.
ConfusionCounts confusion_at(std::span<const int> scores, const std::vector<bool>& labels, int d);

// AP = sum_j (R_j - R_{j-1}) P_j over thresholds at the distinct scores,
// highest first, with R_0 = 0. Throws NoPositives, and BadSpec on a size
// mismatch.
double average_precision(std::span<const int> scores, const std::vector<bool>& labels);

struct SweepPoint {
  int d = 0;
  std::optional<double> precision;  // absent when nothing is predicted positive
  std::optional<double> recall;     // absent when there are no positive labels
  double acc = 0.0;
  ConfusionCounts counts;
};

// Flattened block scores and labels for a set of queries.
struct ScoredBlocks {
  std::vector<int> scores;
  std::vector<bool> labels;
};

struct LabeledQuery {
  HashRecord record;
  std::vector<bool> block_labels;  // per query block
};

// Compares each query against the reference and pairs every verdict with its
// label. Verdicts past the end of the query's labels (blocks the query lost)
// count as positive.
ScoredBlocks score_queries(const HashRecord& reference, std::span<const LabeledQuery> queries,
                           DetectionMode mode);

// One point for each d in 0..121.
std::vector<SweepPoint> sweep(const ScoredBlocks& blocks);
std::vector<SweepPoint> sweep(const HashRecord& reference, std::span<const LabeledQuery> queries,
                              DetectionMode mode);

// Largest d with no false positives and no misses; otherwise the d with the
// best accuracy, ties going to the larger d. Throws EmptySweep.
int calibrate_threshold(std::span<const SweepPoint> points);

// Distance matrix for an all-white block against the same block with one
// black frame at each position in turn. Cell (a, b), 0-based, holds the
// distance for the black frame at position a * n + b.
std::vector<std::vector<int>> heatmap_experiment(int n, DetectionMode mode, TileSize tile = {},
                                                 unsigned threads = 0);

// "d,precision,recall,acc"; absent values are left empty.
std::string sweep_to_csv(std::span<const SweepPoint> points);
// "row,col,distance" with 1-based rows and columns.
std::string heatmap_to_csv(const std::vector<std::vector<int>>& matrix);

}  // namespace vidseal
