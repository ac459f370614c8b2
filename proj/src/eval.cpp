#include "vidseal/eval.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "vidseal/error.hpp"
#include "vidseal/parallel.hpp"

namespace vidseal {

namespace {

constexpr int kSweepMax = HashValue::kBits + 1;

void check_sizes(std::span<const int> scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::BadSpec, "scores and labels differ in length");
  }
}

std::string format_fraction(double v) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << v;
  return out.str();
}

}  // namespace

double accuracy(const ConfusionCounts& c) {
  if (c.total() == 0) throw Error(ErrorCode::EmptyEvaluation, "no evaluated blocks");
  return static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
}

ConfusionCounts confusion_at(std::span<const int> scores, const std::vector<bool>& labels, int d) {
  check_sizes(scores, labels);
  ConfusionCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= d;
    if (labels[i]) {
      predicted ? ++c.tp : ++c.fn;
    } else {
      predicted ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

double average_precision(std::span<const int> scores, const std::vector<bool>& labels) {
  check_sizes(scores, labels);
  const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
  if (positives == 0) throw Error(ErrorCode::NoPositives, "average precision is not defined");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  double ap = 0.0;
  double prev_recall = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    // Everything tied at this score crosses the threshold together.
    const int threshold = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == threshold; ++i) {
      labels[order[i]] ? ++tp : ++fp;
    }
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = static_cast<double>(tp) / static_cast<double>(positives);
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
  }
  return ap;
}

ScoredBlocks score_queries(const HashRecord& reference, std::span<const LabeledQuery> queries,
                           DetectionMode mode) {
  ScoredBlocks out;
  for (const auto& query : queries) {
    // d only affects verdicts, which are recomputed from scores downstream.
    const auto report = compare(reference, query.record, kSweepMax, mode);
    for (const auto& v : report.verdicts) {
      out.scores.push_back(block_score(v, mode));
      out.labels.push_back(v.block_index < query.block_labels.size()
                               ? static_cast<bool>(query.block_labels[v.block_index])
                               : true);
    }
  }
  return out;
}

std::vector<SweepPoint> sweep(const ScoredBlocks& blocks) {
  std::vector<SweepPoint> points;
  points.reserve(kSweepMax + 1);
  for (int d = 0; d <= kSweepMax; ++d) {
    SweepPoint p;
    p.d = d;
    p.counts = confusion_at(blocks.scores, blocks.labels, d);
    p.acc = accuracy(p.counts);
    if (p.counts.tp + p.counts.fp > 0) {
      p.precision = static_cast<double>(p.counts.tp) / static_cast<double>(p.counts.tp + p.counts.fp);
    }
    if (p.counts.tp + p.counts.fn > 0) {
      p.recall = static_cast<double>(p.counts.tp) / static_cast<double>(p.counts.tp + p.counts.fn);
    }
    points.push_back(p);
  }
  return points;
}

std::vector<SweepPoint> sweep(const HashRecord& reference, std::span<const LabeledQuery> queries,
                              DetectionMode mode) {
  return sweep(score_queries(reference, queries, mode));
}

int calibrate_threshold(std::span<const SweepPoint> points) {
  if (points.empty()) throw Error(ErrorCode::EmptySweep, "cannot calibrate on an empty sweep");
  std::optional<int> separating;
  const SweepPoint* best = nullptr;
  for (const auto& p : points) {
    if (p.counts.fp == 0 && p.counts.fn == 0) separating = std::max(separating.value_or(p.d), p.d);
    if (!best || p.acc > best->acc || (p.acc == best->acc && p.d > best->d)) best = &p;
  }
  return separating ? *separating : best->d;
}

std::vector<std::vector<int>> heatmap_experiment(int n, DetectionMode mode, TileSize tile,
                                                 unsigned threads) {
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  const Frame white(tile.width, tile.height, 255, 255, 255);
  const Frame black(tile.width, tile.height);

  std::vector<Frame> tiles(cells, white);
  const HashValue ref_primary = compute_hash(assemble_mosaic(tiles, n, GridOrdering::Primary));
  const HashValue ref_corner = compute_hash(assemble_mosaic(tiles, n, GridOrdering::CornerToCenter));

  std::vector<int> flat(cells);
  parallel_for(cells, threads, [&](std::size_t x) {
    std::vector<Frame> query(cells, white);
    query[x] = black;
    const int primary =
        hamming_distance(ref_primary, compute_hash(assemble_mosaic(query, n, GridOrdering::Primary)));
    if (mode == DetectionMode::Single) {
      flat[x] = primary;
      return;
    }
    const int corner = hamming_distance(
        ref_corner, compute_hash(assemble_mosaic(query, n, GridOrdering::CornerToCenter)));
    flat[x] = std::max(primary, corner);
  });

  std::vector<std::vector<int>> matrix(n, std::vector<int>(n));
  for (std::size_t x = 0; x < cells; ++x) matrix[x / n][x % n] = flat[x];
  return matrix;
}

std::string sweep_to_csv(std::span<const SweepPoint> points) {
  std::ostringstream out;
  out << "d,precision,recall,acc\n";
  for (const auto& p : points) {
    out << p.d << ',' << (p.precision ? format_fraction(*p.precision) : "") << ','
        << (p.recall ? format_fraction(*p.recall) : "") << ',' << format_fraction(p.acc) << '\n';
  }
  return out.str();
}

std::string heatmap_to_csv(const std::vector<std::vector<int>>& matrix) {
  std::ostringstream out;
  out << "row,col,distance\n";
  for (std::size_t a = 0; a < matrix.size(); ++a) {
    for (std::size_t b = 0; b < matrix[a].size(); ++b) {
      out << a + 1 << ',' << b + 1 << ',' << matrix[a][b] << '\n';
    }
  }
  return out.str();
}

}  // namespace vidseal
