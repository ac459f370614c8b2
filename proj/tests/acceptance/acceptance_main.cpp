// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vidseal/detector.hpp"
#include "vidseal/eval.hpp"
#include "vidseal/extended_frame.hpp"
#include "vidseal/hash_store.hpp"
#include "vidseal/robust_hash.hpp"
#include "vidseal/tamper_sim.hpp"

namespace {

using namespace vidseal;
using Clock = std::chrono::steady_clock;

constexpr int kN = 8;
constexpr std::size_t kFrames = 192;
constexpr int kWidth = 320;
constexpr int kHeight = 180;
const TileSize kTile{96, 54};

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& outcome, double seconds,
            double limit_seconds = 0.0) {
  bool pass = outcome.pass;
  std::ostringstream line;
  line << outcome.detail;
  if (limit_seconds > 0.0) {
    line << "; " << static_cast<int>(seconds * 10) / 10.0 << " s (limit " << limit_seconds << " s)";
    pass = pass && seconds < limit_seconds;
  }
  if (!pass) ++failures;
  std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              line.str().c_str());
  std::fflush(stdout);
}

template <typename Fn>
void timed(int id, const std::string& name, double limit_seconds, Fn&& fn) {
  const auto start = Clock::now();
  Outcome outcome;
  try {
    outcome = fn();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  report(id, name, outcome, seconds, limit_seconds);
}

std::vector<std::size_t> span_of(std::size_t first, std::size_t last) {
  std::vector<std::size_t> out(last - first);
  std::iota(out.begin(), out.end(), first);
  return out;
}

std::vector<std::size_t> stride(std::size_t first, std::size_t step, std::size_t count) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(first + k * step);
  return out;
}

TamperSpec make_spec(TamperOp op, std::vector<std::size_t> positions, std::size_t donor_start = 0,
                     std::uint64_t seed = 0) {
  TamperSpec spec{op, std::move(positions)};
  spec.donor_start = donor_start;
  spec.seed = seed;
  return spec;
}

// Mixed insert/delete/reorder/replace tampering of about 15% of the frames.
TamperResult tamper_video(std::size_t which, const std::vector<Frame>& video,
                          const std::vector<Frame>& donor) {
  switch (which) {
    case 0: {
      auto r = apply_tamper(video, make_spec(TamperOp::Replace, span_of(16, 44)), donor);
      return apply_tamper(r, make_spec(TamperOp::Reorder, stride(70, 8, 8), 0, 101));
    }
    case 1: {
      auto r = apply_tamper(video, make_spec(TamperOp::Insert, span_of(140, 156), 40), donor);
      return apply_tamper(r, make_spec(TamperOp::Delete, span_of(170, 186)));
    }
    default: {
      auto r = apply_tamper(video, make_spec(TamperOp::Reorder, stride(0, 9, 8), 0, 303));
      r = apply_tamper(r, make_spec(TamperOp::Replace, span_of(90, 110), 80), donor);
      return apply_tamper(r, make_spec(TamperOp::Delete, span_of(176, 184)));
    }
  }
}

struct QuerySet {
  std::string name;
  std::vector<HashRecord> records;           // one per source video
  std::vector<std::vector<bool>> labels;     // block labels per source video
  std::size_t flagged_frames = 0;
  std::size_t total_frames = 0;
};

ScoredBlocks score_set(const std::vector<HashRecord>& references, const QuerySet& set,
                       DetectionMode mode) {
  ScoredBlocks all;
  for (std::size_t v = 0; v < references.size(); ++v) {
    const std::vector<LabeledQuery> q{{set.records[v], set.labels[v]}};
    const auto scored = score_queries(references[v], q, mode);
    all.scores.insert(all.scores.end(), scored.scores.begin(), scored.scores.end());
    all.labels.insert(all.labels.end(), scored.labels.begin(), scored.labels.end());
  }
  return all;
}

void append(ScoredBlocks& into, const ScoredBlocks& from) {
  into.scores.insert(into.scores.end(), from.scores.begin(), from.scores.end());
  into.labels.insert(into.labels.end(), from.labels.begin(), from.labels.end());
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

HashValue random_hash(std::mt19937_64& rng) {
  HashValue::Bytes bytes{};
  for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
  return HashValue(bytes);
}

double ap_bruteforce(const std::vector<int>& scores, const std::vector<bool>& labels) {
  std::set<int, std::greater<>> thresholds(scores.begin(), scores.end());
  const auto positives = static_cast<double>(std::count(labels.begin(), labels.end(), true));
  double ap = 0.0;
  double prev_recall = 0.0;
  for (int t : thresholds) {
    double tp = 0.0;
    double fp = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= t) (labels[i] ? tp : fp) += 1.0;
    }
    const double recall = tp / positives;
    ap += (recall - prev_recall) * (tp / (tp + fp));
    prev_recall = recall;
  }
  return ap;
}

}  // namespace

int main() {
  // Shared state for criteria 1 and 2.
  std::vector<std::vector<Frame>> sources;
  std::vector<Frame> donor;
  std::vector<HashRecord> references;
  std::vector<QuerySet> clean_sets;
  std::vector<QuerySet> tampered_sets;
  int calibrated_d = -1;
  const std::vector<std::pair<std::string, Distortion>> distortions{
      {"none", {}}, {"twitter_like", Distortion::twitter_like()},
      {"instagram_like", Distortion::instagram_like()}};

  auto build_clean = [&]() -> Outcome {
    for (std::uint64_t seed : {1, 2, 3}) {
      sources.push_back(synth_video(SynthKind::GradientMotion, kFrames, kWidth, kHeight, seed));
      references.push_back(hash_video(sources.back(), kN, kTile));
    }
    donor = synth_video(SynthKind::GradientMotion, kFrames, kWidth, kHeight, 99);
    for (std::size_t k = 1; k < distortions.size(); ++k) {
      QuerySet set{"0-" + std::to_string(k)};
      for (const auto& video : sources) {
        set.records.push_back(hash_video(apply_distortion(video, distortions[k].second), kN, kTile));
        set.labels.push_back(std::vector<bool>(block_count(video.size(), kN), false));
        set.total_frames += video.size();
      }
      clean_sets.push_back(std::move(set));
    }
    for (std::size_t k = 0; k < distortions.size(); ++k) {
      QuerySet set{"1-" + std::to_string(k)};
      for (std::size_t v = 0; v < sources.size(); ++v) {
        const auto tampered = tamper_video(v, sources[v], donor);
        set.records.push_back(
            hash_video(apply_distortion(tampered.video, distortions[k].second), kN, kTile));
        set.labels.push_back(tampered.truth.block_labels(kN));
        set.flagged_frames += tampered.truth.flagged_count();
        set.total_frames += tampered.video.size();
      }
      tampered_sets.push_back(std::move(set));
    }

    // Calibrate on the dual-mode sweep over every query set.
    ScoredBlocks all;
    for (const auto* sets : {&clean_sets, &tampered_sets}) {
      for (const auto& set : *sets) append(all, score_set(references, set, DetectionMode::Dual));
    }
    const auto points = sweep(all);
    calibrated_d = calibrate_threshold(points);

    std::size_t blocks = 0;
    std::size_t operated = 0;
    int worst = 0;
    for (const auto& set : clean_sets) {
      const auto scored = score_set(references, set, DetectionMode::Dual);
      const auto counts = confusion_at(scored.scores, scored.labels, calibrated_d);
      blocks += counts.total();
      operated += counts.fp + counts.tp;
      worst = std::max(worst, *std::max_element(scored.scores.begin(), scored.scores.end()));
    }
    std::ostringstream detail;
    detail << "calibrated d=" << calibrated_d << ", " << operated << " of " << blocks
           << " clean blocks operated, max clean distance " << worst;
    return {blocks == 9 * clean_sets.size() && operated == 0 && blocks > 0, detail.str()};
  };
  timed(1, "clean robustness", 120.0, build_clean);

  timed(2, "tamper detection", 300.0, [&]() -> Outcome {
    if (calibrated_d < 0) return {false, "no calibration available"};
    bool ok = true;
    std::ostringstream detail;
    for (const auto& set : tampered_sets) {
      const auto dual = score_set(references, set, DetectionMode::Dual);
      const auto single = score_set(references, set, DetectionMode::Single);
      const double dual_acc = accuracy(confusion_at(dual.scores, dual.labels, calibrated_d));
      const double dual_ap = average_precision(dual.scores, dual.labels);
      const double single_ap = average_precision(single.scores, single.labels);
      const double share = static_cast<double>(set.flagged_frames) / set.total_frames;
      ok = ok && dual_acc >= 0.95 && dual_ap >= 0.95 && single_ap <= dual_ap;
      detail << set.name << ": tampered " << fmt(share) << ", dual acc " << fmt(dual_acc)
             << " ap " << fmt(dual_ap) << ", single ap " << fmt(single_ap) << "; ";
    }
    detail << "d=" << calibrated_d;
    return {ok, detail.str()};
  });

  timed(3, "black-frame heatmap", 180.0, [&]() -> Outcome {
    const auto single = heatmap_experiment(10, DetectionMode::Single);
    const auto dual = heatmap_experiment(10, DetectionMode::Dual);
    std::vector<int> all;
    int single_min = HashValue::kBits;
    int dual_min = HashValue::kBits;
    for (int a = 0; a < 10; ++a) {
      for (int b = 0; b < 10; ++b) {
        all.push_back(single[a][b]);
        single_min = std::min(single_min, single[a][b]);
        dual_min = std::min(dual_min, dual[a][b]);
      }
    }
    std::sort(all.begin(), all.end());
    const double median = (all[49] + all[50]) / 2.0;
    bool corners_low = true;
    std::ostringstream detail;
    detail << "corners";
    for (auto [a, b] : {std::pair{0, 0}, {0, 9}, {9, 0}, {9, 9}}) {
      corners_low = corners_low && single[a][b] < median;
      detail << " " << single[a][b];
    }
    detail << " vs median " << median << "; min single " << single_min << ", min dual "
           << dual_min;
    return {corners_low && dual_min > single_min, detail.str()};
  });

  timed(4, "packed Hamming distance", 0.0, [&]() -> Outcome {
    std::mt19937_64 rng(4);
    int mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
      const auto a = random_hash(rng);
      const auto b = random_hash(rng);
      int naive = 0;
      for (int k = 0; k < HashValue::kBits; ++k) naive += a.bit(k) != b.bit(k);
      mismatches += hamming_distance(a, b) != naive;
    }
    return {mismatches == 0, std::to_string(mismatches) + " mismatches in 10000 pairs"};
  });

  timed(5, "average precision", 0.0, [&]() -> Outcome {
    std::mt19937 rng(5);
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t size = 1 + rng() % 60;
      std::vector<int> scores(size);
      std::vector<bool> labels(size);
      for (std::size_t i = 0; i < size; ++i) {
        scores[i] = static_cast<int>(rng() % 30);
        labels[i] = rng() % 3 == 0;
      }
      labels[rng() % size] = true;
      mismatches += average_precision(scores, labels) != ap_bruteforce(scores, labels);
    }
    const double worked =
        average_precision(std::vector<int>{10, 8, 6, 4}, {true, false, true, false});
    const bool worked_ok = std::abs(worked - 5.0 / 6.0) < 1e-12;
    return {mismatches == 0 && worked_ok, std::to_string(mismatches) +
                                              " mismatches in 1000 fixtures; worked example " +
                                              fmt(worked)};
  });

  timed(6, "corner-to-center permutation", 0.0, [&]() -> Outcome {
    bool ok = corner_to_center_permutation(2) == std::vector<int>{0, 1, 2, 3} &&
              corner_to_center_permutation(3) == std::vector<int>{4, 7, 1, 0, 8, 2, 3, 6, 5};
    for (int n = 2; n <= 16; ++n) {
      const auto perm = corner_to_center_permutation(n);
      std::set<int> seen(perm.begin(), perm.end());
      ok = ok && seen.size() == static_cast<std::size_t>(n * n) && *seen.begin() == 0 &&
           *seen.rbegin() == n * n - 1;
      if (n < 3) continue;
      auto dist2 = [n](int cell) {
        const int a = 2 * (cell / n) - (n - 1);
        const int b = 2 * (cell % n) - (n - 1);
        return a * a + b * b;
      };
      for (int corner : {0, n - 1, n * (n - 1), n * n - 1}) {
        ok = ok && dist2(perm[corner]) < dist2(corner);
      }
    }
    return {ok, "n = 2..16"};
  });

  timed(7, "record store", 0.0, [&]() -> Outcome {
    std::mt19937_64 rng(7);
    HashRecord single;
    single.frame_count = 64;
    single.blocks.push_back({random_hash(rng), random_hash(rng)});
    const std::size_t size = encode_record(single).size();
    int failures_rt = 0;
    for (int i = 0; i < 100; ++i) {
      HashRecord r;
      r.n = static_cast<std::uint16_t>(2 + rng() % 15);
      r.frame_count = static_cast<std::uint32_t>(1 + rng() % 4000);
      const std::size_t blocks = block_count(r.frame_count, r.n);
      r.pad_count = static_cast<std::uint16_t>(blocks * r.n * r.n - r.frame_count);
      for (std::size_t b = 0; b < blocks; ++b) r.blocks.push_back({random_hash(rng), random_hash(rng)});
      failures_rt += !(decode_record(encode_record(r)) == r);
    }
    return {size == 50 && failures_rt == 0, "single block " + std::to_string(size) + " bytes; " +
                                                std::to_string(failures_rt) +
                                                " round-trip failures in 100"};
  });

  timed(8, "determinism", 0.0, [&]() -> Outcome {
    auto run_once = [&](unsigned threads) {
      const auto video = synth_video(SynthKind::GradientMotion, kFrames, kWidth, kHeight, 1);
      const auto donor_video = synth_video(SynthKind::GradientMotion, kFrames, kWidth, kHeight, 99);
      const auto tampered = tamper_video(2, video, donor_video);
      const auto query = apply_distortion(tampered.video, Distortion::instagram_like(), threads);
      const auto ref = hash_video(video, kN, kTile, threads);
      const auto report = compare(ref, hash_video(query, kN, kTile, threads), 23, DetectionMode::Dual);
      const auto bytes = encode_record(ref);
      return std::string(bytes.begin(), bytes.end()) + report_to_json(report) +
             report_to_csv(report) + truth_to_json(tampered.truth, kN, nullptr).dump();
    };
    const auto a = run_once(1);
    const auto b = run_once(1);
    const auto c = run_once(4);
    return {a == b && a == c, a == b && a == c ? "byte-identical for threads 1, 1, 4"
                                               : "outputs differ between runs"};
  });

  timed(9, "threshold boundary", 0.0, [&]() -> Outcome {
    std::mt19937_64 rng(9);
    HashRecord ref;
    ref.frame_count = 128;
    ref.blocks = {{random_hash(rng), random_hash(rng)}, {random_hash(rng), random_hash(rng)}};
    HashRecord query = ref;
    for (int k = 0; k < 23; ++k) query.blocks[0].primary.set_bit(k, !query.blocks[0].primary.bit(k));
    for (int k = 0; k < 22; ++k) query.blocks[1].primary.set_bit(k, !query.blocks[1].primary.bit(k));
    bool ok = true;
    for (auto mode : {DetectionMode::Single, DetectionMode::Dual}) {
      const auto r = compare(ref, query, 23, mode);
      ok = ok && r.verdicts[0].dist_primary == 23 && r.verdicts[0].operated &&
           r.verdicts[1].dist_primary == 22 && !r.verdicts[1].operated;
    }
    return {ok, "distance 23 operated, 22 not, at d=23"};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
