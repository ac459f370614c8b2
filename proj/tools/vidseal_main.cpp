// vidseal: detect temporally tampered videos from robust hashes of tiled frames.
//
// Exit codes: 0 clean, 1 operated (detect only), 2 input/config error,
// 3 I/O error while writing outputs.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vidseal/detector.hpp"
#include "vidseal/error.hpp"
#include "vidseal/eval.hpp"
#include "vidseal/frame_io.hpp"
#include "vidseal/hash_store.hpp"
#include "vidseal/run_config.hpp"
#include "vidseal/tamper_sim.hpp"

namespace fs = std::filesystem;
using namespace vidseal;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitOperated = 1;
constexpr int kExitInput = 2;
constexpr int kExitIo = 3;

// Raw flag values; whether a flag was given is read from CLI11 afterwards.
struct Flags {
  int n = kDefaultGridSide;
  int d = kDefaultThreshold;
  std::string mode = "dual";
  std::string tile = "96x54";
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string config;

  CLI::Option* n_opt = nullptr;
  CLI::Option* d_opt = nullptr;
  CLI::Option* mode_opt = nullptr;
  CLI::Option* tile_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
  f.n_opt = cmd->add_option("--n", f.n, "Grid side of the extended frame")->check(CLI::Range(2, 255));
  f.d_opt = cmd->add_option("--d", f.d, "Hamming-distance threshold")->check(CLI::Range(0, 121));
  f.mode_opt = cmd->add_option("--mode", f.mode, "single | dual")
                   ->check(CLI::IsMember({"single", "dual"}));
  f.tile_opt = cmd->add_option("--tile", f.tile, "Tile size WxH");
  f.seed_opt = cmd->add_option("--seed", f.seed, "RNG seed");
  f.threads_opt = cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--config", f.config, "JSON config file (flags take precedence)");
}

// Flags > config file > VIDSEAL_THREADS (threads only) > defaults.
struct ResolvedConfig {
  RunConfig config;
  bool n_explicit = false;
  bool tile_explicit = false;
};

ResolvedConfig resolve(const Flags& f) {
  ResolvedConfig out;
  if (auto env = threads_from_env()) out.config.threads = *env;
  if (!f.config.empty()) {
    const auto file = load_config_file(f.config);
    file.apply_to(out.config);
    out.n_explicit = file.n.has_value();
    out.tile_explicit = file.tile.has_value();
  }
  if (f.n_opt->count()) out.config.n = f.n;
  if (f.d_opt->count()) out.config.d = f.d;
  if (f.mode_opt->count()) out.config.mode = parse_mode(f.mode);
  if (f.tile_opt->count()) out.config.tile = parse_tile(f.tile);
  if (f.seed_opt->count()) out.config.seed = f.seed;
  if (f.threads_opt->count()) out.config.threads = f.threads;
  out.n_explicit = out.n_explicit || f.n_opt->count() > 0;
  out.tile_explicit = out.tile_explicit || f.tile_opt->count() > 0;
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadSpec, path.string() + ": " + e.what());
  }
}

fs::path resolve_against(const fs::path& base_file, const fs::path& p) {
  return p.is_absolute() ? p : base_file.parent_path() / p;
}

std::string fixed4(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << v;
  return out.str();
}

int cmd_hash(const std::string& ref_dir, const std::string& out_path, const Flags& flags) {
  const auto cfg = resolve(flags).config;
  const auto video = load_frame_sequence(ref_dir);
  const auto record = hash_video(video, cfg.n, cfg.tile, cfg.threads);
  write_record(record, out_path);
  std::cout << record.blocks.size() << (record.blocks.size() == 1 ? " block" : " blocks") << " ("
            << record.frame_count << " frames, n=" << record.n << ", pad " << record.pad_count
            << ") -> " << out_path << "\n";
  return kExitClean;
}

int cmd_detect(const std::string& record_path, const std::string& query_dir,
               const std::string& report_path, const std::string& csv_path, const Flags& flags) {
  const auto resolved = resolve(flags);
  const auto reference = read_record(record_path);
  RunConfig cfg = resolved.config;
  if (resolved.n_explicit && cfg.n != reference.n) {
    throw Error(ErrorCode::ConfigMismatch, "record was hashed with n=" + std::to_string(reference.n) +
                                               ", requested n=" + std::to_string(cfg.n));
  }
  if (resolved.tile_explicit && !(cfg.tile == reference.tile())) {
    throw Error(ErrorCode::ConfigMismatch, "record was hashed with tile " +
                                               to_string(reference.tile()) + ", requested " +
                                               to_string(cfg.tile));
  }
  const auto query = load_frame_sequence(query_dir);
  const auto query_record = hash_video(query, reference.n, reference.tile(), cfg.threads);
  const auto report = compare(reference, query_record, cfg.d, cfg.mode);

  if (!report_path.empty()) write_text(report_path, report_to_json(report));
  if (!csv_path.empty()) write_text(csv_path, report_to_csv(report));

  std::size_t flagged = 0;
  for (const auto& v : report.verdicts) flagged += v.operated ? 1 : 0;
  std::cout << (report.video_operated ? "OPERATED" : "clean") << ": " << flagged << " of "
            << report.verdicts.size() << " blocks at d=" << report.d << " ("
            << to_string(report.mode) << ")" << (report.length_mismatch ? ", length mismatch" : "")
            << "\n";
  return report.video_operated ? kExitOperated : kExitClean;
}

int cmd_simulate(const std::string& src_dir, const std::string& spec_path, const std::string& out_dir,
                 const std::string& format, const Flags& flags) {
  const auto cfg = resolve(flags).config;
  auto spec_json = read_json(spec_path);
  if (!spec_json.is_object()) throw Error(ErrorCode::BadSpec, "simulation spec must be an object");
  if (spec_json.contains("op")) spec_json = nlohmann::json{{"ops", {spec_json}}};

  std::vector<TamperSpec> ops;
  if (spec_json.contains("ops")) {
    if (!spec_json.at("ops").is_array()) throw Error(ErrorCode::BadSpec, "'ops' must be an array");
    for (const auto& op : spec_json.at("ops")) ops.push_back(spec_from_json(op));
  }
  Distortion distortion;
  if (spec_json.contains("distortion")) {
    const auto& dj = spec_json.at("distortion");
    try {
      if (dj.contains("jpeg_quality")) distortion.jpeg_quality = dj.at("jpeg_quality").get<int>();
      distortion.scale = dj.value("scale", 1.0);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::BadSpec, e.what());
    }
  }
  int n = cfg.n;
  if (spec_json.contains("n")) n = spec_json.at("n").get<int>();

  // Validate donors before touching the source so a bad spec fails fast.
  for (const auto& op : ops) {
    if ((op.op == TamperOp::Insert || op.op == TamperOp::Replace) && !op.donor) {
      throw Error(ErrorCode::MissingDonor, to_string(op.op) + " needs a \"donor\" frame directory");
    }
  }

  const auto source = load_frame_sequence(src_dir);
  TamperResult result{source, {std::vector<bool>(source.size(), false)}};
  for (const auto& op : ops) {
    std::vector<Frame> donor;
    if (op.donor) donor = load_frame_sequence(resolve_against(spec_path, *op.donor));
    result = apply_tamper(result, op, donor);
  }
  result.video = apply_distortion(result.video, distortion, cfg.threads);

  const FrameFormat fmt = format == "ppm" ? FrameFormat::Ppm : FrameFormat::Png;
  save_frame_sequence(result.video, out_dir, fmt);
  write_truth(fs::path(out_dir) / "truth.json", result.truth, n, spec_json);
  std::cout << result.video.size() << " frames, " << result.truth.flagged_count()
            << " flagged -> " << out_dir << "\n";
  return kExitClean;
}

struct QueryEntry {
  std::string name;
  fs::path dir;
  fs::path truth;
};

std::vector<QueryEntry> read_manifest(const fs::path& path) {
  const auto j = read_json(path);
  std::vector<QueryEntry> out;
  try {
    for (const auto& q : j.at("queries")) {
      QueryEntry e;
      e.dir = resolve_against(path, q.at("dir").get<std::string>());
      e.name = q.value("name", e.dir.filename().string());
      e.truth = q.contains("truth") ? resolve_against(path, q.at("truth").get<std::string>())
                                    : e.dir / "truth.json";
      out.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadSpec, path.string() + ": " + e.what());
  }
  if (out.empty()) throw Error(ErrorCode::BadSpec, "manifest lists no queries");
  return out;
}

int cmd_eval(const std::string& record_path, const std::string& manifest_path,
             const std::string& out_csv, const std::string& calibration_out, const Flags& flags) {
  const auto cfg = resolve(flags).config;
  const auto reference = read_record(record_path);
  const auto entries = read_manifest(manifest_path);

  std::vector<LabeledQuery> queries;
  for (const auto& e : entries) {
    const auto video = load_frame_sequence(e.dir);
    GroundTruth truth;
    std::error_code ec;
    if (fs::exists(e.truth, ec)) {
      truth = read_truth(e.truth);
      if (truth.frame_flags.size() != video.size()) {
        throw Error(ErrorCode::BadSpec, e.truth.string() + " does not match the frame count");
      }
    } else {
      truth.frame_flags.assign(video.size(), false);
    }
    queries.push_back({hash_video(video, reference.n, reference.tile(), cfg.threads),
                       truth.block_labels(reference.n)});
  }

  std::cout << "query                blocks  pos  acc(single)  ap(single)   acc(dual)    ap(dual)\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::cout << std::left << std::setw(20) << entries[i].name << std::right;
    bool first = true;
    for (auto mode : {DetectionMode::Single, DetectionMode::Dual}) {
      const auto scored = score_queries(reference, std::span(&queries[i], 1), mode);
      if (first) {
        std::cout << std::setw(7) << scored.scores.size() << std::setw(5)
                  << std::count(scored.labels.begin(), scored.labels.end(), true);
        first = false;
      }
      const double acc = accuracy(confusion_at(scored.scores, scored.labels, cfg.d));
      std::string ap = "not defined";
      try {
        ap = fixed4(average_precision(scored.scores, scored.labels));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoPositives) throw;
      }
      std::cout << std::setw(13) << fixed4(acc) << std::setw(12) << ap;
    }
    std::cout << "\n";
  }

  const auto points = sweep(reference, queries, cfg.mode);
  const int calibrated = calibrate_threshold(points);
  std::cout << "evaluated at d=" << cfg.d << "; calibrated d=" << calibrated << " ("
            << to_string(cfg.mode) << ")\n";
  write_text(out_csv, sweep_to_csv(points));
  if (!calibration_out.empty()) {
    RunConfig calibrated_cfg = cfg;
    calibrated_cfg.n = reference.n;
    calibrated_cfg.tile = reference.tile();
    calibrated_cfg.d = calibrated;
    write_text(calibration_out, config_to_json(calibrated_cfg));
  }
  return kExitClean;
}

int cmd_synth(const std::string& kind, std::size_t frames, const std::string& size,
              const std::string& out_dir, const std::string& format, const Flags& flags) {
  const auto cfg = resolve(flags).config;
  const TileSize dims = parse_tile(size);
  const auto video = synth_video(parse_synth_kind(kind), frames, dims.width, dims.height, cfg.seed);
  save_frame_sequence(video, out_dir, format == "ppm" ? FrameFormat::Ppm : FrameFormat::Png);
  std::cout << video.size() << " frames -> " << out_dir << "\n";
  return kExitClean;
}

int cmd_heatmap(const std::string& out_csv, const Flags& flags) {
  const auto cfg = resolve(flags).config;
  const auto matrix = heatmap_experiment(cfg.n, cfg.mode, cfg.tile, cfg.threads);
  for (const auto& row : matrix) {
    for (int v : row) std::cout << std::setw(4) << v;
    std::cout << "\n";
  }
  if (!out_csv.empty()) write_text(out_csv, heatmap_to_csv(matrix));
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect temporally operated videos with robust hashing of extended frames"};
  app.require_subcommand(1);

  // One Flags per subcommand so each keeps its own option handles.
  Flags hash_flags, detect_flags, simulate_flags, eval_flags, synth_flags, heatmap_flags;
  std::string out, csv, format = "png", calibration_out;

  std::string ref_dir;
  auto* hash = app.add_subcommand("hash", "Hash a reference frame directory into a .vhr record");
  hash->add_option("ref_dir", ref_dir, "Reference frame directory")->required();
  hash->add_option("--out", out, "Output .vhr path")->required();
  add_common_flags(hash, hash_flags);

  std::string record_path, query_dir;
  auto* detect = app.add_subcommand("detect", "Compare a query frame directory against a record");
  detect->add_option("record", record_path, "Reference .vhr record")->required();
  detect->add_option("query_dir", query_dir, "Query frame directory")->required();
  detect->add_option("--out", out, "JSON report path");
  detect->add_option("--csv", csv, "Per-block CSV path");
  add_common_flags(detect, detect_flags);

  std::string src_dir, spec_path;
  auto* simulate = app.add_subcommand("simulate", "Tamper and/or distort a frame directory");
  simulate->add_option("src_dir", src_dir, "Source frame directory")->required();
  simulate->add_option("spec", spec_path, "Simulation spec JSON")->required();
  simulate->add_option("--out", out, "Output frame directory")->required();
  simulate->add_option("--format", format, "png | ppm")->check(CLI::IsMember({"png", "ppm"}));
  add_common_flags(simulate, simulate_flags);

  std::string manifest_path;
  auto* eval = app.add_subcommand("eval", "Acc/AP per query set and a threshold sweep");
  eval->add_option("record", record_path, "Reference .vhr record")->required();
  eval->add_option("manifest", manifest_path, "Query manifest JSON")->required();
  eval->add_option("--out", out, "Sweep CSV path")->required();
  eval->add_option("--calibration-out", calibration_out, "Write a config file with the calibrated d");
  add_common_flags(eval, eval_flags);

  std::string kind = "gradient_motion", size = "320x180";
  std::size_t frame_count = 192;
  auto* synth = app.add_subcommand("synth", "Write a synthetic frame directory");
  synth->add_option("--kind", kind, "solid | gradient_motion | noise_texture")
      ->check(CLI::IsMember({"solid", "gradient_motion", "noise_texture"}));
  synth->add_option("--frames", frame_count, "Frame count")->check(CLI::PositiveNumber);
  synth->add_option("--size", size, "Frame size WxH");
  synth->add_option("--out", out, "Output frame directory")->required();
  synth->add_option("--format", format, "png | ppm")->check(CLI::IsMember({"png", "ppm"}));
  add_common_flags(synth, synth_flags);

  auto* heatmap = app.add_subcommand("heatmap", "Black-frame position vs. distance experiment");
  heatmap->add_option("--out", out, "CSV path");
  add_common_flags(heatmap, heatmap_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*hash) return cmd_hash(ref_dir, out, hash_flags);
    if (*detect) return cmd_detect(record_path, query_dir, out, csv, detect_flags);
    if (*simulate) return cmd_simulate(src_dir, spec_path, out, format, simulate_flags);
    if (*eval) return cmd_eval(record_path, manifest_path, out, calibration_out, eval_flags);
    if (*synth) return cmd_synth(kind, frame_count, size, out, format, synth_flags);
    if (*heatmap) return cmd_heatmap(out, heatmap_flags);
  } catch (const Error& e) {
    std::cerr << "vidseal: " << e.what() << "\n";
    return e.code() == ErrorCode::IoError ? kExitIo : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "vidseal: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
