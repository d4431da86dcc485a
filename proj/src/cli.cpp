#include "vgcn/cli.hpp"

#include "vgcn/bench.hpp"
#include "vgcn/dataset.hpp"
#include "vgcn/dualgraph.hpp"
#include "vgcn/graphstore.hpp"
#include "vgcn/linalg.hpp"
#include "vgcn/nn.hpp"
#include "vgcn/train.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace vgcn::cli {

namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// convert
// ---------------------------------------------------------------------------

struct ConvertOptions {
  std::string input;
  std::string dataset;
  std::string labels;  // optional explicit IDX labels path
  std::string out;
  std::uint64_t limit = 0;
  int superpixels = 64;
  Scalar compactness = 10.0;
  Scalar spacing = 0.0;
  std::string color_space = "lab";
  bool paper_config = false;
  Scalar dp_epsilon = 1.5;
  bool perp_check = false;
  Scalar perp_tol = 30.0;
  int jobs = 0;
  std::string dump_chains;
};

fs::path infer_idx_labels_path(const fs::path& images) {
  std::string name = images.filename().string();
  auto replace = [&name](const std::string& from, const std::string& to) {
    const auto pos = name.find(from);
    if (pos != std::string::npos) name.replace(pos, from.size(), to);
  };
  replace("images", "labels");
  replace("idx3", "idx1");
  return images.parent_path() / name;
}

LabeledSet load_convert_input(const ConvertOptions& opt) {
  LabeledSet set;
  const fs::path input(opt.input);
  if (opt.dataset == "mnist" || opt.dataset == "fashion") {
    std::vector<std::pair<fs::path, fs::path>> pairs;
    if (fs::is_directory(input)) {
      for (const char* prefix : {"train", "t10k"}) {
        const fs::path images = input / (std::string(prefix) + "-images-idx3-ubyte");
        const fs::path labels = input / (std::string(prefix) + "-labels-idx1-ubyte");
        if (fs::exists(images) && fs::exists(labels)) pairs.emplace_back(images, labels);
      }
      if (pairs.empty())
        throw FormatError("no IDX image/label pairs found under " + input.string());
    } else {
      const fs::path labels = opt.labels.empty() ? infer_idx_labels_path(input)
                                                 : fs::path(opt.labels);
      pairs.emplace_back(input, labels);
    }
    for (const auto& [images_path, labels_path] : pairs) {
      auto images = load_idx_images(images_path);
      auto labels = load_idx_labels(labels_path);
      if (images.size() != labels.size())
        throw FormatError("image/label counts differ: " + images_path.string());
      std::move(images.begin(), images.end(), std::back_inserter(set.images));
      set.labels.insert(set.labels.end(), labels.begin(), labels.end());
    }
  } else if (opt.dataset == "cifar10") {
    std::vector<fs::path> files;
    if (fs::is_directory(input)) {
      for (const auto& entry : fs::directory_iterator(input))
        if (entry.path().extension() == ".bin") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      if (files.empty()) throw FormatError("no .bin batches found under " + input.string());
    } else {
      files.push_back(input);
    }
    for (const fs::path& file : files) {
      LabeledSet batch = load_cifar10_batch(file);
      std::move(batch.images.begin(), batch.images.end(), std::back_inserter(set.images));
      set.labels.insert(set.labels.end(), batch.labels.begin(), batch.labels.end());
    }
  } else {
    throw std::invalid_argument("unknown dataset: " + opt.dataset);
  }
  if (opt.limit > 0 && set.images.size() > opt.limit) {
    set.images.resize(opt.limit);
    set.labels.resize(opt.limit);
  }
  return set;
}

ColorSpace parse_color_space(const std::string& name) {
  if (name == "gray") return ColorSpace::gray;
  if (name == "rgb") return ColorSpace::rgb;
  if (name == "lab") return ColorSpace::lab;
  throw std::invalid_argument("unknown color space: " + name);
}

int run_convert(const ConvertOptions& opt) {
  const LabeledSet set = load_convert_input(opt);
  if (set.images.empty()) {
    write_graphs(opt.out, {});
    std::cout << "wrote " << opt.out << " records=0\n";
    return 0;
  }

  SnicConfig snic_cfg;
  snic_cfg.k = opt.superpixels;
  snic_cfg.compactness = opt.compactness;
  snic_cfg.spacing = opt.paper_config && opt.spacing <= 0 ? 50.0 : opt.spacing;
  snic_cfg.color_space = parse_color_space(opt.color_space);
  DualConfig dual_cfg;
  dual_cfg.perp_check = opt.perp_check;
  dual_cfg.perp_tolerance_deg = opt.perp_tol;

  const int jobs = opt.jobs > 0 ? opt.jobs
                                : std::max(1u, std::thread::hardware_concurrency());
  std::vector<GraphRecord> records(set.images.size());
  std::ofstream chain_dump;
  if (!opt.dump_chains.empty()) chain_dump.open(opt.dump_chains, std::ios::trunc);
  std::mutex io_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;

  auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= set.images.size()) return;
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const NormImage norm = normalize_image(set.images[i]);
        const Segmentation seg = snic_segment(norm, snic_cfg);
        const auto chains = simplify_chains(extract_boundaries(seg), opt.dp_epsilon);
        const VoronoiGraph vg = build_voronoi_graph(chains);
        DelaunayGraph graph = build_delaunay(vg, seg, dual_cfg);
        graph.features = node_features(seg, norm);
        records[i] = to_record(graph, set.labels[i]);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cout << "img=" << i << " label=" << set.labels[i] << " nodes=" << graph.node_count()
                  << " edges=" << graph.edge_count() << " xverts=" << vg.vertices.size()
                  << " xedges=" << vg.edges.size() << " ms=" << ms << "\n";
        if (chain_dump.is_open())
          for (std::size_t c = 0; c < chains.size(); ++c) {
            chain_dump << "img=" << i << " chain=" << c << " left=" << chains[c].left_region
                       << " right=" << chains[c].right_region << " n="
                       << chains[c].vertices.size();
            for (const Point& p : chains[c].vertices)
              chain_dump << " " << p.x() << "," << p.y();
            chain_dump << "\n";
          }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(io_mutex);
        failed = true;
        failure = "image " + std::to_string(i) + ": " + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failed) throw FormatError("convert failed: " + failure);

  const std::uint64_t bytes = write_graphs(opt.out, records);
  std::cout << "wrote " << opt.out << " records=" << records.size() << " bytes=" << bytes << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// train / eval
// ---------------------------------------------------------------------------

struct TrainOptions {
  std::string graphs;
  std::string model = "nvgcn";
  int heads = 2;
  Scalar self_loop_weight = 6.0;
  int epochs = 300;
  int patience = 10;
  Scalar lr = 1e-3;
  int batch_size = 128;
  Scalar test_fraction = 0.2;
  std::uint64_t seed = 0;
  std::string out;
  std::string metrics_out;
};

// The metrics file holds the reproducible fields only; wall-clock seconds
// go to stdout.
void write_metrics_file(const std::string& path, const std::vector<EpochMetrics>& history) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot open metrics file: " + path);
  for (const EpochMetrics& m : history) {
    std::ostringstream line;
    line.precision(17);
    line << "epoch=" << m.epoch << " train_loss=" << m.train_loss
         << " train_acc=" << m.train_accuracy << " val_acc=" << m.val_accuracy
         << " mults=" << m.mult_count;
    out << line.str() << "\n";
  }
}

int run_train(const TrainOptions& opt) {
  const auto records = read_graphs(opt.graphs);
  if (records.empty()) throw FormatError("no graph records in " + opt.graphs);

  ModelConfig cfg = default_config(variant_from_name(opt.model), records.front().feature_width());
  cfg.heads = opt.heads;
  cfg.self_loop_weight = opt.self_loop_weight;
  TrainConfig train_cfg;
  train_cfg.epochs = opt.epochs;
  train_cfg.patience = opt.patience;
  train_cfg.lr = opt.lr;
  train_cfg.batch_size = opt.batch_size;
  train_cfg.test_fraction = opt.test_fraction;
  train_cfg.seed = opt.seed;

  Model model = build_model(cfg, opt.seed);
  FitResult result = fit(std::move(model), records, train_cfg, &std::cout);
  std::cout << "best_epoch=" << result.best_epoch
            << " best_val_acc=" << result.best_val_accuracy << "\n";
  if (!opt.out.empty()) {
    save_checkpoint(opt.out, result.best_model, result.best_adam);
    std::cout << "wrote " << opt.out << "\n";
  }
  if (!opt.metrics_out.empty()) write_metrics_file(opt.metrics_out, result.history);
  return 0;
}

struct EvalOptions {
  std::string ckpt;
  std::string graphs;
  int batch_size = 128;
};

int run_eval(const EvalOptions& opt) {
  auto [model, adam] = load_checkpoint(opt.ckpt);
  const auto records = read_graphs(opt.graphs);
  if (records.empty()) throw FormatError("no graph records in " + opt.graphs);
  const Scalar accuracy = evaluate(model, records, opt.batch_size);
  std::cout << "accuracy=" << accuracy << " graphs=" << records.size() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchOptions {
  std::string mode = "opcount";
  std::string graphs;
  std::string ratios = "0.33,0.5,1,2,3";
  int features = 64;
  int epochs = 3;
  int warmup = 1;
  std::string seeds = "1,2,3";
  int batch_size = 128;
  Scalar lr = 1e-3;
};

std::vector<Scalar> parse_scalar_list(const std::string& csv) {
  std::vector<Scalar> values;
  std::stringstream stream(csv);
  std::string token;
  while (std::getline(stream, token, ',')) values.push_back(std::stod(token));
  return values;
}

int run_bench_opcount(const BenchOptions& opt) {
  const auto records = read_graphs(opt.graphs);
  if (records.empty()) throw FormatError("no graph records in " + opt.graphs);
  const GraphRecord& graph = records.front();
  const int m = graph.node_count();
  const int f = opt.features;

  std::printf("graph: nodes=%d edges=%zu features=%d\n", m, graph.edges.size(), f);
  std::printf("%8s %6s | %14s %14s %9s | %14s %14s %9s\n", "ratio", "F'", "model_with",
              "model_without", "model_red", "meas_with", "meas_without", "meas_red");
  for (Scalar ratio : parse_scalar_list(opt.ratios)) {
    const int fp = std::max(1, static_cast<int>(std::lround(ratio * f)));
    CountModel model{m, f, fp, true};
    const std::int64_t with_degree = analytic_mult_count(model);
    model.with_degree = false;
    const std::int64_t without_degree = analytic_mult_count(model);
    const Scalar model_red = reduction_percentage(f, fp);

    const StageCounts gcn = measured_layer_counts(graph, f, fp, Variant::gcn);
    const StageCounts nvgcn = measured_layer_counts(graph, f, fp, Variant::nvgcn);
    const Scalar measured_red =
        100.0 * static_cast<Scalar>(gcn.total() - nvgcn.total()) / static_cast<Scalar>(gcn.total());
    std::printf("%8.3f %6d | %14lld %14lld %8.2f%% | %14lld %14lld %8.2f%%\n",
                static_cast<double>(ratio), fp, static_cast<long long>(with_degree),
                static_cast<long long>(without_degree), static_cast<double>(model_red),
                static_cast<long long>(gcn.total()), static_cast<long long>(nvgcn.total()),
                static_cast<double>(measured_red));
    std::printf("opcount ratio=%g fp=%d model_with=%lld model_without=%lld model_red=%.4f "
                "meas_with=%lld meas_without=%lld meas_red=%.4f delta=%lld\n",
                static_cast<double>(ratio), fp, static_cast<long long>(with_degree),
                static_cast<long long>(without_degree), static_cast<double>(model_red),
                static_cast<long long>(gcn.total()), static_cast<long long>(nvgcn.total()),
                static_cast<double>(measured_red),
                static_cast<long long>(gcn.total() - nvgcn.total()));
  }
  return 0;
}

int run_bench_time(const BenchOptions& opt) {
  const auto records = read_graphs(opt.graphs);
  if (records.empty()) throw FormatError("no graph records in " + opt.graphs);
  TimeBenchConfig cfg;
  cfg.epochs = opt.epochs;
  cfg.warmup = opt.warmup;
  cfg.seeds.clear();
  for (Scalar s : parse_scalar_list(opt.seeds))
    cfg.seeds.push_back(static_cast<std::uint64_t>(s));
  cfg.batch_size = opt.batch_size;
  cfg.lr = opt.lr;

  const auto series = epoch_time_bench(records, cfg);
  std::printf("%8s %6s %12s\n", "variant", "seed", "mean_s/epoch");
  for (const TimeSeries& ts : series) {
    std::printf("%8s %6llu %12.4f\n", ts.name.c_str(),
                static_cast<unsigned long long>(ts.seed), ts.mean_seconds);
    std::printf("time variant=%s seed=%llu mean_s=%.6f", ts.name.c_str(),
                static_cast<unsigned long long>(ts.seed), ts.mean_seconds);
    for (double s : ts.epoch_seconds) std::printf(" epoch_s=%.6f", s);
    std::printf("\n");
  }

  // Ordering summary per seed.
  int nvgcn_faster = 0, gat1_faster = 0, seed_count = 0;
  for (std::uint64_t seed : cfg.seeds) {
    double gcn = 0, nvgcn = 0, gat1 = 0, gat2 = 0;
    for (const TimeSeries& ts : series)
      if (ts.seed == seed) {
        if (ts.name == "gcn") gcn = ts.mean_seconds;
        if (ts.name == "nvgcn") nvgcn = ts.mean_seconds;
        if (ts.name == "gat1") gat1 = ts.mean_seconds;
        if (ts.name == "gat2") gat2 = ts.mean_seconds;
      }
    ++seed_count;
    if (nvgcn < gcn) ++nvgcn_faster;
    if (gat1 < gat2) ++gat1_faster;
  }
  std::printf("ordering nvgcn_lt_gcn=%d/%d gat1_lt_gat2=%d/%d\n", nvgcn_faster, seed_count,
              gat1_faster, seed_count);
  return 0;
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

struct StatsOptions {
  std::string graphs;
  int bins = 16;
};

int run_stats(const StatsOptions& opt) {
  const auto records = read_graphs(opt.graphs);
  std::cout << "records=" << records.size() << "\n";
  if (records.empty()) return 0;
  const int feature_width = records.front().feature_width();

  std::int64_t total_nodes = 0, total_edges = 0, total_degree_sum = 0;
  int min_nodes = records.front().node_count(), max_nodes = min_nodes;
  int min_degree = std::numeric_limits<int>::max(), max_degree = 0;
  std::vector<std::int64_t> label_histogram(10, 0);
  for (const GraphRecord& record : records) {
    total_nodes += record.node_count();
    total_edges += static_cast<std::int64_t>(record.edges.size());
    min_nodes = std::min(min_nodes, record.node_count());
    max_nodes = std::max(max_nodes, record.node_count());
    std::vector<int> degree(record.node_count(), 0);
    for (const auto& [a, b] : record.edges) {
      ++degree[a];
      ++degree[b];
    }
    for (int d : degree) {
      min_degree = std::min(min_degree, d);
      max_degree = std::max(max_degree, d);
      total_degree_sum += d;
    }
    if (record.label >= 0 && record.label < 10) ++label_histogram[record.label];
  }
  std::cout << "feature_width=" << feature_width << "\n";
  std::cout << "nodes mean=" << static_cast<double>(total_nodes) / records.size()
            << " min=" << min_nodes << " max=" << max_nodes << "\n";
  std::cout << "edges mean=" << static_cast<double>(total_edges) / records.size() << "\n";
  std::cout << "degree mean=" << static_cast<double>(total_degree_sum) / total_nodes
            << " min=" << min_degree << " max=" << max_degree << "\n";
  std::cout << "labels";
  for (int l = 0; l < 10; ++l) std::cout << " " << l << ":" << label_histogram[l];
  std::cout << "\n";

  // Per-feature entropy over a histogram of the [0,1] range.
  for (int j = 0; j < feature_width; ++j) {
    std::vector<std::int64_t> histogram(opt.bins, 0);
    std::int64_t count = 0;
    for (const GraphRecord& record : records)
      for (int i = 0; i < record.node_count(); ++i) {
        const Scalar v = std::clamp(record.features(i, j), 0.0, 1.0);
        const int bin = std::min(opt.bins - 1, static_cast<int>(v * opt.bins));
        ++histogram[bin];
        ++count;
      }
    std::vector<Scalar> probs(opt.bins);
    for (int b = 0; b < opt.bins; ++b)
      probs[b] = static_cast<Scalar>(histogram[b]) / static_cast<Scalar>(count);
    std::cout << "feature=" << j << " entropy_nats=" << feature_entropy(probs) << "\n";
  }
  return 0;
}

void report_effective(const CLI::App* sub) {
  std::ostringstream line;
  line << "run subcommand=" << sub->get_name();
  for (const CLI::Option* option : sub->get_options()) {
    if (option->get_name().rfind("--", 0) != 0) continue;
    const auto results = option->results();
    line << " " << option->get_name().substr(2) << "=";
    if (results.empty())
      line << option->get_default_str();
    else
      line << results[0];
  }
  std::cerr << line.str() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Image-to-graph conversion and graph-network training over "
               "superpixel Voronoi/Delaunay duals"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value config file");
  app.get_formatter()->column_width(38);

  ConvertOptions convert_opt;
  CLI::App* convert = app.add_subcommand("convert", "Convert images to a VGR1 graph file");
  convert->add_option("--input", convert_opt.input, "Dataset file or directory")->required();
  convert->add_option("--dataset", convert_opt.dataset, "mnist|fashion|cifar10")
      ->required()
      ->check(CLI::IsMember({"mnist", "fashion", "cifar10"}));
  convert->add_option("--labels", convert_opt.labels, "Explicit IDX labels path");
  convert->add_option("--out", convert_opt.out, "Output VGR1 path")->required();
  convert->add_option("--limit", convert_opt.limit, "Convert only the first N images");
  convert->add_option("--superpixels", convert_opt.superpixels, "Requested region count")
      ->capture_default_str();
  convert->add_option("--compactness", convert_opt.compactness, "Clustering compactness m")
      ->capture_default_str();
  convert->add_option("--spacing", convert_opt.spacing,
                      "Clustering spacing S (0 = sqrt(pixels/k))")
      ->capture_default_str();
  convert->add_option("--color-space", convert_opt.color_space, "lab|rgb|gray")
      ->check(CLI::IsMember({"lab", "rgb", "gray"}))
      ->capture_default_str();
  convert->add_flag("--paper-config", convert_opt.paper_config,
                    "Use spacing 50 unless --spacing is given");
  convert->add_option("--dp-epsilon", convert_opt.dp_epsilon, "Border simplification tolerance")
      ->capture_default_str();
  convert->add_flag("--perp-check", convert_opt.perp_check,
                    "Require generator/border perpendicularity");
  convert->add_option("--perp-tol", convert_opt.perp_tol, "Perpendicularity tolerance, degrees")
      ->capture_default_str();
  convert->add_option("--jobs", convert_opt.jobs, "Worker threads (0 = logical cores)");
  convert->add_option("--dump-chains", convert_opt.dump_chains,
                      "Write simplified border chains to a text file");

  TrainOptions train_opt;
  CLI::App* train = app.add_subcommand("train", "Train a model on a VGR1 graph file");
  train->add_option("--graphs", train_opt.graphs, "VGR1 input")->required();
  train->add_option("--model", train_opt.model, "gcn|nvgcn|gat")
      ->check(CLI::IsMember({"gcn", "nvgcn", "gat"}))
      ->capture_default_str();
  train->add_option("--heads", train_opt.heads, "Attention heads per layer")
      ->capture_default_str();
  train->add_option("--self-loop-weight", train_opt.self_loop_weight,
                    "Adjacency diagonal constant (nvgcn)")
      ->capture_default_str();
  train->add_option("--epochs", train_opt.epochs, "Epoch limit")->capture_default_str();
  train->add_option("--patience", train_opt.patience, "Early-stopping patience")
      ->capture_default_str();
  train->add_option("--lr", train_opt.lr, "Learning rate")->capture_default_str();
  train->add_option("--batch-size", train_opt.batch_size, "Graphs per batch")
      ->capture_default_str();
  train->add_option("--test-fraction", train_opt.test_fraction, "Held-out fraction")
      ->capture_default_str();
  train->add_option("--seed", train_opt.seed, "RNG seed")->envname("VGCN_SEED");
  train->add_option("--out", train_opt.out, "Checkpoint output path");
  train->add_option("--metrics-out", train_opt.metrics_out, "Per-epoch metrics file");

  EvalOptions eval_opt;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a checkpoint on a VGR1 graph file");
  eval->add_option("--ckpt", eval_opt.ckpt, "Checkpoint path")->required();
  eval->add_option("--graphs", eval_opt.graphs, "VGR1 input")->required();
  eval->add_option("--batch-size", eval_opt.batch_size, "Graphs per batch")
      ->capture_default_str();

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand("bench", "Multiplication counts and epoch timings");
  bench->add_option("--mode", bench_opt.mode, "opcount|time")
      ->check(CLI::IsMember({"opcount", "time"}))
      ->capture_default_str();
  bench->add_option("--graphs", bench_opt.graphs, "VGR1 input")->required();
  bench->add_option("--f-prime-ratios", bench_opt.ratios, "F'/F ratios, comma separated")
      ->capture_default_str();
  bench->add_option("--features", bench_opt.features, "Input feature width F for opcount")
      ->capture_default_str();
  bench->add_option("--epochs", bench_opt.epochs, "Measured epochs per run")
      ->capture_default_str();
  bench->add_option("--warmup", bench_opt.warmup, "Discarded warm-up epochs")
      ->capture_default_str();
  bench->add_option("--seeds", bench_opt.seeds, "Seeds, comma separated")->capture_default_str();
  bench->add_option("--batch-size", bench_opt.batch_size, "Graphs per batch")
      ->capture_default_str();
  bench->add_option("--lr", bench_opt.lr, "Learning rate")->capture_default_str();

  StatsOptions stats_opt;
  CLI::App* stats = app.add_subcommand("stats", "Summarize a VGR1 graph file");
  stats->add_option("--graphs", stats_opt.graphs, "VGR1 input")->required();
  stats->add_option("--bins", stats_opt.bins, "Histogram bins for feature entropy")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "event=error kind=usage detail=\"" << e.what() << "\"\n";
    return 1;
  }

  try {
    if (convert->parsed()) {
      report_effective(convert);
      return run_convert(convert_opt);
    }
    if (train->parsed()) {
      report_effective(train);
      return run_train(train_opt);
    }
    if (eval->parsed()) {
      report_effective(eval);
      return run_eval(eval_opt);
    }
    if (bench->parsed()) {
      report_effective(bench);
      return bench_opt.mode == "time" ? run_bench_time(bench_opt) : run_bench_opcount(bench_opt);
    }
    if (stats->parsed()) {
      report_effective(stats);
      return run_stats(stats_opt);
    }
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "event=error kind=numeric detail=\"" << e.what() << "\"\n";
    return 3;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "event=error kind=format detail=\"" << e.what() << "\"\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "event=error kind=usage detail=\"" << e.what() << "\"\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "event=error kind=data detail=\"" << e.what() << "\"\n";
    return 2;
  }
  return 0;
}

}  // namespace vgcn::cli
