// Acceptance suite: runs every gate criterion end to end against a
// deterministic procedurally generated glyph corpus (the environment ships
// no dataset files, so the handwritten-digit corpus is stood in for by
// vgcn::make_synthetic_digits; same container format, image size and label
// structure). One PASS/FAIL line per criterion; exit code is the number of
// failed criteria.

#include "vgcn/bench.hpp"
#include "vgcn/cli.hpp"
#include "vgcn/dualgraph.hpp"
#include "vgcn/graphstore.hpp"
#include "vgcn/synthdata.hpp"
#include "vgcn/train.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace vgcn;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail) {
  if (!pass) ++g_failures;
  std::printf("CRITERION %2d %s  %s%s%s\n", id, pass ? "PASS" : "FAIL", name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Voronoi vertices of the digitized diagram: lattice corners where at least
// three distinct regions meet.
int voronoi_vertex_count(const Segmentation& seg) {
  int count = 0;
  for (int cy = 0; cy <= seg.height; ++cy)
    for (int cx = 0; cx <= seg.width; ++cx) {
      int labels[4];
      int n = 0;
      for (int dy = -1; dy <= 0; ++dy)
        for (int dx = -1; dx <= 0; ++dx) {
          const int x = cx + dx, y = cy + dy;
          if (x >= 0 && x < seg.width && y >= 0 && y < seg.height) labels[n++] = seg.label_at(x, y);
        }
      int distinct = 0;
      for (int i = 0; i < n; ++i) {
        bool seen = false;
        for (int j = 0; j < i; ++j) seen = seen || labels[i] == labels[j];
        if (!seen) ++distinct;
      }
      if (distinct >= 3) ++count;
    }
  return count;
}

struct ConvertedImage {
  Segmentation seg;
  VoronoiGraph vg;
  DelaunayGraph graph;
  GraphRecord record;
};

ConvertedImage convert_one(const RawImage& raw, int k) {
  SnicConfig snic_cfg;
  snic_cfg.k = k;
  ConvertedImage out;
  const NormImage norm = normalize_image(raw);
  out.seg = snic_segment(norm, snic_cfg);
  out.vg = build_voronoi_graph(simplify_chains(extract_boundaries(out.seg), 1.5));
  out.graph = build_delaunay(out.vg, out.seg, DualConfig{});
  out.graph.features = node_features(out.seg, norm);
  out.record = to_record(out.graph, 0);
  return out;
}

GraphRecord random_graph_record(std::mt19937_64& rng, int max_nodes, int feature_width) {
  GraphRecord record;
  const int nodes = 1 + static_cast<int>(rng() % max_nodes);
  record.features.resize(nodes, feature_width);
  std::uniform_real_distribution<Scalar> unit(0.0, 1.0);
  for (Eigen::Index i = 0; i < record.features.size(); ++i) record.features.data()[i] = unit(rng);
  record.label = static_cast<int>(rng() % 10);
  if (nodes > 1)
    for (int e = 0; e < 2 * nodes; ++e) {
      const auto a = static_cast<std::uint32_t>(rng() % nodes);
      const auto b = static_cast<std::uint32_t>(rng() % nodes);
      if (a != b) record.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  std::sort(record.edges.begin(), record.edges.end());
  record.edges.erase(std::unique(record.edges.begin(), record.edges.end()), record.edges.end());
  return record;
}

// ---------------------------------------------------------------------------
// 1. Reduction formula reproduction
// ---------------------------------------------------------------------------
void criterion_1() {
  auto round2 = [](Scalar v) { return std::round(v * 100.0) / 100.0; };
  bool pass = true;
  std::ostringstream detail;
  const std::pair<Scalar, Scalar> cases[] = {
      {1.0, 50.00}, {0.5, 57.14}, {1.0 / 3.0, 60.00}, {2.0, 40.00}, {3.0, 33.33}};
  for (const auto& [ratio, expected] : cases) {
    const Scalar got = round2(reduction_percentage(96.0, 96.0 * ratio));
    if (got != expected) {
      pass = false;
      detail << " ratio " << ratio << ": got " << got << " want " << expected;
    }
  }
  if (round2(reduction_percentage(1.0, 1e-12)) != 66.67) pass = false;
  if (round2(reduction_percentage(1.0, 1e12)) != 0.00) pass = false;
  report(1, pass, "reduction formula: 50/57.14/60/40/33.33 and limits 66.67/0",
         detail.str().empty() ? "all five ratios and both limits exact to 2 dp" : detail.str());
}

// ---------------------------------------------------------------------------
// 2. Counter identity: with-degree minus without-degree == 2*M*F exactly
// ---------------------------------------------------------------------------
void criterion_2(const std::vector<GraphRecord>& converted) {
  std::mt19937_64 rng(20240001);
  std::int64_t checked = 0, violations = 0;
  auto check = [&](const GraphRecord& graph) {
    const int f = 1 + static_cast<int>(rng() % 16);
    const int fp = 1 + static_cast<int>(rng() % 16);
    const StageCounts with_degree = measured_layer_counts(graph, f, fp, Variant::gcn);
    const StageCounts without = measured_layer_counts(graph, f, fp, Variant::nvgcn);
    ++checked;
    if (with_degree.total() - without.total() != 2LL * graph.node_count() * f) ++violations;
  };
  for (int i = 0; i < 100; ++i) check(random_graph_record(rng, 64, 3));
  for (int i = 0; i < 100 && i < static_cast<int>(converted.size()); ++i) check(converted[i]);
  std::ostringstream detail;
  detail << checked << " graphs (100 random + 100 converted), " << violations << " violations";
  report(2, violations == 0 && checked == 200, "counter identity: exact 2*M*F difference",
         detail.str());
}

// ---------------------------------------------------------------------------
// 3. Dual soundness on 1,000 converted images
// ---------------------------------------------------------------------------
void criterion_3(const std::vector<ConvertedImage>& corpus, double convert_seconds) {
  std::int64_t edges_checked = 0, violations = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const ConvertedImage& c : corpus) {
    const auto adjacency = region_adjacency(c.seg);
    for (const auto& edge : c.graph.edges) {
      ++edges_checked;
      if (adjacency.count(edge) == 0) ++violations;
    }
  }
  const double total = convert_seconds + seconds_since(t0);
  std::ostringstream detail;
  detail << corpus.size() << " images, " << edges_checked << " edges, " << violations
         << " violations, " << total << " s (budget 120 s)";
  report(3, violations == 0 && total < 120.0, "dual soundness oracle on converted corpus",
         detail.str());
}

// ---------------------------------------------------------------------------
// 4. Conversion speed and sub-quadratic scaling
// ---------------------------------------------------------------------------
void criterion_4(const std::vector<RawImage>& images) {
  SnicConfig snic_cfg;
  snic_cfg.k = 64;
  double t28 = 0, t56 = 0;
  double slowest = 0;
  for (int i = 0; i < 20; ++i) {
    const RawImage& raw = images[i];
    auto t0 = std::chrono::steady_clock::now();
    image_to_graph(raw, snic_cfg, DualConfig{}, 1.5);
    const double dt = seconds_since(t0);
    t28 += dt;
    slowest = std::max(slowest, dt);

    const RawImage big = upscale_nearest(raw, 2);
    t0 = std::chrono::steady_clock::now();
    image_to_graph(big, snic_cfg, DualConfig{}, 1.5);
    t56 += seconds_since(t0);
  }
  const double ratio = t56 / t28;
  std::ostringstream detail;
  detail << "slowest 28x28 conversion " << slowest << " s (budget 0.1 s); t(56x56)/t(28x28) = "
         << ratio << " (budget 5)";
  report(4, slowest < 0.1 && ratio <= 5.0, "conversion speed and scaling", detail.str());
}

// ---------------------------------------------------------------------------
// 5. Graph-size reproduction at k=64
// ---------------------------------------------------------------------------
void criterion_5(const std::vector<ConvertedImage>& corpus) {
  double nodes = 0, vverts = 0, vedges = 0, degree = 0, raw_x = 0;
  for (const ConvertedImage& c : corpus) {
    nodes += c.graph.node_count();
    vverts += voronoi_vertex_count(c.seg);
    vedges += static_cast<double>(c.vg.edges.size());
    raw_x += static_cast<double>(c.vg.vertices.size());
    degree += degree_stats(c.graph).mean;
  }
  const double n = static_cast<double>(corpus.size());
  nodes /= n;
  vverts /= n;
  vedges /= n;
  degree /= n;
  raw_x /= n;

  const bool nodes_ok = nodes >= 56.0 && nodes <= 72.0;
  const bool vverts_ok = std::abs(vverts - 72.0) <= 0.2 * 72.0;
  const bool vedges_ok = std::abs(vedges - 165.0) <= 0.2 * 165.0;
  const bool degree_ok = degree >= 4.0 && degree <= 7.0;
  std::ostringstream detail;
  detail << "mean nodes " << nodes << " (64+-8); mean Voronoi vertices (>=3-region corners) "
         << vverts << " (72 +-20%); mean border edges " << vedges
         << " (165 +-20%); mean dual degree " << degree
         << " (4..7); raw simplified-graph vertex count incl. frame junctions and kept bends "
         << raw_x;
  report(5, nodes_ok && vverts_ok && vedges_ok && degree_ok, "graph-size reproduction at k=64",
         detail.str());
}

// ---------------------------------------------------------------------------
// 6. Gradient suite (finite differences, all variants)
// ---------------------------------------------------------------------------
ModelConfig tiny_config(Variant variant) {
  ModelConfig cfg = default_config(variant, 3);
  cfg.conv_widths = variant == Variant::gat ? std::vector<int>{3, 4} : std::vector<int>{6, 8};
  cfg.mlp_widths = {5, 4};
  return cfg;
}

void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  Scalar worst = 0;
  std::string worst_variant;
  for (Variant variant : {Variant::gcn, Variant::nvgcn, Variant::gat}) {
    std::mt19937_64 rng(7000 + static_cast<int>(variant));
    Model model = build_model(tiny_config(variant), 7000 + static_cast<std::uint64_t>(variant));
    std::vector<GraphRecord> records;
    for (int g = 0; g < 2; ++g) records.push_back(random_graph_record(rng, 5, 3));
    const Batch batch = batch_graphs(records);

    Model forward_model = model;
    ForwardCache cache;
    const Matrix logits = forward_model.forward(batch, Mode::train, nullptr, &cache);
    const auto [loss, dlogits] = cross_entropy(logits, batch.labels);
    const GradientSet analytic = backward(forward_model, cache, dlogits);

    auto params = model.parameters();
    const Scalar step = 1e-5;
    auto loss_of = [&model, &batch]() {
      Model copy = model;
      ForwardCache scratch;
      const Matrix l = copy.forward(batch, Mode::train, nullptr, &scratch);
      return cross_entropy(l, batch.labels).first;
    };
    for (std::size_t p = 0; p < params.size(); ++p)
      for (std::int64_t j = 0; j < params[p].size; ++j) {
        const Scalar saved = params[p].data[j];
        params[p].data[j] = saved + step;
        const Scalar up = loss_of();
        params[p].data[j] = saved - step;
        const Scalar down = loss_of();
        params[p].data[j] = saved;
        const Scalar fd = (up - down) / (2 * step);
        const Scalar scale = std::max({std::abs(fd), std::abs(analytic[p][j]), 1e-4});
        const Scalar err = std::abs(fd - analytic[p][j]) / scale;
        if (err > worst) {
          worst = err;
          worst_variant = variant_name(variant);
        }
      }
  }
  const double dt = seconds_since(t0);
  std::ostringstream detail;
  detail << "worst relative error " << worst << " (" << worst_variant << "), budget 1e-4; " << dt
         << " s (budget 60 s)";
  report(6, worst < 1e-4 && dt < 60.0, "finite-difference gradients for gcn/nvgcn/gat",
         detail.str());
}

// ---------------------------------------------------------------------------
// 7. Sparse-dense oracle, 200 random trials
// ---------------------------------------------------------------------------
Matrix dense_gat_oracle(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                        const Matrix& h, const GatConvLayer& layer, Scalar slope) {
  const int m = static_cast<int>(h.rows());
  const int heads = layer.heads();
  const int fp = layer.out_per_head();
  Matrix mask = Matrix::Identity(m, m);
  for (const auto& [a, b] : edges) {
    mask(a, b) = 1.0;
    mask(b, a) = 1.0;
  }
  const Matrix z = h * layer.w;
  Matrix out(m, static_cast<Eigen::Index>(heads) * fp);
  for (int hd = 0; hd < heads; ++hd) {
    const Matrix zh = z.middleCols(static_cast<Eigen::Index>(hd) * fp, fp);
    const Vector s = zh * layer.a_src.row(hd).transpose();
    const Vector t = zh * layer.a_dst.row(hd).transpose();
    Matrix logits = s * Vector::Ones(m).transpose() + Vector::Ones(m) * t.transpose();
    logits = logits.unaryExpr([slope](Scalar v) { return v > 0 ? v : slope * v; });
    Matrix alpha = Matrix::Zero(m, m);
    for (int v = 0; v < m; ++v) {
      Scalar max_logit = -std::numeric_limits<Scalar>::infinity();
      for (int u = 0; u < m; ++u)
        if (mask(u, v) != 0.0) max_logit = std::max(max_logit, logits(u, v));
      Scalar sum = 0;
      for (int u = 0; u < m; ++u)
        if (mask(u, v) != 0.0) {
          alpha(u, v) = std::exp(logits(u, v) - max_logit);
          sum += alpha(u, v);
        }
      for (int u = 0; u < m; ++u) alpha(u, v) /= sum;
    }
    out.middleCols(static_cast<Eigen::Index>(hd) * fp, fp) = alpha.transpose() * zh;
  }
  return out;
}

void criterion_7() {
  std::mt19937_64 rng(20240007);
  std::uniform_real_distribution<Scalar> dist(-1.0, 1.0);
  Scalar worst = 0;
  int trials = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const GraphRecord record = random_graph_record(rng, 32, 3);
    const int m = record.node_count();
    const int f = 2 + static_cast<int>(rng() % 6);
    const int fp = 2 + static_cast<int>(rng() % 6);
    Matrix h(m, f), w(f, fp);
    for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] = dist(rng);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = dist(rng);
    const auto edges = to_int_edges(record.edges);

    // spmm against the dense product.
    const SparseAdjacency weighted = sparse_from_edges(edges, m, 6.0);
    worst = std::max(worst,
                     (spmm(weighted, h) - weighted.to_dense() * h).lpNorm<Eigen::Infinity>());

    // gcn forward against the dense composition.
    const SparseAdjacency unit = sparse_from_edges(edges, m, 1.0);
    const Matrix dense_unit = unit.to_dense();
    const Vector inv_sqrt = dense_unit.rowwise().sum().array().rsqrt().matrix();
    const Matrix gcn_oracle =
        inv_sqrt.asDiagonal() * dense_unit * inv_sqrt.asDiagonal() * h * w;
    worst = std::max(worst, (gcn_forward(degree_normalize(unit), h, w) - gcn_oracle)
                                .lpNorm<Eigen::Infinity>());

    // nvgcn forward against the dense composition.
    const Matrix nvgcn_oracle = weighted.to_dense() * h * w;
    worst = std::max(worst,
                     (nvgcn_forward(weighted, h, w) - nvgcn_oracle).lpNorm<Eigen::Infinity>());

    // gat forward against the dense attention composition.
    GatConvLayer layer;
    layer.w.resize(f, 2 * fp);
    for (Eigen::Index i = 0; i < layer.w.size(); ++i) layer.w.data()[i] = dist(rng);
    layer.a_src.resize(2, fp);
    layer.a_dst.resize(2, fp);
    for (Eigen::Index i = 0; i < layer.a_src.size(); ++i) layer.a_src.data()[i] = dist(rng);
    for (Eigen::Index i = 0; i < layer.a_dst.size(); ++i) layer.a_dst.data()[i] = dist(rng);
    const DirectedAdjacency dadj = DirectedAdjacency::build(record.edges, m);
    worst = std::max(worst, (gat_forward(dadj, h, layer, 0.2) -
                             dense_gat_oracle(record.edges, h, layer, 0.2))
                                .lpNorm<Eigen::Infinity>());
    ++trials;
  }
  std::ostringstream detail;
  detail << trials << " trials, worst deviation " << worst << " (budget 1e-12)";
  report(7, trials == 200 && worst < 1e-12, "sparse-dense oracle for spmm and all forwards",
         detail.str());
}

// ---------------------------------------------------------------------------
// 8. Learning capacity
// ---------------------------------------------------------------------------
void criterion_8(const std::vector<GraphRecord>& converted,
                 const std::vector<GraphRecord>& big_corpus) {
  const auto t0 = std::chrono::steady_clock::now();

  // (a) Overfit 64 graphs to >= 99% train accuracy within 300 epochs.
  std::vector<GraphRecord> subset(converted.begin(), converted.begin() + 64);
  TrainConfig overfit_cfg;
  overfit_cfg.seed = 11;
  Trainer overfit = Trainer::make(build_model(default_config(Variant::nvgcn, 3), 11), overfit_cfg);
  Scalar best_train = 0;
  int overfit_epochs = 0;
  for (int epoch = 0; epoch < 300 && best_train < 0.99; ++epoch) {
    best_train = std::max(best_train, train_epoch(overfit, subset, overfit_cfg, epoch).train_accuracy);
    overfit_epochs = epoch + 1;
  }

  // (b) 2000-train / 500-test split reaches >= 80% test accuracy within 100
  // epochs.
  TrainConfig cfg;
  cfg.seed = 12;
  auto [train_set, test_set] = split_dataset(big_corpus, 0.2, cfg.seed);
  Trainer trainer = Trainer::make(build_model(default_config(Variant::nvgcn, 3), 12), cfg);
  Scalar best_test = 0;
  int epochs_used = 0;
  for (int epoch = 0; epoch < 100 && best_test < 0.80; ++epoch) {
    train_epoch(trainer, train_set, cfg, epoch);
    best_test = std::max(best_test, evaluate(trainer.model, test_set, cfg.batch_size));
    epochs_used = epoch + 1;
  }
  const double dt = seconds_since(t0);
  std::ostringstream detail;
  detail << "overfit train acc " << best_train << " after " << overfit_epochs
         << " epochs (>=0.99/300); split " << train_set.size() << "/" << test_set.size()
         << " best test acc " << best_test << " after " << epochs_used << " epochs (>=0.80/100); "
         << dt << " s (budget 1800 s)";
  report(8, best_train >= 0.99 && best_test >= 0.80 && dt < 1800.0, "learning capacity",
         detail.str());
}

// ---------------------------------------------------------------------------
// 9. Timing ordering across variants
// ---------------------------------------------------------------------------
void criterion_9(const std::vector<GraphRecord>& big_corpus) {
  auto [train_set, test_set] = split_dataset(big_corpus, 0.2, 12);
  TimeBenchConfig cfg;
  cfg.epochs = 3;
  cfg.warmup = 1;
  cfg.seeds = {1, 2, 3};
  const auto series = epoch_time_bench(train_set, cfg);
  int nvgcn_faster = 0, gat1_faster = 0;
  std::ostringstream detail;
  for (std::uint64_t seed : cfg.seeds) {
    double gcn = 0, nvgcn = 0, gat1 = 0, gat2 = 0;
    for (const TimeSeries& ts : series)
      if (ts.seed == seed) {
        if (ts.name == "gcn") gcn = ts.mean_seconds;
        if (ts.name == "nvgcn") nvgcn = ts.mean_seconds;
        if (ts.name == "gat1") gat1 = ts.mean_seconds;
        if (ts.name == "gat2") gat2 = ts.mean_seconds;
      }
    if (nvgcn < gcn) ++nvgcn_faster;
    if (gat1 < gat2) ++gat1_faster;
    detail << "seed " << seed << ": gcn " << gcn << " nvgcn " << nvgcn << " gat1 " << gat1
           << " gat2 " << gat2 << " s/epoch; ";
  }
  detail << "nvgcn<gcn in " << nvgcn_faster << "/3, gat1<gat2 in " << gat1_faster << "/3";
  report(9, nvgcn_faster >= 2 && gat1_faster >= 2, "per-epoch timing ordering", detail.str());
}

// ---------------------------------------------------------------------------
// 10. Determinism of convert + train
// ---------------------------------------------------------------------------
std::vector<char> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int quiet_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"vgcn"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream sink;
  auto* old = std::cout.rdbuf(sink.rdbuf());
  const int rc = cli::run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  return rc;
}

void criterion_10(const fs::path& dir) {
  const auto set = make_synthetic_digits(120, 777);
  write_idx_pair(dir / "d-images", dir / "d-labels", set);

  bool pass = true;
  std::ostringstream detail;
  auto convert_to = [&](const std::string& out) {
    return quiet_cli({"convert", "--input", (dir / "d-images").string(), "--labels",
                      (dir / "d-labels").string(), "--dataset", "mnist", "--superpixels", "64",
                      "--jobs", "2", "--out", (dir / out).string()});
  };
  if (convert_to("a.vgr") != 0 || convert_to("b.vgr") != 0) pass = false;
  const bool graphs_identical = read_bytes(dir / "a.vgr") == read_bytes(dir / "b.vgr");
  detail << "graph files byte-identical: " << (graphs_identical ? "yes" : "NO");

  auto train_to = [&](const std::string& ckpt, const std::string& metrics) {
    return quiet_cli({"train", "--graphs", (dir / "a.vgr").string(), "--model", "nvgcn",
                      "--epochs", "5", "--patience", "5", "--seed", "77", "--out",
                      (dir / ckpt).string(), "--metrics-out", (dir / metrics).string()});
  };
  if (train_to("a.ckpt", "a.metrics") != 0 || train_to("b.ckpt", "b.metrics") != 0) pass = false;
  const bool ckpt_identical = read_bytes(dir / "a.ckpt") == read_bytes(dir / "b.ckpt");
  const bool metrics_identical = read_bytes(dir / "a.metrics") == read_bytes(dir / "b.metrics");
  detail << "; checkpoints byte-identical: " << (ckpt_identical ? "yes" : "NO")
         << "; metrics histories byte-identical: " << (metrics_identical ? "yes" : "NO");

  report(10, pass && graphs_identical && ckpt_identical && metrics_identical,
         "determinism of convert + train for a fixed seed", detail.str());
}

}  // namespace

int main() {
  std::printf("acceptance corpus: procedurally generated 28x28 glyphs "
              "(no dataset files ship with this environment; the generator\n"
              "stands in for the handwritten-digit corpus with the same "
              "container formats, image size and label structure)\n\n");

  const fs::path dir = fs::temp_directory_path() / "vgcn-acceptance";
  fs::create_directories(dir);

  criterion_1();

  // Shared corpus A: 1,000 images converted at k=64 defaults.
  std::printf("converting 1,000 images at k=64...\n");
  const auto t_convert = std::chrono::steady_clock::now();
  const auto set_a = make_synthetic_digits(1000, 4242);
  std::vector<ConvertedImage> corpus;
  corpus.reserve(set_a.size());
  std::vector<GraphRecord> records_a;
  for (std::size_t i = 0; i < set_a.size(); ++i) {
    corpus.push_back(convert_one(set_a.images[i], 64));
    corpus.back().record.label = set_a.labels[i];
    records_a.push_back(corpus.back().record);
  }
  const double convert_seconds = seconds_since(t_convert);
  std::printf("converted in %.1f s\n", convert_seconds);

  criterion_2(records_a);
  criterion_3(corpus, convert_seconds);
  criterion_4(set_a.images);
  criterion_5(corpus);
  criterion_6();
  criterion_7();

  // Corpus B: 2,500 images for the training-scale criteria.
  std::printf("converting 2,500 images at k=64...\n");
  const auto set_b = make_synthetic_digits(2500, 31337);
  std::vector<GraphRecord> records_b;
  records_b.reserve(set_b.size());
  for (std::size_t i = 0; i < set_b.size(); ++i) {
    ConvertedImage c = convert_one(set_b.images[i], 64);
    c.record.label = set_b.labels[i];
    records_b.push_back(std::move(c.record));
  }

  criterion_8(records_a, records_b);
  criterion_9(records_b);
  criterion_10(dir);

  std::error_code ec;
  fs::remove_all(dir, ec);

  std::printf("\n%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
