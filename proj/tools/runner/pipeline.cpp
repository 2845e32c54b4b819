// Copyright 2026 The edgecert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "runner/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "edgecert/checkpoint.hpp"
#include "edgecert/errors.hpp"
#include "edgecert/graph_io.hpp"
#include "edgecert/margin.hpp"
#include "edgecert/parallel.hpp"
#include "edgecert/rng.hpp"

#ifndef EDGECERT_VERSION
#define EDGECERT_VERSION "0.0.0"
#endif

namespace edgecert::runner {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double accuracy_on(const Eigen::MatrixXd& z, const Graph& g, std::span<const NodeId> nodes,
                   const LogRegModel& clf) {
  if (nodes.empty()) return 0.0;
  std::size_t hits = 0;
  for (NodeId v : nodes) {
    const Eigen::VectorXd row = z.row(static_cast<Eigen::Index>(v)).transpose();
    hits += predict(clf, row) == g.labels()[v] ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(nodes.size());
}

std::string fmt_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

fs::path data_dir(const ExperimentConfig& cfg) { return cfg.out / files::kDataDir; }

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  return f;
}

void write_json(const json& doc, const fs::path& path) {
  auto f = open_out(path);
  f << doc.dump(2) << '\n';
  if (!f) throw IoError("write failed: " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path.string());
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

// First line of each CSV is "# config_hash=<hex>".
std::string csv_hash(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path.string());
  std::string line;
  std::getline(f, line);
  const std::string prefix = "# config_hash=";
  if (line.rfind(prefix, 0) != 0) throw ParseError(path.string(), 1, "missing config_hash line");
  return line.substr(prefix.size());
}

std::size_t run_threads(const ExperimentConfig& cfg) {
  return cfg.threads != 0 ? cfg.threads : default_thread_count();
}

void require_files(const std::vector<fs::path>& paths, const char* command) {
  std::string missing;
  for (const auto& p : paths) {
    if (!fs::exists(p)) missing += "\n  " + p.string();
  }
  if (!missing.empty()) throw IoError(std::string(command) + ": missing inputs:" + missing);
}

struct Models {
  EncoderParams encoder;
  LogRegModel classifier;
};

Models load_models(const ExperimentConfig& cfg, const char* command) {
  const fs::path enc = cfg.out / files::kEncoder;
  const fs::path clf = cfg.out / files::kClassifier;
  require_files({enc, clf}, command);
  return {encoder_from_checkpoint(read_checkpoint(enc)), logreg_from_checkpoint(read_checkpoint(clf))};
}

std::string delta_mode_name(const DeltaPolicy& p) {
  return p.mode == DeltaMode::kExact ? "exact" : "paper";
}

json attack_side(const EvasionResult& r, const Graph& g) {
  std::size_t clean_hits = 0;
  for (const auto& row : r.rows) clean_hits += row.clean_pred == g.labels()[row.node] ? 1 : 0;
  const double n = static_cast<double>(r.rows.size());
  return {{"robust_accuracy", r.robust_accuracy},
          {"clean_accuracy", r.rows.empty() ? 0.0 : static_cast<double>(clean_hits) / n}};
}

void write_attack_csv(const EvasionResult& r, const std::string& hash, const fs::path& path) {
  auto f = open_out(path);
  f << "# config_hash=" << hash << '\n';
  f << "node_id,budget,attacked,clean_pred,attacked_pred,correct\n";
  for (const auto& row : r.rows) {
    f << row.node << ',' << row.budget << ',' << (row.attacked ? "true" : "false") << ','
      << row.clean_pred << ',' << row.attacked_pred << ',' << (row.correct ? "true" : "false") << '\n';
  }
}

}  // namespace

Split make_split(const Graph& g, const ExperimentConfig& cfg) {
  if (!g.has_labels()) throw PreconditionError("the split needs labels");
  std::map<int, std::vector<NodeId>> by_class;
  for (NodeId v = 0; v < g.n_nodes(); ++v) by_class[g.labels()[v]].push_back(v);

  Rng rng(stage_seed(cfg, "split"));
  Split s;
  for (auto& [cls, nodes] : by_class) {
    for (std::size_t i = nodes.size(); i > 1; --i) {
      const auto j = std::min(static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i)), i - 1);
      std::swap(nodes[i - 1], nodes[j]);
    }
    const double n = static_cast<double>(nodes.size());
    const std::size_t n_train = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(n * cfg.split.train)));
    const std::size_t n_val =
        std::min(nodes.size() - std::min(nodes.size(), n_train),
                 static_cast<std::size_t>(std::lround(n * cfg.split.val)));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      auto& dst = i < n_train ? s.train : i < n_train + n_val ? s.val : s.test;
      dst.push_back(nodes[i]);
    }
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.val.begin(), s.val.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

TrainConfig effective_train_config(const ExperimentConfig& cfg) {
  TrainConfig t = cfg.train;
  t.seed = stage_seed(cfg, "train");
  // The encoder is trained under the same edgedrop level it is certified with.
  t.aug.res_beta_drop = cfg.smoothing.spec.beta_drop;
  return t;
}

TrainedPipeline train_pipeline(const Graph& g, const Split& split, const ExperimentConfig& cfg) {
  TrainResult tr = train_res(g, effective_train_config(cfg));
  const Eigen::MatrixXd z = forward(g, tr.params).Z;

  Eigen::MatrixXd z_train(static_cast<Eigen::Index>(split.train.size()), z.cols());
  std::vector<int> y_train;
  for (std::size_t i = 0; i < split.train.size(); ++i) {
    z_train.row(static_cast<Eigen::Index>(i)) = z.row(static_cast<Eigen::Index>(split.train[i]));
    y_train.push_back(g.labels()[split.train[i]]);
  }
  LogRegOptions opts = cfg.linear;
  opts.loss_trace = nullptr;

  TrainedPipeline out;
  out.classifier = fit_logreg(z_train, y_train, opts, static_cast<int>(g.n_classes()));
  out.encoder = std::move(tr.params);
  out.log = std::move(tr.log);
  out.val_accuracy = accuracy_on(z, g, split.val, out.classifier);
  out.test_accuracy = accuracy_on(z, g, split.test, out.classifier);
  return out;
}

std::vector<Certificate> certify_nodes(const Graph& g, std::span<const NodeId> nodes,
                                       const EncoderParams& enc, const LogRegModel& clf,
                                       const ExperimentConfig& cfg) {
  const std::uint64_t noise = stage_seed(cfg, "noise");
  std::vector<Certificate> certs(nodes.size());
  parallel_for(
      nodes.size(),
      [&](std::size_t i) { certs[i] = certify_node(g, nodes[i], enc, clf, cfg.smoothing, derive_seed(noise, nodes[i])); },
      run_threads(cfg));
  return certs;
}

AttackOutcome attack_nodes(const Graph& g, std::span<const NodeId> nodes, const EncoderParams& enc,
                           const LogRegModel& clf, const ExperimentConfig& cfg) {
  AttackSpec atk = cfg.attack;
  atk.seed = stage_seed(cfg, "attack");
  const std::uint64_t vote = stage_seed(cfg, "vote");
  const std::size_t threads = run_threads(cfg);
  AttackOutcome out;
  out.base = evasion_eval(g, nodes, enc, clf, atk, std::nullopt, cfg.smoothing.k_hop, vote, threads);
  out.smoothed = evasion_eval(g, nodes, enc, clf, atk, SmoothingSetup{cfg.smoothing.mu, cfg.smoothing.spec},
                              cfg.smoothing.k_hop, vote, threads);
  return out;
}

std::vector<ProbeRow> probe_nodes(const Graph& g, std::span<const NodeId> nodes, const EncoderParams& enc,
                                  const ExperimentConfig& cfg) {
  const Eigen::MatrixXd clean = forward(g, enc).H;
  const StructVector sv = to_struct_vector(g);
  const Graph noisy_graph = from_struct_vector(
      apply_xor(sv, sample_edgedrop(sv, cfg.smoothing.spec, stage_seed(cfg, "probe"), 1)), g.n_nodes(),
      g.features(), g.labels());
  const Eigen::MatrixXd noisy = forward(noisy_graph, enc).H;

  std::vector<ProbeRow> rows(nodes.size());
  parallel_for(
      nodes.size(),
      [&](std::size_t i) {
        const auto v = static_cast<Eigen::Index>(nodes[i]);
        const Eigen::VectorXd z = noisy.row(v).transpose();
        const Eigen::VectorXd z_pos = clean.row(v).transpose();
        std::vector<Eigen::VectorXd> negatives;
        negatives.reserve(static_cast<std::size_t>(clean.rows()));
        for (Eigen::Index j = 0; j < clean.rows(); ++j) {
          if (j != v) negatives.push_back(clean.row(j).transpose());
        }
        ProbeRow& r = rows[i];
        r.node = nodes[i];
        r.s_pos = cosine_sim(z, z_pos);
        r.max_s_neg = -1.0;
        for (const auto& neg : negatives) r.max_s_neg = std::max(r.max_s_neg, cosine_sim(z, neg));
        r.latent_robust = latent_robust_check(z, z_pos, negatives);
        const std::vector<double> margins = margin_distances(z_pos, negatives);
        try {
          const WeibullFit fit = fit_reverse_weibull(margins, std::min<std::size_t>(100, margins.size()));
          r.positive_prob = positive_prob(std::clamp(r.s_pos, -1.0, 1.0), fit);
        } catch (const Error&) {
          r.positive_prob.reset();
        }
      },
      run_threads(cfg));
  return rows;
}

double base_accuracy(const Graph& g, std::span<const NodeId> nodes, const EncoderParams& enc,
                     const LogRegModel& clf, std::size_t k_hop) {
  if (nodes.empty()) return 0.0;
  std::size_t hits = 0;
  for (NodeId v : nodes) hits += base_predict(g, v, enc, clf, k_hop) == g.labels()[v] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(nodes.size());
}

Graph load_dataset(const ExperimentConfig& cfg) {
  if (cfg.dataset == DatasetKind::kSbm) {
    const fs::path dir = data_dir(cfg);
    require_files({dir / files::kEdges, dir / files::kFeatures, dir / files::kLabels}, "load dataset (run gen first)");
    return load_graph(dir / files::kEdges, dir / files::kFeatures, dir / files::kLabels).graph;
  }
  return load_graph(cfg.edges_path, cfg.features_path, cfg.labels_path).graph;
}

void cmd_gen(const ExperimentConfig& cfg) {
  cfg.validate();
  const fs::path dir = data_dir(cfg);
  ensure_dir(dir);
  const std::string hash = config_hash(cfg);
  json manifest = {{"config_hash", hash}, {"seed", cfg.seed}};
  if (cfg.dataset == DatasetKind::kSbm) {
    const SbmConfig sbm = sbm_config(cfg);
    const Graph g = sbm_generate(sbm);
    write_edges(g, dir / files::kEdges);
    write_features(g, dir / files::kFeatures);
    write_labels(g, dir / files::kLabels);
    manifest["dataset"] = "sbm";
    manifest["generator_seed"] = sbm.seed;
    manifest["n_nodes"] = g.n_nodes();
    manifest["n_edges"] = g.n_edges();
  } else {
    const Graph g = load_dataset(cfg);
    manifest["dataset"] = "files";
    manifest["n_nodes"] = g.n_nodes();
    manifest["n_edges"] = g.n_edges();
  }
  write_json(manifest, dir / files::kManifest);
}

void cmd_train(const ExperimentConfig& cfg) {
  cfg.validate();
  const Graph g = load_dataset(cfg);
  ensure_dir(cfg.out);
  const std::string hash = config_hash(cfg);
  const Split split = make_split(g, cfg);
  const TrainedPipeline tp = train_pipeline(g, split, cfg);

  Checkpoint enc = encoder_checkpoint(tp.encoder);
  enc.meta["config_hash"] = hash;
  write_checkpoint(enc, cfg.out / files::kEncoder);
  Checkpoint clf = logreg_checkpoint(tp.classifier);
  clf.meta["config_hash"] = hash;
  write_checkpoint(clf, cfg.out / files::kClassifier);

  {
    auto f = open_out(cfg.out / files::kTrainLog);
    f << "# config_hash=" << hash << '\n' << "epoch,loss,wall_time_ms\n";
    for (const auto& e : tp.log) f << e.epoch << ',' << fmt_real(e.loss) << ',' << fmt_real(e.wall_ms) << '\n';
  }
  write_json({{"config_hash", hash},
              {"val_accuracy", tp.val_accuracy},
              {"test_accuracy", tp.test_accuracy},
              {"final_train_loss", tp.log.empty() ? 0.0 : tp.log.back().loss},
              {"classifier_converged", tp.classifier.converged},
              {"n_train", split.train.size()},
              {"n_val", split.val.size()},
              {"n_test", split.test.size()}},
             cfg.out / files::kTrainSummary);
  std::printf("val accuracy %.4f  test accuracy %.4f\n", tp.val_accuracy, tp.test_accuracy);
}

void cmd_certify(const ExperimentConfig& cfg) {
  cfg.validate();
  const Models m = load_models(cfg, "certify");
  const Graph g = load_dataset(cfg);
  const std::string hash = config_hash(cfg);
  const Split split = make_split(g, cfg);
  const auto certs = certify_nodes(g, split.test, m.encoder, m.classifier, cfg);

  std::vector<int> truth;
  for (NodeId v : split.test) truth.push_back(g.labels()[v]);
  {
    auto f = open_out(cfg.out / files::kCertifyReport);
    f << "# config_hash=" << hash << '\n'
      << "node_id,true_label,c_a,mu,votes_c_a,p_a_lower,p_b_upper,delta_mode,certified_k\n";
    for (std::size_t i = 0; i < certs.size(); ++i) {
      const Certificate& c = certs[i];
      f << c.node << ',' << truth[i] << ',' << c.c_a << ',' << c.mu << ',' << c.votes_c_a << ','
        << fmt_real(c.bounds.p_a_lower) << ',' << fmt_real(c.bounds.p_b_upper) << ','
        << delta_mode_name(c.delta_mode) << ',';
      if (c.certified_k) f << *c.certified_k;
      f << '\n';
    }
  }
  const auto curve = certified_accuracy(certs, truth, cfg.k_grid);
  auto f = open_out(cfg.out / files::kCertifiedAccuracy);
  f << "# config_hash=" << hash << '\n' << "k,certified_accuracy\n";
  for (const auto& [k, acc] : curve) f << k << ',' << fmt_real(acc) << '\n';
  f.close();

  auto probe = open_out(cfg.out / files::kProbeReport);
  probe << "# config_hash=" << hash << '\n' << "node_id,s_pos,max_s_neg,latent_robust,positive_prob\n";
  for (const ProbeRow& r : probe_nodes(g, split.test, m.encoder, cfg)) {
    probe << r.node << ',' << fmt_real(r.s_pos) << ',' << fmt_real(r.max_s_neg) << ','
          << (r.latent_robust ? "true" : "false") << ',';
    if (r.positive_prob) probe << fmt_real(*r.positive_prob);
    probe << '\n';
  }
  std::printf("certified %zu test nodes\n", certs.size());
}

void cmd_attack(const ExperimentConfig& cfg) {
  cfg.validate();
  const Models m = load_models(cfg, "attack");
  const Graph g = load_dataset(cfg);
  const std::string hash = config_hash(cfg);
  const Split split = make_split(g, cfg);
  const AttackOutcome out = attack_nodes(g, split.test, m.encoder, m.classifier, cfg);

  write_attack_csv(out.base, hash, cfg.out / files::kAttackBase);
  write_attack_csv(out.smoothed, hash, cfg.out / files::kAttackSmoothed);
  write_json({{"config_hash", hash},
              {"mode", cfg.attack.mode == AttackMode::kTargeted ? "targeted" : "global"},
              {"budget", cfg.attack.budget},
              {"rate", cfg.attack.rate},
              {"n_targets", split.test.size()},
              {"base", attack_side(out.base, g)},
              {"smoothed", attack_side(out.smoothed, g)}},
             cfg.out / files::kAttackSummary);
  std::printf("robust accuracy  base %.4f  smoothed %.4f\n", out.base.robust_accuracy,
              out.smoothed.robust_accuracy);
}

void cmd_report(const ExperimentConfig& cfg) {
  cfg.validate();
  const fs::path manifest = data_dir(cfg) / files::kManifest;
  const fs::path summary = cfg.out / files::kTrainSummary;
  const fs::path curve_csv = cfg.out / files::kCertifiedAccuracy;
  const fs::path attack = cfg.out / files::kAttackSummary;
  const std::vector<fs::path> csvs{cfg.out / files::kTrainLog, cfg.out / files::kCertifyReport, curve_csv,
                                   cfg.out / files::kProbeReport,
                                   cfg.out / files::kAttackBase, cfg.out / files::kAttackSmoothed};
  std::vector<fs::path> needed{manifest, summary, attack, cfg.out / files::kEncoder, cfg.out / files::kClassifier};
  needed.insert(needed.end(), csvs.begin(), csvs.end());
  require_files(needed, "report");

  const std::string hash = config_hash(cfg);
  const json man = read_json(manifest);
  const json sum = read_json(summary);
  const json atk = read_json(attack);

  json inputs = json::object();
  inputs[files::kManifest] = man.at("config_hash");
  inputs[files::kTrainSummary] = sum.at("config_hash");
  inputs[files::kAttackSummary] = atk.at("config_hash");
  inputs[files::kEncoder] = read_checkpoint(cfg.out / files::kEncoder).meta.at("config_hash");
  inputs[files::kClassifier] = read_checkpoint(cfg.out / files::kClassifier).meta.at("config_hash");
  for (const auto& p : csvs) inputs[p.filename().string()] = csv_hash(p);
  bool consistent = true;
  for (const auto& [name, h] : inputs.items()) consistent = consistent && h == hash;

  json curve = json::array();
  {
    std::ifstream f(curve_csv);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
      ++lineno;
      if (lineno <= 2 || line.empty()) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw ParseError(curve_csv.string(), lineno, "expected k,accuracy");
      curve.push_back({{"k", std::stoull(line.substr(0, comma))}, {"accuracy", std::stod(line.substr(comma + 1))}});
    }
  }

  const Graph g = load_dataset(cfg);
  json report = {
      {"schema", "edgecert-report"},
      {"schema_version", 1},
      {"config_hash", hash},
      {"versions", {{"edgecert", EDGECERT_VERSION}, {"checkpoint_format", kCheckpointVersion}, {"config_version", kConfigVersion}}},
      {"dataset", {{"n_nodes", g.n_nodes()}, {"n_edges", g.n_edges()}, {"n_classes", g.n_classes()}}},
      {"clean", {{"val_accuracy", sum.at("val_accuracy")}, {"test_accuracy", sum.at("test_accuracy")}, {"final_train_loss", sum.at("final_train_loss")}}},
      {"smoothing",
       {{"beta_drop", cfg.smoothing.spec.beta_drop},
        {"mu", cfg.smoothing.mu},
        {"alpha", cfg.smoothing.alpha},
        {"k_hop", cfg.smoothing.k_hop},
        {"delta_mode", delta_mode_name(cfg.smoothing.policy)}}},
      {"certified_accuracy", curve},
      {"robust",
       {{"mode", atk.at("mode")},
        {"budget", atk.at("budget")},
        {"rate", atk.at("rate")},
        {"n_targets", atk.at("n_targets")},
        {"base_accuracy", atk.at("base").at("robust_accuracy")},
        {"smoothed_accuracy", atk.at("smoothed").at("robust_accuracy")},
        {"base_clean_accuracy", atk.at("base").at("clean_accuracy")},
        {"smoothed_clean_accuracy", atk.at("smoothed").at("clean_accuracy")}}},
      {"inputs", {{"config_hashes", inputs}, {"hashes_consistent", consistent}}},
  };
  if (const auto problems = validate_report(report); !problems.empty()) {
    std::string msg = "report failed schema validation:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(msg);
  }
  write_json(report, cfg.out / files::kReport);
  if (!consistent) std::fprintf(stderr, "warning: input files carry different config hashes\n");
}

std::vector<std::string> validate_report(const json& r) {
  std::vector<std::string> errs;
  auto need = [&](const json& obj, const std::string& path, const std::string& key,
                  bool (json::*is)() const noexcept) -> const json* {
    if (!obj.is_object() || !obj.contains(key)) {
      errs.push_back("missing " + path + key);
      return nullptr;
    }
    const json& v = obj.at(key);
    if (!(v.*is)()) {
      errs.push_back("wrong type for " + path + key);
      return nullptr;
    }
    return &v;
  };
  auto unit = [&](const json* v, const std::string& name) {
    if (v && !(v->get<double>() >= 0.0 && v->get<double>() <= 1.0)) errs.push_back(name + " outside [0, 1]");
  };

  if (const json* s = need(r, "", "schema", &json::is_string); s && *s != "edgecert-report") {
    errs.push_back("schema must be \"edgecert-report\"");
  }
  if (const json* v = need(r, "", "schema_version", &json::is_number_integer); v && *v != 1) {
    errs.push_back("unsupported schema_version");
  }
  if (const json* h = need(r, "", "config_hash", &json::is_string); h && h->get<std::string>().size() != 16) {
    errs.push_back("config_hash must have 16 hex digits");
  }
  if (const json* v = need(r, "", "versions", &json::is_object)) {
    need(*v, "versions.", "edgecert", &json::is_string);
    need(*v, "versions.", "checkpoint_format", &json::is_number_integer);
    need(*v, "versions.", "config_version", &json::is_number_integer);
  }
  if (const json* d = need(r, "", "dataset", &json::is_object)) {
    for (const char* k : {"n_nodes", "n_edges", "n_classes"}) need(*d, "dataset.", k, &json::is_number_integer);
  }
  if (const json* c = need(r, "", "clean", &json::is_object)) {
    unit(need(*c, "clean.", "val_accuracy", &json::is_number), "clean.val_accuracy");
    unit(need(*c, "clean.", "test_accuracy", &json::is_number), "clean.test_accuracy");
    need(*c, "clean.", "final_train_loss", &json::is_number);
  }
  if (const json* s = need(r, "", "smoothing", &json::is_object)) {
    need(*s, "smoothing.", "beta_drop", &json::is_number);
    need(*s, "smoothing.", "mu", &json::is_number_unsigned);
    need(*s, "smoothing.", "alpha", &json::is_number);
    need(*s, "smoothing.", "k_hop", &json::is_number_unsigned);
    if (const json* m = need(*s, "smoothing.", "delta_mode", &json::is_string); m && *m != "exact" && *m != "paper") {
      errs.push_back("smoothing.delta_mode must be exact or paper");
    }
  }
  if (const json* curve = need(r, "", "certified_accuracy", &json::is_array)) {
    double prev = 2.0;
    for (const auto& pt : *curve) {
      need(pt, "certified_accuracy[].", "k", &json::is_number_unsigned);
      const json* a = need(pt, "certified_accuracy[].", "accuracy", &json::is_number);
      unit(a, "certified_accuracy[].accuracy");
      if (a && a->get<double>() > prev) errs.push_back("certified accuracy curve increases");
      if (a) prev = a->get<double>();
    }
  }
  if (const json* rb = need(r, "", "robust", &json::is_object)) {
    if (const json* m = need(*rb, "robust.", "mode", &json::is_string); m && *m != "targeted" && *m != "global") {
      errs.push_back("robust.mode must be targeted or global");
    }
    need(*rb, "robust.", "budget", &json::is_number_unsigned);
    need(*rb, "robust.", "rate", &json::is_number);
    need(*rb, "robust.", "n_targets", &json::is_number_unsigned);
    for (const char* k : {"base_accuracy", "smoothed_accuracy", "base_clean_accuracy", "smoothed_clean_accuracy"}) {
      unit(need(*rb, "robust.", k, &json::is_number), std::string("robust.") + k);
    }
  }
  if (const json* in = need(r, "", "inputs", &json::is_object)) {
    need(*in, "inputs.", "config_hashes", &json::is_object);
    need(*in, "inputs.", "hashes_consistent", &json::is_boolean);
  }
  return errs;
}

}  // namespace edgecert::runner
