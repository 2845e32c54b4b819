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

#include "runner/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "edgecert/errors.hpp"
#include "edgecert/rng.hpp"

namespace edgecert::runner {
namespace {

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_real(const std::string& v, const std::string& key) {
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) throw DomainError(key + ": not a number: '" + v + "'");
  return out;
}

std::uint64_t to_count(const std::string& v, const std::string& key) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw DomainError(key + ": not a non-negative integer: '" + v + "'");
  }
  return out;
}

std::vector<std::size_t> to_grid(const std::string& v, const std::string& key) {
  std::vector<std::size_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_count(item, key));
  }
  return out;
}

struct Field {
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  bool hashed = true;
};

template <class Get>
Field real(Get g) {
  return {[g](const ExperimentConfig& c) { return fmt_real(g(c)); },
          [g](ExperimentConfig& c, const std::string& v) { g(c) = to_real(v, ""); }};
}

template <class Get>
Field count(Get g) {
  return {[g](const ExperimentConfig& c) { return std::to_string(g(c)); },
          [g](ExperimentConfig& c, const std::string& v) {
            auto& slot = g(c);
            slot = static_cast<std::remove_reference_t<decltype(slot)>>(to_count(v, ""));
          }};
}

const std::map<std::string, Field>& fields() {
  using C = ExperimentConfig;
  static const std::map<std::string, Field> table = [] {
    std::map<std::string, Field> t;
    t["config_version"] = {[](const C&) { return std::to_string(kConfigVersion); },
                           [](C&, const std::string& v) {
                             if (to_count(v, "config_version") != kConfigVersion) {
                               throw DomainError("unsupported config_version " + v);
                             }
                           }};
    t["dataset"] = {[](const C& c) { return c.dataset == DatasetKind::kSbm ? "sbm" : "files"; },
                    [](C& c, const std::string& v) {
                      if (v == "sbm") {
                        c.dataset = DatasetKind::kSbm;
                      } else if (v == "files") {
                        c.dataset = DatasetKind::kFiles;
                      } else {
                        throw DomainError("dataset must be 'sbm' or 'files'");
                      }
                    }};
    t["data.edges"] = {[](const C& c) { return c.edges_path.string(); },
                       [](C& c, const std::string& v) { c.edges_path = v; }};
    t["data.features"] = {[](const C& c) { return c.features_path.string(); },
                          [](C& c, const std::string& v) { c.features_path = v; }};
    t["data.labels"] = {[](const C& c) { return c.labels_path.string(); },
                        [](C& c, const std::string& v) { c.labels_path = v; }};

    t["sbm.blocks"] = count([](auto& c) -> auto& { return c.sbm.blocks; });
    t["sbm.nodes_per_block"] = count([](auto& c) -> auto& { return c.sbm.nodes_per_block; });
    t["sbm.p_in"] = real([](auto& c) -> auto& { return c.sbm.p_in; });
    t["sbm.p_out"] = real([](auto& c) -> auto& { return c.sbm.p_out; });
    t["sbm.feature_dim"] = count([](auto& c) -> auto& { return c.sbm.feature_dim; });
    t["sbm.center_scale"] = real([](auto& c) -> auto& { return c.sbm.center_scale; });
    t["sbm.feature_noise_sd"] = real([](auto& c) -> auto& { return c.sbm.feature_noise_sd; });

    t["split.train"] = real([](auto& c) -> auto& { return c.split.train; });
    t["split.val"] = real([](auto& c) -> auto& { return c.split.val; });
    t["split.test"] = real([](auto& c) -> auto& { return c.split.test; });

    t["encoder.h_dim"] = count([](auto& c) -> auto& { return c.train.h_dim; });
    t["encoder.d_dim"] = count([](auto& c) -> auto& { return c.train.d_dim; });
    t["encoder.p_dim"] = count([](auto& c) -> auto& { return c.train.p_dim; });

    t["train.epochs"] = count([](auto& c) -> auto& { return c.train.epochs; });
    t["train.learning_rate"] = real([](auto& c) -> auto& { return c.train.learning_rate; });
    t["train.adam_beta1"] = real([](auto& c) -> auto& { return c.train.adam_beta1; });
    t["train.adam_beta2"] = real([](auto& c) -> auto& { return c.train.adam_beta2; });
    t["train.adam_eps"] = real([](auto& c) -> auto& { return c.train.adam_eps; });
    t["train.temperature"] = real([](auto& c) -> auto& { return c.train.aug.temperature; });
    t["train.p_edge_drop_1"] = real([](auto& c) -> auto& { return c.train.aug.p_edge_drop[0]; });
    t["train.p_edge_drop_2"] = real([](auto& c) -> auto& { return c.train.aug.p_edge_drop[1]; });
    t["train.p_feat_mask_1"] = real([](auto& c) -> auto& { return c.train.aug.p_feat_mask[0]; });
    t["train.p_feat_mask_2"] = real([](auto& c) -> auto& { return c.train.aug.p_feat_mask[1]; });
    t["train.res_noise"] = {[](const C& c) { return c.train.aug.inject_noise ? "true" : "false"; },
                            [](C& c, const std::string& v) {
                              if (v != "true" && v != "false") throw DomainError("train.res_noise must be true or false");
                              c.train.aug.inject_noise = v == "true";
                            }};

    t["linear.l2"] = real([](auto& c) -> auto& { return c.linear.l2; });
    t["linear.max_iters"] = count([](auto& c) -> auto& { return c.linear.max_iters; });
    t["linear.tol"] = real([](auto& c) -> auto& { return c.linear.tol; });

    t["smoothing.beta_drop"] = real([](auto& c) -> auto& { return c.smoothing.spec.beta_drop; });
    t["smoothing.mu"] = count([](auto& c) -> auto& { return c.smoothing.mu; });
    t["smoothing.alpha"] = real([](auto& c) -> auto& { return c.smoothing.alpha; });
    t["smoothing.k_hop"] = count([](auto& c) -> auto& { return c.smoothing.k_hop; });
    t["smoothing.k_grid"] = {[](const C& c) {
                               std::string s;
                               for (std::size_t i = 0; i < c.k_grid.size(); ++i) {
                                 s += (i ? "," : "") + std::to_string(c.k_grid[i]);
                               }
                               return s;
                             },
                             [](C& c, const std::string& v) { c.k_grid = to_grid(v, "smoothing.k_grid"); }};
    t["smoothing.k_max"] = {[](const C& c) {
                              return c.smoothing.k_max ? std::to_string(*c.smoothing.k_max) : std::string("auto");
                            },
                            [](C& c, const std::string& v) {
                              if (v == "auto") {
                                c.smoothing.k_max.reset();
                              } else {
                                c.smoothing.k_max = to_count(v, "smoothing.k_max");
                              }
                            }};
    t["smoothing.delta_mode"] = {[](const C& c) {
                                   return c.smoothing.policy.mode == DeltaMode::kExact ? "exact" : "paper";
                                 },
                                 [](C& c, const std::string& v) {
                                   if (v == "exact") {
                                     c.smoothing.policy.mode = DeltaMode::kExact;
                                   } else if (v == "paper") {
                                     c.smoothing.policy.mode = DeltaMode::kPaper;
                                   } else {
                                     throw DomainError("smoothing.delta_mode must be 'exact' or 'paper'");
                                   }
                                 }};
    t["smoothing.delta_e"] = {[](const C& c) {
                                return c.smoothing.policy.fixed_e ? std::to_string(*c.smoothing.policy.fixed_e)
                                                                  : std::string("mean");
                              },
                              [](C& c, const std::string& v) {
                                if (v == "mean") {
                                  c.smoothing.policy.fixed_e.reset();
                                } else {
                                  c.smoothing.policy.fixed_e = to_count(v, "smoothing.delta_e");
                                }
                              }};

    t["attack.mode"] = {[](const C& c) { return c.attack.mode == AttackMode::kTargeted ? "targeted" : "global"; },
                        [](C& c, const std::string& v) {
                          if (v == "targeted") {
                            c.attack.mode = AttackMode::kTargeted;
                          } else if (v == "global") {
                            c.attack.mode = AttackMode::kGlobal;
                          } else {
                            throw DomainError("attack.mode must be 'targeted' or 'global'");
                          }
                        }};
    t["attack.budget"] = count([](auto& c) -> auto& { return c.attack.budget; });
    t["attack.rate"] = real([](auto& c) -> auto& { return c.attack.rate; });

    t["seed"] = count([](auto& c) -> auto& { return c.seed; });
    Field out{[](const C& c) { return c.out.string(); }, [](C& c, const std::string& v) { c.out = v; }};
    out.hashed = false;
    t["out"] = out;
    Field threads = count([](auto& c) -> auto& { return c.threads; });
    threads.hashed = false;
    t["threads"] = threads;
    return t;
  }();
  return table;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dataset == DatasetKind::kFiles && (edges_path.empty() || features_path.empty() || labels_path.empty())) {
    throw DomainError("dataset = files needs data.edges, data.features and data.labels");
  }
  const double total = split.train + split.val + split.test;
  if (split.train <= 0.0 || split.val < 0.0 || split.test <= 0.0 || std::fabs(total - 1.0) > 1e-9) {
    throw DomainError("split fractions must be positive and sum to 1");
  }
  if (smoothing.mu < 1) throw DomainError("smoothing.mu must be >= 1");
  if (!(smoothing.alpha > 0.0 && smoothing.alpha < 1.0)) throw DomainError("smoothing.alpha must lie in (0, 1)");
  smoothing.spec.validate();
  train.validate();
  attack.validate();
  if (dataset == DatasetKind::kSbm) sbm_config(*this).validate();
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  const auto& table = fields();
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(source, lineno, "expected 'key = value'");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    auto it = table.find(key);
    if (it == table.end()) throw ParseError(source, lineno, "unknown key '" + key + "'");
    try {
      it->second.set(cfg, value);
    } catch (const DomainError& e) {
      throw ParseError(source, lineno, key + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::map<std::string, std::string> canonical_settings(const ExperimentConfig& cfg) {
  std::map<std::string, std::string> out;
  for (const auto& [k, f] : fields()) out[k] = f.get(cfg);
  return out;
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::string s;
  for (const auto& [k, v] : canonical_settings(cfg)) s += k + " = " + v + "\n";
  return s;
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::string s;
  const auto& table = fields();
  for (const auto& [k, v] : canonical_settings(cfg)) {
    if (table.at(k).hashed) s += k + "=" + v + "\n";
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
  return buf;
}

SbmConfig sbm_config(const ExperimentConfig& cfg) {
  SbmConfig s;
  s.blocks = cfg.sbm.blocks;
  s.nodes_per_block = cfg.sbm.nodes_per_block;
  s.p_in = cfg.sbm.p_in;
  s.p_out = cfg.sbm.p_out;
  s.feature_noise_sd = cfg.sbm.feature_noise_sd;
  s.seed = stage_seed(cfg, "sbm");
  if (cfg.sbm.feature_dim == 0) throw DomainError("sbm.feature_dim must be >= 1");
  s.feature_centers = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cfg.sbm.blocks),
                                            static_cast<Eigen::Index>(cfg.sbm.feature_dim));
  for (std::size_t b = 0; b < cfg.sbm.blocks; ++b) {
    s.feature_centers(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b % cfg.sbm.feature_dim)) =
        cfg.sbm.center_scale;
  }
  return s;
}

std::uint64_t stage_seed(const ExperimentConfig& cfg, const char* stage) {
  return derive_seed(cfg.seed, stage);
}

}  // namespace edgecert::runner
