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

#include "edgecert/trainer.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>

#include "edgecert/noise.hpp"
#include "edgecert/rng.hpp"

namespace edgecert {
namespace {

std::array<std::span<double>, 6> param_spans(EncoderParams& p) {
  auto sp = [](auto& m) { return std::span<double>(m.data(), static_cast<std::size_t>(m.size())); };
  return {sp(p.W1), sp(p.W2), sp(p.P1), sp(p.b1), sp(p.P2), sp(p.b2)};
}

EncoderParams zeros_like(const EncoderParams& p) {
  EncoderParams z;
  z.W1 = Eigen::MatrixXd::Zero(p.W1.rows(), p.W1.cols());
  z.W2 = Eigen::MatrixXd::Zero(p.W2.rows(), p.W2.cols());
  z.P1 = Eigen::MatrixXd::Zero(p.P1.rows(), p.P1.cols());
  z.b1 = Eigen::RowVectorXd::Zero(p.b1.size());
  z.P2 = Eigen::MatrixXd::Zero(p.P2.rows(), p.P2.cols());
  z.b2 = Eigen::RowVectorXd::Zero(p.b2.size());
  return z;
}

void add_into(EncoderParams& acc, const EncoderParams& g) {
  acc.W1 += g.W1;
  acc.W2 += g.W2;
  acc.P1 += g.P1;
  acc.b1 += g.b1;
  acc.P2 += g.P2;
  acc.b2 += g.b2;
}

Eigen::MatrixXd normalize_rows(const Eigen::MatrixXd& h, Eigen::VectorXd& norms) {
  norms = h.rowwise().norm();
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    if (!(norms[i] > 0.0)) throw DomainError("zero-norm embedding row " + std::to_string(i));
  }
  return norms.cwiseInverse().asDiagonal() * h;
}

// Gradient through u = h / |h|.
Eigen::MatrixXd normalize_backward(const Eigen::MatrixXd& u, const Eigen::VectorXd& norms,
                                   const Eigen::MatrixXd& du) {
  const Eigen::VectorXd dots = u.cwiseProduct(du).rowwise().sum();
  Eigen::MatrixXd dh = du - dots.asDiagonal() * u;
  return norms.cwiseInverse().asDiagonal() * dh;
}

// One direction of the loss: anchors from `self`, positives on the diagonal
// of `cross`. Accumulates coefficients on the score matrices.
double direction_loss(const Eigen::MatrixXd& self, const Eigen::MatrixXd& cross, double scale,
                      Eigen::MatrixXd* g_self, Eigen::MatrixXd* g_cross) {
  const auto n = self.rows();
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double mx = cross.row(i).maxCoeff();
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k != i) mx = std::max(mx, self(i, k));
    }
    double sum = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      sum += std::exp(cross(i, k) - mx);
      if (k != i) sum += std::exp(self(i, k) - mx);
    }
    const double lse = mx + std::log(sum);
    total += lse - cross(i, i);
    if (g_self != nullptr) {
      for (Eigen::Index k = 0; k < n; ++k) {
        (*g_cross)(i, k) += scale * std::exp(cross(i, k) - lse);
        if (k != i) (*g_self)(i, k) += scale * std::exp(self(i, k) - lse);
      }
      (*g_cross)(i, i) -= scale;
    }
  }
  return total;
}

double info_nce_impl(const Eigen::MatrixXd& h1, const Eigen::MatrixXd& h2, double temperature,
                     Eigen::MatrixXd* d_h1, Eigen::MatrixXd* d_h2) {
  if (h1.rows() != h2.rows() || h1.cols() != h2.cols()) {
    throw ShapeError("info_nce_loss needs views of equal shape");
  }
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  const auto n = h1.rows();
  if (n == 0) return 0.0;
  Eigen::VectorXd n1, n2;
  const Eigen::MatrixXd u1 = normalize_rows(h1, n1);
  const Eigen::MatrixXd u2 = normalize_rows(h2, n2);
  const double inv_t = 1.0 / temperature;
  const Eigen::MatrixXd s11 = inv_t * (u1 * u1.transpose());
  const Eigen::MatrixXd s22 = inv_t * (u2 * u2.transpose());
  const Eigen::MatrixXd s12 = inv_t * (u1 * u2.transpose());
  const Eigen::MatrixXd s21 = s12.transpose();
  const double scale = 0.5 / static_cast<double>(n);

  const bool want_grad = d_h1 != nullptr;
  Eigen::MatrixXd g11, g22, g12, g21;
  if (want_grad) {
    g11 = g22 = g12 = g21 = Eigen::MatrixXd::Zero(n, n);
  }
  const double l1 = direction_loss(s11, s12, scale, want_grad ? &g11 : nullptr, &g12);
  const double l2 = direction_loss(s22, s21, scale, want_grad ? &g22 : nullptr, &g21);
  if (want_grad) {
    const Eigen::MatrixXd g_cross = g12 + g21.transpose();  // coefficients on s12
    const Eigen::MatrixXd du1 = inv_t * ((g11 + g11.transpose()) * u1 + g_cross * u2);
    const Eigen::MatrixXd du2 = inv_t * ((g22 + g22.transpose()) * u2 + g_cross.transpose() * u1);
    *d_h1 = normalize_backward(u1, n1, du1);
    *d_h2 = normalize_backward(u2, n2, du2);
  }
  return scale * (l1 + l2);
}

}  // namespace

void AugConfig::validate() const {
  for (double p : p_edge_drop) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p_edge_drop must lie in [0, 1]");
  }
  for (double p : p_feat_mask) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p_feat_mask must lie in [0, 1]");
  }
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  EdgeDropSpec{res_beta_drop}.validate();
}

void TrainConfig::validate() const {
  if (epochs < 1) throw PreconditionError("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw DomainError("learning_rate must be positive");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0 && adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
    throw DomainError("Adam betas must lie in [0, 1)");
  }
  if (!(adam_eps > 0.0)) throw DomainError("adam_eps must be positive");
  if (h_dim == 0 || d_dim == 0 || p_dim == 0) throw ShapeError("hidden dimensions must be >= 1");
  aug.validate();
}

TrainingError::TrainingError(std::size_t epoch, double loss)
    : Error("non-finite loss " + std::to_string(loss) + " at epoch " + std::to_string(epoch)),
      epoch_(epoch),
      loss_(loss) {}

Graph augment(const Graph& g, double p_edge_drop, double p_feat_mask, std::uint64_t seed,
              std::uint64_t tag) {
  if (!(p_edge_drop >= 0.0 && p_edge_drop <= 1.0) || !(p_feat_mask >= 0.0 && p_feat_mask <= 1.0)) {
    throw DomainError("augmentation probabilities must lie in [0, 1]");
  }
  Rng rng = make_rng(seed, tag);
  std::vector<Edge> kept;
  kept.reserve(g.n_edges());
  for (const Edge& e : g.edges()) {
    if (!bernoulli(rng, p_edge_drop)) kept.push_back(e);
  }
  Eigen::MatrixXd x = g.features();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (bernoulli(rng, p_feat_mask)) x.col(j).setZero();
  }
  return Graph(g.n_nodes(), std::move(kept), std::move(x), g.labels(), g.n_classes());
}

double info_nce_loss(const Eigen::MatrixXd& h1, const Eigen::MatrixXd& h2, double temperature) {
  return info_nce_impl(h1, h2, temperature, nullptr, nullptr);
}

double info_nce_loss_grad(const Eigen::MatrixXd& h1, const Eigen::MatrixXd& h2, double temperature,
                          Eigen::MatrixXd& d_h1, Eigen::MatrixXd& d_h2) {
  return info_nce_impl(h1, h2, temperature, &d_h1, &d_h2);
}

ViewPair make_views(const Graph& g, const TrainConfig& cfg, std::size_t epoch) {
  const std::uint64_t aug_seed = derive_seed(cfg.seed, "augment");
  const auto& aug = cfg.aug;
  Graph noisy = augment(g, aug.p_edge_drop[0], aug.p_feat_mask[0], aug_seed, 2 * epoch);
  Graph clean = augment(g, aug.p_edge_drop[1], aug.p_feat_mask[1], aug_seed, 2 * epoch + 1);
  if (aug.inject_noise) {
    const StructVector sv = to_struct_vector(noisy);
    const NoiseDraw eps =
        sample_edgedrop(sv, EdgeDropSpec{aug.res_beta_drop}, derive_seed(cfg.seed, "res-noise"), epoch);
    if (!eps.toggled.empty()) {
      noisy = from_struct_vector(apply_xor(sv, eps), noisy.n_nodes(), noisy.features(),
                                 noisy.labels(), noisy.n_classes());
    }
  }
  return {std::move(noisy), std::move(clean)};
}

double contrastive_objective(const ViewPair& views, const EncoderParams& p, double temperature,
                             EncoderParams* grad) {
  const ForwardCache c1 = forward_cached(views.noisy, p);
  const ForwardCache c2 = forward_cached(views.clean, p);
  if (grad == nullptr) return info_nce_loss(c1.H, c2.H, temperature);
  Eigen::MatrixXd d1, d2;
  const double loss = info_nce_loss_grad(c1.H, c2.H, temperature, d1, d2);
  *grad = backward(c1, p, d1);
  add_into(*grad, backward(c2, p, d2));
  return loss;
}

TrainResult train_res(const Graph& g, const TrainConfig& cfg) {
  cfg.validate();
  if (g.n_nodes() < 2) throw PreconditionError("training needs at least two nodes");
  const EncoderDims dims{g.feature_dim(), cfg.h_dim, cfg.d_dim, cfg.p_dim};
  TrainResult out;
  out.params = init_params(dims, cfg.seed);
  EncoderParams m = zeros_like(out.params);
  EncoderParams v = zeros_like(out.params);
  auto ps = param_spans(out.params);
  auto ms = param_spans(m);
  auto vs = param_spans(v);

  double b1_pow = 1.0;
  double b2_pow = 1.0;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    const ViewPair views = make_views(g, cfg, epoch);
    EncoderParams grad;
    double loss = std::numeric_limits<double>::quiet_NaN();
    try {
      loss = contrastive_objective(views, out.params, cfg.aug.temperature, &grad);
    } catch (const DomainError&) {
      // Diverged parameters surface as non-finite activations.
      throw TrainingError(epoch, loss);
    }
    if (!std::isfinite(loss) || !grad.all_finite()) throw TrainingError(epoch, loss);

    b1_pow *= cfg.adam_beta1;
    b2_pow *= cfg.adam_beta2;
    const double lr_t = cfg.learning_rate * std::sqrt(1.0 - b2_pow) / (1.0 - b1_pow);
    auto gs = param_spans(grad);
    for (std::size_t t = 0; t < ps.size(); ++t) {
      for (std::size_t i = 0; i < ps[t].size(); ++i) {
        const double gi = gs[t][i];
        ms[t][i] = cfg.adam_beta1 * ms[t][i] + (1.0 - cfg.adam_beta1) * gi;
        vs[t][i] = cfg.adam_beta2 * vs[t][i] + (1.0 - cfg.adam_beta2) * gi * gi;
        ps[t][i] -= lr_t * ms[t][i] / (std::sqrt(vs[t][i]) + cfg.adam_eps);
      }
    }
    const auto t1 = std::chrono::steady_clock::now();
    out.log.push_back({epoch, loss, std::chrono::duration<double, std::milli>(t1 - t0).count()});
  }
  if (!out.params.all_finite()) throw TrainingError(cfg.epochs, out.log.back().loss);
  return out;
}

double grad_check(const EncoderParams& p, const Graph& g, const TrainConfig& cfg, double h,
                  std::size_t n_params) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  const ViewPair views = make_views(g, cfg, 1);
  EncoderParams analytic;
  contrastive_objective(views, p, cfg.aug.temperature, &analytic);
  const auto as = param_spans(analytic);

  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t t = 0; t < as.size(); ++t) {
    for (std::size_t i = 0; i < as[t].size(); ++i) all.emplace_back(t, i);
  }
  Rng rng(derive_seed(cfg.seed, "grad-check"));
  std::shuffle(all.begin(), all.end(), rng);
  if (all.size() > n_params) all.resize(n_params);

  double worst = 0.0;
  EncoderParams probe = p;
  auto probe_spans = param_spans(probe);
  for (const auto& [t, i] : all) {
    const double orig = probe_spans[t][i];
    probe_spans[t][i] = orig + h;
    const double up = contrastive_objective(views, probe, cfg.aug.temperature);
    probe_spans[t][i] = orig - h;
    const double down = contrastive_objective(views, probe, cfg.aug.temperature);
    probe_spans[t][i] = orig;
    const double numeric = (up - down) / (2.0 * h);
    const double rel = std::fabs(as[t][i] - numeric) / std::max(std::fabs(numeric), 1e-8);
    worst = std::max(worst, rel);
  }
  return worst;
}

}  // namespace edgecert
