#include "dol/omd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dol {

namespace {

double margin_term(std::span<const double> w, const LabeledExample& ex) {
  return 1.0 - ex.label * ex.features.dot(w);
}

}  // namespace

double hinge_loss(std::span<const double> w, const LabeledExample& ex) {
  return std::max(0.0, margin_term(w, ex));
}

double ogd_loss(std::span<const double> w, const LabeledExample& ex,
                double C) {
  double sq = 0.0;
  for (double v : w) sq += v * v;
  return C * hinge_loss(w, ex) + 0.5 * sq;
}

std::vector<double> hinge_subgradient(std::span<const double> w,
                                      const LabeledExample& ex, double C,
                                      bool include_regularizer) {
  std::vector<double> g(w.size(), 0.0);
  if (margin_term(w, ex) > 0.0) {
    add_scaled(g, ex.features, -static_cast<double>(ex.label));
  }
  if (include_regularizer) {
    for (std::size_t d = 0; d < g.size(); ++d) g[d] = C * g[d] + w[d];
  }
  return g;
}

EgState EgState::from_stacked(std::vector<double> stacked) {
  if (stacked.size() % 2 != 0) {
    throw std::invalid_argument("EgState: stacked size must be even");
  }
  EgState s;
  s.dim_ = static_cast<int>(stacked.size() / 2);
  s.stacked_ = std::move(stacked);
  return s;
}

std::vector<double> EgState::effective() const {
  std::vector<double> w(dim_);
  for (int d = 0; d < dim_; ++d) w[d] = stacked_[d] - stacked_[d + dim_];
  return w;
}

int omd_predict(std::span<const double> w, const SparseVector& x) {
  return x.dot(w) >= 0.0 ? 1 : -1;
}

double effective_score(std::span<const double> stacked, const SparseVector& x) {
  const std::size_t dim = stacked.size() / 2;
  double score = 0.0;
  for (const SparseVector::Entry& e : x.entries()) {
    if (static_cast<std::size_t>(e.index) < dim) {
      score += e.value * (stacked[e.index] - stacked[e.index + dim]);
    }
  }
  return score;
}

int omd_predict(const EgState& state, const SparseVector& x) {
  return effective_score(state.stacked(), x) >= 0.0 ? 1 : -1;
}

void dogd_update(std::span<const NeighborState> neighbors, double eta,
                 std::span<double> out) {
  if (neighbors.empty()) {
    throw std::invalid_argument("dogd_update: empty neighborhood");
  }
  const double inv = 1.0 / static_cast<double>(neighbors.size());
  for (std::size_t d = 0; d < out.size(); ++d) {
    double sum = 0.0;
    for (const NeighborState& nb : neighbors) {
      sum += nb.w[d] - eta * nb.g[d];
    }
    out[d] = sum * inv;
  }
}

std::vector<double> dogd_update(std::span<const NeighborState> neighbors,
                                double eta) {
  std::vector<double> out(neighbors.empty() ? 0 : neighbors[0].w.size());
  dogd_update(neighbors, eta, out);
  return out;
}

void doeg_update(std::span<const NeighborState> neighbors, double eta,
                 double S, std::span<double> out) {
  if (neighbors.empty()) {
    throw std::invalid_argument("doeg_update: empty neighborhood");
  }
  const double inv = 1.0 / static_cast<double>(neighbors.size());
  double l1 = 0.0;
  for (std::size_t d = 0; d < out.size(); ++d) {
    double log_sum = 0.0;
    for (const NeighborState& nb : neighbors) {
      if (!(nb.w[d] > 0.0)) {
        throw std::invalid_argument(
            "doeg_update: weights must be strictly positive");
      }
      log_sum += std::log(nb.w[d]) - eta * nb.g[d];
    }
    out[d] = std::exp(log_sum * inv);
    l1 += out[d];
  }
  if (S > 0.0 && l1 > S) {
    const double scale = S / l1;
    for (double& v : out) v *= scale;
  }
}

std::vector<double> doeg_update(std::span<const NeighborState> neighbors,
                                double eta, double S) {
  std::vector<double> out(neighbors.empty() ? 0 : neighbors[0].w.size());
  doeg_update(neighbors, eta, S, out);
  return out;
}

double bregman_divergence(Divergence div, std::span<const double> u,
                          std::span<const double> v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("bregman_divergence: size mismatch");
  }
  double acc = 0.0;
  if (div == Divergence::euclidean) {
    for (std::size_t d = 0; d < u.size(); ++d) {
      const double diff = u[d] - v[d];
      acc += diff * diff;
    }
    return 0.5 * acc;
  }
  for (std::size_t d = 0; d < u.size(); ++d) {
    if (!(u[d] > 0.0) || !(v[d] > 0.0)) {
      throw std::invalid_argument(
          "bregman_divergence: entropy requires positive components");
    }
    acc += u[d] * std::log(u[d] / v[d]) - u[d] + v[d];
  }
  return acc;
}

void project_l1_ball(std::span<double> v, double S) {
  double l1 = 0.0;
  for (double x : v) l1 += std::abs(x);
  if (l1 <= S) return;

  // soft-threshold magnitudes by theta chosen so the result lands on the
  // sphere |.|_1 = S
  std::vector<double> mags(v.size());
  for (std::size_t d = 0; d < v.size(); ++d) mags[d] = std::abs(v[d]);
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  double running = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    running += mags[k];
    const double candidate = (running - S) / static_cast<double>(k + 1);
    if (k + 1 == mags.size() || mags[k + 1] <= candidate) {
      theta = candidate;
      break;
    }
  }
  for (double& x : v) {
    const double mag = std::max(std::abs(x) - theta, 0.0);
    x = x >= 0 ? mag : -mag;
  }
}

namespace {

constexpr double kEntropyFloor = 1e-15;

struct ProxObjective {
  std::span<const NeighborState> neighbors;
  double eta;
  Divergence div;

  double value(std::span<const double> z) const {
    double acc = 0.0;
    for (const NeighborState& nb : neighbors) {
      for (std::size_t d = 0; d < z.size(); ++d) {
        acc += eta * nb.g[d] * (z[d] - nb.w[d]);
      }
      acc += bregman_divergence(div, z, nb.w);
    }
    return acc;
  }

  void gradient(std::span<const double> z, std::span<double> out) const {
    const double k = static_cast<double>(neighbors.size());
    for (std::size_t d = 0; d < z.size(); ++d) {
      double acc = div == Divergence::euclidean
                       ? k * z[d]
                       : k * std::log(z[d]);
      for (const NeighborState& nb : neighbors) {
        acc += eta * nb.g[d];
        acc -= div == Divergence::euclidean ? nb.w[d] : std::log(nb.w[d]);
      }
      out[d] = acc;
    }
  }
};

}  // namespace

std::vector<double> bregman_prox_oracle(std::span<const NeighborState> neighbors,
                                        double eta, Divergence div,
                                        double l1_radius, double grad_tol,
                                        long max_iterations) {
  if (neighbors.empty() || neighbors.size() > 8) {
    throw std::invalid_argument(
        "bregman_prox_oracle: neighborhood size must be in [1, 8]");
  }
  const std::size_t dim = neighbors[0].w.size();
  if (dim == 0 || dim > 8) {
    throw std::invalid_argument(
        "bregman_prox_oracle: dimension must be in [1, 8]");
  }
  for (const NeighborState& nb : neighbors) {
    if (nb.w.size() != dim || nb.g.size() != dim) {
      throw std::invalid_argument("bregman_prox_oracle: ragged inputs");
    }
    if (div == Divergence::entropy) {
      for (double w : nb.w) {
        if (!(w > 0.0)) {
          throw std::invalid_argument(
              "bregman_prox_oracle: entropy requires positive weights");
        }
      }
    }
  }

  ProxObjective obj{neighbors, eta, div};
  const bool constrained = l1_radius > 0.0;

  auto project = [&](std::span<double> z) {
    if (constrained) project_l1_ball(z, l1_radius);
    if (div == Divergence::entropy) {
      for (double& v : z) v = std::max(v, kEntropyFloor);
    }
  };

  std::vector<double> z(dim, div == Divergence::entropy ? 1.0 : 0.0);
  project(z);

  std::vector<double> grad(dim), trial(dim), trial_grad(dim), scratch(dim);
  const double probe = 1e-3;

  // first-order residual: plain gradient norm on a free iterate,
  // projected-step displacement when a constraint may be active
  auto residual_norm = [&](std::span<const double> at,
                           std::span<const double> g) {
    double res2 = 0.0;
    if (!constrained && div == Divergence::euclidean) {
      for (double gd : g) res2 += gd * gd;
    } else {
      for (std::size_t d = 0; d < dim; ++d) scratch[d] = at[d] - probe * g[d];
      project(scratch);
      for (std::size_t d = 0; d < dim; ++d) {
        const double r = (at[d] - scratch[d]) / probe;
        res2 += r * r;
      }
    }
    return std::sqrt(res2);
  };

  double fz = obj.value(z);
  obj.gradient(z, grad);
  double res = residual_norm(z, grad);
  double step = 1.0;

  for (long iter = 0; iter < max_iterations; ++iter) {
    if (res <= grad_tol) return z;

    for (std::size_t d = 0; d < dim; ++d) trial[d] = z[d] - step * grad[d];
    project(trial);
    const double ft = obj.value(trial);
    obj.gradient(trial, trial_grad);
    const double trial_res = residual_norm(trial, trial_grad);

    double disp2 = 0.0, znorm2 = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = trial[d] - z[d];
      disp2 += diff * diff;
      znorm2 += z[d] * z[d];
    }
    const bool micro_step =
        std::sqrt(disp2) <= 1e-6 * (1.0 + std::sqrt(znorm2));

    // Accept on objective decrease while it is resolvable; near the
    // optimum objective differences drown in rounding, so fall back to
    // first-order-residual progress, restricted to tiny displacements so
    // an objective-raising long jump can never be taken.
    if (ft < fz || (micro_step && trial_res < res)) {
      z = trial;
      fz = std::min(fz, ft);
      grad = trial_grad;
      res = trial_res;
      step = std::min(step * 1.25, 1.0);
    } else {
      step *= 0.5;
      if (step < 1e-30) break;
    }
  }
  if (res <= grad_tol) return z;
  throw std::runtime_error(
      "bregman_prox_oracle: did not reach tolerance within the iteration cap");
}

RegretReport regret_accounting(
    const std::vector<std::vector<double>>& per_round_losses,
    std::span<const double> comparator_loss) {
  if (per_round_losses.size() != comparator_loss.size()) {
    throw std::invalid_argument(
        "regret_accounting: agents and comparator lengths differ");
  }
  RegretReport report;
  report.individual.reserve(per_round_losses.size());
  const std::size_t rounds =
      per_round_losses.empty() ? 0 : per_round_losses[0].size();
  for (std::size_t i = 0; i < per_round_losses.size(); ++i) {
    if (per_round_losses[i].size() != rounds) {
      throw std::invalid_argument(
          "regret_accounting: agents played different numbers of rounds");
    }
    const double total = std::accumulate(per_round_losses[i].begin(),
                                         per_round_losses[i].end(), 0.0);
    report.individual.push_back(total - comparator_loss[i]);
    report.social += report.individual.back();
  }
  if (!per_round_losses.empty()) {
    report.average =
        report.social / static_cast<double>(per_round_losses.size());
  }
  return report;
}

}  // namespace dol
