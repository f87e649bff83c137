#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "dol/sparse_vector.hpp"

namespace dol {

enum class OmdVariant {
  gradient,       // additive updates, arithmetic neighborhood mean
  exponentiated,  // multiplicative updates, geometric neighborhood mean
};

struct OmdConfig {
  OmdVariant variant = OmdVariant::gradient;
  double hinge_scale = 1.0;  // C, gradient variant objective
  double l1_radius = 0.0;    // S, exponentiated feasible set; must be > 0 there
  // Gradient variant: when set, the objective is C*hinge + |w|^2/2 and the
  // subgradient carries C and the regularizer term; when clear, both the
  // objective and the subgradient are the plain unscaled hinge.
  bool regularized = true;
  int n_agents = 1;
  // Fixed reference point for divergence instrumentation and regret
  // reports; empty selects the zero vector (gradient) or the initial
  // stacked point (exponentiated).
  std::vector<double> comparator;
};

// Learning-rate schedule 1/sqrt(t) on the global round index t >= 1.
inline double eta_schedule(long long t) {
  return 1.0 / std::sqrt(static_cast<double>(t));
}

double hinge_loss(std::span<const double> w, const LabeledExample& ex);

// C * max{0, 1 - l<w,x>} + |w|^2 / 2
double ogd_loss(std::span<const double> w, const LabeledExample& ex, double C);

// Hinge part is -l*x when 1 - l<w,x> > 0, zero otherwise. With
// include_regularizer the result is C*hinge_part + w (subgradient of
// ogd_loss); without, it is the plain hinge part (subgradient of
// hinge_loss, C ignored).
std::vector<double> hinge_subgradient(std::span<const double> w,
                                      const LabeledExample& ex, double C,
                                      bool include_regularizer);

// Positive/negative weight pair stored stacked as [w_plus | w_minus] so a
// signed predictor can live inside multiplicative updates; the effective
// predictor is w_plus - w_minus.
class EgState {
 public:
  EgState() = default;
  explicit EgState(int dim, double value = 1.0)
      : stacked_(2 * static_cast<std::size_t>(dim), value), dim_(dim) {}
  static EgState from_stacked(std::vector<double> stacked);

  int dim() const { return dim_; }
  std::span<double> plus() { return {stacked_.data(), size_t(dim_)}; }
  std::span<const double> plus() const { return {stacked_.data(), size_t(dim_)}; }
  std::span<double> minus() { return {stacked_.data() + dim_, size_t(dim_)}; }
  std::span<const double> minus() const {
    return {stacked_.data() + dim_, size_t(dim_)};
  }
  std::vector<double>& stacked() { return stacked_; }
  const std::vector<double>& stacked() const { return stacked_; }
  std::vector<double> effective() const;

 private:
  using size_t = std::size_t;
  std::vector<double> stacked_;
  int dim_ = 0;
};

// sign(<w,x>) with ties (exact zero) resolved to +1
int omd_predict(std::span<const double> w, const SparseVector& x);
int omd_predict(const EgState& state, const SparseVector& x);

double effective_score(std::span<const double> stacked, const SparseVector& x);

struct NeighborState {
  std::span<const double> w;
  std::span<const double> g;
};

// w_new = (1/K) * sum_j (w_j - eta * g_j) over the K neighborhood members
void dogd_update(std::span<const NeighborState> neighbors, double eta,
                 std::span<double> out);
std::vector<double> dogd_update(std::span<const NeighborState> neighbors,
                                double eta);

// Componentwise geometric mean of w_j * exp(-eta * g_j), computed in log
// space, then rescaled onto the l1 ball of radius S when it lands outside
// (S <= 0 disables the ball). Inputs must be strictly positive.
void doeg_update(std::span<const NeighborState> neighbors, double eta,
                 double S, std::span<double> out);
std::vector<double> doeg_update(std::span<const NeighborState> neighbors,
                                double eta, double S);

enum class Divergence { euclidean, entropy };

// Bregman divergence psi(u, v): squared Euclidean distance / 2, or the
// unnormalized relative entropy sum(u ln(u/v) - u + v).
double bregman_divergence(Divergence div, std::span<const double> u,
                          std::span<const double> v);

// Brute-force minimizer of  sum_j [ eta<g_j, z - w_j> + psi(z, w_j) ]
// by projected backtracking gradient descent, run until the first-order
// residual drops below grad_tol. l1_radius > 0 constrains z to that l1
// ball; the entropy divergence additionally keeps z positive. Intended as
// a test oracle for the closed-form updates at small scale (dim <= 8,
// neighborhoods <= 8); throws on larger inputs or non-convergence.
std::vector<double> bregman_prox_oracle(std::span<const NeighborState> neighbors,
                                        double eta, Divergence div,
                                        double l1_radius = 0.0,
                                        double grad_tol = 1e-9,
                                        long max_iterations = 2000000);

// Euclidean projection onto the l1 ball of radius S.
void project_l1_ball(std::span<double> v, double S);

struct RegretReport {
  std::vector<double> individual;  // R_i(T)
  double social = 0.0;             // sum of individual regrets
  double average = 0.0;            // social / N
};

// individual[i] = sum_t losses[i][t] - comparator_loss[i]. All agents
// must have played the same number of rounds.
RegretReport regret_accounting(
    const std::vector<std::vector<double>>& per_round_losses,
    std::span<const double> comparator_loss);

}  // namespace dol
