#ifndef GAINTHRESH_POLICY_EVAL_H
#define GAINTHRESH_POLICY_EVAL_H

#include <cstddef>

#include <Eigen/Dense>

#include "gainthresh/mdp.h"

namespace gainthresh {

struct PolicyEvaluation {
   Eigen::VectorXd gain;
   Eigen::VectorXd bias;
   double span_bias = 0.0;
   /// max-norm of (I - P) h + g - r
   double poisson_residual = 0.0;
   /// max-norm of P* h
   double normalization_residual = 0.0;
   /// Cesaro limit of the chain; row x is the invariant measure from x.
   Eigen::MatrixXd limit;
};

double span(const Eigen::VectorXd& u);

Eigen::VectorXd gain(const InducedChain& chain);

/// Bias normalized by P* h = 0, from one solve of (I - P + P*) h = r - g.
Eigen::VectorXd bias(const InducedChain& chain, const Eigen::VectorXd& g);

PolicyEvaluation evaluate(const InducedChain& chain);

/// J_T = sum_{t<T} P^t r by the exact recurrence.
Eigen::VectorXd finite_horizon_score(const InducedChain& chain, std::size_t horizon);

/// V = (I - beta P)^{-1} r; beta must lie in [0, 1).
Eigen::VectorXd discounted_value(const InducedChain& chain, double beta);

Eigen::VectorXd empirical_invariant_measure(const InducedChain& chain, std::size_t state);

}  // namespace gainthresh

#endif  // GAINTHRESH_POLICY_EVAL_H
