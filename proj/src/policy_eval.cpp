#include "gainthresh/policy_eval.h"

#include <cmath>
#include <string>

#include "gainthresh/chain.h"
#include "gainthresh/error.h"

namespace gainthresh {

namespace {

Eigen::VectorXd bias_from_limit(const InducedChain& chain, const Eigen::MatrixXd& limit,
                                const Eigen::VectorXd& g)
{
   const auto n = chain.P.rows();
   const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - chain.P + limit;
   Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
   // I - P + P* is always invertible; a vanishing determinant means corrupt input.
   if (!std::isfinite(lu.determinant()) || std::abs(lu.determinant()) < 1e-300)
      throw Error(ErrorKind::SingularSystem, "deviation system I - P + P* is singular");
   return lu.solve(chain.r - g);
}

}  // namespace

double span(const Eigen::VectorXd& u)
{
   if (u.size() == 0) throw Error(ErrorKind::DomainError, "span of an empty vector");
   return u.maxCoeff() - u.minCoeff();
}

Eigen::VectorXd gain(const InducedChain& chain)
{
   return cesaro_limit(chain.P) * chain.r;
}

Eigen::VectorXd bias(const InducedChain& chain, const Eigen::VectorXd& g)
{
   return bias_from_limit(chain, cesaro_limit(chain.P), g);
}

PolicyEvaluation evaluate(const InducedChain& chain)
{
   PolicyEvaluation out;
   out.limit = cesaro_limit(chain.P);
   out.gain = out.limit * chain.r;
   out.bias = bias_from_limit(chain, out.limit, out.gain);
   out.span_bias = span(out.bias);
   const auto n = chain.P.rows();
   out.poisson_residual =
       ((Eigen::MatrixXd::Identity(n, n) - chain.P) * out.bias + out.gain - chain.r)
           .cwiseAbs()
           .maxCoeff();
   out.normalization_residual = (out.limit * out.bias).cwiseAbs().maxCoeff();
   return out;
}

Eigen::VectorXd finite_horizon_score(const InducedChain& chain, std::size_t horizon)
{
   if (horizon == 0) throw Error(ErrorKind::DomainError, "horizon must be at least 1");
   // J_{t+1} = r + P J_t
   Eigen::VectorXd score = chain.r;
   for (std::size_t t = 1; t < horizon; ++t) score = chain.r + chain.P * score;
   return score;
}

Eigen::VectorXd discounted_value(const InducedChain& chain, double beta)
{
   if (!(beta >= 0.0 && beta < 1.0))
      throw Error(ErrorKind::DomainError,
                  "discount factor must lie in [0, 1), got " + std::to_string(beta));
   const auto n = chain.P.rows();
   const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - beta * chain.P;
   Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
   Eigen::VectorXd value = lu.solve(chain.r);
   // one step of iterative refinement keeps the residual small as beta -> 1
   value += lu.solve(chain.r - A * value);
   if (!value.allFinite())
      throw Error(ErrorKind::SingularSystem, "discounted system is singular");
   return value;
}

Eigen::VectorXd empirical_invariant_measure(const InducedChain& chain, std::size_t state)
{
   if (state >= static_cast<std::size_t>(chain.P.rows()))
      throw Error(ErrorKind::DomainError, "state index out of range");
   return cesaro_limit(chain.P).row(static_cast<Eigen::Index>(state)).transpose();
}

}  // namespace gainthresh
