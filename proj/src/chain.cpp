#include "gainthresh/chain.h"

#include <algorithm>
#include <functional>
#include <string>

#include "gainthresh/error.h"

namespace gainthresh {

namespace {

using Index = Eigen::Index;

/// Strongly connected components of the support digraph (Tarjan).
std::vector<std::vector<std::size_t>> strongly_connected(const Eigen::MatrixXd& P)
{
   const auto n = static_cast<std::size_t>(P.rows());
   std::vector<int> index(n, -1), low(n, 0);
   std::vector<bool> on_stack(n, false);
   std::vector<std::size_t> stack;
   std::vector<std::vector<std::size_t>> components;
   int counter = 0;

   std::function<void(std::size_t)> visit = [&](std::size_t v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      for (std::size_t w = 0; w < n; ++w) {
         if (P(static_cast<Index>(v), static_cast<Index>(w)) <= kSupportThreshold) continue;
         if (index[w] < 0) {
            visit(w);
            low[v] = std::min(low[v], low[w]);
         } else if (on_stack[w]) {
            low[v] = std::min(low[v], index[w]);
         }
      }
      if (low[v] == index[v]) {
         std::vector<std::size_t> component;
         std::size_t w;
         do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            component.push_back(w);
         } while (w != v);
         std::sort(component.begin(), component.end());
         components.push_back(std::move(component));
      }
   };
   for (std::size_t v = 0; v < n; ++v)
      if (index[v] < 0) visit(v);
   return components;
}

}  // namespace

ChainStructure chain_structure(const Eigen::MatrixXd& P)
{
   const auto n = static_cast<std::size_t>(P.rows());
   ChainStructure out;
   std::vector<int> class_of(n, -1);
   for (auto& component : strongly_connected(P)) {
      std::vector<bool> inside(n, false);
      for (auto v : component) inside[v] = true;
      bool closed = true;
      for (auto v : component) {
         for (std::size_t w = 0; w < n && closed; ++w) {
            if (!inside[w] && P(static_cast<Index>(v), static_cast<Index>(w)) > kSupportThreshold)
               closed = false;
         }
      }
      if (closed) out.recurrent_classes.push_back(std::move(component));
   }
   std::sort(out.recurrent_classes.begin(), out.recurrent_classes.end(),
             [](const auto& a, const auto& b) { return a.front() < b.front(); });
   for (std::size_t k = 0; k < out.recurrent_classes.size(); ++k)
      for (auto v : out.recurrent_classes[k]) class_of[v] = static_cast<int>(k);
   for (std::size_t v = 0; v < n; ++v)
      if (class_of[v] < 0) out.transient_states.push_back(v);

   const auto t = static_cast<Index>(out.transient_states.size());
   const auto c = static_cast<Index>(out.recurrent_classes.size());
   out.absorption = Eigen::MatrixXd::Zero(t, c);
   if (t == 0) return out;

   // B = (I - Q)^{-1} R over transient states.
   Eigen::MatrixXd I_minus_Q = Eigen::MatrixXd::Identity(t, t);
   Eigen::MatrixXd R = Eigen::MatrixXd::Zero(t, c);
   for (Index i = 0; i < t; ++i) {
      const auto from = static_cast<Index>(out.transient_states[static_cast<std::size_t>(i)]);
      for (Index j = 0; j < t; ++j)
         I_minus_Q(i, j) -= P(from, static_cast<Index>(out.transient_states[static_cast<std::size_t>(j)]));
      for (std::size_t v = 0; v < n; ++v) {
         if (class_of[v] >= 0) R(i, class_of[v]) += P(from, static_cast<Index>(v));
      }
   }
   Eigen::FullPivLU<Eigen::MatrixXd> lu(I_minus_Q);
   if (!lu.isInvertible())
      throw Error(ErrorKind::SingularSystem, "absorption system is singular");
   out.absorption = lu.solve(R);
   // Rows sum to one up to rounding; renormalize away the drift.
   for (Index i = 0; i < t; ++i) {
      const double s = out.absorption.row(i).sum();
      if (s > 0.0) out.absorption.row(i) /= s;
   }
   return out;
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& P,
                                        const std::vector<std::size_t>& states)
{
   const auto m = static_cast<Index>(states.size());
   if (m == 0) throw Error(ErrorKind::SingularSystem, "empty class");
   Eigen::MatrixXd sub(m, m);
   for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j)
         sub(i, j) = P(static_cast<Index>(states[static_cast<std::size_t>(i)]),
                       static_cast<Index>(states[static_cast<std::size_t>(j)]));

   // mu^T (I - P_C) = 0 with the last balance equation replaced by sum(mu) = 1.
   Eigen::MatrixXd A = (Eigen::MatrixXd::Identity(m, m) - sub).transpose();
   A.row(m - 1).setOnes();
   Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
   rhs[m - 1] = 1.0;
   Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
   if (!lu.isInvertible())
      throw Error(ErrorKind::SingularSystem, "stationary system is singular");
   Eigen::VectorXd mu = lu.solve(rhs);

   const double residual =
       (mu.transpose() * (Eigen::MatrixXd::Identity(m, m) - sub)).cwiseAbs().maxCoeff();
   if (residual > 1e-10 || mu.minCoeff() < -1e-10)
      throw Error(ErrorKind::SingularSystem,
                  "class is not closed and irreducible (stationary residual "
                      + std::to_string(residual) + ")");
   mu = mu.cwiseMax(0.0);
   return mu / mu.sum();
}

Eigen::MatrixXd cesaro_limit(const Eigen::MatrixXd& P)
{
   return cesaro_limit(P, chain_structure(P));
}

Eigen::MatrixXd cesaro_limit(const Eigen::MatrixXd& P, const ChainStructure& structure)
{
   const Index n = P.rows();
   Eigen::MatrixXd limit = Eigen::MatrixXd::Zero(n, n);
   std::vector<Eigen::RowVectorXd> class_rows;
   for (const auto& cls : structure.recurrent_classes) {
      const Eigen::VectorXd mu = stationary_distribution(P, cls);
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
      for (std::size_t i = 0; i < cls.size(); ++i)
         row[static_cast<Index>(cls[i])] = mu[static_cast<Index>(i)];
      for (auto v : cls) limit.row(static_cast<Index>(v)) = row;
      class_rows.push_back(std::move(row));
   }
   for (std::size_t i = 0; i < structure.transient_states.size(); ++i) {
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
      for (std::size_t k = 0; k < class_rows.size(); ++k)
         row += structure.absorption(static_cast<Index>(i), static_cast<Index>(k)) * class_rows[k];
      limit.row(static_cast<Index>(structure.transient_states[i])) = row;
   }
   return limit;
}

ErgodicityResult is_ergodic_mdp(const MdpInstance& mdp, std::size_t cap)
{
   ErgodicityResult result;
   for (const auto& policy : enumerate_policies(mdp, cap)) {
      auto structure = chain_structure(induce(mdp, policy).P);
      if (!structure.is_irreducible()) {
         result.ergodic = false;
         result.witness = policy;
         result.witness_structure = std::move(structure);
         return result;
      }
   }
   return result;
}

bool is_unichain_mdp(const MdpInstance& mdp, std::size_t cap)
{
   for (const auto& policy : enumerate_policies(mdp, cap)) {
      if (chain_structure(induce(mdp, policy).P).recurrent_classes.size() != 1) return false;
   }
   return true;
}

}  // namespace gainthresh
