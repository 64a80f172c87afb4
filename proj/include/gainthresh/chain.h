#ifndef GAINTHRESH_CHAIN_H
#define GAINTHRESH_CHAIN_H

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gainthresh/mdp.h"

namespace gainthresh {

/// Entries at or below this value are treated as structural zeros.
inline constexpr double kSupportThreshold = 1e-12;

struct ChainStructure {
   /// Closed communicating classes, each sorted, ordered by smallest member.
   std::vector<std::vector<std::size_t>> recurrent_classes;
   std::vector<std::size_t> transient_states;
   /// absorption(i, k): probability that transient_states[i] is absorbed
   /// into recurrent_classes[k].
   Eigen::MatrixXd absorption;

   bool is_irreducible() const
   {
      return recurrent_classes.size() == 1 && transient_states.empty();
   }
};

ChainStructure chain_structure(const Eigen::MatrixXd& P);

/// Stationary distribution of P restricted to a recurrent class, in the
/// order of `states`. Throws SingularSystem if the class is not closed and
/// irreducible.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& P,
                                        const std::vector<std::size_t>& states);

/// Cesaro limit lim (1/T) sum_{t<T} P^t, assembled from the class structure.
Eigen::MatrixXd cesaro_limit(const Eigen::MatrixXd& P);
Eigen::MatrixXd cesaro_limit(const Eigen::MatrixXd& P, const ChainStructure& structure);

struct ErgodicityResult {
   bool ergodic = true;
   std::optional<Policy> witness;
   std::optional<ChainStructure> witness_structure;
};

/// Ergodic here means every deterministic policy induces an irreducible
/// chain. Aperiodicity is not required.
ErgodicityResult is_ergodic_mdp(const MdpInstance& mdp,
                                std::size_t cap = kDefaultEnumerationCap);

/// Every policy has exactly one recurrent class (transient states allowed).
bool is_unichain_mdp(const MdpInstance& mdp, std::size_t cap = kDefaultEnumerationCap);

}  // namespace gainthresh

#endif  // GAINTHRESH_CHAIN_H
