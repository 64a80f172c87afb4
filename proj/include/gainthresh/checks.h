#ifndef GAINTHRESH_CHECKS_H
#define GAINTHRESH_CHECKS_H

#include <optional>
#include <string>
#include <vector>

#include "gainthresh/mdp.h"
#include "gainthresh/optimality.h"
#include "gainthresh/thresholds.h"

namespace gainthresh {

struct CheckOutcome {
   std::string name;
   bool passed = true;
   /// Worst observed value of the checked quantity, e.g. a residual or slack.
   double worst = 0.0;
   std::string detail;
};

struct InvariantReport {
   bool ergodic = false;
   std::vector<CheckOutcome> checks;
   Theorem1Result theorem1;
   OracleResult oracle;
   std::optional<ErgodicBoundResult> theorem2;
   std::optional<double> gain_gap;

   bool all_passed() const;
};

inline constexpr std::size_t kSoundnessSamples = 20;

/// The discount factors above `bound` probed by the soundness check:
/// kSoundnessSamples evenly spaced points strictly inside (max(bound, 0), 1).
std::vector<double> soundness_samples(double bound);

/// Runs every library-level invariant on one instance: Poisson residuals,
/// finite-horizon and discounted sandwiches, the Bellman-gap lemma, optimal
/// set nesting, and, on ergodic instances, gap non-negativity, bound ordering,
/// the span-diameter inequality and algorithm/definition agreement, then
/// soundness of the Theorem 1 bound against the oracle.
InvariantReport run_invariant_suite(const MdpInstance& mdp, const Options& options = {},
                                    const OracleSettings& settings = {});

}  // namespace gainthresh

#endif  // GAINTHRESH_CHECKS_H
