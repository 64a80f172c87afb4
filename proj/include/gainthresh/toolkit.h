#ifndef GAINTHRESH_TOOLKIT_H
#define GAINTHRESH_TOOLKIT_H

#include <cstddef>
#include <cstdint>

#include "gainthresh/mdp.h"

namespace gainthresh {

/// Three-state deterministic instance on which the Theorem 1 bound is tight.
/// s0 chooses "right" (to s1, reward 1) or "left" (to s2, reward
/// 1 + eps_h - eps_g); s1 self-loops with reward 1, s2 with reward 1 - eps_g.
MdpInstance build_figure1(double eps_g, double eps_h);

/// Random instance from a fixed generator so that a seed names the same
/// instance everywhere:
///   - engine: std::mt19937_64 seeded with `seed`;
///   - uniform draw: (next() >> 11) * 2^-53, in [0, 1);
///   - for each state x, for each action a: n_states draws w_y = 1 - u
///     (so w_y in (0, 1]), row = (1 - mixing) w / sum(w) + mixing / n_states,
///     then one draw for the mean reward r(x, a) = u.
/// Labels are "s<i>" and "a<j>".
MdpInstance generate_random_mdp(std::size_t n_states, std::size_t n_actions,
                                std::uint64_t seed, double mixing);

}  // namespace gainthresh

#endif  // GAINTHRESH_TOOLKIT_H
