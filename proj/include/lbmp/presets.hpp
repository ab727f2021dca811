#pragma once

#include <cstdint>
#include <string>

#include "lbmp/scenario.hpp"

namespace lbmp {

// Two static bars forcing a detour below their lower tips; the optimal
// arrival time is known in closed form: (0.4*sqrt(2) + 0.6) / v_max.
Scenario make_exp1_scenario();

// One disc (radius 0.25) leaving the workspace center toward the left
// border while the robot crosses left to right. Obstacle speed is a
// reconstruction choice; see README.
Scenario make_exp2_scenario();

inline constexpr std::uint64_t kExp3DefaultSeed = 7;

// Two static bars forming a staggered gate plus ten slow discs (radius
// 0.15) released from the center along seeded random tours.
Scenario make_exp3_scenario(std::uint64_t seed = kExp3DefaultSeed);

// Dispatch by preset name: "exp1", "exp2", "exp3" or "random".
Scenario make_preset_scenario(const std::string& name, std::uint64_t seed, int num_obstacles = 10,
                              double radius = 0.15);

}  // namespace lbmp
