// Pinned regression fixtures shared by the unit and acceptance suites.
#pragma once

#include <cstdint>

namespace fixture {

// 21 x 21 torus, R = 1, S = 0, T = 1.2, U = 0.1, half the players start as
// cooperators (seed 1). Found by scanning T in [1.1, 1.8] and seeds 1..10;
// after 200 synchronous steps 370 of 441 players cooperate, while the same
// start on the complete graph ends all-D.
inline constexpr int kTorusSide = 21;
inline constexpr double kR = 1.0;
inline constexpr double kS = 0.0;
inline constexpr double kT = 1.2;
inline constexpr double kU = 0.1;
inline constexpr double kInitialFraction = 0.5;
inline constexpr std::uint64_t kSeed = 1;
inline constexpr int kSteps = 200;
inline constexpr double kFinalFraction = 370.0 / 441.0;

}  // namespace fixture
