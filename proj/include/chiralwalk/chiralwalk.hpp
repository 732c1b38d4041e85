#pragma once

// Chiral continuous-time quantum walks on simple graphs: generator
// construction, swift phase synthesis, exact dynamics and the analytic
// bound checks.

#include "chiralwalk/graph.hpp"
#include "chiralwalk/chiral.hpp"
#include "chiralwalk/dynamics.hpp"
#include "chiralwalk/swift.hpp"
#include "chiralwalk/io.hpp"

namespace chiralwalk {
inline constexpr const char* version = "0.1.0";
}
