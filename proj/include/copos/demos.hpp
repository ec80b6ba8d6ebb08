#pragma once

#include <cstdint>
#include <string>

#include "copos/hierarchy.hpp"
#include "copos/qop.hpp"
#include "copos/raycone.hpp"

namespace copos {

// Built-in models used by the demo subcommands and the acceptance suite.

// Three-atom planar cone with atoms (4,0), (4,2), (-3,3).
RayCone demo_ray_cone();

// Binary simplex QOP: n = 2, row w1 + w2 = 1, w1 binary, objective -w1.
QopModel demo_simplex_qop();

// Combinatorial POP over 8 variables (4 decision + 4 slack) with four
// structural equality constraints and objective w1 + w2 + w3 + w4.
PopModel demo_combinatorial_pop();

struct DemoOptions {
  std::uint64_t seed = 42;
  double tol = 1e-7;
  int max_iter = 20000;
};

// Text report for one of: example-3.1, example-6.1, example-6.2.
std::string run_demo(const std::string& name, const DemoOptions& options = {});

}  // namespace copos
