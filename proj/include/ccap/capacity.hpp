#pragma once
#include "ccap/channel.hpp"

namespace ccap {

struct CapacityResult {
    double capacity = 0.0;  // bits per channel use
    InputDist input;        // capacity-achieving distribution
    int iterations = 0;
};

// Blahut-Arimoto alternating maximization from the uniform start.
//
// Each round computes the per-input divergences D(x) = sum_y W(y|x)
// log2(W(y|x)/q(y)); I(p) = sum_x p(x) D(x) lower-bounds capacity and
// max_x D(x) upper-bounds it, so iteration stops once that bracket is
// narrower than tol. The returned capacity is I(p) at the final iterate.
// Throws NoConvergence if the bracket fails to close within max_iters.
CapacityResult capacity_ba(const Channel& ch, double tol = 1e-9, int max_iters = 10000);

}  // namespace ccap
