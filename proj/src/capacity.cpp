#include "ccap/capacity.hpp"

#include <cmath>
#include <limits>

#include "ccap/errors.hpp"

namespace ccap {

CapacityResult capacity_ba(const Channel& ch, double tol, int max_iters) {
    if (!(tol > 0.0)) throw ParameterOutOfRange("capacity tolerance must be positive");
    const std::size_t nx = ch.num_inputs;
    const std::size_t ny = ch.num_outputs;

    InputDist p = uniform_dist(nx);
    std::vector<double> q(ny, 0.0);
    std::vector<double> div(nx, 0.0);

    for (int iter = 1; iter <= max_iters; ++iter) {
        q = output_marginal(ch, p);

        double lower = 0.0;  // I(p)
        double upper = -std::numeric_limits<double>::infinity();
        for (std::size_t x = 0; x < nx; ++x) {
            double d = 0.0;
            const auto& row = ch.matrix[x];
            for (std::size_t y = 0; y < ny; ++y) {
                const double w = row[y];
                if (w <= 0.0) continue;
                // q[y] > 0 whenever some supported input reaches y; inputs with
                // p(x) = 0 and w > 0 can only see q[y] = 0 on unreachable outputs.
                if (q[y] <= 0.0) {
                    d = std::numeric_limits<double>::infinity();
                    break;
                }
                d += w * std::log2(w / q[y]);
            }
            div[x] = d;
            lower += p[x] * (std::isinf(d) ? 0.0 : d);
            upper = std::max(upper, d);
        }

        if (upper - lower < tol) {
            return CapacityResult{std::max(lower, 0.0), p, iter};
        }

        // p(x) <- p(x) 2^{D(x)} / Z
        double z = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
            const double d = std::isinf(div[x]) ? 64.0 : div[x];
            p[x] *= std::exp2(d);
            z += p[x];
        }
        for (std::size_t x = 0; x < nx; ++x) p[x] /= z;
    }
    throw NoConvergence(max_iters);
}

}  // namespace ccap
