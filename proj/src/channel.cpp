#include "ccap/channel.hpp"

#include <algorithm>
#include <cmath>

#include "ccap/errors.hpp"

namespace ccap {

bool is_distribution(const std::vector<double>& p, double tol) {
    double sum = 0.0;
    for (double v : p) {
        if (v < -tol || v > 1.0 + tol) return false;
        sum += v;
    }
    return std::abs(sum - 1.0) <= tol;
}

InputDist uniform_dist(std::size_t n) {
    return InputDist(n, 1.0 / double(n));
}

void check_channel(const Channel& ch) {
    if (ch.num_inputs < 2)
        throw MismatchedInputAlphabet("channel '" + ch.name + "' needs at least 2 inputs");
    if (ch.matrix.size() != ch.num_inputs)
        throw MismatchedInputAlphabet("channel '" + ch.name + "' matrix row count mismatch");
    for (std::size_t x = 0; x < ch.num_inputs; ++x) {
        const auto& row = ch.matrix[x];
        if (row.size() != ch.num_outputs)
            throw MismatchedInputAlphabet("channel '" + ch.name + "' matrix column count mismatch");
        double sum = 0.0;
        for (double v : row) {
            if (v < -kProbTol || v > 1.0 + kProbTol)
                throw NonStochasticRow(ch.name, x, v);
            sum += v;
        }
        if (std::abs(sum - 1.0) > kProbTol) throw NonStochasticRow(ch.name, x, sum);
    }
}

std::vector<double> output_marginal(const Channel& ch, const InputDist& p) {
    std::vector<double> q(ch.num_outputs, 0.0);
    for (std::size_t x = 0; x < ch.num_inputs; ++x) {
        const double px = p[x];
        if (px == 0.0) continue;
        const auto& row = ch.matrix[x];
        for (std::size_t y = 0; y < ch.num_outputs; ++y) q[y] += px * row[y];
    }
    return q;
}

double mutual_information(const Channel& ch, const InputDist& p) {
    const auto q = output_marginal(ch, p);
    double bits = 0.0;
    for (std::size_t x = 0; x < ch.num_inputs; ++x) {
        const double px = p[x];
        if (px <= 0.0) continue;
        const auto& row = ch.matrix[x];
        for (std::size_t y = 0; y < ch.num_outputs; ++y) {
            const double w = row[y];
            if (w <= 0.0) continue;
            bits += px * w * std::log2(w / q[y]);
        }
    }
    return std::max(bits, 0.0);
}

double info_density_with_marginal(const Channel& ch, const std::vector<double>& q,
                                  std::size_t x, std::size_t y) {
    const double w = ch.matrix[x][y];
    if (w <= 0.0) return kNegSentinel;
    if (q[y] <= 0.0) return kNegSentinel;
    return std::log2(w / q[y]);
}

double info_density(const Channel& ch, const InputDist& p, std::size_t x, std::size_t y) {
    return info_density_with_marginal(ch, output_marginal(ch, p), x, y);
}

}  // namespace ccap
