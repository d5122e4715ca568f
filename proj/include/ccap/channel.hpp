#pragma once
#include <cstddef>
#include <string>
#include <vector>

namespace ccap {

// All information quantities are in bits (base-2 logs), with 0*log 0 = 0.

// Returned by info_density when the transition probability, or the output
// marginal, of the queried pair is zero. Large and negative so running sums
// stay monotone-comparable against any decoding threshold without NaNs.
inline constexpr double kNegSentinel = -1e18;

// Row-sum / distribution-sum validation tolerance.
inline constexpr double kProbTol = 1e-9;

using InputDist = std::vector<double>;

// One discrete memoryless channel: a row-stochastic |X| x |Y| matrix W(y|x).
struct Channel {
    std::string name;
    std::size_t num_inputs = 0;
    std::size_t num_outputs = 0;
    std::vector<std::vector<double>> matrix;
};

bool is_distribution(const std::vector<double>& p, double tol = kProbTol);

InputDist uniform_dist(std::size_t n);

// Throws NonStochasticRow / MismatchedInputAlphabet on bad shape or rows.
void check_channel(const Channel& ch);

// q(y) = sum_x p(x) W(y|x).
std::vector<double> output_marginal(const Channel& ch, const InputDist& p);

// I(X;Y) in bits for input distribution p.
double mutual_information(const Channel& ch, const InputDist& p);

// log2(W(y|x) / q(y)). Returns kNegSentinel when W(y|x) = 0 (symbol pair
// impossible for this message) or q(y) = 0 (observation impossible under this
// input process / channel pair; callers tracking hypotheses treat that case
// as a sticky rejection).
double info_density(const Channel& ch, const InputDist& p, std::size_t x, std::size_t y);

// Same, with a precomputed output marginal.
double info_density_with_marginal(const Channel& ch, const std::vector<double>& q,
                                  std::size_t x, std::size_t y);

}  // namespace ccap
