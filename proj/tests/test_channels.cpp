#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ccap/capacity.hpp"
#include "ccap/channel.hpp"
#include "ccap/errors.hpp"
#include "ccap/rng.hpp"

using namespace ccap;

namespace {

double h2(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

Channel bsc(double q) {
    return Channel{"bsc", 2, 2, {{1.0 - q, q}, {q, 1.0 - q}}};
}

Channel noiseless2() { return Channel{"id", 2, 2, {{1.0, 0.0}, {0.0, 1.0}}}; }

Channel z_channel(double z) { return Channel{"z", 2, 2, {{1.0, 0.0}, {z, 1.0 - z}}}; }

Channel random_channel(Rng& rng, std::size_t nx, std::size_t ny) {
    Channel ch{"rand", nx, ny, {}};
    for (std::size_t x = 0; x < nx; ++x) ch.matrix.push_back(rng.simplex_point(ny));
    return ch;
}

// Direct-sum oracle for I(X;Y), independent of the library path.
double mi_oracle(const Channel& ch, const InputDist& p) {
    std::vector<double> q(ch.num_outputs, 0.0);
    for (std::size_t x = 0; x < ch.num_inputs; ++x)
        for (std::size_t y = 0; y < ch.num_outputs; ++y) q[y] += p[x] * ch.matrix[x][y];
    double acc = 0.0;
    for (std::size_t x = 0; x < ch.num_inputs; ++x)
        for (std::size_t y = 0; y < ch.num_outputs; ++y) {
            const double joint = p[x] * ch.matrix[x][y];
            if (joint > 0.0) acc += joint * std::log2(ch.matrix[x][y] / q[y]);
        }
    return acc;
}

}  // namespace

TEST_CASE("mutual information matches closed forms") {
    // BSC(0.1) at uniform: 1 - h2(0.1)
    CHECK(mutual_information(bsc(0.1), uniform_dist(2)) == doctest::Approx(1.0 - h2(0.1)).epsilon(1e-12));
    // point mass input gives zero
    CHECK(mutual_information(bsc(0.1), {1.0, 0.0}) == doctest::Approx(0.0));
    CHECK(mutual_information(noiseless2(), uniform_dist(2)) == doctest::Approx(1.0));
}

TEST_CASE("output marginal") {
    auto q = output_marginal(bsc(0.1), uniform_dist(2));
    CHECK(q[0] == doctest::Approx(0.5));
    CHECK(q[1] == doctest::Approx(0.5));

    q = output_marginal(bsc(0.1), {1.0, 0.0});
    CHECK(q[0] == doctest::Approx(0.9));
    CHECK(q[1] == doctest::Approx(0.1));

    q = output_marginal(z_channel(0.2), {0.5, 0.5});
    CHECK(q[0] == doctest::Approx(0.6));
    CHECK(q[1] == doctest::Approx(0.4));

    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const auto ch = random_channel(rng, 2 + rng.uniform_int(3), 2 + rng.uniform_int(4));
        const auto p = rng.simplex_point(ch.num_inputs);
        const auto m = output_marginal(ch, p);
        double sum = 0.0;
        for (double v : m) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("info density values and sentinels") {
    CHECK(info_density(noiseless2(), uniform_dist(2), 0, 0) == doctest::Approx(1.0));
    CHECK(info_density(noiseless2(), uniform_dist(2), 0, 1) == kNegSentinel);
    CHECK(info_density(bsc(0.1), uniform_dist(2), 0, 0) ==
          doctest::Approx(std::log2(0.9 / 0.5)).epsilon(1e-12));
}

TEST_CASE("expected info density equals mutual information") {
    Rng rng(11);
    for (int i = 0; i < 40; ++i) {
        const auto ch = random_channel(rng, 2 + rng.uniform_int(3), 2 + rng.uniform_int(3));
        const auto p = rng.simplex_point(ch.num_inputs);
        const auto q = output_marginal(ch, p);
        double acc = 0.0;
        for (std::size_t x = 0; x < ch.num_inputs; ++x)
            for (std::size_t y = 0; y < ch.num_outputs; ++y) {
                const double joint = p[x] * ch.matrix[x][y];
                if (joint <= 0.0) continue;  // sentinel cells carry no probability
                acc += joint * info_density_with_marginal(ch, q, x, y);
            }
        CHECK(acc == doctest::Approx(mutual_information(ch, p)).epsilon(1e-9));
    }
}

TEST_CASE("mutual information bounds and permutation invariance") {
    Rng rng(13);
    for (int i = 0; i < 60; ++i) {
        auto ch = random_channel(rng, 2 + rng.uniform_int(3), 2 + rng.uniform_int(4));
        const auto p = rng.simplex_point(ch.num_inputs);
        const double mi = mutual_information(ch, p);
        CHECK(mi >= 0.0);
        CHECK(mi <= std::min(std::log2(double(ch.num_inputs)), std::log2(double(ch.num_outputs))) +
                        1e-12);

        // permute output columns
        std::vector<std::size_t> perm(ch.num_outputs);
        for (std::size_t y = 0; y < perm.size(); ++y) perm[y] = y;
        for (std::size_t y = perm.size(); y > 1; --y)
            std::swap(perm[y - 1], perm[rng.uniform_int(y)]);
        Channel shuffled = ch;
        for (std::size_t x = 0; x < ch.num_inputs; ++x)
            for (std::size_t y = 0; y < ch.num_outputs; ++y)
                shuffled.matrix[x][perm[y]] = ch.matrix[x][y];
        CHECK(mutual_information(shuffled, p) == doctest::Approx(mi).epsilon(1e-9));
    }
}

TEST_CASE("blahut-arimoto matches closed forms") {
    for (double q : {0.05, 0.11, 0.25, 0.45}) {
        const auto res = capacity_ba(bsc(q));
        CHECK(res.capacity == doctest::Approx(1.0 - h2(q)).epsilon(1e-7));
    }

    // BEC(0.3): erasure symbol as third output
    Channel bec{"bec", 2, 3, {{0.7, 0.0, 0.3}, {0.0, 0.7, 0.3}}};
    CHECK(capacity_ba(bec).capacity == doctest::Approx(0.7).epsilon(1e-7));

    // Z-channel closed form: log2(1 + (1-z) z^{z/(1-z)})
    for (double z : {0.2, 0.5, 0.8}) {
        const double closed = std::log2(1.0 + (1.0 - z) * std::pow(z, z / (1.0 - z)));
        CHECK(capacity_ba(z_channel(z)).capacity == doctest::Approx(closed).epsilon(1e-7));
    }

    CHECK(capacity_ba(noiseless2()).capacity == doctest::Approx(1.0));
}

TEST_CASE("capacity dominates the rate of every input") {
    Rng rng(17);
    for (int i = 0; i < 10; ++i) {
        const auto ch = random_channel(rng, 2 + rng.uniform_int(2), 2 + rng.uniform_int(3));
        const auto res = capacity_ba(ch, 1e-9);
        CHECK(mutual_information(ch, res.input) >= res.capacity - 1e-9);
        for (int j = 0; j < 100; ++j) {
            const auto p = rng.simplex_point(ch.num_inputs);
            CHECK(res.capacity >= mutual_information(ch, p) - 1e-9);
        }
    }
}

TEST_CASE("mutual information agrees with the direct-sum oracle") {
    Rng rng(19);
    for (int i = 0; i < 30; ++i) {
        const auto ch = random_channel(rng, 2 + rng.uniform_int(4), 2 + rng.uniform_int(4));
        const auto p = rng.simplex_point(ch.num_inputs);
        CHECK(mutual_information(ch, p) == doctest::Approx(mi_oracle(ch, p)).epsilon(1e-12));
    }
}

TEST_CASE("capacity iteration reports an unclosed bracket") {
    // the Z-channel optimum is away from uniform; two rounds cannot bracket it
    CHECK_THROWS_AS(capacity_ba(z_channel(0.5), 1e-9, 2), NoConvergence);
    CHECK_THROWS_AS(capacity_ba(z_channel(0.5), -1.0), ParameterOutOfRange);
}

TEST_CASE("channel validation rejects bad rows") {
    Channel bad{"bad", 2, 2, {{0.5, 0.49}, {0.5, 0.5}}};
    CHECK_THROWS_AS(check_channel(bad), NonStochasticRow);
    try {
        check_channel(bad);
    } catch (const NonStochasticRow& e) {
        CHECK(e.row == 0);
        CHECK(e.sum == doctest::Approx(0.99));
    }

    Channel tiny{"tiny", 1, 2, {{1.0, 0.0}}};
    CHECK_THROWS_AS(check_channel(tiny), MismatchedInputAlphabet);
}
