#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ccap/errors.hpp"
#include "ccap/profile.hpp"
#include "ccap/rng.hpp"
#include "test_util.hpp"

using namespace ccap;
using ccap_test::random_family;
using ccap_test::random_schedule;

namespace {

ChannelFamily erasure_family(double eps) {
    return builtin_family("bilingual_erasure", {{"eps", eps}});
}

}  // namespace

TEST_CASE("single channel at capacity decodes with cr 1") {
    RawFamily raw;
    raw.num_inputs = 2;
    raw.channels.push_back({"bsc", 2, {{0.9, 0.1}, {0.1, 0.9}}});
    const auto fam = validate_family(raw);
    const auto prof = greedy_profile(fam, {fam.cap_dists[0]});
    CHECK(prof.increments[0] == doctest::Approx(fam.t_star[0]).epsilon(1e-7));
    CHECK(prof.cr == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(prof.regret == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("erasure family closed-form profile") {
    const double eps = 0.5;
    const auto fam = erasure_family(eps);
    // capacity-achieving inputs: ch2 (clean) then ch1 (erased)
    const Schedule sched = {fam.cap_dists[1], fam.cap_dists[0]};
    const auto prof = evaluate_with_ordering(fam, sched, {1, 0});
    CHECK(prof.increments[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(prof.increments[1] == doctest::Approx(1.0 / eps).epsilon(1e-5));
    CHECK(prof.cumulative[1] == doctest::Approx(1.0 + 1.0 / eps).epsilon(1e-5));
    CHECK(prof.cr == doctest::Approx(1.0 / (1.0 + eps)).epsilon(1e-6));

    const auto greedy = greedy_profile(fam, sched);
    CHECK(greedy.ordering == Ordering{1, 0});
    CHECK(greedy.cr == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("identical phase distributions collapse to single-letter decode times") {
    Rng rng(23);
    for (int i = 0; i < 30; ++i) {
        const auto fam = random_family(rng, 2 + rng.uniform_int(2), 2 + rng.uniform_int(2), 4);
        const auto q = rng.simplex_point(fam.num_inputs());
        const Schedule sched(fam.size(), q);
        const auto prof = greedy_profile(fam, sched);

        double expected_cr = 1e300;
        for (std::size_t s = 0; s < fam.size(); ++s) {
            const double mi = mutual_information(fam.channels[s], q);
            expected_cr = std::min(expected_cr, mi / fam.capacities[s]);
            // T_s = 1/I_s(q) regardless of decode position
            const auto pos = std::find(prof.ordering.begin(), prof.ordering.end(), s) -
                             prof.ordering.begin();
            if (mi > 1e-9)
                CHECK(prof.cumulative[pos] == doctest::Approx(1.0 / mi).epsilon(1e-9));
        }
        CHECK(prof.cr == doctest::Approx(std::clamp(expected_cr, 0.0, 1.0)).epsilon(1e-9));
    }
}

TEST_CASE("greedy equals evaluate_with_ordering on its own order") {
    Rng rng(29);
    for (int i = 0; i < 50; ++i) {
        const auto fam = random_family(rng, 3, 2 + rng.uniform_int(2), 4);
        const auto sched = random_schedule(rng, fam);
        const auto greedy = greedy_profile(fam, sched);
        CHECK(greedy.min_pre_clamp_numerator >= -1e-12);
        const auto direct = evaluate_with_ordering(fam, sched, greedy.ordering);
        for (std::size_t j = 0; j < fam.size(); ++j) {
            CHECK(greedy.increments[j] == doctest::Approx(direct.increments[j]).epsilon(1e-9));
        }
        CHECK(greedy.cr == doctest::Approx(direct.cr).epsilon(1e-9));
        CHECK(greedy.regret == doctest::Approx(direct.regret).epsilon(1e-9));
    }
}

TEST_CASE("profile bounds hold on random draws") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto fam = random_family(rng, 1 + rng.uniform_int(3), 2 + rng.uniform_int(3), 5);
        const auto sched = random_schedule(rng, fam);
        const auto prof = greedy_profile(fam, sched);
        CHECK(prof.cr >= 0.0);
        CHECK(prof.cr <= 1.0);
        CHECK(prof.regret >= 0.0);
        CHECK(prof.regret <= fam.max_capacity() + 1e-12);
        double prev = 0.0;
        for (std::size_t j = 0; j < fam.size(); ++j) {
            CHECK(prof.increments[j] >= 0.0);
            CHECK(prof.cumulative[j] >= prev);
            prev = prof.cumulative[j];
            const std::size_t s = prof.ordering[j];
            if (std::isfinite(prof.cumulative[j]))
                CHECK(prof.cumulative[j] >= fam.t_star[s] - 1e-9);
        }
    }
}

TEST_CASE("useless schedule yields cr 0 and worst-case regret") {
    const auto fam = erasure_family(0.5);
    // both phases useless for channel 1 (mass on the clean pair only)
    const InputDist q = {0.0, 0.0, 0.5, 0.5};
    const auto prof = greedy_profile(fam, {q, q});
    CHECK(std::isinf(prof.cumulative[1]));
    CHECK(prof.cr == 0.0);
    CHECK(prof.regret == doctest::Approx(fam.max_capacity()));
}

TEST_CASE("two-channel closed forms match the greedy profile") {
    Rng rng(37);
    for (int i = 0; i < 100; ++i) {
        const auto fam = random_family(rng, 2, 2 + rng.uniform_int(2), 4);
        const auto p = rng.simplex_point(fam.num_inputs());
        const auto cr = two_channel_cr(fam, p);
        const std::size_t second = 1 - cr.first_state;
        const auto prof = greedy_profile(fam, {p, fam.cap_dists[second]});
        CHECK(cr.value == doctest::Approx(prof.cr).epsilon(1e-9));

        const auto rg = two_channel_regret(fam, p);
        CHECK(rg.value == doctest::Approx(prof.regret).epsilon(1e-9));
    }
}

TEST_CASE("two-channel closed forms on the erasure family") {
    const double eps = 0.5;
    const auto fam = erasure_family(eps);
    // point mass split over the clean pair of channel 2
    const InputDist p = {0.0, 0.0, 0.5, 0.5};
    const auto cr = two_channel_cr(fam, p);
    CHECK(cr.first_state == 1);
    CHECK(cr.value == doctest::Approx(1.0 / (1.0 + eps)).epsilon(1e-6));

    const auto rg = two_channel_regret(fam, p);
    CHECK(rg.value == doctest::Approx(eps * eps / (1.0 + eps)).epsilon(1e-6));
}

TEST_CASE("identical channels at capacity have cr 1 and regret 0") {
    RawFamily raw;
    raw.num_inputs = 2;
    raw.channels.push_back({"a", 2, {{1.0, 0.0}, {0.0, 1.0}}});
    raw.channels.push_back({"b", 2, {{1.0, 0.0}, {0.0, 1.0}}});
    const auto fam = validate_family(raw);
    const auto cr = two_channel_cr(fam, uniform_dist(2));
    CHECK(cr.value == doctest::Approx(1.0).epsilon(1e-9));
    const auto rg = two_channel_regret(fam, uniform_dist(2));
    CHECK(rg.value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("concat schedule examples") {
    const auto cs = concat_schedule({6.0, 4.0, 3.0}, 12.0);
    CHECK(cs.phase_lengths == std::vector<double>{2.0, 1.0, 1.0});
    CHECK(cs.decode_times == std::vector<double>{2.0, 3.0, 4.0});
    CHECK_FALSE(cs.rounded);

    const auto one = concat_schedule({4.0}, 8.0);
    CHECK(one.phase_lengths == std::vector<double>{2.0});
    CHECK(one.decode_times == std::vector<double>{2.0});

    const auto equal = concat_schedule({3.0, 3.0}, 6.0);
    CHECK(equal.phase_lengths == std::vector<double>{2.0, 0.0});
    CHECK(equal.decode_times == std::vector<double>{2.0, 2.0});

    const auto frac = concat_schedule({6.0, 4.0}, 10.0);
    CHECK(frac.rounded);
    CHECK(frac.phase_lengths[1] == doctest::Approx(1.0));  // ceil of 10/12

    CHECK_THROWS_AS(concat_schedule({4.0, 0.0}, 8.0), NonpositiveRate);
}

TEST_CASE("concat decode times are exact on random tuples") {
    Rng rng(41);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 1 + rng.uniform_int(5);
        std::vector<double> rates;
        for (std::size_t j = 0; j < n; ++j) rates.push_back(0.25 + 8.0 * rng.uniform());
        const double k = double(1 + rng.uniform_int(64));
        const auto cs = concat_schedule(rates, k);
        for (std::size_t l = 0; l < n; ++l) {
            const double expect = k / rates[cs.order[l]];
            CHECK(cs.decode_times[l] == expect);  // bit-exact
            if (l > 0) CHECK(cs.decode_times[l] >= cs.decode_times[l - 1]);
        }
    }
}

TEST_CASE("length mismatches are rejected") {
    const auto fam = erasure_family(0.5);
    CHECK_THROWS_AS(greedy_profile(fam, {uniform_dist(4)}), LengthMismatch);
    CHECK_THROWS_AS(
        evaluate_with_ordering(fam, {uniform_dist(4), uniform_dist(4)}, {0, 0}),
        LengthMismatch);
    CHECK_THROWS_AS(
        evaluate_with_ordering(fam, {uniform_dist(4), uniform_dist(4)}, {0, 2}),
        LengthMismatch);
    CHECK_THROWS_AS(two_channel_cr(builtin_family("zs", {{"z", 0.5}, {"s", 0.5}}),
                                   uniform_dist(3)),
                    LengthMismatch);
}

TEST_CASE("two-channel closed forms need exactly two states") {
    Rng rng(43);
    const auto fam = random_family(rng, 3, 2, 3);
    CHECK_THROWS_AS(two_channel_cr(fam, uniform_dist(2)), WrongFamilySize);
    CHECK_THROWS_AS(two_channel_regret(fam, uniform_dist(2)), WrongFamilySize);
}
