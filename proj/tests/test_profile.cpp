#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "wristauth/dtw.hpp"
#include "wristauth/errors.hpp"
#include "wristauth/profile.hpp"
#include "wristauth/synth.hpp"

using namespace wristauth;
namespace fs = std::filesystem;

#define CHECK_NEAR(a, b, tol) CHECK(std::fabs((a) - (b)) <= (tol))

namespace {

std::vector<Trial> enrollment_set(std::uint64_t style_seed, int n) {
    const UserStyle style = gen_user(style_seed);
    std::vector<Trial> trials;
    for (int j = 0; j < n; ++j)
        trials.push_back(gen_trial(style, mix_seed(style_seed, 1000 + j)));
    return trials;
}

} // namespace

TEST_CASE("upper quartile uses the nearest-rank convention") {
    // rank = ceil(0.75 m), 1-based, on the sorted values
    CHECK(upper_quartile({1.0}) == 1.0);
    CHECK(upper_quartile({2.0, 1.0}) == 2.0);           // m=2, rank 2
    CHECK(upper_quartile({3.0, 1.0, 2.0}) == 3.0);      // m=3, rank 3
    CHECK(upper_quartile({4.0, 1.0, 3.0, 2.0}) == 3.0); // m=4, rank 3
    CHECK(upper_quartile({5, 4, 3, 2, 1}) == 4.0);      // m=5, rank 4
    CHECK(upper_quartile({6, 5, 4, 3, 2, 1}) == 5.0);   // m=6, rank 5
    CHECK(upper_quartile({8, 7, 6, 5, 4, 3, 2, 1}) == 6.0);  // m=8, rank 6
    std::vector<double> ten(10);
    for (std::size_t i = 0; i < 10; ++i) ten[i] = static_cast<double>(i + 1);
    CHECK(upper_quartile(ten) == 8.0);  // m=10, rank 8
    CHECK_THROWS_AS(upper_quartile({}), DomainError);
}

TEST_CASE("pairwise distances cover each unordered pair once") {
    const std::vector<Trial> trials = enrollment_set(7, 5);
    const PairwiseDistances pd = pairwise_distances(trials);
    for (int k = 0; k < kNumChannels; ++k) {
        REQUIRE(pd.per_dim[static_cast<std::size_t>(k)].size() == 10);  // C(5,2)
    }
    // Spot-check one pair against a direct computation.
    const DistanceVector direct = dtw_vector(trials[0], trials[1]);
    for (int k = 0; k < kNumChannels; ++k) {
        const auto& dim = pd.per_dim[static_cast<std::size_t>(k)];
        CHECK(std::find(dim.begin(), dim.end(), direct[static_cast<std::size_t>(k)]) !=
              dim.end());
    }
    CHECK_THROWS_AS(pairwise_distances({trials[0]}), DomainError);
}

TEST_CASE("poisson rank weights sum to one for n up to 50") {
    for (int n = 2; n <= 50; ++n) {
        const std::vector<double> rho = poisson_rank_weights(n);
        REQUIRE(rho.size() == static_cast<std::size_t>(n));
        double sum = 0.0;
        for (double r : rho) {
            CHECK(r >= 0.0);
            sum += r;
        }
        CHECK_NEAR(sum, 1.0, 1e-12);
    }
    CHECK_THROWS_AS(poisson_rank_weights(1), DomainError);
}

TEST_CASE("poisson rank weights match the closed form for n = 5") {
    // lambda = 1; beta_i = e^-1 / i!, normalized over i = 1..5.
    const double expected[5] = {0.58252, 0.29126, 0.09709, 0.02427, 0.00485};
    const std::vector<double> rho = poisson_rank_weights(5);
    for (std::size_t i = 0; i < 5; ++i) CHECK_NEAR(rho[i], expected[i], 1e-5);
}

TEST_CASE("poisson rank weights front-load the nearest neighbours") {
    for (int n : {5, 10, 20, 50}) {
        const std::vector<double> rho = poisson_rank_weights(n);
        // More than half the mass sits in the first half of the ranks.
        double head = 0.0;
        for (std::size_t i = 0; i < rho.size() / 2; ++i) head += rho[i];
        CHECK(head > 0.5);
        // Tail beyond rank ceil(n/2) carries little mass.
        double tail = 0.0;
        for (std::size_t i = static_cast<std::size_t>((n + 1) / 2); i < rho.size(); ++i)
            tail += rho[i];
        CHECK(tail < 0.05);
    }
}

TEST_CASE("poisson weights peak at the rate parameter") {
    for (int n : {10, 25, 50}) {
        const int lambda = std::max(1, n / 5);
        const std::vector<double> rho = poisson_rank_weights(n);
        std::size_t argmax = 0;
        for (std::size_t i = 1; i < rho.size(); ++i)
            if (rho[i] >= rho[argmax]) argmax = i;
        // beta peaks at rank lambda (ties with lambda-1 resolve upward here).
        CHECK(argmax + 1 == static_cast<std::size_t>(lambda));
    }
}

TEST_CASE("train builds a profile that satisfies its invariants") {
    const std::vector<Trial> raw = enrollment_set(11, 5);
    const Profile profile = train(raw);
    CHECK(profile.n() == 5);
    CHECK_NOTHROW(validate_profile(profile));
    CHECK(profile.threshold_delta == kDefaultDelta);
    CHECK(profile.sg_window == kDefaultSgWindow);
    CHECK(profile.rank_weights_rho == poisson_rank_weights(5));
    // Enrollment trials are stored filtered: ideal must match a recomputation
    // from the stored trials.
    const DistanceVector recomputed = ideal_distance(pairwise_distances(profile.trials));
    for (int k = 0; k < kNumChannels; ++k)
        CHECK(profile.ideal[static_cast<std::size_t>(k)] ==
              recomputed[static_cast<std::size_t>(k)]);
}

TEST_CASE("train picks up labels and rejects conflicting ones") {
    std::vector<Trial> raw = enrollment_set(13, 3);
    for (Trial& t : raw) {
        t.user_label = "u02";
        t.word_label = "w05";
    }
    const Profile profile = train(raw);
    CHECK(profile.user_label == "u02");
    CHECK(profile.word_label == "w05");

    raw[2].user_label = "u09";
    CHECK_THROWS_AS(train(raw), ValidationError);
}

TEST_CASE("train accepts unit-sum weights and rejects anything else") {
    const std::vector<Trial> raw = enrollment_set(17, 3);
    TrainOptions options;
    options.weights_mu = {0.5, 0.25, 0.25, 0.0, 0.0, 0.0};
    const Profile profile = train(raw, options);
    CHECK_NEAR(profile.weights_mu[0], 0.5, 1e-12);
    CHECK_NEAR(profile.weights_mu[1], 0.25, 1e-12);
    CHECK_NEAR(profile.weights_mu[5], 0.0, 1e-12);

    options.weights_mu = {2.0, 1.0, 1.0, 0.0, 0.0, 0.0};  // sums to 4
    CHECK_THROWS_AS(train(raw, options), DomainError);
    options.weights_mu = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(train(raw, options), DomainError);
    options.weights_mu = {-1.0, 2.0, 0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(train(raw, options), DomainError);
}

TEST_CASE("train requires at least two trials") {
    CHECK_THROWS_AS(train(enrollment_set(3, 1)), DomainError);
    CHECK_THROWS_AS(train({}), DomainError);
}

TEST_CASE("distance_to_group weighs sorted neighbour distances") {
    const std::vector<Trial> raw = enrollment_set(19, 4);
    const Profile profile = train(raw);
    const Trial probe = filter_trial(gen_trial(gen_user(19), mix_seed(19, 77)));
    const DistanceVector d = distance_to_group(probe, profile);
    for (int k = 1; k <= kNumChannels; ++k) {
        std::vector<double> per_trial;
        for (const Trial& t : profile.trials)
            per_trial.push_back(dtw_distance(channel(probe, k), channel(t, k)));
        std::sort(per_trial.begin(), per_trial.end());
        double expected = 0.0;
        for (std::size_t i = 0; i < per_trial.size(); ++i)
            expected += per_trial[i] * profile.rank_weights_rho[i];
        CHECK_NEAR(d[static_cast<std::size_t>(k - 1)], expected, 1e-12);
    }
}

TEST_CASE("enrolled trials score a zero self-distance term") {
    const std::vector<Trial> raw = enrollment_set(23, 4);
    const Profile profile = train(raw);
    // Probing with a stored (already filtered) trial: nearest neighbour is
    // itself at distance 0, so the weighted distance drops accordingly.
    const DistanceVector self = distance_to_group(profile.trials[0], profile);
    const DistanceVector other = distance_to_group(
        filter_trial(gen_trial(gen_user(999), 1)), profile);
    for (int k = 0; k < kNumChannels; ++k)
        CHECK(self[static_cast<std::size_t>(k)] < other[static_cast<std::size_t>(k)]);
}

TEST_CASE("profiles round-trip through their JSON document") {
    std::vector<Trial> raw = enrollment_set(29, 5);
    for (Trial& t : raw) {
        t.user_label = "u01";
        t.word_label = "w01";
    }
    TrainOptions options;
    options.threshold_delta = 0.62;
    options.weights_mu = {0.1, 0.1, 0.3, 0.2, 0.2, 0.1};
    const Profile profile = train(raw, options);

    std::stringstream buffer;
    save_profile(profile, buffer);
    const Profile back = load_profile(buffer);
    CHECK(back == profile);

    const fs::path dir = fs::temp_directory_path() / "wristauth_profile_test";
    fs::create_directories(dir);
    save_profile(profile, dir / "p.json");
    CHECK(load_profile(dir / "p.json") == profile);
    fs::remove_all(dir);
}

TEST_CASE("profile parsing rejects broken documents") {
    std::stringstream not_json("{]");
    CHECK_THROWS_AS(load_profile(not_json), ParseError);
    std::stringstream wrong_format("{\"format\": \"something-else\", \"version\": 1}");
    CHECK_THROWS_AS(load_profile(wrong_format), ParseError);
    std::stringstream wrong_version(
        "{\"format\": \"wristauth-profile\", \"version\": 99}");
    CHECK_THROWS_AS(load_profile(wrong_version), ParseError);

    // Drop a required key.
    const Profile profile = train(enrollment_set(31, 3));
    const std::string text = profile_to_string(profile);
    const std::string needle = "\"rank_weights_rho\"";
    std::string broken = text;
    broken.replace(broken.find(needle), needle.size(), "\"other_key\"");
    std::stringstream in(broken);
    CHECK_THROWS_AS(load_profile(in), ParseError);
}

TEST_CASE("validate_profile spots corrupted fields") {
    const Profile good = train(enrollment_set(37, 4));

    Profile p = good;
    p.weights_mu[0] += 0.5;
    CHECK_THROWS_AS(validate_profile(p), ValidationError);

    p = good;
    p.rank_weights_rho.pop_back();
    CHECK_THROWS_AS(validate_profile(p), ValidationError);

    p = good;
    p.ideal[2] = -1.0;
    CHECK_THROWS_AS(validate_profile(p), ValidationError);

    p = good;
    p.threshold_delta = 0.0;
    CHECK_THROWS_AS(validate_profile(p), ValidationError);
    p.threshold_delta = 1.25;
    CHECK_THROWS_AS(validate_profile(p), ValidationError);

    p = good;
    p.sg_window = 4;
    CHECK_THROWS_AS(validate_profile(p), ValidationError);
}
