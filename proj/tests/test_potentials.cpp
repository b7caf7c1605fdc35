#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "auxtherm/errors.hpp"
#include "auxtherm/numerics.hpp"
#include "auxtherm/potentials.hpp"

using namespace auxtherm;
using potentials::PoleTerm;
using potentials::PotentialModel;

TEST_CASE("v_real evaluates the Yukawa superposition") {
    const PotentialModel single({{1.0, 1.0, 1}});
    CHECK(potentials::v_real(single, 1.0) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

    const PotentialModel pair({{1.0, 1.0, 1}, {2.0, -1.0, 1}});
    const double expected =
        static_cast<double>(std::exp(-1.0L) - std::exp(-2.0L)); // 0.23254415793483...
    CHECK(potentials::v_real(pair, 1.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(potentials::v_real(pair, 1.0) == doctest::Approx(0.2325441579348296).epsilon(1e-12));

    // Single-term magnitude decays monotonically.
    double prev = std::abs(potentials::v_real(single, 0.5));
    for (double r = 1.0; r < 30.0; r *= 1.5) {
        const double cur = std::abs(potentials::v_real(single, r));
        CHECK(cur < prev);
        prev = cur;
    }

    CHECK_THROWS_AS(potentials::v_real(single, 0.0), std::domain_error);
    CHECK_THROWS_AS(potentials::v_real(single, -1.0), std::domain_error);
}

TEST_CASE("v_fourier evaluates the pole sum and stays finite") {
    const PotentialModel single({{1.0, 1.0, 1}});
    CHECK(potentials::v_fourier(single, 0.0) ==
          doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));
    CHECK(potentials::v_fourier(single, 3.0) ==
          doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK_THROWS_AS(potentials::v_fourier(single, -1.0), std::domain_error);

    const PotentialModel mixed({{0.7, 2.0, 1}, {3.0, -0.4, 1}});
    double mu_max = 3.0;
    for (int i = 0; i <= 64; ++i) {
        const double k2 = 1e4 * mu_max * mu_max * i / 64.0;
        CHECK(std::isfinite(potentials::v_fourier(mixed, k2)));
    }
}

TEST_CASE("v_fourier round-trips through the radial transform of v_real") {
    const PotentialModel model({{1.0, 1.0, 1}, {2.0, 0.5, 1}});
    for (double k : {0.3, 1.0, 2.0}) {
        const auto integrand = [&](double r) {
            return 4.0 * std::numbers::pi * r * r * potentials::v_real(model, r) *
                   std::sin(k * r) / (k * r);
        };
        const double transformed = numerics::integrate_semi_infinite(integrand).value;
        const double direct = potentials::v_fourier(model, k * k);
        CHECK(std::abs(transformed - direct) < 1e-6 * std::abs(direct));
    }
}

TEST_CASE("pole-term validation and coalescing") {
    CHECK_THROWS_AS(PotentialModel({}), std::invalid_argument);
    CHECK_THROWS_AS(PotentialModel({{-1.0, 1.0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(PotentialModel({{1.0, 1.0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(PotentialModel({{1.0, 1.0, 1}, {1.0, -1.0, 1}}), std::invalid_argument);

    const PotentialModel merged({{1.0, 1.0, 1}, {1.0, 2.0, 1}, {2.0, 0.5, 1}});
    REQUIRE(merged.terms().size() == 2);
    CHECK(merged.terms()[0].strength == 3.0);
}

TEST_CASE("extract_channels maps poles to channels") {
    const PotentialModel single({{1.0, 1.0, 1}});
    const auto channels = potentials::extract_channels(single);
    REQUIRE(channels.size() == 1);
    CHECK(channels[0].mu == 1.0);
    CHECK(channels[0].kappa == 1.0);
    CHECK(channels[0].gamma ==
          doctest::Approx(std::sqrt(4.0 * std::numbers::pi)).epsilon(1e-14));
    CHECK(channels[0].coupling_sign == 1.0);

    const PotentialModel pair({{2.0, -0.5, 1}, {1.0, 1.0, 1}});
    const auto sorted = potentials::extract_channels(pair);
    REQUIRE(sorted.size() == 2);
    CHECK(sorted[0].mu == 1.0);
    CHECK(sorted[1].mu == 2.0);
    CHECK(sorted[1].coupling_sign == -1.0);
}

TEST_CASE("extract_channels static limit reproduces each pole strength") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> mu_draw(0.2, 5.0);
    std::uniform_real_distribution<double> c_draw(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PoleTerm> terms;
        for (int s = 0; s < 3; ++s) {
            double c = c_draw(rng);
            if (c == 0.0)
                c = 1.0;
            terms.push_back({mu_draw(rng) + s * 5.0, c, 1});
        }
        const PotentialModel model(terms);
        const auto channels = potentials::extract_channels(model);
        for (const FieldChannel& ch : channels) {
            const auto term = std::find_if(model.terms().begin(), model.terms().end(),
                                           [&](const PoleTerm& t) { return t.mu == ch.mu; });
            REQUIRE(term != model.terms().end());
            const double reproduced =
                ch.gamma * ch.gamma / (4.0 * std::numbers::pi * ch.kappa);
            CHECK(reproduced ==
                  doctest::Approx(std::abs(term->strength)).epsilon(1e-12));
        }
    }
}

TEST_CASE("extract_channels kappa policy") {
    const PotentialModel model({{1.0, 2.0, 1}});

    potentials::KappaPolicy kappa_only;
    kappa_only.by_mu[1.0] = {4.0, -1.0};
    const auto derived = potentials::extract_channels(model, kappa_only);
    CHECK(derived[0].kappa == 4.0);
    CHECK(derived[0].gamma * derived[0].gamma / (4.0 * std::numbers::pi * 4.0) ==
          doctest::Approx(2.0).epsilon(1e-13));

    potentials::KappaPolicy good_pair;
    good_pair.by_mu[1.0] = {2.0, std::sqrt(4.0 * std::numbers::pi * 2.0 * 2.0)};
    const auto explicit_ch = potentials::extract_channels(model, good_pair);
    CHECK(explicit_ch[0].kappa == 2.0);

    potentials::KappaPolicy bad_pair;
    bad_pair.by_mu[1.0] = {2.0, 1.0}; // does not reproduce |C| = 2
    CHECK_THROWS_AS(potentials::extract_channels(model, bad_pair), config_error);

    potentials::KappaPolicy nonpositive;
    nonpositive.by_mu[1.0] = {0.0, -1.0};
    CHECK_THROWS_AS(potentials::extract_channels(model, nonpositive), config_error);
}

TEST_CASE("extract_channels is permutation invariant") {
    std::vector<PoleTerm> terms = {{0.5, 1.5, 1}, {1.0, -2.0, 1}, {2.5, 0.7, 1}, {4.0, 3.0, 1}};
    const auto reference = potentials::extract_channels(PotentialModel(terms));

    std::mt19937 rng(99);
    for (int shuffle = 0; shuffle < 10; ++shuffle) {
        std::shuffle(terms.begin(), terms.end(), rng);
        const auto channels = potentials::extract_channels(PotentialModel(terms));
        REQUIRE(channels.size() == reference.size());
        for (std::size_t i = 0; i < channels.size(); ++i) {
            CHECK(channels[i].mu == reference[i].mu);
            CHECK(channels[i].kappa == reference[i].kappa);
            CHECK(channels[i].gamma == reference[i].gamma);
            CHECK(channels[i].coupling_sign == reference[i].coupling_sign);
        }
    }
}

TEST_CASE("channel round-trip reproduces the potential on a log-spaced grid") {
    const PotentialModel positive({{1.0, 1.0, 1}, {2.0, 0.5, 1}, {5.0, 2.0, 1}});
    const auto pos_channels = potentials::extract_channels(positive);
    for (int i = 0; i <= 40; ++i) {
        const double r = 1e-2 * std::pow(1e4, i / 40.0);
        const double direct = potentials::v_real(positive, r);
        const double rebuilt = potentials::static_potential(pos_channels, r);
        CHECK(std::abs(rebuilt - direct) <= 1e-10 * std::abs(direct));
    }

    // Mixed signs can cancel, so compare against the magnitude sum.
    const PotentialModel mixed({{1.0, 1.0, 1}, {2.0, -1.0, 1}});
    const auto mixed_channels = potentials::extract_channels(mixed);
    for (int i = 0; i <= 40; ++i) {
        const double r = 1e-2 * std::pow(1e4, i / 40.0);
        const double direct = potentials::v_real(mixed, r);
        const double rebuilt = potentials::static_potential(mixed_channels, r);
        double magnitude = 0.0;
        for (const PoleTerm& t : mixed.terms())
            magnitude += std::abs(t.strength) * std::exp(-t.mu * r) / r;
        CHECK(std::abs(rebuilt - direct) <= 1e-10 * magnitude);
    }
}
