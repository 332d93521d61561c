#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mobnet/lifetime.hpp"
#include "mobnet/rng.hpp"

using namespace mobnet::lifetime;

TEST_CASE("predict_general") {
    CHECK(predict_general(1000000, 0, 5000, 1) == 200.0);
    CHECK(predict_general(1234, 1234, 3, 1) == 0.0);
    CHECK(predict_general(100, 50, 1, 1) == 50.0);
    CHECK_THROWS_AS(predict_general(100, 50, 0, 1), std::domain_error);
    CHECK_THROWS_AS(predict_general(100, 150, 1, 1), std::domain_error);
    CHECK_THROWS_AS(predict_general(100, -1, 1, 1), std::domain_error);
}

TEST_CASE("predict_no_congestion") {
    // 1000 / 0.3275, computed by hand.
    CHECK(predict_no_congestion(1000, 0, 0.1, 3.275, 1) == doctest::Approx(3053.435114503817).epsilon(1e-12));
    CHECK(predict_no_congestion(1000, 2000, 0.1, 3.275, 1) == 0.0);
    CHECK(predict_no_congestion(1000, 100, 1, 1, 1) == 950.0);
    CHECK_THROWS_AS(predict_no_congestion(1000, 0, 0.0, 3.0, 1), std::domain_error);
    CHECK_THROWS_AS(predict_no_congestion(1000, -1, 0.1, 3.0, 1), std::domain_error);
}

TEST_CASE("predict_absolute") {
    CHECK(predict_absolute(1000, 5, 1) == 200.0);
    CHECK(predict_absolute(1, 1, 1) == 1.0);
    CHECK(predict_absolute(2000, 5, 1) == 400.0);
    CHECK_THROWS_AS(predict_absolute(1000, 0, 1), std::domain_error);
}

TEST_CASE("predict_unified") {
    CHECK(predict_unified(1000, 3, 4, 5, 1, 1.0) == predict_absolute(1000, 5, 1));
    CHECK(omega(0.1, 3.275, 5) == doctest::Approx(0.3275));
    CHECK(predict_unified(1000, 0.1, 3.275, 5, 1, 1.0) == doctest::Approx(3053.44).epsilon(0.01 / 3053.44));
    CHECK(predict_unified(1000, 0.1, 3.275, 5, 1, 1.0) == 2.0 * predict_unified(1000, 0.1, 3.275, 5, 1, 0.5));
    CHECK_THROWS_AS(predict_unified(1000, 0.1, 3.0, 5, 1, 0.0), std::domain_error);

    LifetimeInputs in;
    in.gen_rate = 0.1;
    in.tau0 = 3.275;
    CHECK(in.omega() == doctest::Approx(0.3275));
    CHECK(predict_unified(in, 0.9) == predict_unified(1000, 0.1, 3.275, 5, 1, 0.9));
}

TEST_CASE("extract_k") {
    CHECK(extract_k(200, 1000, 5, 4, 5, 1) == 1.0);
    CHECK_THROWS_AS(extract_k(0, 1000, 5, 4, 5, 1), std::domain_error);
}

TEST_CASE("lifetime formula properties on random inputs") {
    mobnet::Rng rng(8);
    for (int trial = 0; trial < 5000; ++trial) {
        const double e0 = rng.uniform(1.0, 1e4);
        const double de = rng.uniform(0.1, 5.0);
        const double c = rng.uniform(0.5, 20.0);
        const double rho = rng.uniform(0.001, 10.0);
        const double tau0 = rng.uniform(1.0, 20.0);
        const double k = rng.uniform(0.01, 2.0);

        // Round trip in k.
        const double t = predict_unified(e0, rho, tau0, c, de, k);
        REQUIRE(extract_k(t, e0, rho, tau0, c, de) == doctest::Approx(k).epsilon(1e-12));

        // Non-increasing in rho, and in C once saturated.
        REQUIRE(predict_unified(e0, rho * 1.1, tau0, c, de, k) <= t);
        if (rho * tau0 >= c) REQUIRE(predict_unified(e0, rho, tau0, c * 1.1, de, k) <= t);

        // Free-flow formula is the unified one with k = (E0 - R/2) / E0.
        const double range = rng.uniform(0.0, 1.9) * e0;
        const double tau_free = std::min(tau0, 0.999 * c / rho);
        REQUIRE(predict_no_congestion(e0, range, rho, tau_free, de) ==
                doctest::Approx(predict_unified(e0, rho, tau_free, c, de, (e0 - range / 2) / e0)).epsilon(1e-12));

        // Both branches agree at rho * tau0 = C.
        const double tau_edge = c / rho;
        REQUIRE(predict_unified(e0, rho, tau_edge, c, de, k) ==
                doctest::Approx(k * predict_absolute(e0, c, de)).epsilon(1e-12));
    }
}
