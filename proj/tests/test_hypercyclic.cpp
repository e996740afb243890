#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "framelab/builtins.hpp"
#include "framelab/frames.hpp"
#include "framelab/hypercyclic.hpp"
#include "framelab/orbitrep.hpp"
#include "test_util.hpp"

using namespace framelab;
using testutil::random_sparse;

TEST_CASE("rolewicz operator construction") {
    OperatorSpec T = rolewicz(2.0);
    CHECK(apply(T, SeqVec::unit(2)).coeff(1) == Complex(2, 0));
    CHECK_THROWS_WITH_AS(rolewicz(1.0), "Rolewicz requires a > 1", std::invalid_argument);
    CHECK_NOTHROW(rolewicz(std::sqrt(2.0)));
}

TEST_CASE("single-target plan is exact") {
    HypercyclicPlan plan = plan_hypercyclic_vector({SeqVec::unit(1)}, 2.0, 0.25);
    REQUIRE(plan.alphas.size() == 1);
    CHECK(plan.alphas[0] == 0);
    CHECK(distance(plan.phi, SeqVec::unit(1)) == 0.0);
    CHECK(plan.certified_errors_sq[0] == 0.0);
}

TEST_CASE("duplicate targets reproduce on-support exactly") {
    HypercyclicPlan plan = plan_hypercyclic_vector({SeqVec::unit(1), SeqVec::unit(1)}, 2.0, 0.25);
    REQUIRE(plan.alphas.size() == 2);
    const std::int64_t a2 = plan.alphas[1];
    CHECK(a2 >= 1);
    // phi = e_1 + 2^{-alpha(2)} e_{alpha(2)+1}
    CHECK(plan.phi.coeff(1) == Complex(1, 0));
    CHECK(plan.phi.coeff(a2 + 1).real() ==
          doctest::Approx(std::ldexp(1.0, -int(a2))).epsilon(1e-15));

    OperatorSpec T = rolewicz(2.0);
    // the second visit is exact: block one is annihilated after a2 shifts
    SeqVec second = power_apply(T, a2, plan.phi);
    CHECK(distance(second, SeqVec::unit(1)) == 0.0);
    CHECK(plan.certified_errors_sq[1] == 0.0);
    // the first visit is exact on the support of e_1 and carries only the
    // later-block leakage 2^{-2 alpha(2)}
    SeqVec first = power_apply(T, 0, plan.phi);
    CHECK(first.coeff(1) == Complex(1, 0));
    const double leak = std::ldexp(1.0, -2 * int(a2));
    CHECK(plan.certified_errors_sq[0] == doctest::Approx(leak).epsilon(1e-15));
    CHECK(std::pow(distance(first, SeqVec::unit(1)), 2) ==
          doctest::Approx(leak).epsilon(1e-15));
    CHECK(plan.certified_errors_sq[0] <= 0.25 / 2.0);
}

TEST_CASE("basis-prefix plan meets every per-target budget") {
    Frame onb = builtin_onb(10);
    const double eps = std::ldexp(1.0, -3);
    HypercyclicPlan plan = plan_hypercyclic_vector(onb.elements(), 2.0, eps);

    OperatorSpec T = rolewicz(2.0);
    std::vector<SeqVec> suborbit;
    for (std::size_t k = 0; k < 10; ++k) {
        SeqVec got = power_apply(T, plan.alphas[k], plan.phi);
        suborbit.push_back(got);
        const double err_sq = std::pow(distance(got, onb.element(k)), 2);
        CHECK(err_sq <= eps / std::ldexp(1.0, int(k) + 1) + 1e-18);
        CHECK(err_sq == doctest::Approx(plan.certified_errors_sq[k]).epsilon(1e-12));
        // exact on the support: a = 2 keeps every scale a power of two
        CHECK(got.coeff(k + 1) == Complex(1, 0));
    }
    Frame approx(std::move(suborbit), "suborbit");
    CHECK(excess(approx) == 0);
    ApproxReport rep = epsilon_approx_check(onb, approx, eps);
    CHECK(rep.verdict);
    CHECK(rep.excess_match);
    CHECK(rep.bounds_approx.lower >= rep.bound_interval.first - 1e-12);
    CHECK(rep.bounds_approx.upper <= rep.bound_interval.second + 1e-12);
}

TEST_CASE("plan gaps respect supports and certificates come from stored norms") {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 20; ++t) {
        std::vector<SeqVec> targets;
        const int K = 2 + int(rng() % 5);
        for (int k = 0; k < K; ++k) targets.push_back(random_sparse(rng, 6, 4));
        const double a = (t % 2 == 0) ? 2.0 : 3.0;
        HypercyclicPlan plan = plan_hypercyclic_vector(targets, a, 0.125);
        OperatorSpec T = rolewicz(a);
        for (int k = 0; k < K; ++k) {
            if (k + 1 < K)
                CHECK(plan.alphas[k + 1] - plan.alphas[k] >= targets[k].max_support());
            const double measured =
                std::pow(distance(power_apply(T, plan.alphas[k], plan.phi), targets[k]), 2);
            CHECK(measured <= plan.certified_errors_sq[k] * (1.0 + 1e-9) + 1e-15);
            CHECK(plan.certified_errors_sq[k] <= 0.125 / std::ldexp(1.0, k + 1) + 1e-15);
        }
    }
}

TEST_CASE("plans that would underflow are refused") {
    // forcing ~2000 shift steps at a = 2 drives a^{-alpha} past 1e-300
    std::vector<SeqVec> targets;
    for (int k = 0; k < 40; ++k) targets.push_back(shift_up(SeqVec::unit(60), 0));
    CHECK_THROWS_AS(plan_hypercyclic_vector(targets, 2.0, 1e-12), std::range_error);
}

TEST_CASE("density probe finds the planned visit") {
    Frame targets = builtin_onb(3);
    const double eps = 0.25;
    HypercyclicPlan plan = plan_hypercyclic_vector(targets.elements(), 2.0, eps);
    DensityProbe probe = orbit_density_probe(plan.phi, 2.0, SeqVec::unit(2), 12);
    CHECK(probe.n_best == plan.alphas[1]);
    CHECK(probe.dist_best <= std::sqrt(plan.certified_errors_sq[1]) + 1e-15);
}

TEST_CASE("density probe trivia") {
    DensityProbe self = orbit_density_probe(SeqVec::unit(1), 2.0, SeqVec::unit(1), 10);
    CHECK(self.n_best == 0);
    CHECK(self.dist_best == 0.0);

    // a left shift can never move e_1 onto e_2; best is the zero orbit tail
    DensityProbe miss = orbit_density_probe(SeqVec::unit(1), 2.0, SeqVec::unit(2), 10);
    CHECK(miss.dist_best >= 1.0 - 1e-15);
}

TEST_CASE("rolewicz orbit sections degenerate as frames") {
    Frame onb = builtin_onb(10);
    HypercyclicPlan plan = plan_hypercyclic_vector(onb.elements(), 2.0, std::ldexp(1.0, -3));
    auto ratio = [&](int n) {
        OrbitFrame orbit = generate_orbit(rolewicz(2.0), plan.phi, n + 1);
        FrameBounds b = frame_bounds(orbit.base);
        REQUIRE(b.lower > 0.0);
        return b.upper / b.lower;
    };
    const double r20 = ratio(20);
    const double r60 = ratio(60);
    CHECK(r60 >= 10.0 * r20);  // the Bessel/lower-bound ratio blows up
}
