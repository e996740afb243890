#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "framelab/builtins.hpp"
#include "framelab/carleson.hpp"
#include "framelab/frames.hpp"
#include "framelab/orbitrep.hpp"
#include "test_util.hpp"

using namespace framelab;
using testutil::random_spanning_frame;
using testutil::random_sparse;

namespace {

Frame doubled_basis() {
    return Frame({SeqVec::unit(1), SeqVec::unit(1), SeqVec::unit(2), SeqVec::unit(2)}, "doubled");
}

// Independent rank oracle: singular values of the synthesis matrix, counted
// against the same relative threshold the library documents.
int rank_oracle(const Frame& f) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(f.synthesis());
    const auto& sv = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > sv(0) * 1e-8) ++r;
    return r;
}

}  // namespace

TEST_CASE("frame bounds on hand-checkable families") {
    FrameBounds onb = frame_bounds(builtin_onb(5));
    CHECK(onb.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(onb.upper == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(onb.span_dim == 5);
    CHECK_FALSE(onb.subspace);

    FrameBounds dbl = frame_bounds(doubled_basis());
    CHECK(dbl.lower == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(dbl.upper == doctest::Approx(2.0).epsilon(1e-12));

    Frame diag({SeqVec::unit(1), scaled(Complex(2, 0), SeqVec::unit(2))}, "diag");
    FrameBounds db = frame_bounds(diag);
    CHECK(db.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(db.upper == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("subspace families are flagged, not rejected") {
    Frame sub({SeqVec::unit(2), SeqVec::unit(3)}, "subspace");  // ambient 3, rank 2
    FrameBounds b = frame_bounds(sub);
    CHECK(b.subspace);
    CHECK(b.span_dim == 2);
    CHECK(b.lower > 0.0);
}

TEST_CASE("canonical dual of simple frames") {
    Frame onb = builtin_onb(4);
    Frame donb = canonical_dual(onb);
    for (std::size_t k = 0; k < onb.size(); ++k)
        CHECK(distance(onb.element(k), donb.element(k)) <= 1e-12);

    Frame dbl = doubled_basis();
    Frame ddbl = canonical_dual(dbl);
    for (std::size_t k = 0; k < dbl.size(); ++k)
        CHECK(distance(ddbl.element(k), scaled(Complex(0.5, 0), dbl.element(k))) <= 1e-12);
}

TEST_CASE("canonical dual against a direct 2x2 inverse") {
    // Elements e_1 and e_1 + e_2: S = [[2,1],[1,1]], S^{-1} = [[1,-1],[-1,2]],
    // so the duals are (1,-1) and (0,1).
    Frame f({SeqVec::unit(1), add(SeqVec::unit(1), SeqVec::unit(2))}, "pair");
    Frame d = canonical_dual(f);
    CHECK(distance(d.element(0), sub(SeqVec::unit(1), SeqVec::unit(2))) <= 1e-12);
    CHECK(distance(d.element(1), SeqVec::unit(2)) <= 1e-12);

    std::mt19937_64 rng(3);
    SeqVec x = random_sparse(rng, 2, 2);
    auto [rec, residual] = reconstruct(f, d, x);
    (void)rec;
    CHECK(residual < 1e-10);
}

TEST_CASE("rank-deficient families have no canonical dual") {
    Frame sub({SeqVec::unit(2), SeqVec::unit(3)}, "subspace");
    CHECK_THROWS_WITH_AS(canonical_dual(sub), "frame does not span ambient space",
                         std::invalid_argument);
}

TEST_CASE("reconstruction residuals") {
    Frame onb = builtin_onb(3);
    auto [r1, res1] = reconstruct(onb, onb, add(SeqVec::unit(1), SeqVec::unit(2)));
    CHECK(res1 <= 1e-14);
    CHECK(distance(r1, add(SeqVec::unit(1), SeqVec::unit(2))) <= 1e-14);

    Frame dbl = doubled_basis();
    Frame ddbl = canonical_dual(dbl);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        SeqVec f = random_sparse(rng, 2, 2);
        auto [rec, residual] = reconstruct(dbl, ddbl, f);
        (void)rec;
        CHECK(residual < 1e-10);
    }

    // a non-tight frame paired with itself is not a dual pair
    Frame diag({SeqVec::unit(1), scaled(Complex(2, 0), SeqVec::unit(2))}, "diag");
    auto [rec2, res2] = reconstruct(diag, diag, SeqVec::unit(2));
    (void)rec2;
    CHECK(res2 > 0.5);  // sum gives 4 e_2 instead of e_2
}

TEST_CASE("excess of hand-checkable families") {
    CHECK(excess(builtin_onb(5)) == 0);
    CHECK(excess(doubled_basis()) == 2);
}

TEST_CASE("excess of an orbit prefix agrees with the SVD oracle") {
    // 40 orbit elements of a 5-eigenvalue diagonal system: the span is the
    // whole 5-dimensional space, so 35 elements are removable.
    Frame orbit = builtin_carleson(2.0, 5, 40);
    const int r = rank_oracle(orbit);
    CHECK(r == 5);
    CHECK(excess(orbit) == 40 - r);
}

TEST_CASE("excess is invariant under permutation") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
        Frame f = random_spanning_frame(rng, 5, 3);
        std::vector<SeqVec> els = f.elements();
        std::shuffle(els.begin(), els.end(), rng);
        Frame g(std::move(els), "shuffled");
        CHECK(excess(f) == excess(g));
    }
}

TEST_CASE("sampled frame inequality holds for measured bounds") {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> val(0.0, 1.0);
    for (int t = 0; t < 5; ++t) {
        Frame f = random_spanning_frame(rng, 6, 2);
        FrameBounds b = frame_bounds(f);
        REQUIRE_FALSE(b.subspace);
        for (int s = 0; s < 100; ++s) {
            Eigen::VectorXcd x(6);
            for (int i = 0; i < 6; ++i) x[i] = Complex(val(rng), val(rng));
            x /= x.norm();
            const double sum = (f.synthesis().adjoint() * x).squaredNorm();
            CHECK(sum >= b.lower - 1e-10);
            CHECK(sum <= b.upper + 1e-10);
        }
    }
}

TEST_CASE("canonical dual is an involution and swaps the bounds") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 10; ++t) {
        Frame f = random_spanning_frame(rng, 5, 2);
        Frame d = canonical_dual(f);
        FrameBounds bf = frame_bounds(f);
        FrameBounds bd = frame_bounds(d);
        CHECK(bd.lower == doctest::Approx(1.0 / bf.upper).epsilon(1e-9));
        CHECK(bd.upper == doctest::Approx(1.0 / bf.lower).epsilon(1e-9));
        Frame dd = canonical_dual(d);
        for (std::size_t k = 0; k < f.size(); ++k)
            CHECK(distance(f.element(k), dd.element(k)) <= 1e-8 * (1.0 + f.element(k).norm()));
    }
}

TEST_CASE("perturbation report on identical frames") {
    Frame onb = builtin_onb(5);
    ApproxReport rep = epsilon_approx_check(onb, onb, 0.5);
    CHECK(rep.synthesis_gap == 0.0);
    CHECK(rep.verdict);
    CHECK(rep.excess_match);
    CHECK(rep.theorem_applicable);
    CHECK(rep.frame_op_gap <= 1e-14);
    CHECK(rep.inv_frame_op_gap <= 1e-12);
}

TEST_CASE("rank-one perturbation of a basis") {
    Frame onb = builtin_onb(5);
    Frame pert = builtin_riesz_perturbed(5, 0.01);
    ApproxReport rep = epsilon_approx_check(onb, pert, 1e-3);
    CHECK(rep.synthesis_gap == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(rep.verdict);
    CHECK(rep.excess_match);
    // measured perturbed bounds sit inside the guaranteed envelope
    CHECK(rep.bounds_approx.lower >= rep.bound_interval.first - 1e-12);
    CHECK(rep.bounds_approx.upper <= rep.bound_interval.second + 1e-12);
    CHECK(rep.frame_op_gap <= rep.frame_op_gap_bound + 1e-12);
    CHECK(rep.inv_frame_op_gap <= rep.inv_frame_op_gap_bound + 1e-12);
}

TEST_CASE("epsilon at or above the lower bound flags the theorem as inapplicable") {
    Frame onb = builtin_onb(3);
    ApproxReport rep = epsilon_approx_check(onb, onb, 1.0);
    CHECK_FALSE(rep.theorem_applicable);
    CHECK(rep.verdict);  // the gap condition itself still holds
}

TEST_CASE("verdict is symmetric in the two frames") {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 10; ++t) {
        Frame f = random_spanning_frame(rng, 4, 1);
        std::vector<SeqVec> els;
        for (const auto& e : f.elements())
            els.push_back(add(e, scaled(Complex(0.01, 0.0), random_sparse(rng, 4, 2))));
        Frame g(std::move(els), "perturbed");
        for (double eps : {1e-2, 1e-1, 1.0}) {
            CHECK(epsilon_approx_check(f, g, eps).verdict ==
                  epsilon_approx_check(g, f, eps).verdict);
        }
    }
}

TEST_CASE("a true perturbation keeps bounds in the envelope and the excess") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 10; ++t) {
        Frame f = random_spanning_frame(rng, 4, 2);
        FrameBounds b = frame_bounds(f);
        const double eps = 0.25 * b.lower;
        // perturb each element by far less than sqrt(eps / M)
        const double step = 0.1 * std::sqrt(eps / double(f.size()));
        std::vector<SeqVec> els;
        for (const auto& e : f.elements()) {
            SeqVec noise = random_sparse(rng, 4, 2);
            els.push_back(add(e, scaled(Complex(step / std::max(1.0, noise.norm()), 0.0), noise)));
        }
        Frame g(std::move(els), "perturbed");
        ApproxReport rep = epsilon_approx_check(f, g, eps);
        REQUIRE(rep.verdict);
        REQUIRE(rep.theorem_applicable);
        CHECK(rep.excess_match);
        CHECK(rep.bounds_approx.lower >= rep.bound_interval.first - 1e-10);
        CHECK(rep.bounds_approx.upper <= rep.bound_interval.second + 1e-10);
    }
}

TEST_CASE("length mismatch is rejected") {
    CHECK_THROWS_AS(epsilon_approx_check(builtin_onb(3), builtin_onb(4), 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(reconstruct(builtin_onb(3), builtin_onb(4), SeqVec::unit(1)),
                    std::invalid_argument);
}
