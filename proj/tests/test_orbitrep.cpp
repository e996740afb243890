#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "framelab/builtins.hpp"
#include "framelab/carleson.hpp"
#include "framelab/orbitrep.hpp"

using namespace framelab;

namespace {

// Weighted shift e_k -> ((k+1)/k) e_{k+1} on the first `dim` coordinates; its
// orbit from e_1 is the weighted basis (e_1, 2e_2, 3e_3, ...).
OperatorSpec successor_weighted_shift(int dim) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) m(k, k - 1) = Complex(double(k + 1) / double(k), 0.0);
    return OperatorSpec::dense(m);
}

OrbitFrame carleson_orbit(int K, int M) {
    CarlesonSystem sys =
        build_carleson_system(geometric_lambda(2.0, K), std::vector<double>(K, 1.0));
    return generate_orbit(sys.op, sys.phi, M);
}

Frame duplicated_first_element(int d) {
    std::vector<SeqVec> els{SeqVec::unit(1)};
    for (int k = 1; k <= d; ++k) els.push_back(SeqVec::unit(k));
    return Frame(std::move(els), "duplicated");
}

}  // namespace

TEST_CASE("orbit generation") {
    OrbitFrame shift = generate_orbit(OperatorSpec::right_shift(), SeqVec::unit(1), 4);
    REQUIRE(shift.base.size() == 4);
    for (int n = 0; n < 4; ++n)
        CHECK(distance(shift.base.element(n), SeqVec::unit(n + 1)) == 0.0);
    CHECK_FALSE(shift.has_zero_element);
    CHECK(shift.recurrence_residual == 0.0);

    CarlesonSystem sys =
        build_carleson_system(geometric_lambda(2.0, 4), std::vector<double>(4, 1.0));
    OrbitFrame diag = generate_orbit(sys.op, sys.phi, 3);
    for (int n = 0; n < 3; ++n)
        for (int k = 1; k <= 4; ++k) {
            const Complex expected =
                sys.phi.coeff(k) * std::pow(sys.seq.lambdas[k - 1], double(n));
            CHECK(std::abs(diag.base.element(n).coeff(k) - expected) <= 1e-14);
        }

    OrbitFrame nil = generate_orbit(OperatorSpec::scaled_left_shift(2.0), SeqVec::unit(3), 4);
    CHECK(nil.has_zero_element);  // e_3 -> 2e_2 -> 4e_1 -> 0
    CHECK(distance(nil.base.element(2), scaled(Complex(4, 0), SeqVec::unit(1))) == 0.0);
    CHECK(nil.base.element(3).is_zero());
}

TEST_CASE("orbit overflow guard") {
    CHECK_THROWS_WITH_AS(generate_orbit(OperatorSpec::scaled_left_shift(8.0),
                                        shift_up(SeqVec::unit(1), 40), 20),
                         "orbit diverges", std::range_error);
}

TEST_CASE("successor operator of an orthonormal basis is the shift section") {
    Frame onb = builtin_onb(5);
    RepresentationResult rep = representation_operator(onb, canonical_dual(onb));
    CHECK(rep.residual <= 1e-14);
    CHECK(rep.norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.kernel_invariant);
    CHECK(rep.norm_bounds.first == 1.0);
    CHECK(rep.norm_bounds.second == doctest::Approx(1.0).epsilon(1e-9));
    // matrix acts as e_j -> e_{j+1} for j < 5
    for (int j = 0; j < 4; ++j) {
        Eigen::VectorXcd col = rep.matrix.col(j);
        CHECK(std::abs(col(j + 1) - Complex(1, 0)) <= 1e-12);
        CHECK(col.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("successor operator of the weighted basis has norm two") {
    Frame f = builtin_scaled_basis(10);
    RepresentationResult rep = representation_operator(f, canonical_dual(f));
    CHECK(rep.residual <= 1e-10);
    CHECK(rep.norm == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(rep.kernel_invariant);
    CHECK(rep.norm >= rep.norm_bounds.first - 1e-9);
    CHECK(rep.norm <= rep.norm_bounds.second + 1e-9);  // sqrt(B/A) = 10
}

TEST_CASE("a duplicated element blocks any successor operator") {
    Frame f = duplicated_first_element(5);
    RepresentationResult rep = representation_operator(f, canonical_dual(f));
    // hand value: ||T e_1 - e_1|| = ||(e_1+e_2)/2 - e_1|| = sqrt(1/2)
    CHECK(rep.residual == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(rep.residual > 0.1);
    CHECK_FALSE(rep.kernel_invariant);
}

TEST_CASE("unverified duals are rejected") {
    Frame diag({SeqVec::unit(1), scaled(Complex(2, 0), SeqVec::unit(2))}, "diag");
    CHECK_THROWS_AS(representation_operator(diag, diag), std::invalid_argument);
}

TEST_CASE("kernel shift-invariance verdicts") {
    // Riesz family: trivial kernel
    KernelShiftReport riesz = kernel_shift_invariance(builtin_scaled_basis(6));
    CHECK(riesz.invariant);
    CHECK(riesz.kernel_dim == 0);
    CHECK(riesz.max_distance == 0.0);

    // orbit frames: invariant on the faithful sub-kernel
    KernelShiftReport orbit = kernel_shift_invariance(carleson_orbit(4, 24).base);
    CHECK(orbit.kernel_dim == 20);
    CHECK(orbit.invariant);

    // hand case (e_1, e_1, e_2, e_3): kernel spanned by (1,-1,0,0)/sqrt(2);
    // its shift (0,1,-1,0)/sqrt(2) demands f_2 = f_3 and sits at distance
    // sqrt(3)/2 from the kernel line.
    Frame dup({SeqVec::unit(1), SeqVec::unit(1), SeqVec::unit(2), SeqVec::unit(3)}, "dup");
    KernelShiftReport bad = kernel_shift_invariance(dup);
    CHECK(bad.kernel_dim == 1);
    CHECK(bad.excluded == 0);
    CHECK_FALSE(bad.invariant);
    CHECK(bad.max_distance == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("successor residual and kernel invariance agree on the corpus") {
    struct Case {
        Frame frame;
        bool representable;
    };
    std::vector<Case> corpus;
    corpus.push_back({builtin_onb(6), true});
    corpus.push_back({builtin_onb(10), true});
    corpus.push_back({builtin_scaled_basis(8), true});
    corpus.push_back({duplicated_first_element(5), false});
    corpus.push_back({duplicated_first_element(3), false});
    for (const auto& c : corpus) {
        RepresentationResult rep = representation_operator(c.frame, canonical_dual(c.frame));
        const bool residual_small = rep.residual <= kDefaultTol;
        CHECK(residual_small == c.representable);
        CHECK(rep.kernel_invariant == c.representable);
        if (residual_small) {
            CHECK(rep.norm >= rep.norm_bounds.first - kDefaultTol);
            CHECK(rep.norm <= rep.norm_bounds.second + kDefaultTol);
        }
    }
}

TEST_CASE("dropping the first element of a diagonal orbit keeps a frame") {
    // the diagonal operator with nonzero eigenvalues is surjective on the
    // finite section, so the shifted orbit is still a frame
    OrbitFrame orbit = carleson_orbit(5, 50);
    std::vector<SeqVec> rest(orbit.base.elements().begin() + 1, orbit.base.elements().end());
    FrameBounds b = frame_bounds(Frame(std::move(rest), "tail"));
    CHECK_FALSE(b.subspace);
    CHECK(b.lower > 0.0);
}

TEST_CASE("span successor map of the weighted basis") {
    std::vector<SeqVec> seq;
    for (int k = 1; k <= 10; ++k) seq.push_back(scaled(Complex(k, 0), SeqVec::unit(k)));
    SpanRepresentation rep = span_representation(seq);
    CHECK(rep.op_norm == doctest::Approx(2.0).epsilon(1e-12));
    for (int k = 0; k + 1 < 10; ++k)
        CHECK(distance(rep.apply(seq[k]), seq[k + 1]) <= 1e-10);
}

TEST_CASE("span successor map of an orthonormal prefix has norm one") {
    std::vector<SeqVec> seq;
    for (int k = 1; k <= 8; ++k) seq.push_back(SeqVec::unit(k));
    CHECK(span_representation(seq).op_norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("interleaved reordering forces unbounded growth") {
    // (e_1, 10 e_10, 2 e_2, 100 e_100, 3 e_3, ...): disjoint supports make the
    // successor norm the largest consecutive norm ratio.
    auto interleaved = [](int M) {
        std::vector<SeqVec> seq;
        for (int i = 1; seq.size() < std::size_t(M); ++i) {
            seq.push_back(scaled(Complex(i, 0), SeqVec::unit(i)));
            if (seq.size() < std::size_t(M)) {
                const std::int64_t idx = static_cast<std::int64_t>(std::pow(10.0, i));
                seq.push_back(scaled(Complex(double(idx), 0), SeqVec::unit(idx)));
            }
        }
        return seq;
    };
    double prev = 0.0;
    for (int M : {2, 4, 6, 8}) {
        const double norm = span_representation(interleaved(M)).op_norm;
        CHECK(norm >= prev - 1e-9);  // growth table is monotone
        prev = norm;
    }
    CHECK(span_representation(interleaved(2)).op_norm == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(prev == doctest::Approx(2500.0).epsilon(1e-9));  // ratio 10^4/4 at M=8
    CHECK(prev >= 10.0);
}

TEST_CASE("dependent families have no span successor map") {
    CHECK_THROWS_WITH_AS(
        span_representation({SeqVec::unit(1), SeqVec::unit(2), SeqVec::unit(1)}),
        "sequence not linearly independent", std::invalid_argument);
}

TEST_CASE("finite-section intertwining of orbit frames") {
    OrbitFrame onb_orbit = generate_orbit(OperatorSpec::right_shift(), SeqVec::unit(1), 12);
    CHECK(hardy_intertwine_check(onb_orbit, 10) <= 1e-12);
    HardySection hs = hardy_section(onb_orbit, 10);
    CHECK(hs.kernel_dim == 0);  // Riesz orbit: trivial kernel

    OrbitFrame weighted = generate_orbit(successor_weighted_shift(12), SeqVec::unit(1), 11);
    HardySection hw = hardy_section(weighted, 9);
    CHECK(hw.residual <= 1e-12);
    CHECK(hw.kernel_dim == 0);

    OrbitFrame carleson = carleson_orbit(5, 30);
    HardySection hc = hardy_section(carleson, 29);
    CHECK(hc.residual <= 1e-12);
    CHECK(hc.kernel_dim == 30 - 5);  // overcomplete section
    CHECK(hc.kernel_shift_invariant);
}

TEST_CASE("decay diagnostics classify the standard operators") {
    CarlesonSystem sys =
        build_carleson_system(geometric_lambda(2.0, 5), std::vector<double>(5, 1.0));
    DecayDiagnostic contraction = decay_diagnostic(sys.op, sys.phi, 40);
    CHECK(contraction.trend == DecayTrend::decreasing);
    CHECK(contraction.norms.back() < contraction.norms.front());

    DecayDiagnostic isometry = decay_diagnostic(OperatorSpec::right_shift(), sys.phi, 40);
    CHECK(isometry.trend == DecayTrend::constant);
    CHECK(isometry.norms.front() == doctest::Approx(isometry.norms.back()).epsilon(1e-14));

    DecayDiagnostic nilpotent =
        decay_diagnostic(OperatorSpec::scaled_left_shift(2.0), SeqVec::unit(10), 12);
    CHECK(nilpotent.trend == DecayTrend::increasing_then_zero);
    for (int n = 0; n <= 9; ++n)
        CHECK(nilpotent.norms[n] == doctest::Approx(std::ldexp(1.0, n)).epsilon(1e-14));
    CHECK(nilpotent.norms[10] == 0.0);
    CHECK(nilpotent.norms[12] == 0.0);
}

TEST_CASE("externally assembled orbit frames are certified") {
    Frame f = builtin_onb(6);
    OrbitFrame ok = make_orbit_frame(f, OperatorSpec::right_shift());
    CHECK(ok.recurrence_residual <= 1e-14);

    OrbitFrame broken = make_orbit_frame(duplicated_first_element(4),
                                         OperatorSpec::right_shift());
    CHECK(broken.recurrence_residual > 0.5);
}
