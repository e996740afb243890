#include "framelab/orbitrep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace framelab {

namespace {

constexpr double kOverflowGuard = 1e12;

// Orthonormal basis of the null space of `m`, read off the right singular
// vectors whose singular value falls below the shared relative threshold.
Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& m) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double top = sv.size() ? sv(0) : 0.0;
    const double thresh = top * kRankRelTol;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

// Coefficient right shift: (c_1..c_M) -> (0, c_1, .., c_{M-1}).
Eigen::VectorXcd coeff_shift(const Eigen::VectorXcd& c) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(c.size());
    out.tail(c.size() - 1) = c.head(c.size() - 1);
    return out;
}

}  // namespace

OrbitFrame generate_orbit(const OperatorSpec& op, const SeqVec& phi, int count) {
    if (count < 1) throw std::invalid_argument("orbit length must be positive");
    std::vector<SeqVec> elements;
    elements.reserve(count);
    elements.push_back(phi);
    for (int n = 1; n < count; ++n) {
        SeqVec next = apply(op, elements.back());
        if (next.norm() > kOverflowGuard) throw std::range_error("orbit diverges");
        elements.push_back(std::move(next));
    }
    bool has_zero = false;
    for (const auto& e : elements) has_zero = has_zero || e.is_zero();
    OrbitFrame orbit{Frame(std::move(elements), "orbit"), op, phi, 0.0, has_zero};
    return orbit;
}

OrbitFrame make_orbit_frame(Frame frame, const OperatorSpec& op) {
    double residual = 0.0;
    for (std::size_t k = 0; k + 1 < frame.size(); ++k)
        residual = std::max(residual, distance(apply(op, frame.element(k)), frame.element(k + 1)));
    bool has_zero = false;
    for (const auto& e : frame.elements()) has_zero = has_zero || e.is_zero();
    SeqVec phi = frame.element(0);
    return OrbitFrame{std::move(frame), op, std::move(phi), residual, has_zero};
}

RepresentationResult representation_operator(const Frame& frame, const Frame& dual, double tol) {
    const std::size_t M = frame.size();
    if (M < 2) throw std::invalid_argument("representation needs at least two elements");
    if (dual.size() != M) throw std::invalid_argument("frame and dual must have the same length");

    // Verify the dual pair before using it: each ambient basis vector must
    // reconstruct within tolerance.
    const std::int64_t dim = frame.ambient_dim();
    for (std::int64_t i = 1; i <= dim; ++i) {
        auto [rec, residual] = reconstruct(frame, dual, SeqVec::unit(i));
        (void)rec;
        if (residual > std::max(tol, 1e-8))
            throw std::invalid_argument("dual verification failed: pair does not reconstruct");
    }

    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(dim, M);
    for (std::size_t k = 0; k < M; ++k) G.col(k) = to_dense(dual.element(k), dim);
    const Eigen::MatrixXcd& F = frame.synthesis();

    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t k = 0; k + 1 < M; ++k) T += F.col(k + 1) * G.col(k).adjoint();

    RepresentationResult res;
    res.matrix = T;
    res.residual = 0.0;
    for (std::size_t j = 0; j + 1 < M; ++j)
        res.residual = std::max(res.residual, (T * F.col(j) - F.col(j + 1)).norm());
    res.norm = finite_section_norm(OperatorSpec::dense(T), dim);
    FrameBounds b = frame_bounds(frame);
    res.norm_bounds = {1.0, b.lower > 0.0 ? std::sqrt(b.upper / b.lower)
                                          : std::numeric_limits<double>::infinity()};
    res.tail_indicator = F.col(M - 1).norm() * G.col(M - 1).norm();
    res.kernel_invariant = kernel_shift_invariance(frame, tol).invariant;
    return res;
}

KernelShiftReport kernel_shift_invariance(const Frame& frame, double tol) {
    const std::size_t M = frame.size();
    if (M < 2) throw std::invalid_argument("kernel shift test needs at least two elements");

    KernelShiftReport rep;
    Eigen::MatrixXcd kernel = null_space(frame.synthesis());
    rep.kernel_dim = static_cast<int>(kernel.cols());
    if (kernel.cols() == 0) {
        rep.invariant = true;  // trivial kernel
        return rep;
    }

    // Restrict to kernel vectors with vanishing last coordinate: shifting any
    // other vector would ask about the unavailable element f_{M+1}.  The
    // faithful sub-kernel is the null space of the synthesis matrix extended
    // by a row that pins coordinate M.
    Eigen::MatrixXcd last_row = kernel.row(M - 1);
    Eigen::MatrixXcd restriction = null_space(last_row);  // kernel.cols() x q
    Eigen::MatrixXcd faithful = kernel * restriction;
    rep.excluded = rep.kernel_dim - static_cast<int>(faithful.cols());

    double max_dist = 0.0;
    for (Eigen::Index c = 0; c < faithful.cols(); ++c) {
        Eigen::VectorXcd v = faithful.col(c);
        const double vn = v.norm();
        if (vn <= 0.0) continue;
        v /= vn;
        Eigen::VectorXcd shifted = coeff_shift(v);
        Eigen::VectorXcd proj = kernel * (kernel.adjoint() * shifted);
        max_dist = std::max(max_dist, (shifted - proj).norm());
    }
    rep.max_distance = max_dist;
    rep.invariant = max_dist <= tol;
    return rep;
}

SeqVec SpanRepresentation::apply(const SeqVec& v) const {
    Eigen::VectorXcd x = to_dense(v, basis.rows());
    Eigen::VectorXcd y = basis * (matrix * (basis.adjoint() * x));
    return from_dense(y);
}

SpanRepresentation span_representation(const std::vector<SeqVec>& seq) {
    const std::size_t M = seq.size();
    if (M < 2) throw std::invalid_argument("need at least two elements");
    std::int64_t dim = 1;
    for (const auto& f : seq) dim = std::max(dim, f.max_support());

    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, M);
    for (std::size_t k = 0; k < M; ++k) A.col(k) = to_dense(seq[k], dim);

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    const auto& sv = svd.singularValues();
    if (sv.size() < static_cast<Eigen::Index>(M) || sv(M - 1) <= sv(0) * kRankRelTol)
        throw std::invalid_argument("sequence not linearly independent");

    // Orthonormal basis W of span(f_1..f_M); all work happens in W-coordinates.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
    Eigen::MatrixXcd W = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, M);

    Eigen::MatrixXcd Fh = W.adjoint() * A.leftCols(M - 1);   // domain columns
    Eigen::MatrixXcd Gh = W.adjoint() * A.rightCols(M - 1);  // successor columns

    Eigen::HouseholderQR<Eigen::MatrixXcd> qr2(Fh);
    Eigen::MatrixXcd Qh = qr2.householderQ() * Eigen::MatrixXcd::Identity(M, M - 1);
    Eigen::MatrixXcd Rh =
        qr2.matrixQR().topLeftCorner(M - 1, M - 1).triangularView<Eigen::Upper>();
    Eigen::MatrixXcd Rinv = Rh.triangularView<Eigen::Upper>().solve(
        Eigen::MatrixXcd::Identity(M - 1, M - 1));

    Eigen::MatrixXcd X = Gh * Rinv;  // unit vectors of the domain -> images
    Eigen::BDCSVD<Eigen::MatrixXcd> svdX(X);

    SpanRepresentation rep;
    rep.basis = W;
    rep.matrix = X * Qh.adjoint();
    rep.op_norm = svdX.singularValues().size() ? svdX.singularValues()(0) : 0.0;
    return rep;
}

HardySection hardy_section(const OrbitFrame& orbit, int N, double tol) {
    if (N < 1) throw std::invalid_argument("section order must be positive");
    if (orbit.base.size() < static_cast<std::size_t>(N) + 1)
        throw std::invalid_argument("orbit too short for requested section");

    HardySection h;
    for (int n = 0; n < N; ++n) {
        const double r =
            distance(apply(orbit.op_used, orbit.base.element(n)), orbit.base.element(n + 1));
        h.residual = std::max(h.residual, r);
    }

    // ker V on the first N+1 monomial coefficients.
    const std::int64_t dim = orbit.base.ambient_dim();
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(dim, N + 1);
    for (int n = 0; n <= N; ++n) V.col(n) = to_dense(orbit.base.element(n), dim);
    Eigen::MatrixXcd kernel = null_space(V);
    h.kernel_dim = static_cast<int>(kernel.cols());
    if (kernel.cols() == 0) {
        h.kernel_shift_invariant = true;
        return h;
    }
    Eigen::MatrixXcd last_row = kernel.row(N);
    Eigen::MatrixXcd faithful = kernel * null_space(last_row);
    double max_dist = 0.0;
    for (Eigen::Index c = 0; c < faithful.cols(); ++c) {
        Eigen::VectorXcd v = faithful.col(c);
        if (v.norm() <= 0.0) continue;
        v /= v.norm();
        Eigen::VectorXcd shifted = coeff_shift(v);
        max_dist = std::max(max_dist, (shifted - kernel * (kernel.adjoint() * shifted)).norm());
    }
    h.kernel_shift_distance = max_dist;
    h.kernel_shift_invariant = max_dist <= tol;
    return h;
}

double hardy_intertwine_check(const OrbitFrame& orbit, int N) {
    return hardy_section(orbit, N).residual;
}

DecayDiagnostic decay_diagnostic(const OperatorSpec& op, const SeqVec& f, int n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    DecayDiagnostic diag;
    diag.norms.reserve(n_max + 1);
    SeqVec cur = f;
    diag.norms.push_back(cur.norm());
    for (int n = 1; n <= n_max; ++n) {
        cur = apply(op, cur);
        const double nn = cur.norm();
        if (nn > kOverflowGuard) throw std::range_error("orbit diverges");
        diag.norms.push_back(nn);
    }

    bool dec = true, inc = true, constant = true;
    for (std::size_t i = 0; i + 1 < diag.norms.size(); ++i) {
        const double a = diag.norms[i], b = diag.norms[i + 1];
        if (!(b < a + 1e-14)) dec = false;
        if (!(b > a - 1e-14)) inc = false;
        if (std::abs(b - a) > 1e-12 * std::max(1.0, a)) constant = false;
    }
    // "increases until the support runs out" shows up as growth followed by an
    // exactly-zero tail.
    bool inc_then_zero = false;
    if (!diag.norms.empty() && diag.norms.back() == 0.0) {
        std::size_t first_zero = diag.norms.size();
        while (first_zero > 0 && diag.norms[first_zero - 1] == 0.0) --first_zero;
        inc_then_zero = first_zero > 0;
        for (std::size_t i = 0; i + 1 < first_zero; ++i)
            if (!(diag.norms[i + 1] > diag.norms[i] - 1e-14)) inc_then_zero = false;
    }

    if (constant)
        diag.trend = DecayTrend::constant;
    else if (dec)
        diag.trend = DecayTrend::decreasing;
    else if (inc)
        diag.trend = DecayTrend::increasing;
    else if (inc_then_zero)
        diag.trend = DecayTrend::increasing_then_zero;
    else
        diag.trend = DecayTrend::mixed;
    return diag;
}

}  // namespace framelab
