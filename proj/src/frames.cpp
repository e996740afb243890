#include "framelab/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace framelab {

namespace {

int synthesis_rank(const Eigen::MatrixXcd& synthesis) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(synthesis);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    const double thresh = sv(0) * kRankRelTol;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++r;
    return r;
}

Eigen::MatrixXcd frame_operator(const Eigen::MatrixXcd& synthesis) {
    return synthesis * synthesis.adjoint();
}

// The rank comes from the synthesis SVD (same rule as excess): squaring into
// the frame operator would push the rank threshold below the eigensolver
// noise floor.  The extreme in-span eigenvalues are then read off the
// Hermitian spectrum, where they are well separated from that noise.
FrameBounds bounds_of_synthesis(const Eigen::MatrixXcd& synthesis) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(frame_operator(synthesis),
                                                       Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    FrameBounds b;
    b.span_dim = synthesis_rank(synthesis);
    b.upper = ev.size() ? ev(ev.size() - 1) : 0.0;
    b.lower = b.span_dim > 0 ? ev(ev.size() - b.span_dim) : 0.0;
    b.subspace = b.span_dim < synthesis.rows();
    return b;
}

double spectral_norm_hermitian(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    if (ev.size() == 0) return 0.0;
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

Eigen::MatrixXcd padded_synthesis(const Frame& f, std::int64_t dim) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, f.size());
    out.topRows(f.ambient_dim()) = f.synthesis();
    return out;
}

}  // namespace

Frame::Frame(std::vector<SeqVec> elements, std::string label)
    : elements_(std::move(elements)), label_(std::move(label)) {
    if (elements_.empty()) throw std::invalid_argument("frame needs at least one element");
    ambient_dim_ = 1;
    for (const auto& e : elements_) ambient_dim_ = std::max(ambient_dim_, e.max_support());
    if (ambient_dim_ * static_cast<std::int64_t>(elements_.size()) > 50'000'000)
        throw std::invalid_argument("frame too large for dense analysis");
    synthesis_ = Eigen::MatrixXcd::Zero(ambient_dim_, elements_.size());
    for (std::size_t k = 0; k < elements_.size(); ++k)
        synthesis_.col(k) = to_dense(elements_[k], ambient_dim_);
}

FrameBounds frame_bounds(const Frame& frame) {
    return bounds_of_synthesis(frame.synthesis());
}

Frame canonical_dual(const Frame& frame) {
    FrameBounds b = frame_bounds(frame);
    if (b.subspace || b.lower <= 0.0)
        throw std::invalid_argument("frame does not span ambient space");
    Eigen::MatrixXcd S = frame_operator(frame.synthesis());
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(S);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("frame operator factorization failed");
    Eigen::MatrixXcd duals = ldlt.solve(frame.synthesis());
    std::vector<SeqVec> out;
    out.reserve(frame.size());
    for (std::size_t k = 0; k < frame.size(); ++k) out.push_back(from_dense(duals.col(k)));
    return Frame(std::move(out), frame.label().empty() ? "dual" : frame.label() + ":dual");
}

std::pair<SeqVec, double> reconstruct(const Frame& frame, const Frame& dual, const SeqVec& f) {
    if (frame.size() != dual.size())
        throw std::invalid_argument("frame and dual must have the same length");
    const std::int64_t dim = std::max(frame.ambient_dim(), f.max_support());
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(dim);
    for (std::size_t k = 0; k < frame.size(); ++k) {
        const Complex c = inner(f, dual.element(k));
        acc += c * to_dense(frame.element(k), dim);
    }
    const double residual = (acc - to_dense(f, dim)).norm();
    return {from_dense(acc), residual};
}

int excess(const Frame& frame) {
    return static_cast<int>(frame.size()) - synthesis_rank(frame.synthesis());
}

ApproxReport epsilon_approx_check(const Frame& frame, const Frame& approx, double epsilon) {
    if (frame.size() != approx.size())
        throw std::invalid_argument("frames must have the same length");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");

    ApproxReport rep;
    rep.epsilon = epsilon;
    rep.bounds_frame = frame_bounds(frame);

    const std::int64_t dim = std::max(frame.ambient_dim(), approx.ambient_dim());
    Eigen::MatrixXcd U = padded_synthesis(frame, dim);
    Eigen::MatrixXcd V = padded_synthesis(approx, dim);

    // The synthesis gap lives in the common enlarged space: escaped
    // components count against the approximation.
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(U - V);
    rep.synthesis_gap = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    rep.verdict = rep.synthesis_gap * rep.synthesis_gap <= epsilon * (1.0 + 1e-12) + 1e-15;

    rep.per_element_errors.reserve(frame.size());
    for (std::size_t k = 0; k < frame.size(); ++k) {
        const double d = distance(frame.element(k), approx.element(k));
        rep.per_element_errors.push_back(d * d);
    }

    // Bounds and excess of the approximating family are measured for the
    // reference frame's space: the family approximates a frame for that
    // space, and a perturbation may stick out of it.  On the enlarged span
    // the perturbed elements are generically independent, so rank and
    // in-span bounds would say nothing about the reference space.
    const std::int64_t d0 = frame.ambient_dim();
    Eigen::MatrixXcd V0 = V.topRows(d0);
    rep.bounds_approx = bounds_of_synthesis(V0);
    rep.excess_match =
        excess(frame) == static_cast<int>(approx.size()) - synthesis_rank(V0);

    const double A = rep.bounds_frame.lower;
    const double B = rep.bounds_frame.upper;
    rep.theorem_applicable = epsilon < A;
    if (A > 0.0 && B > 0.0) {
        const double lo = A * std::pow(1.0 - std::sqrt(epsilon / A), 2.0);
        const double hi = B * std::pow(1.0 + std::sqrt(epsilon / B), 2.0);
        rep.bound_interval = {lo, hi};
        rep.frame_op_gap_bound = std::sqrt(epsilon * B) * (2.0 + std::sqrt(epsilon / B));
        const double denom = A * A * std::pow(1.0 - std::sqrt(epsilon / A), 2.0);
        rep.inv_frame_op_gap_bound =
            denom > 0.0 ? rep.frame_op_gap_bound / denom : std::numeric_limits<double>::infinity();
    }

    Eigen::MatrixXcd S = U * U.adjoint();
    Eigen::MatrixXcd St = V * V.adjoint();
    rep.frame_op_gap = spectral_norm_hermitian(S - St);

    // The inverse gap is likewise taken on the original frame's ambient
    // block: padding makes the full-space S singular whenever the
    // approximation enlarges the ambient space.
    Eigen::MatrixXcd Sd = S.topLeftCorner(d0, d0);
    Eigen::MatrixXcd Std = St.topLeftCorner(d0, d0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esS(Sd, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esSt(Std, Eigen::EigenvaluesOnly);
    const double minS = esS.eigenvalues()(0);
    const double minSt = esSt.eigenvalues()(0);
    const double top = std::max(esS.eigenvalues()(esS.eigenvalues().size() - 1),
                                esSt.eigenvalues()(esSt.eigenvalues().size() - 1));
    if (minS > top * 1e-14 && minSt > top * 1e-14) {
        rep.inv_frame_op_gap = spectral_norm_hermitian(Sd.inverse() - Std.inverse());
        rep.inv_gap_defined = true;
    } else {
        rep.inv_frame_op_gap = std::numeric_limits<double>::infinity();
        rep.inv_gap_defined = false;
    }
    return rep;
}

}  // namespace framelab
