#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "framelab/seqspace.hpp"

namespace framelab {

// ─── Frame ─────────────────────────────────────────────────────────────────
//
// An ordered finite family of sequence-space vectors.  The ambient dimension
// is the smallest d containing every support; the synthesis matrix (ambient x
// M, column k = f_k) is cached at construction.  Order matters: orbit checks
// compare element k against element k+1.
class Frame {
public:
    explicit Frame(std::vector<SeqVec> elements, std::string label = "");

    std::size_t size() const { return elements_.size(); }
    const SeqVec& element(std::size_t k) const { return elements_.at(k); }  // 0-based
    const std::vector<SeqVec>& elements() const { return elements_; }
    std::int64_t ambient_dim() const { return ambient_dim_; }
    const std::string& label() const { return label_; }
    const Eigen::MatrixXcd& synthesis() const { return synthesis_; }

private:
    std::vector<SeqVec> elements_;
    std::int64_t ambient_dim_;
    std::string label_;
    Eigen::MatrixXcd synthesis_;
};

struct FrameBounds {
    double lower = 0.0;  // smallest in-span eigenvalue of the frame operator
    double upper = 0.0;  // largest eigenvalue
    int span_dim = 0;    // numerical rank of the synthesis matrix
    bool subspace = false;  // true when the family spans a proper subspace
};

// Verdict and measurements for comparing a frame against a perturbed copy.
// bound_interval is the guaranteed (lower, upper) envelope for the perturbed
// family's frame bounds; the operator-gap fields carry the measured gaps next
// to their guaranteed ceilings.  The synthesis gap is taken in the common
// enlarged space, while bounds_approx and the excess comparison treat the
// perturbed family as a frame for the reference frame's space (a perturbation
// that sticks out of that space is generically independent on its own span,
// which would make rank comparisons vacuous).
struct ApproxReport {
    double epsilon = 0.0;
    std::vector<double> per_element_errors;        // ||f_k - g_k||^2
    double synthesis_gap = 0.0;                    // ||U - U~||
    std::pair<double, double> bound_interval{0.0, 0.0};
    bool excess_match = false;
    double frame_op_gap = 0.0;
    double inv_frame_op_gap = 0.0;
    double frame_op_gap_bound = 0.0;
    double inv_frame_op_gap_bound = 0.0;
    bool inv_gap_defined = true;
    bool verdict = false;             // synthesis_gap^2 <= epsilon
    bool theorem_applicable = false;  // epsilon < measured lower bound
    FrameBounds bounds_frame;
    FrameBounds bounds_approx;
};

/// Extreme eigenvalues of the frame operator S = U U*, computed on the
/// ambient_dim x ambient_dim matrix (stable when M >> ambient_dim).
FrameBounds frame_bounds(const Frame& frame);

/// {S^{-1} f_k} in the original order.  Throws when the family does not span
/// its ambient space.
Frame canonical_dual(const Frame& frame);

/// Σ_k ⟨f, g_k⟩ f_k and the residual ||reconstruction - f||.
std::pair<SeqVec, double> reconstruct(const Frame& frame, const Frame& dual, const SeqVec& f);

/// M minus the numerical rank of the synthesis matrix (singular values below
/// kRankRelTol * sigma_max count as zero).
int excess(const Frame& frame);

/// Full perturbation report for `approx` against `frame` at tolerance epsilon.
ApproxReport epsilon_approx_check(const Frame& frame, const Frame& approx, double epsilon);

}  // namespace framelab
