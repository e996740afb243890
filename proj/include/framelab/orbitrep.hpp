#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "framelab/frames.hpp"
#include "framelab/seqspace.hpp"

namespace framelab {

// ─── Orbit frames ──────────────────────────────────────────────────────────

// A frame generated as (phi, T phi, T^2 phi, ...).  The recurrence
// element[k+1] = op(element[k]) is re-measured at construction; a zero element
// marks the orbit as unusable for frame purposes.
struct OrbitFrame {
    Frame base;
    OperatorSpec op_used;
    SeqVec phi;
    double recurrence_residual = 0.0;
    bool has_zero_element = false;
};

/// (phi, T phi, ..., T^{count-1} phi).  Throws "orbit diverges" when an
/// element norm passes 1e12.
OrbitFrame generate_orbit(const OperatorSpec& op, const SeqVec& phi, int count);

/// Certifies an externally assembled frame as an orbit of `op`.
OrbitFrame make_orbit_frame(Frame frame, const OperatorSpec& op);

// ─── Representation operator from a dual frame ─────────────────────────────

// T = Σ_{k<M} f_{k+1} g_k^*, the desk-scale section of the operator that maps
// every frame element to its successor.  The omitted M-th term leaves a bias
// of size |<f_j, g_M>| ||T f_M||; tail_indicator = ||f_M|| ||g_M|| makes that
// truncation visible instead of silent.
struct RepresentationResult {
    Eigen::MatrixXcd matrix;  // ambient x ambient
    double norm = 0.0;
    std::pair<double, double> norm_bounds{0.0, 0.0};  // (1, sqrt(B/A))
    double residual = 0.0;  // max_{j<M} ||matrix f_j - f_{j+1}||
    bool kernel_invariant = false;
    double tail_indicator = 0.0;
};

/// Requires a verified dual (every ambient basis vector reconstructs).
RepresentationResult representation_operator(const Frame& frame, const Frame& dual,
                                             double tol = kDefaultTol);

// ─── Kernel shift-invariance ───────────────────────────────────────────────

struct KernelShiftReport {
    bool invariant = false;
    double max_distance = 0.0;
    int kernel_dim = 0;
    // Kernel directions whose shifted image would need the unavailable
    // element f_{M+1}; they are excluded from the verdict.
    int excluded = 0;
};

/// Tests whether the synthesis kernel is invariant under the coefficient
/// right shift, on the sub-kernel whose last coordinate vanishes.
KernelShiftReport kernel_shift_invariance(const Frame& frame, double tol = kDefaultTol);

// ─── Successor map on the span of a linearly independent family ────────────

// The unique linear map with T f_k = f_{k+1}, represented in an orthonormal
// basis W of span(f_1..f_M) to keep storage at M^2 regardless of the ambient
// dimension.  op_norm is taken over the domain span(f_1..f_{M-1}).
struct SpanRepresentation {
    Eigen::MatrixXcd matrix;  // M x M, coordinates w.r.t. basis
    Eigen::MatrixXcd basis;   // ambient x M, orthonormal columns
    double op_norm = 0.0;

    SeqVec apply(const SeqVec& v) const;
};

/// Throws "sequence not linearly independent" when the family is dependent.
SpanRepresentation span_representation(const std::vector<SeqVec>& seq);

// ─── Hardy-space finite section ────────────────────────────────────────────

struct HardySection {
    double residual = 0.0;  // max_n ||T (col n) - col n+1||
    int kernel_dim = 0;     // dim ker V on the finite section
    bool kernel_shift_invariant = false;
    double kernel_shift_distance = 0.0;
};

/// Finite section of the synthesis map V with columns T^n phi, n = 0..N:
/// measures the intertwining residual with the coefficient shift and the
/// shift-invariance of ker V.
HardySection hardy_section(const OrbitFrame& orbit, int N, double tol = kDefaultTol);

/// Just the intertwining residual.
double hardy_intertwine_check(const OrbitFrame& orbit, int N);

// ─── Orbit decay diagnostics ───────────────────────────────────────────────

enum class DecayTrend { decreasing, constant, increasing, increasing_then_zero, mixed };

struct DecayDiagnostic {
    std::vector<double> norms;  // ||T^n f||, n = 0..n_max
    DecayTrend trend = DecayTrend::mixed;
};

DecayDiagnostic decay_diagnostic(const OperatorSpec& op, const SeqVec& f, int n_max);

}  // namespace framelab
