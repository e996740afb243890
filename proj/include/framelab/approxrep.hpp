#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "framelab/frames.hpp"
#include "framelab/seqspace.hpp"

namespace framelab {

/// (T, U) = (scaled left shift, scaled right shift) with T U = identity.
std::pair<OperatorSpec, OperatorSpec> scaled_shifts(double lambda);

// ─── Shift exponent schedules ──────────────────────────────────────────────

struct ScheduleInput {
    std::vector<std::int64_t> supports;  // m(k): largest nonzero coordinate of f_k
    double lambda = 0.0;                 // shift scale, > 1
    double upper_bound = 0.0;            // B
    double epsilon = 0.0;                // in ]0, A[
    double lower_bound = 0.0;            // A, for the range check
};

enum class ScheduleKind {
    general,                 // gap-by-gap from the logarithmic growth condition
    dyadic_unrestricted,     // lambda = sqrt(2), closed form plus support offsets
    dyadic_bounded_support,  // lambda = sqrt(2), closed form only
};

struct AlphaSchedule {
    std::vector<std::int64_t> alphas;  // strictly increasing, alphas[0] = 0
    ScheduleKind provenance = ScheduleKind::general;
};

/// K exponents with alpha(1) = 0 and each gap the smallest integer satisfying
///   gap >= max(m(k), (k ln 2 + ln(B/eps) + ln(lambda^2/(lambda^2-1))) / (2 ln lambda)).
/// Requires supports for k = 1..K-1.  Throws "tolerance must be below lower
/// frame bound" when epsilon >= A.
AlphaSchedule alpha_schedule_general(const ScheduleInput& input, int K);

/// Closed-form schedule for lambda = sqrt(2), B = 2^N, eps = 2^{-j}:
///   alpha(k) = (k-1) * (N + j + 1 + k/2) (+ cumulative supports when given).
/// The bracket times (k-1) is always an even half-integer product, so the
/// values are computed in exact integer arithmetic.
AlphaSchedule alpha_schedule_dyadic(int N, int j,
                                    const std::optional<std::vector<std::int64_t>>& supports,
                                    int K);

/// Throws "support hypothesis violated" unless m(k) <= N + j + 1 + k for all k.
void check_dyadic_support_hypothesis(int N, int j, const std::vector<std::int64_t>& supports);

// ─── Generating vector and full pipeline ───────────────────────────────────

/// phi = Σ_{n=1}^{K_terms} U^{alpha(n)} f_n, exact on the sparse coordinates,
/// plus the geometric bound sqrt(B) * lambda^{-alpha(K_terms+1)} / (1 - 1/lambda)
/// on a hypothetical continuation of the sum.  When the schedule stops at
/// K_terms the bound conservatively uses alpha(K_terms) + 1.
std::pair<SeqVec, double> assemble_phi(const Frame& frame, const AlphaSchedule& schedule,
                                       double lambda, int K_terms);

struct PipelineResult {
    Frame approx;                    // { T^{alpha(k)} phi }
    ApproxReport report;
    std::vector<double> errors_sq;   // measured || f_k - T^{alpha(k)} phi ||^2
    std::vector<double> decay_bounds;  // B * lambda^2/(lambda^2-1) * lambda^{-2 gap(k)}
    std::vector<double> eps_budgets;   // epsilon / 2^k
    AlphaSchedule schedule;
    SeqVec phi;
    double tail_bound = 0.0;
    bool certificates_ok = false;
    int dyadic_N = 0;                // 0 unless a dyadic schedule ran
    bool dyadic_rounded_B = false;   // true when 2^N != measured B
};

/// Runs schedule -> phi -> suborbit and certifies every per-element error
/// against min(eps/2^k, decay bound) plus the tail allowance.
PipelineResult approx_suborbit_pipeline(const Frame& frame, double lambda, double epsilon,
                                        ScheduleKind kind);

}  // namespace framelab
