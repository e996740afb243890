#include "framelab/approxrep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace framelab {

std::pair<OperatorSpec, OperatorSpec> scaled_shifts(double lambda) {
    if (!(lambda > 1.0)) throw std::invalid_argument("shift scale must exceed 1");
    return {OperatorSpec::scaled_left_shift(lambda), OperatorSpec::scaled_right_shift(lambda)};
}

AlphaSchedule alpha_schedule_general(const ScheduleInput& input, int K) {
    if (K < 1) throw std::invalid_argument("schedule length must be positive");
    if (!(input.lambda > 1.0)) throw std::invalid_argument("shift scale must exceed 1");
    if (!(input.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(input.epsilon < input.lower_bound))
        throw std::invalid_argument("tolerance must be below lower frame bound");
    if (!(input.lower_bound <= input.upper_bound * (1.0 + 1e-12)))
        throw std::invalid_argument("frame bounds out of order");
    if (static_cast<int>(input.supports.size()) < K - 1)
        throw std::invalid_argument("supports must cover K-1 gaps");

    const double l2 = input.lambda * input.lambda;
    const double log_term = std::log(input.upper_bound / input.epsilon) + std::log(l2 / (l2 - 1.0));
    const double denom = 2.0 * std::log(input.lambda);

    AlphaSchedule sched;
    sched.provenance = ScheduleKind::general;
    sched.alphas.assign(1, 0);
    for (int k = 1; k < K; ++k) {
        const double rhs = (double(k) * std::log(2.0) + log_term) / denom;
        // Values that are integral up to rounding error must not bump to the
        // next integer, hence the 1e-9 nudge before the ceiling.
        std::int64_t gap = std::max<std::int64_t>(
            input.supports[k - 1], static_cast<std::int64_t>(std::ceil(rhs - 1e-9)));
        gap = std::max<std::int64_t>(gap, 1);
        sched.alphas.push_back(sched.alphas.back() + gap);
    }
    return sched;
}

void check_dyadic_support_hypothesis(int N, int j, const std::vector<std::int64_t>& supports) {
    for (std::size_t k = 0; k < supports.size(); ++k)
        if (supports[k] > static_cast<std::int64_t>(N) + j + 1 + static_cast<std::int64_t>(k + 1))
            throw std::invalid_argument("support hypothesis violated");
}

AlphaSchedule alpha_schedule_dyadic(int N, int j,
                                    const std::optional<std::vector<std::int64_t>>& supports,
                                    int K) {
    if (K < 1) throw std::invalid_argument("schedule length must be positive");
    if (N < 1 || j < 1) throw std::invalid_argument("N and j must be positive integers");
    if (supports && static_cast<int>(supports->size()) < K - 1)
        throw std::invalid_argument("supports must cover K-1 gaps");

    AlphaSchedule sched;
    sched.provenance = supports ? ScheduleKind::dyadic_unrestricted
                                : ScheduleKind::dyadic_bounded_support;
    sched.alphas.reserve(K);
    std::int64_t support_sum = 0;  // m(1) + ... + m(k-1)
    for (int k = 1; k <= K; ++k) {
        // (k-1) * (N + j + 1 + k/2) = (k-1) * (2(N+j+1) + k) / 2; the numerator
        // is even for every k, so this is exact.
        const std::int64_t numer =
            static_cast<std::int64_t>(k - 1) * (2 * (static_cast<std::int64_t>(N) + j + 1) + k);
        std::int64_t a = numer / 2;
        if (supports) {
            a += support_sum;
            if (k - 1 < static_cast<int>(supports->size())) support_sum += (*supports)[k - 1];
        }
        sched.alphas.push_back(a);
    }
    return sched;
}

std::pair<SeqVec, double> assemble_phi(const Frame& frame, const AlphaSchedule& schedule,
                                       double lambda, int K_terms) {
    if (K_terms < 1 || K_terms > static_cast<int>(frame.size()))
        throw std::invalid_argument("K_terms must lie within the frame length");
    if (static_cast<int>(schedule.alphas.size()) < K_terms)
        throw std::invalid_argument("schedule does not cover K_terms");
    if (!(lambda > 1.0)) throw std::invalid_argument("shift scale must exceed 1");

    OperatorSpec U = OperatorSpec::scaled_right_shift(lambda);
    SeqVec phi;
    for (int n = 0; n < K_terms; ++n)
        phi = add(phi, power_apply(U, schedule.alphas[n], frame.element(n)));

    const double B = frame_bounds(frame).upper;
    const std::int64_t next_alpha = static_cast<int>(schedule.alphas.size()) > K_terms
                                        ? schedule.alphas[K_terms]
                                        : schedule.alphas[K_terms - 1] + 1;
    const double tail = std::sqrt(B) * std::exp(-double(next_alpha) * std::log(lambda)) /
                        (1.0 - 1.0 / lambda);
    return {phi, tail};
}

PipelineResult approx_suborbit_pipeline(const Frame& frame, double lambda, double epsilon,
                                        ScheduleKind kind) {
    const int M = static_cast<int>(frame.size());
    FrameBounds bounds = frame_bounds(frame);
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(epsilon < bounds.lower))
        throw std::invalid_argument("tolerance must be below lower frame bound");

    std::vector<std::int64_t> supports(M);
    for (int k = 0; k < M; ++k) supports[k] = frame.element(k).max_support();

    AlphaSchedule schedule;
    int dyadic_N = 0;
    bool rounded = false;
    if (kind == ScheduleKind::general) {
        ScheduleInput in{supports, lambda, bounds.upper, epsilon, bounds.lower};
        schedule = alpha_schedule_general(in, M + 1);
    } else {
        if (std::abs(lambda - std::sqrt(2.0)) > 1e-12)
            throw std::invalid_argument("dyadic schedule requires lambda = sqrt(2)");
        const double jd = -std::log2(epsilon);
        const int j = static_cast<int>(std::lround(jd));
        if (j < 1 || std::abs(epsilon - std::ldexp(1.0, -j)) > 1e-12 * epsilon)
            throw std::invalid_argument("dyadic schedule requires epsilon = 2^-j");
        dyadic_N = std::max(1, static_cast<int>(std::ceil(std::log2(bounds.upper) - 1e-9)));
        rounded = std::abs(std::ldexp(1.0, dyadic_N) - bounds.upper) >
                  1e-9 * std::max(1.0, bounds.upper);
        if (kind == ScheduleKind::dyadic_bounded_support)
            check_dyadic_support_hypothesis(dyadic_N, j, supports);
        schedule = alpha_schedule_dyadic(
            dyadic_N, j,
            kind == ScheduleKind::dyadic_unrestricted ? std::optional(supports) : std::nullopt,
            M + 1);
    }

    auto [phi, tail] = assemble_phi(frame, schedule, lambda, M);

    OperatorSpec T = OperatorSpec::scaled_left_shift(lambda);
    std::vector<SeqVec> approx_elements;
    approx_elements.reserve(M);
    for (int k = 0; k < M; ++k) approx_elements.push_back(power_apply(T, schedule.alphas[k], phi));
    Frame approx(std::move(approx_elements),
                 frame.label().empty() ? "suborbit" : frame.label() + ":suborbit");

    PipelineResult res{std::move(approx), {}, {}, {}, {}, std::move(schedule), std::move(phi),
                       tail,              false, dyadic_N, rounded};

    const double l2 = lambda * lambda;
    const double decay_const = bounds.upper * l2 / (l2 - 1.0);
    res.errors_sq.reserve(M);
    res.decay_bounds.reserve(M);
    res.eps_budgets.reserve(M);
    bool ok = true;
    for (int k = 0; k < M; ++k) {
        const double err = distance(frame.element(k), res.approx.element(k));
        const std::int64_t gap = res.schedule.alphas[k + 1] - res.schedule.alphas[k];
        const double decay = decay_const * std::exp(-2.0 * double(gap) * std::log(lambda));
        const double budget = epsilon * std::exp(-double(k + 1) * std::log(2.0));
        res.errors_sq.push_back(err * err);
        res.decay_bounds.push_back(decay);
        res.eps_budgets.push_back(budget);
        if (err > std::sqrt(std::min(decay, budget)) + tail + kDefaultTol) ok = false;
    }
    res.certificates_ok = ok;
    res.report = epsilon_approx_check(frame, res.approx, epsilon);
    return res;
}

}  // namespace framelab
