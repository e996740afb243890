#include "framelab/hypercyclic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace framelab {

OperatorSpec rolewicz(double a) {
    if (!(a > 1.0)) throw std::invalid_argument("Rolewicz requires a > 1");
    return OperatorSpec::scaled_left_shift(a);
}

HypercyclicPlan plan_hypercyclic_vector(const std::vector<SeqVec>& targets, double a,
                                        double epsilon) {
    if (targets.empty()) throw std::invalid_argument("plan needs at least one target");
    if (!(a > 1.0)) throw std::invalid_argument("Rolewicz requires a > 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");

    const std::size_t K = targets.size();
    const double log_a = std::log(a);

    std::vector<std::int64_t> m(K);
    std::vector<double> norm_sq(K);
    for (std::size_t k = 0; k < K; ++k) {
        m[k] = targets[k].max_support();
        norm_sq[k] = targets[k].norm_sq();
    }

    // Leakage budget for target k, bounded with gaps >= 1 beyond the one being
    // chosen: S_k = sum_{j>k} a^{-2(j-k-1)} ||f_j||^2, built by a backward
    // recurrence.  Choosing gap g makes the leakage at most a^{-2g} S_k.
    std::vector<double> budget(K, 0.0);
    for (std::size_t k = K - 1; k-- > 0;)
        budget[k] = norm_sq[k + 1] + budget[k + 1] / (a * a);

    std::vector<std::int64_t> alphas(K, 0);
    for (std::size_t k = 0; k + 1 < K; ++k) {
        std::int64_t gap = std::max<std::int64_t>(1, m[k]);
        if (budget[k] > 0.0) {
            // a^{-2g} * S_k <= epsilon / 2^{k+1}   (k is 0-based here)
            const double need = (std::log(budget[k]) + double(k + 1) * std::log(2.0) -
                                 std::log(epsilon)) /
                                (2.0 * log_a);
            gap = std::max(gap, static_cast<std::int64_t>(std::ceil(need - 1e-9)));
        }
        alphas[k + 1] = alphas[k] + gap;
    }

    for (std::size_t k = 0; k < K; ++k)
        if (double(alphas[k]) * log_a > 690.0)
            throw std::range_error("plan exceeds floating range; reduce targets or epsilon");

    // Block scales use the same repeated-squaring power as power_apply, so
    // (aL)^{alpha(k)} phi reproduces f_k bit-exactly on its support when a is
    // a power of two, and to a few ulp otherwise.
    SeqVec phi;
    for (std::size_t k = 0; k < K; ++k) {
        const double scale = 1.0 / pow_int(a, alphas[k]);
        phi = add(phi, scaled(Complex(scale, 0.0), shift_up(targets[k], alphas[k])));
    }

    // Exact leakage from the final schedule: block j>k lands beyond supp(f_k),
    // so the error is the sum of the scaled later-block norms alone.
    std::vector<double> errors(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        double e = 0.0;
        for (std::size_t j = k + 1; j < K; ++j) {
            const double t = 1.0 / pow_int(a, alphas[j] - alphas[k]);
            e += t * t * norm_sq[j];
        }
        errors[k] = e;
        if (e > epsilon / std::pow(2.0, double(k + 1)) * (1.0 + 1e-12))
            throw std::logic_error("plan certificate violated");
    }

    return HypercyclicPlan{a, epsilon, targets, std::move(alphas), std::move(phi),
                           std::move(errors)};
}

DensityProbe orbit_density_probe(const SeqVec& phi, double a, const SeqVec& target, int budget) {
    if (budget < 1) throw std::invalid_argument("budget must be positive");
    OperatorSpec op = rolewicz(a);
    DensityProbe best{0, distance(phi, target)};
    SeqVec cur = phi;
    for (int n = 1; n <= budget; ++n) {
        cur = apply(op, cur);
        if (cur.norm() > 1e12) throw std::range_error("orbit diverges");
        const double d = distance(cur, target);
        if (d < best.dist_best) best = {n, d};
    }
    return best;
}

}  // namespace framelab
