#pragma once

#include <vector>

#include "framelab/seqspace.hpp"

namespace framelab {

/// The classical hypercyclic operator a*L (scaled left shift), a > 1.
OperatorSpec rolewicz(double a);

// ─── Constructive suborbit plans ───────────────────────────────────────────
//
// Given finitely supported targets f_1..f_K, the plan places block k of phi at
// indices alpha(k)+1 .. alpha(k)+m(k) with scale a^{-alpha(k)}, so that
// (aL)^{alpha(k)} phi reproduces f_k exactly on its support and the only error
// is the geometric leakage of the later blocks.  Gaps are chosen greedily as
// the smallest integers whose leakage bound clears epsilon/2^k; the certified
// errors are then re-evaluated exactly from the stored target norms.
struct HypercyclicPlan {
    double a = 0.0;
    double epsilon = 0.0;
    std::vector<SeqVec> targets;
    std::vector<std::int64_t> alphas;  // strictly increasing, alpha(1) = 0
    SeqVec phi;
    // Exact squared distances || (aL)^{alpha(k)} phi - f_k ||^2, each
    // guaranteed <= epsilon / 2^k.
    std::vector<double> certified_errors_sq;
};

HypercyclicPlan plan_hypercyclic_vector(const std::vector<SeqVec>& targets, double a,
                                        double epsilon);

struct DensityProbe {
    std::int64_t n_best = 0;
    double dist_best = 0.0;
};

/// Scans n = 0..budget for the orbit element (aL)^n phi closest to `target`.
DensityProbe orbit_density_probe(const SeqVec& phi, double a, const SeqVec& target, int budget);

}  // namespace framelab
