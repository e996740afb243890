#pragma once

#include <optional>
#include <vector>

#include "framelab/seqspace.hpp"

namespace framelab {

// ─── Carleson eigenvalue sequences ─────────────────────────────────────────

enum class LambdaGenerator {
    none,       // raw list, asymptotics unknown
    geometric,  // lambda_k = 1 - alpha^{-k}, alpha > 1
    harmonic,   // lambda_k = 1 - 1/k
};

// A finite list of prospective diagonal eigenvalues inside the unit disc,
// optionally tagged with the closed form that produced it.  The tag is what
// lets ratio_test speak about the limit behaviour a finite prefix cannot see.
struct CarlesonSeq {
    std::vector<Complex> lambdas;
    LambdaGenerator generator = LambdaGenerator::none;
    double alpha = 0.0;  // meaningful for the geometric generator

    static CarlesonSeq from_lambdas(std::vector<Complex> lambdas,
                                    LambdaGenerator generator = LambdaGenerator::none,
                                    double alpha = 0.0);
    std::size_t size() const { return lambdas.size(); }
};

/// lambda_k = 1 - alpha^{-k}, k = 1..K.
CarlesonSeq geometric_lambda(double alpha, int K);

/// lambda_k = 1 - 1/k, k = 1..K (prefix passes the ratio test, the limit
/// ratio is 1, so the sequence fails asymptotically).
CarlesonSeq harmonic_lambda(int K);

enum class RatioAsymptotics { unknown, holds, fails };

struct RatioReport {
    double c_max = 0.0;
    bool passes = false;  // c_max < 1 on the prefix
    // Necessary and sufficient only for positive increasing sequences.
    bool necessary_and_sufficient = false;
    RatioAsymptotics asymptotics = RatioAsymptotics::unknown;
};

/// max_k (1-|lambda_{k+1}|)/(1-|lambda_k|) over the prefix, with the limit
/// classification read off the generator tag when one is present.
RatioReport ratio_test(const CarlesonSeq& seq);

/// Finite truncation of inf_n prod_{k != n} |lambda_k-lambda_n| / |1 - lambda_k conj(lambda_n)|.
/// Products accumulate in log space so K ~ hundreds cannot underflow.
double carleson_inf(const CarlesonSeq& seq);

// ─── Diagonal system with generating vector ────────────────────────────────

struct CarlesonSystem {
    CarlesonSeq seq;
    OperatorSpec op;               // diagonal with the lambda_k
    SeqVec phi;                    // coordinate k = m_k * sqrt(1 - |lambda_k|^2)
    std::vector<double> m_weights;
    double m_min = 0.0, m_max = 0.0;
};

/// Assembles the diagonal operator and generating vector; m_weights must stay
/// strictly between 0 and infinity.
CarlesonSystem build_carleson_system(const CarlesonSeq& seq, std::vector<double> m_weights);

}  // namespace framelab
