#include "framelab/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace framelab {

CarlesonSeq CarlesonSeq::from_lambdas(std::vector<Complex> lambdas, LambdaGenerator generator,
                                      double alpha) {
    for (const auto& l : lambdas)
        if (!(std::abs(l) < 1.0))
            throw std::invalid_argument("eigenvalues must lie strictly inside the unit disc");
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        for (std::size_t j = i + 1; j < lambdas.size(); ++j)
            if (lambdas[i] == lambdas[j])
                throw std::invalid_argument("eigenvalues not distinct");
    CarlesonSeq s;
    s.lambdas = std::move(lambdas);
    s.generator = generator;
    s.alpha = alpha;
    return s;
}

CarlesonSeq geometric_lambda(double alpha, int K) {
    if (!(alpha > 1.0)) throw std::invalid_argument("geometric base alpha must exceed 1");
    if (K < 1) throw std::invalid_argument("sequence length must be positive");
    std::vector<Complex> lambdas;
    lambdas.reserve(K);
    for (int k = 1; k <= K; ++k) lambdas.emplace_back(1.0 - std::pow(alpha, -double(k)), 0.0);
    return CarlesonSeq::from_lambdas(std::move(lambdas), LambdaGenerator::geometric, alpha);
}

CarlesonSeq harmonic_lambda(int K) {
    if (K < 1) throw std::invalid_argument("sequence length must be positive");
    std::vector<Complex> lambdas;
    lambdas.reserve(K);
    for (int k = 1; k <= K; ++k) lambdas.emplace_back(1.0 - 1.0 / double(k), 0.0);
    return CarlesonSeq::from_lambdas(std::move(lambdas), LambdaGenerator::harmonic);
}

RatioReport ratio_test(const CarlesonSeq& seq) {
    if (seq.size() < 2) throw std::invalid_argument("ratio test needs at least two eigenvalues");
    RatioReport rep;
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
        const double num = 1.0 - std::abs(seq.lambdas[k + 1]);
        const double den = 1.0 - std::abs(seq.lambdas[k]);
        rep.c_max = std::max(rep.c_max, num / den);
    }
    rep.passes = rep.c_max < 1.0;

    bool positive_increasing = true;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (seq.lambdas[k].imag() != 0.0 || seq.lambdas[k].real() <= 0.0) positive_increasing = false;
        if (k + 1 < seq.size() && !(seq.lambdas[k + 1].real() > seq.lambdas[k].real()))
            positive_increasing = false;
    }
    rep.necessary_and_sufficient = positive_increasing;

    switch (seq.generator) {
        case LambdaGenerator::geometric:
            rep.asymptotics = RatioAsymptotics::holds;  // limit ratio 1/alpha < 1
            break;
        case LambdaGenerator::harmonic:
            rep.asymptotics = RatioAsymptotics::fails;  // ratio k/(k+1) -> 1
            break;
        case LambdaGenerator::none:
            rep.asymptotics = RatioAsymptotics::unknown;
            break;
    }
    return rep;
}

double carleson_inf(const CarlesonSeq& seq) {
    const std::size_t K = seq.size();
    if (K < 2) throw std::invalid_argument("carleson_inf needs at least two eigenvalues");
    double log_inf = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < K; ++n) {
        double log_prod = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            if (k == n) continue;
            const double num = std::abs(seq.lambdas[k] - seq.lambdas[n]);
            const double den = std::abs(1.0 - seq.lambdas[k] * std::conj(seq.lambdas[n]));
            if (num == 0.0) throw std::invalid_argument("eigenvalues not distinct");
            log_prod += std::log(num) - std::log(den);
        }
        log_inf = std::min(log_inf, log_prod);
    }
    return std::exp(log_inf);
}

CarlesonSystem build_carleson_system(const CarlesonSeq& seq, std::vector<double> m_weights) {
    if (m_weights.size() != seq.size())
        throw std::invalid_argument("m_weights must match the eigenvalue count");
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    for (double m : m_weights) {
        if (!(m > 0.0)) throw std::invalid_argument("weights not bounded below");
        if (!std::isfinite(m)) throw std::invalid_argument("weights not bounded above");
        mn = std::min(mn, m);
        mx = std::max(mx, m);
    }
    CarlesonSystem sys{seq, OperatorSpec::diagonal_list(seq.lambdas), SeqVec(), m_weights, mn, mx};
    std::vector<SeqVec::Entry> entries;
    entries.reserve(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const double w = m_weights[k] * std::sqrt(1.0 - std::norm(seq.lambdas[k]));
        entries.push_back({static_cast<std::int64_t>(k + 1), Complex(w, 0.0)});
    }
    sys.phi = SeqVec::from_entries(std::move(entries));
    return sys;
}

}  // namespace framelab
