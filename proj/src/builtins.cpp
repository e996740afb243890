#include "framelab/builtins.hpp"

#include <sstream>
#include <stdexcept>

#include "framelab/carleson.hpp"
#include "framelab/orbitrep.hpp"

namespace framelab {

Frame builtin_onb(int d) {
    if (d < 1) throw std::invalid_argument("onb dimension must be positive");
    std::vector<SeqVec> els;
    els.reserve(d);
    for (int k = 1; k <= d; ++k) els.push_back(SeqVec::unit(k));
    return Frame(std::move(els), "onb(" + std::to_string(d) + ")");
}

Frame builtin_doubled_onb(int d) {
    if (d < 1) throw std::invalid_argument("doubled_onb dimension must be positive");
    std::vector<SeqVec> els;
    els.reserve(2 * d);
    for (int k = 1; k <= d; ++k) {
        els.push_back(SeqVec::unit(k));
        els.push_back(SeqVec::unit(k));
    }
    return Frame(std::move(els), "doubled_onb(" + std::to_string(d) + ")");
}

Frame builtin_scaled_basis(int d) {
    if (d < 1) throw std::invalid_argument("scaled_basis dimension must be positive");
    std::vector<SeqVec> els;
    els.reserve(d);
    for (int k = 1; k <= d; ++k)
        els.push_back(scaled(Complex(double(k), 0.0), SeqVec::unit(k)));
    return Frame(std::move(els), "scaled_basis(" + std::to_string(d) + ")");
}

Frame builtin_carleson(double alpha, int K, int orbit_length) {
    CarlesonSystem sys = build_carleson_system(geometric_lambda(alpha, K),
                                               std::vector<double>(K, 1.0));
    OrbitFrame orbit = generate_orbit(sys.op, sys.phi, orbit_length);
    std::ostringstream label;
    label << "carleson(" << alpha << "," << K << "," << orbit_length << ")";
    return Frame(orbit.base.elements(), label.str());
}

Frame builtin_riesz_perturbed(int d, double delta) {
    if (d < 1) throw std::invalid_argument("riesz_perturbed dimension must be positive");
    std::vector<SeqVec> els;
    els.reserve(d);
    els.push_back(scaled(Complex(1.0 + delta, 0.0), SeqVec::unit(1)));
    for (int k = 2; k <= d; ++k) els.push_back(SeqVec::unit(k));
    std::ostringstream label;
    label << "riesz_perturbed(" << d << "," << delta << ")";
    return Frame(std::move(els), label.str());
}

std::vector<std::pair<std::string, std::string>> list_builtins() {
    return {
        {"onb(d)", "orthonormal basis e_1..e_d"},
        {"doubled_onb(d)", "each basis vector twice; tight frame with bounds (2,2)"},
        {"scaled_basis(d)", "weighted basis k*e_k; successor map has norm 2"},
        {"carleson(alpha,K,M)",
         "orbit prefix of length M of the diagonal system with lambda_k = 1-alpha^-k"},
        {"riesz_perturbed(d,delta)", "orthonormal basis with e_1 scaled by 1+delta"},
    };
}

namespace {

std::vector<double> parse_args(const std::string& inside) {
    std::vector<double> args;
    std::stringstream ss(inside);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("empty builtin argument");
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("bad builtin argument: " + tok);
        args.push_back(v);
    }
    return args;
}

}  // namespace

Frame resolve_builtin(const std::string& source) {
    const auto open = source.find('(');
    const auto close = source.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw std::invalid_argument("builtin frame must look like name(args): " + source);
    const std::string name = source.substr(0, open);
    const std::vector<double> args = parse_args(source.substr(open + 1, close - open - 1));

    auto want = [&](std::size_t n) {
        if (args.size() != n)
            throw std::invalid_argument("builtin " + name + " expects " + std::to_string(n) +
                                        " argument(s)");
    };
    if (name == "onb") {
        want(1);
        return builtin_onb(static_cast<int>(args[0]));
    }
    if (name == "doubled_onb") {
        want(1);
        return builtin_doubled_onb(static_cast<int>(args[0]));
    }
    if (name == "scaled_basis") {
        want(1);
        return builtin_scaled_basis(static_cast<int>(args[0]));
    }
    if (name == "carleson") {
        want(3);
        return builtin_carleson(args[0], static_cast<int>(args[1]), static_cast<int>(args[2]));
    }
    if (name == "riesz_perturbed") {
        want(2);
        return builtin_riesz_perturbed(static_cast<int>(args[0]), args[1]);
    }
    throw std::invalid_argument("unknown builtin frame: " + name);
}

}  // namespace framelab
