#include "framelab/serialize.hpp"

#include <cstdio>
#include <stdexcept>

namespace framelab {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Json seqvec_to_json(const SeqVec& v) {
    Json arr = Json::array();
    for (const auto& e : v.entries())
        arr.push_back(Json::array({e.index, e.value.real(), e.value.imag()}));
    return arr;
}

SeqVec seqvec_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("element must be an array of triples");
    std::vector<SeqVec::Entry> entries;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3)
            throw std::invalid_argument("coordinate must be [index, re, im]");
        entries.push_back({t[0].get<std::int64_t>(),
                           Complex(t[1].get<double>(), t[2].get<double>())});
    }
    return SeqVec::from_entries(std::move(entries));
}

Json frame_to_json(const Frame& frame) {
    Json j;
    j["label"] = frame.label();
    j["ambient_dim"] = frame.ambient_dim();
    Json elements = Json::array();
    for (const auto& f : frame.elements()) elements.push_back(seqvec_to_json(f));
    j["elements"] = std::move(elements);
    return j;
}

Frame frame_from_json(const Json& j) {
    if (!j.contains("elements")) throw std::invalid_argument("frame json needs 'elements'");
    std::vector<SeqVec> elements;
    for (const auto& e : j.at("elements")) elements.push_back(seqvec_from_json(e));
    Frame frame(std::move(elements), j.value("label", std::string{}));
    if (j.contains("ambient_dim") &&
        j.at("ambient_dim").get<std::int64_t>() < frame.ambient_dim())
        throw std::invalid_argument("declared ambient_dim smaller than element supports");
    return frame;
}

Json carleson_seq_to_json(const CarlesonSeq& seq) {
    Json j;
    switch (seq.generator) {
        case LambdaGenerator::geometric:
            j["kind"] = "geometric";
            j["alpha"] = seq.alpha;
            j["K"] = seq.size();
            break;
        case LambdaGenerator::harmonic:
            j["kind"] = "harmonic";
            j["K"] = seq.size();
            break;
        case LambdaGenerator::none: {
            Json arr = Json::array();
            for (const auto& l : seq.lambdas) arr.push_back(Json::array({l.real(), l.imag()}));
            j["lambdas"] = std::move(arr);
            break;
        }
    }
    return j;
}

CarlesonSeq carleson_seq_from_json(const Json& j) {
    if (j.contains("kind")) {
        const std::string kind = j.at("kind").get<std::string>();
        const int K = j.at("K").get<int>();
        if (kind == "geometric") return geometric_lambda(j.at("alpha").get<double>(), K);
        if (kind == "harmonic") return harmonic_lambda(K);
        throw std::invalid_argument("unknown sequence kind: " + kind);
    }
    if (!j.contains("lambdas"))
        throw std::invalid_argument("sequence json needs 'kind' or 'lambdas'");
    std::vector<Complex> lambdas;
    for (const auto& p : j.at("lambdas"))
        lambdas.emplace_back(p[0].get<double>(), p[1].get<double>());
    return CarlesonSeq::from_lambdas(std::move(lambdas));
}

Json plan_to_json(const HypercyclicPlan& plan) {
    Json j;
    j["a"] = plan.a;
    j["epsilon"] = plan.epsilon;
    j["alphas"] = plan.alphas;
    j["phi"] = seqvec_to_json(plan.phi);
    j["certified_errors"] = plan.certified_errors_sq;
    return j;
}

namespace {

Json bounds_to_json(const FrameBounds& b) {
    return Json{{"lower", b.lower},
                {"upper", b.upper},
                {"span_dim", b.span_dim},
                {"subspace", b.subspace}};
}

}  // namespace

Json approx_report_to_json(const ApproxReport& rep) {
    Json j;
    j["epsilon"] = rep.epsilon;
    j["per_element_errors"] = rep.per_element_errors;
    j["synthesis_gap"] = rep.synthesis_gap;
    j["bound_interval"] = Json::array({rep.bound_interval.first, rep.bound_interval.second});
    j["excess_match"] = rep.excess_match;
    j["frame_op_gap"] = rep.frame_op_gap;
    j["frame_op_gap_bound"] = rep.frame_op_gap_bound;
    j["inv_frame_op_gap"] = rep.inv_gap_defined ? Json(rep.inv_frame_op_gap) : Json("undefined");
    j["inv_frame_op_gap_bound"] = rep.inv_frame_op_gap_bound;
    j["verdict"] = rep.verdict;
    j["theorem_applicable"] = rep.theorem_applicable;
    if (!rep.theorem_applicable) j["warning"] = "perturbation theorem inapplicable";
    j["bounds_frame"] = bounds_to_json(rep.bounds_frame);
    j["bounds_approx"] = bounds_to_json(rep.bounds_approx);
    return j;
}

Json pipeline_result_to_json(const PipelineResult& res) {
    Json j;
    j["schedule"] = res.schedule.alphas;
    j["phi"] = seqvec_to_json(res.phi);
    j["errors"] = res.errors_sq;
    j["decay_bounds"] = res.decay_bounds;
    j["eps_budgets"] = res.eps_budgets;
    j["tail_bound"] = res.tail_bound;
    j["certificates_ok"] = res.certificates_ok;
    j["report"] = approx_report_to_json(res.report);
    return j;
}

std::string pipeline_csv(const PipelineResult& res) {
    std::string out = "k,alpha,error_sq,decay_bound,eps_over_2k\n";
    for (std::size_t k = 0; k < res.errors_sq.size(); ++k) {
        out += std::to_string(k + 1) + ',' + std::to_string(res.schedule.alphas[k]) + ',' +
               format_double(res.errors_sq[k]) + ',' + format_double(res.decay_bounds[k]) + ',' +
               format_double(res.eps_budgets[k]) + '\n';
    }
    return out;
}

}  // namespace framelab
