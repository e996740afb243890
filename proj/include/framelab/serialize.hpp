#pragma once

#include <string>

#include <json.hpp>

#include "framelab/approxrep.hpp"
#include "framelab/carleson.hpp"
#include "framelab/frames.hpp"
#include "framelab/hypercyclic.hpp"

namespace framelab {

using Json = nlohmann::json;

// Frame <-> {label, ambient_dim, elements: [[[index, re, im], ...], ...]}.
// Doubles are emitted in shortest round-trip form, so parse(dump(x)) is
// bit-exact.
Json frame_to_json(const Frame& frame);
Frame frame_from_json(const Json& j);

// CarlesonSeq <-> {kind, alpha, K} for generated sequences,
// {lambdas: [[re, im], ...]} for raw lists.
Json carleson_seq_to_json(const CarlesonSeq& seq);
CarlesonSeq carleson_seq_from_json(const Json& j);

Json seqvec_to_json(const SeqVec& v);
SeqVec seqvec_from_json(const Json& j);

// Plan <-> {a, epsilon, alphas, phi, certified_errors}.
Json plan_to_json(const HypercyclicPlan& plan);

Json approx_report_to_json(const ApproxReport& rep);
Json pipeline_result_to_json(const PipelineResult& res);

/// CSV rows (k, alpha_k, error_sq, decay_bound, eps_over_2k), floats at
/// 17 significant digits.
std::string pipeline_csv(const PipelineResult& res);

/// Fixed 17-significant-digit float formatting used in every CSV/console path.
std::string format_double(double x);

}  // namespace framelab
