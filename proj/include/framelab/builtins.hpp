#pragma once

#include <string>
#include <utility>
#include <vector>

#include "framelab/frames.hpp"

namespace framelab {

/// Orthonormal basis e_1..e_d.
Frame builtin_onb(int d);
/// (e_1, e_1, e_2, e_2, ..., e_d, e_d): a tight frame with bounds (2, 2).
Frame builtin_doubled_onb(int d);
/// (e_1, 2 e_2, 3 e_3, ..., d e_d): the weighted basis whose successor map
/// has norm 2.
Frame builtin_scaled_basis(int d);
/// Orbit prefix of the diagonal system with lambda_k = 1 - alpha^{-k} and
/// unit weights.
Frame builtin_carleson(double alpha, int K, int orbit_length);
/// Orthonormal basis with e_1 replaced by (1+delta) e_1.
Frame builtin_riesz_perturbed(int d, double delta);

/// Registry entries: (name, description).
std::vector<std::pair<std::string, std::string>> list_builtins();

/// Resolves strings like "onb(8)", "carleson(2,10,40)", "riesz_perturbed(5,0.01)".
Frame resolve_builtin(const std::string& source);

}  // namespace framelab
