#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace framelab {

using Complex = std::complex<double>;

/// Absolute comparison tolerance used throughout unless a caller overrides it.
inline constexpr double kDefaultTol = 1e-10;

/// Relative singular-value threshold below which a direction counts as null.
inline constexpr double kRankRelTol = 1e-8;

/// Deterministic nonnegative integer power by repeated squaring.  Exact for
/// powers of two, which is what makes shift round trips bit-reproducible.
inline double pow_int(double base, std::int64_t n) {
    double r = 1.0, b = base;
    for (std::int64_t e = n; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

// ─── SeqVec ────────────────────────────────────────────────────────────────
//
// A square-summable sequence with finite support, stored as sorted
// (index, value) pairs with 1-based indices and no explicit zeros.
// Shift and diagonal operators act on this representation exactly; the only
// rounding comes from the scalar arithmetic itself.
class SeqVec {
public:
    struct Entry {
        std::int64_t index;  // >= 1
        Complex value;       // != 0
    };

    SeqVec() = default;

    /// e_k
    static SeqVec unit(std::int64_t k);

    /// Builds the canonical form: sorts, merges duplicate indices, drops zeros.
    static SeqVec from_entries(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    /// Largest index with a nonzero coordinate; 0 for the zero vector.
    std::int64_t max_support() const;

    Complex coeff(std::int64_t k) const;
    double norm_sq() const;
    double norm() const;

private:
    std::vector<Entry> entries_;
};

SeqVec add(const SeqVec& a, const SeqVec& b);
SeqVec sub(const SeqVec& a, const SeqVec& b);
SeqVec scaled(Complex c, const SeqVec& v);
/// ⟨u, v⟩ = Σ u_k conj(v_k)
Complex inner(const SeqVec& u, const SeqVec& v);
double distance(const SeqVec& u, const SeqVec& v);
/// Moves every coordinate up by n places (indices k -> k+n), n >= 0.
SeqVec shift_up(const SeqVec& v, std::int64_t n);

/// Dense column of the first `dim` coordinates.
Eigen::VectorXcd to_dense(const SeqVec& v, std::int64_t dim);
/// Sparse view of a dense column; 1-based indices, exact zeros dropped.
SeqVec from_dense(const Eigen::VectorXcd& col);

// ─── OperatorSpec ──────────────────────────────────────────────────────────
//
// A structured bounded operator on the sequence space.  The shift and
// diagonal variants act exactly on finitely supported vectors; a dense matrix
// acts on the first `dim` coordinates and annihilates the rest.
class OperatorSpec;

struct DiagonalOp {
    // Symbol k -> lambda_k together with a declared bound sup_k |lambda_k|.
    std::function<Complex(std::int64_t)> symbol;
    double sup_bound;
};

struct ScaledLeftShiftOp {
    double scale;  // > 1; e_{k+1} -> scale * e_k, e_1 -> 0
};

struct ScaledRightShiftOp {
    double scale;  // > 1; e_k -> (1/scale) * e_{k+1}
};

struct RightShiftOp {};  // the isometry e_k -> e_{k+1}

struct DenseMatrixOp {
    Eigen::MatrixXcd entries;  // square, dim x dim
};

struct CompositionOp {
    // factors[0] is applied last: Composition{A, B} v = A (B v).
    std::vector<OperatorSpec> factors;
};

class OperatorSpec {
public:
    using Variant = std::variant<DiagonalOp, ScaledLeftShiftOp, ScaledRightShiftOp,
                                 RightShiftOp, DenseMatrixOp, CompositionOp>;

    static OperatorSpec diagonal(std::function<Complex(std::int64_t)> symbol, double sup_bound);
    /// Diagonal whose symbol is the given list (1-based), zero beyond it.
    static OperatorSpec diagonal_list(std::vector<Complex> lambdas);
    static OperatorSpec scaled_left_shift(double scale);
    static OperatorSpec scaled_right_shift(double scale);
    static OperatorSpec right_shift();
    static OperatorSpec dense(Eigen::MatrixXcd entries);
    static OperatorSpec composition(std::vector<OperatorSpec> factors);

    const Variant& variant() const { return *v_; }

private:
    explicit OperatorSpec(Variant v);
    // shared_ptr keeps OperatorSpec cheap to copy and the variant immutable.
    std::shared_ptr<const Variant> v_;
};

/// Exact image of v under op, in canonical form.  A dense matrix refuses
/// vectors supported beyond its domain ("support exceeds matrix domain").
SeqVec apply(const OperatorSpec& op, const SeqVec& v);

/// op^n v; n = 0 returns v unchanged.  Shift and diagonal powers are applied
/// in closed form, dense matrices and compositions iterate.
SeqVec power_apply(const OperatorSpec& op, std::int64_t n, const SeqVec& v);

/// Largest singular value of the dim x dim leading section P_dim op P_dim.
/// Monotone nondecreasing in dim.  Here a dense matrix uses its truncation
/// semantics (coordinates beyond its domain map to zero) instead of throwing.
double finite_section_norm(const OperatorSpec& op, std::int64_t dim);

/// The leading section itself, columns P_dim(op e_j), j = 1..dim.
Eigen::MatrixXcd section_matrix(const OperatorSpec& op, std::int64_t dim);

/// Adjoint: conjugates diagonals, transposes dense matrices, and swaps
/// ScaledLeftShift(s) with the composition s^2 * ScaledRightShift(s).
OperatorSpec adjoint(const OperatorSpec& op);

}  // namespace framelab
