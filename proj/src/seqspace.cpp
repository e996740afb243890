#include "framelab/seqspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace framelab {

namespace {

Complex pow_int_c(Complex base, std::int64_t n) {
    Complex r = 1.0, b = base;
    for (std::int64_t e = n; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

void check_scale_factor(double f) {
    if (f == 0.0 || !std::isfinite(f))
        throw std::range_error("shift scale factor out of floating range");
}

}  // namespace

// ─── SeqVec ────────────────────────────────────────────────────────────────

SeqVec SeqVec::unit(std::int64_t k) {
    if (k < 1) throw std::invalid_argument("unit vector index must be positive");
    SeqVec v;
    v.entries_.push_back({k, Complex(1.0, 0.0)});
    return v;
}

SeqVec SeqVec::from_entries(std::vector<Entry> entries) {
    for (const auto& e : entries)
        if (e.index < 1) throw std::invalid_argument("coordinate index must be positive");
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.index < b.index; });
    SeqVec v;
    for (const auto& e : entries) {
        if (!v.entries_.empty() && v.entries_.back().index == e.index)
            v.entries_.back().value += e.value;
        else
            v.entries_.push_back(e);
    }
    std::erase_if(v.entries_, [](const Entry& e) { return e.value == Complex(0.0, 0.0); });
    return v;
}

std::int64_t SeqVec::max_support() const {
    return entries_.empty() ? 0 : entries_.back().index;
}

Complex SeqVec::coeff(std::int64_t k) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                               [](const Entry& e, std::int64_t idx) { return e.index < idx; });
    if (it != entries_.end() && it->index == k) return it->value;
    return Complex(0.0, 0.0);
}

double SeqVec::norm_sq() const {
    double s = 0.0;
    for (const auto& e : entries_) s += std::norm(e.value);
    return s;
}

double SeqVec::norm() const { return std::sqrt(norm_sq()); }

SeqVec add(const SeqVec& a, const SeqVec& b) {
    std::vector<SeqVec::Entry> merged;
    merged.reserve(a.entries().size() + b.entries().size());
    auto ia = a.entries().begin(), ib = b.entries().begin();
    while (ia != a.entries().end() || ib != b.entries().end()) {
        if (ib == b.entries().end() || (ia != a.entries().end() && ia->index < ib->index))
            merged.push_back(*ia++);
        else if (ia == a.entries().end() || ib->index < ia->index)
            merged.push_back(*ib++);
        else {
            merged.push_back({ia->index, ia->value + ib->value});
            ++ia, ++ib;
        }
    }
    std::erase_if(merged, [](const SeqVec::Entry& e) { return e.value == Complex(0.0, 0.0); });
    return SeqVec::from_entries(std::move(merged));
}

SeqVec sub(const SeqVec& a, const SeqVec& b) { return add(a, scaled(Complex(-1.0, 0.0), b)); }

SeqVec scaled(Complex c, const SeqVec& v) {
    std::vector<SeqVec::Entry> out;
    out.reserve(v.entries().size());
    for (const auto& e : v.entries()) out.push_back({e.index, c * e.value});
    return SeqVec::from_entries(std::move(out));
}

Complex inner(const SeqVec& u, const SeqVec& v) {
    Complex s = 0.0;
    auto iu = u.entries().begin(), iv = v.entries().begin();
    while (iu != u.entries().end() && iv != v.entries().end()) {
        if (iu->index < iv->index)
            ++iu;
        else if (iv->index < iu->index)
            ++iv;
        else {
            s += iu->value * std::conj(iv->value);
            ++iu, ++iv;
        }
    }
    return s;
}

double distance(const SeqVec& u, const SeqVec& v) { return sub(u, v).norm(); }

SeqVec shift_up(const SeqVec& v, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("shift_up requires n >= 0");
    std::vector<SeqVec::Entry> out;
    out.reserve(v.entries().size());
    for (const auto& e : v.entries()) out.push_back({e.index + n, e.value});
    return SeqVec::from_entries(std::move(out));
}

Eigen::VectorXcd to_dense(const SeqVec& v, std::int64_t dim) {
    Eigen::VectorXcd col = Eigen::VectorXcd::Zero(dim);
    for (const auto& e : v.entries())
        if (e.index <= dim) col[e.index - 1] = e.value;
    return col;
}

SeqVec from_dense(const Eigen::VectorXcd& col) {
    std::vector<SeqVec::Entry> entries;
    for (Eigen::Index i = 0; i < col.size(); ++i)
        if (col[i] != Complex(0.0, 0.0)) entries.push_back({i + 1, col[i]});
    return SeqVec::from_entries(std::move(entries));
}

// ─── OperatorSpec ──────────────────────────────────────────────────────────

OperatorSpec::OperatorSpec(Variant v) : v_(std::make_shared<const Variant>(std::move(v))) {}

OperatorSpec OperatorSpec::diagonal(std::function<Complex(std::int64_t)> symbol, double sup_bound) {
    if (!symbol) throw std::invalid_argument("diagonal symbol must be callable");
    if (!std::isfinite(sup_bound) || sup_bound < 0.0)
        throw std::invalid_argument("diagonal sup bound must be finite and nonnegative");
    return OperatorSpec(DiagonalOp{std::move(symbol), sup_bound});
}

OperatorSpec OperatorSpec::diagonal_list(std::vector<Complex> lambdas) {
    double sup = 0.0;
    for (const auto& l : lambdas) sup = std::max(sup, std::abs(l));
    auto data = std::make_shared<const std::vector<Complex>>(std::move(lambdas));
    return diagonal(
        [data](std::int64_t k) -> Complex {
            return (k >= 1 && k <= static_cast<std::int64_t>(data->size())) ? (*data)[k - 1]
                                                                            : Complex(0.0, 0.0);
        },
        sup);
}

OperatorSpec OperatorSpec::scaled_left_shift(double scale) {
    if (!(scale > 1.0)) throw std::invalid_argument("shift scale must exceed 1");
    return OperatorSpec(ScaledLeftShiftOp{scale});
}

OperatorSpec OperatorSpec::scaled_right_shift(double scale) {
    if (!(scale > 1.0)) throw std::invalid_argument("shift scale must exceed 1");
    return OperatorSpec(ScaledRightShiftOp{scale});
}

OperatorSpec OperatorSpec::right_shift() { return OperatorSpec(RightShiftOp{}); }

OperatorSpec OperatorSpec::dense(Eigen::MatrixXcd entries) {
    if (entries.rows() != entries.cols() || entries.rows() < 1)
        throw std::invalid_argument("dense operator matrix must be square and nonempty");
    return OperatorSpec(DenseMatrixOp{std::move(entries)});
}

OperatorSpec OperatorSpec::composition(std::vector<OperatorSpec> factors) {
    if (factors.empty()) throw std::invalid_argument("composition needs at least one factor");
    return OperatorSpec(CompositionOp{std::move(factors)});
}

namespace {

Complex diagonal_value(const DiagonalOp& d, std::int64_t k) {
    Complex l = d.symbol(k);
    if (std::abs(l) > d.sup_bound + 1e-9)
        throw std::logic_error("diagonal symbol exceeds declared bound");
    return l;
}

SeqVec apply_impl(const OperatorSpec& op, const SeqVec& v, bool truncating_dense);

SeqVec apply_dense(const DenseMatrixOp& m, const SeqVec& v, bool truncating) {
    const std::int64_t dim = m.entries.rows();
    if (!truncating && v.max_support() > dim)
        throw std::invalid_argument("support exceeds matrix domain");
    Eigen::VectorXcd x = to_dense(v, dim);
    return from_dense(m.entries * x);
}

SeqVec apply_impl(const OperatorSpec& op, const SeqVec& v, bool truncating_dense) {
    return std::visit(
        [&](const auto& o) -> SeqVec {
            using T = std::decay_t<decltype(o)>;
            std::vector<SeqVec::Entry> out;
            if constexpr (std::is_same_v<T, DiagonalOp>) {
                for (const auto& e : v.entries())
                    out.push_back({e.index, diagonal_value(o, e.index) * e.value});
                return SeqVec::from_entries(std::move(out));
            } else if constexpr (std::is_same_v<T, ScaledLeftShiftOp>) {
                for (const auto& e : v.entries())
                    if (e.index >= 2) out.push_back({e.index - 1, o.scale * e.value});
                return SeqVec::from_entries(std::move(out));
            } else if constexpr (std::is_same_v<T, ScaledRightShiftOp>) {
                for (const auto& e : v.entries())
                    out.push_back({e.index + 1, e.value / o.scale});
                return SeqVec::from_entries(std::move(out));
            } else if constexpr (std::is_same_v<T, RightShiftOp>) {
                return shift_up(v, 1);
            } else if constexpr (std::is_same_v<T, DenseMatrixOp>) {
                return apply_dense(o, v, truncating_dense);
            } else {
                SeqVec acc = v;
                for (auto it = o.factors.rbegin(); it != o.factors.rend(); ++it)
                    acc = apply_impl(*it, acc, truncating_dense);
                return acc;
            }
        },
        op.variant());
}

}  // namespace

SeqVec apply(const OperatorSpec& op, const SeqVec& v) { return apply_impl(op, v, false); }

SeqVec power_apply(const OperatorSpec& op, std::int64_t n, const SeqVec& v) {
    if (n < 0) throw std::invalid_argument("operator power must be nonnegative");
    if (n == 0) return v;
    return std::visit(
        [&](const auto& o) -> SeqVec {
            using T = std::decay_t<decltype(o)>;
            std::vector<SeqVec::Entry> out;
            if constexpr (std::is_same_v<T, DiagonalOp>) {
                for (const auto& e : v.entries())
                    out.push_back({e.index, pow_int_c(diagonal_value(o, e.index), n) * e.value});
                return SeqVec::from_entries(std::move(out));
            } else if constexpr (std::is_same_v<T, ScaledLeftShiftOp>) {
                const double f = pow_int(o.scale, n);
                check_scale_factor(f);
                for (const auto& e : v.entries())
                    if (e.index > n) out.push_back({e.index - n, f * e.value});
                return SeqVec::from_entries(std::move(out));
            } else if constexpr (std::is_same_v<T, ScaledRightShiftOp>) {
                const double f = 1.0 / pow_int(o.scale, n);
                check_scale_factor(f);
                for (const auto& e : v.entries()) out.push_back({e.index + n, f * e.value});
                return SeqVec::from_entries(std::move(out));
            } else if constexpr (std::is_same_v<T, RightShiftOp>) {
                return shift_up(v, n);
            } else {
                SeqVec acc = v;
                for (std::int64_t i = 0; i < n; ++i) acc = apply(op, acc);
                return acc;
            }
        },
        op.variant());
}

Eigen::MatrixXcd section_matrix(const OperatorSpec& op, std::int64_t dim) {
    if (dim < 1) throw std::invalid_argument("section dimension must be positive");
    Eigen::MatrixXcd section = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::int64_t j = 1; j <= dim; ++j) {
        SeqVec col = apply_impl(op, SeqVec::unit(j), true);
        for (const auto& e : col.entries())
            if (e.index <= dim) section(e.index - 1, j - 1) = e.value;
    }
    return section;
}

double finite_section_norm(const OperatorSpec& op, std::int64_t dim) {
    Eigen::MatrixXcd section = section_matrix(op, dim);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(section);
    return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

OperatorSpec adjoint(const OperatorSpec& op) {
    return std::visit(
        [&](const auto& o) -> OperatorSpec {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, DiagonalOp>) {
                auto symbol = o.symbol;
                return OperatorSpec::diagonal(
                    [symbol](std::int64_t k) { return std::conj(symbol(k)); }, o.sup_bound);
            } else if constexpr (std::is_same_v<T, ScaledLeftShiftOp>) {
                // (sL)* = sR = s^2 * (s^{-1} R)
                const double s2 = o.scale * o.scale;
                return OperatorSpec::composition(
                    {OperatorSpec::diagonal([s2](std::int64_t) { return Complex(s2, 0.0); }, s2),
                     OperatorSpec::scaled_right_shift(o.scale)});
            } else if constexpr (std::is_same_v<T, ScaledRightShiftOp>) {
                const double inv_s2 = 1.0 / (o.scale * o.scale);
                return OperatorSpec::composition(
                    {OperatorSpec::diagonal(
                         [inv_s2](std::int64_t) { return Complex(inv_s2, 0.0); }, inv_s2),
                     OperatorSpec::scaled_left_shift(o.scale)});
            } else if constexpr (std::is_same_v<T, RightShiftOp>) {
                // The plain left shift, written as (1/2) * (2L).
                return OperatorSpec::composition(
                    {OperatorSpec::diagonal([](std::int64_t) { return Complex(0.5, 0.0); }, 0.5),
                     OperatorSpec::scaled_left_shift(2.0)});
            } else if constexpr (std::is_same_v<T, DenseMatrixOp>) {
                return OperatorSpec::dense(o.entries.adjoint());
            } else {
                std::vector<OperatorSpec> rev;
                rev.reserve(o.factors.size());
                for (auto it = o.factors.rbegin(); it != o.factors.rend(); ++it)
                    rev.push_back(adjoint(*it));
                return OperatorSpec::composition(std::move(rev));
            }
        },
        op.variant());
}

}  // namespace framelab
