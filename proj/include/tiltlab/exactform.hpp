#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tiltlab/rational.hpp"

namespace tiltlab {

using RationalVector = std::vector<Rational>;

/// Inertia of a symmetric rational form: counts of positive, negative and
/// zero diagonal entries after congruence diagonalization. Well defined by
/// Sylvester's law of inertia.
struct Signature {
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    std::size_t n_zero = 0;

    std::size_t total() const { return n_plus + n_minus + n_zero; }
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Symmetric bilinear form on Q^dim, stored as a dense Gram matrix.
class SymmetricForm {
public:
    SymmetricForm(std::initializer_list<std::vector<Rational>> rows)
        : SymmetricForm(std::vector<std::vector<Rational>>(rows)) {}

    explicit SymmetricForm(std::vector<std::vector<Rational>> rows) {
        dim_ = rows.size();
        entries_.reserve(dim_ * dim_);
        for (const auto& row : rows) {
            if (row.size() != dim_)
                throw std::invalid_argument("SymmetricForm: matrix is not square");
            for (const auto& x : row) entries_.push_back(x);
        }
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j)
                if (at(i, j) != at(j, i))
                    throw std::invalid_argument("SymmetricForm: matrix is not symmetric");
    }

    static SymmetricForm zero(std::size_t dim) {
        return SymmetricForm(std::vector<std::vector<Rational>>(dim, std::vector<Rational>(dim)));
    }

    static SymmetricForm diagonal(std::vector<Rational> values) {
        std::vector<std::vector<Rational>> rows(values.size(), std::vector<Rational>(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i) rows[i][i] = std::move(values[i]);
        return SymmetricForm(std::move(rows));
    }

    std::size_t dim() const { return dim_; }
    const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    /// Bilinear pairing u^T G v.
    Rational pairing(const RationalVector& u, const RationalVector& v) const {
        if (u.size() != dim_ || v.size() != dim_)
            throw std::invalid_argument("SymmetricForm: dimension mismatch");
        Rational acc = 0;
        for (std::size_t i = 0; i < dim_; ++i) {
            if (u[i] == 0) continue;
            Rational row = 0;
            for (std::size_t j = 0; j < dim_; ++j) row += at(i, j) * v[j];
            acc += u[i] * row;
        }
        return acc;
    }

    bool all_entries_integral() const {
        for (const auto& x : entries_)
            if (!is_integer(x)) return false;
        return true;
    }

    friend bool operator==(const SymmetricForm& a, const SymmetricForm& b) {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<Rational> entries_;  // row-major
};

/// Quadratic value v^T G v.
inline Rational evaluate(const SymmetricForm& form, const RationalVector& v) {
    return form.pairing(v, v);
}

namespace detail {

inline void swap_symmetric(std::vector<std::vector<Rational>>& a, std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto& row : a) std::swap(row[i], row[j]);
}

}  // namespace detail

/// Signature by exact symmetric congruence reduction (Lagrange). Zero pivots
/// are repaired by a diagonal swap when possible, otherwise by the row+column
/// addition trick; pivots are always the first nonzero candidate in scan
/// order, so the reduction is deterministic.
inline Signature signature(const SymmetricForm& form) {
    const std::size_t n = form.dim();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = form.at(i, j);

    Signature sig;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t d = k + 1;
            while (d < n && a[d][d] == 0) ++d;
            if (d < n) {
                detail::swap_symmetric(a, k, d);
            } else {
                std::size_t pi = n, pj = n;
                for (std::size_t i = k; i < n && pi == n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j)
                        if (a[i][j] != 0) {
                            pi = i;
                            pj = j;
                            break;
                        }
                if (pi == n) {
                    sig.n_zero += n - k;  // trailing block is identically zero
                    return sig;
                }
                for (std::size_t c = 0; c < n; ++c) a[pi][c] += a[pj][c];
                for (std::size_t r = 0; r < n; ++r) a[r][pi] += a[r][pj];
                if (pi != k) detail::swap_symmetric(a, k, pi);
            }
        }
        const Rational pivot = a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            const Rational f = a[i][k] / pivot;
            for (std::size_t c = 0; c < n; ++c) a[i][c] -= f * a[k][c];
            for (std::size_t r = 0; r < n; ++r) a[r][i] -= f * a[r][k];
        }
        if (pivot > 0)
            ++sig.n_plus;
        else
            ++sig.n_minus;
    }
    return sig;
}

namespace detail {

/// Reduced row echelon form in place; returns the pivot column of each
/// surviving row. Pivot choice is the first nonzero entry in scan order.
inline std::vector<std::size_t> rref(std::vector<RationalVector>& rows, std::size_t dim) {
    std::vector<std::size_t> pivot_cols;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < dim && pr < rows.size(); ++c) {
        std::size_t sel = pr;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pr], rows[sel]);
        const Rational inv = Rational(1) / rows[pr][c];
        for (auto& x : rows[pr]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pr || rows[r][c] == 0) continue;
            const Rational f = rows[r][c];
            for (std::size_t j = 0; j < dim; ++j) rows[r][j] -= f * rows[pr][j];
        }
        pivot_cols.push_back(c);
        ++pr;
    }
    return pivot_cols;
}

}  // namespace detail

inline std::size_t rank_of(std::vector<RationalVector> rows) {
    if (rows.empty()) return 0;
    const std::size_t dim = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != dim) throw std::invalid_argument("rank_of: ragged rows");
    return detail::rref(rows, dim).size();
}

/// Exact basis of the common nullspace of the given functionals on Q^dim.
/// An empty row list constrains nothing and yields the standard basis.
inline std::vector<RationalVector> kernel_of_linear_map(std::vector<RationalVector> rows,
                                                        std::size_t dim) {
    for (const auto& r : rows)
        if (r.size() != dim) throw std::invalid_argument("kernel_of_linear_map: row dimension mismatch");
    const std::vector<std::size_t> pivot_cols = detail::rref(rows, dim);

    std::vector<bool> is_pivot(dim, false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;

    std::vector<RationalVector> basis;
    basis.reserve(dim - pivot_cols.size());
    for (std::size_t free = 0; free < dim; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(dim);
        v[free] = 1;
        for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

enum class Definiteness {
    NegativeDefinite,
    NegativeSemidefinite,  // some null directions, no positive ones
    Other,
};

inline bool is_negative_semidefinite(Definiteness d) { return d != Definiteness::Other; }

/// Gram matrix of the form restricted to the span of the basis vectors.
inline SymmetricForm restrict_to_subspace(const SymmetricForm& form,
                                          const std::vector<RationalVector>& basis) {
    const std::size_t m = basis.size();
    std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            rows[i][j] = form.pairing(basis[i], basis[j]);
            rows[j][i] = rows[i][j];
        }
    return SymmetricForm(std::move(rows));
}

/// Classifies the form restricted to the span of the given (independent)
/// basis. The empty subspace is vacuously negative definite.
inline Definiteness definiteness_on_subspace(const SymmetricForm& form,
                                             const std::vector<RationalVector>& basis) {
    for (const auto& v : basis)
        if (v.size() != form.dim())
            throw std::invalid_argument("definiteness_on_subspace: dimension mismatch");
    if (!basis.empty() && rank_of(basis) != basis.size())
        throw std::invalid_argument("definiteness_on_subspace: basis vectors are dependent");
    const Signature sig = signature(restrict_to_subspace(form, basis));
    if (sig.n_plus > 0) return Definiteness::Other;
    return sig.n_zero == 0 ? Definiteness::NegativeDefinite : Definiteness::NegativeSemidefinite;
}

}  // namespace tiltlab
