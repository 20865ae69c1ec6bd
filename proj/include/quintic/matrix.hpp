#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "arith.hpp"
#include "fp.hpp"
#include "padic.hpp"

namespace quintic {

// Dense matrix over a coefficient domain D (a field, or Z/p^N via PadicNum).
template <typename D>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const D& sample)
        : r_(rows), c_(cols), a_(rows * cols, sample.zero()), sample_(sample.zero()) {}
    static Matrix identity(std::size_t n, const D& sample) {
        Matrix m(n, n, sample);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = sample.one();
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    const D& sample() const { return sample_; }
    D& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const D& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Matrix transpose() const {
        Matrix t(c_, r_, sample_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (c_ != o.r_) throw std::invalid_argument("Matrix: dimension mismatch");
        Matrix m(r_, o.c_, sample_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                if ((*this)(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < o.c_; ++j)
                    m(i, j) += (*this)(i, k) * o(k, j);
            }
        return m;
    }

    std::vector<D> apply(const std::vector<D>& v) const {
        if (v.size() != c_) throw std::invalid_argument("Matrix: vector length mismatch");
        std::vector<D> out(r_, sample_.zero());
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                if (!(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    bool operator==(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) return false;
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (!(a_[i] == o.a_[i])) return false;
        return true;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<D> a_;
    D sample_;
};

template <typename D>
struct RankKernel {
    std::size_t rank = 0;
    std::vector<std::vector<D>> kernel;  // basis of the right kernel
};

// Row rank and a right-kernel basis over a field domain.
template <typename D>
RankKernel<D> matrix_rank_kernel(const Matrix<D>& m0) {
    Matrix<D> m = m0;
    const D sample = m.sample();
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t sel = rows;
        for (std::size_t i = rank; i < rows; ++i)
            if (!m(i, col).is_zero()) { sel = i; break; }
        if (sel == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(m(rank, j), m(sel, j));
        D inv = m(rank, col).inv();
        for (std::size_t j = col; j < cols; ++j) m(rank, j) = m(rank, j) * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m(i, col).is_zero()) continue;
            D f = m(i, col);
            for (std::size_t j = col; j < cols; ++j) m(i, j) = m(i, j) - f * m(rank, j);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    RankKernel<D> out;
    out.rank = rank;
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<D> v(cols, sample.zero());
        v[free] = sample.one();
        for (std::size_t k = 0; k < rank; ++k)
            v[pivot_col[k]] = -m(k, free);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

// Determinant over a field domain.
template <typename D>
D matrix_det(Matrix<D> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix_det: square required");
    const D sample = m.sample();
    D det = sample.one();
    std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = n;
        for (std::size_t i = col; i < n; ++i)
            if (!m(i, col).is_zero()) { sel = i; break; }
        if (sel == n) return sample.zero();
        if (sel != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(sel, j));
            det = -det;
        }
        det = det * m(col, col);
        D inv = m(col, col).inv();
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero()) continue;
            D f = m(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(col, j);
        }
    }
    return det;
}

// Determinant by cofactor expansion; valid over any commutative ring domain
// (only used for small matrices).
template <typename D>
D matrix_det_ring(const Matrix<D>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix_det_ring: square required");
    std::size_t n = m.rows();
    if (n == 0) return m.sample().one();
    if (n == 1) return m(0, 0);
    D det = m.sample().zero();
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        Matrix<D> minor(n - 1, n - 1, m.sample());
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t jj = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                minor(i - 1, jj++) = m(i, k);
            }
        }
        D term = m(0, j) * matrix_det_ring(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

inline bool matrix_det_unit(const Matrix<PadicNum>& m) {
    return matrix_det_ring(m).is_unit();
}

// ---------------------------------------------------------------------------
// Z/p^N linear algebra (Howell form).
// ---------------------------------------------------------------------------

// Canonical Howell form of the row span of a matrix over Z/p^N. Rows of the
// result are nonzero, pivots are powers of p, pivot columns strictly
// increase, entries above a pivot p^e are reduced mod p^e, and the row span
// is Howell-closed (for every row, p^{N-e} times it lies in the span of the
// later rows). Two matrices with the same row module yield the same form.
inline Matrix<PadicNum> howell_form(const Matrix<PadicNum>& m0,
                                    std::vector<std::vector<PadicNum>>* transform = nullptr) {
    const PadicNum sample = m0.sample();
    const std::uint64_t p = sample.prime();
    const int N = sample.precision();
    std::size_t cols = m0.cols();

    struct Row {
        std::vector<PadicNum> v;
        std::vector<PadicNum> t;  // transform row (coordinates in the original rows)
    };
    std::vector<Row> work;
    for (std::size_t i = 0; i < m0.rows(); ++i) {
        Row r;
        r.v.reserve(cols);
        for (std::size_t j = 0; j < cols; ++j) r.v.push_back(m0(i, j));
        if (transform) {
            r.t.assign(m0.rows(), sample.zero());
            r.t[i] = sample.one();
        }
        work.push_back(std::move(r));
    }

    auto row_scale = [&](Row& r, const PadicNum& s) {
        for (auto& x : r.v) x = x * s;
        for (auto& x : r.t) x = x * s;
    };
    auto row_axpy = [&](Row& dst, const PadicNum& f, const Row& src) {
        for (std::size_t j = 0; j < dst.v.size(); ++j) dst.v[j] = dst.v[j] - f * src.v[j];
        for (std::size_t j = 0; j < dst.t.size(); ++j) dst.t[j] = dst.t[j] - f * src.t[j];
    };

    std::vector<Row> done;   // pivot rows in pivot-column order
    std::vector<Row> zeros;  // fully reduced zero rows (transforms = kernel)
    for (std::size_t col = 0; col < cols; ++col) {
        // Select a row with minimal valuation in this column.
        int best = -1, bestval = N + 1;
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (work[i].v[col].is_zero()) continue;
            int v = work[i].v[col].valuation();
            if (v < bestval) { bestval = v; best = static_cast<int>(i); }
        }
        if (best < 0) continue;
        Row piv = std::move(work[static_cast<std::size_t>(best)]);
        work.erase(work.begin() + best);
        // Normalize the pivot to exactly p^e.
        int e = bestval;
        PadicNum unit(p, N, piv.v[col].unit_part());
        row_scale(piv, unit.inv());
        // Eliminate the column from every other work row.
        PadicNum pe(p, N, int_pow(p, static_cast<unsigned long>(e)));
        for (auto& r : work) {
            if (r.v[col].is_zero()) continue;
            // r.v[col] has valuation >= e, so the factor is integral.
            Int f = r.v[col].residue() / int_pow(p, static_cast<unsigned long>(e));
            row_axpy(r, PadicNum(p, N, f), piv);
        }
        // Saturation row p^{N-e} * piv feeds later columns. Even when its
        // value part vanishes it carries a kernel transform, so keep it
        // whenever transforms are tracked.
        if (e > 0) {
            Row sat = piv;
            row_scale(sat, PadicNum(p, N, int_pow(p, static_cast<unsigned long>(N - e))));
            bool nonzero = false;
            for (auto& x : sat.v) nonzero = nonzero || !x.is_zero();
            if (nonzero || !sat.t.empty()) work.push_back(std::move(sat));
        }
        done.push_back(std::move(piv));
    }
    for (auto& r : work) zeros.push_back(std::move(r));

    // Reduce entries above each pivot modulo the pivot power. Pivots are
    // processed left to right so later passes never disturb finished columns.
    for (std::size_t k = 0; k < done.size(); ++k) {
        std::size_t pc = 0;
        while (pc < cols && done[k].v[pc].is_zero()) ++pc;
        int e = done[k].v[pc].valuation();
        Int pe = int_pow(p, static_cast<unsigned long>(e));
        for (std::size_t i = 0; i < k; ++i) {
            if (done[i].v[pc].is_zero()) continue;
            Int f = done[i].v[pc].residue() / pe;  // floor division: reduce mod p^e
            if (f == 0) continue;
            row_axpy(done[i], PadicNum(p, N, f), done[k]);
        }
    }

    Matrix<PadicNum> H(done.size(), cols, sample);
    for (std::size_t i = 0; i < done.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) H(i, j) = done[i].v[j];
    if (transform) {
        transform->clear();
        for (auto& r : zeros) transform->push_back(std::move(r.t));
    }
    return H;
}

// Generating set of {v : M v = 0 over Z/p^N}. Computed from the Howell form
// of the transpose with transform tracking: transforms of the zero rows
// generate the left kernel of M^T, i.e. the right kernel of M.
inline std::vector<std::vector<PadicNum>> kernel_mod_pn(const Matrix<PadicNum>& m) {
    if (m.sample().precision() < 1) throw std::invalid_argument("kernel_mod_pn: N < 1");
    std::vector<std::vector<PadicNum>> transform;
    howell_form(m.transpose(), &transform);
    // Drop zero vectors and duplicates of lower p-power scalings.
    std::vector<std::vector<PadicNum>> out;
    for (auto& t : transform) {
        bool nz = false;
        for (auto& x : t) nz = nz || !x.is_zero();
        if (nz) out.push_back(std::move(t));
    }
    return out;
}

struct LinSolveModPn {
    bool solvable = false;
    std::vector<PadicNum> x;            // a solution when solvable
    std::vector<PadicNum> certificate;  // y with y^T A = 0, y^T b != 0 otherwise
};

// Solve A x = b over Z/p^N, or certify insolubility by a functional
// annihilating the column span but not b.
inline LinSolveModPn solve_mod_pn(const Matrix<PadicNum>& A, const std::vector<PadicNum>& b) {
    const PadicNum sample = A.sample();
    LinSolveModPn res;
    // Functionals annihilating the column span: left kernel of A = right
    // kernel of A^T.
    auto functionals = kernel_mod_pn(A.transpose());
    for (auto& y : functionals) {
        PadicNum dot = sample.zero();
        for (std::size_t i = 0; i < y.size(); ++i) dot += y[i] * b[i];
        if (!dot.is_zero()) {
            res.solvable = false;
            res.certificate = y;
            return res;
        }
    }
    // b lies in the column span; solve by reducing b against the Howell form
    // of A^T (whose rows span the column space of A) with transforms.
    const std::uint64_t p = sample.prime();
    const int N = sample.precision();
    Matrix<PadicNum> At = A.transpose();
    std::size_t rows = At.rows(), cols = At.cols();
    // Augment with identity and run Howell on the first `cols` columns.
    Matrix<PadicNum> aug(rows, cols + rows, sample);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug(i, j) = At(i, j);
        aug(i, cols + i) = sample.one();
    }
    // Howell ignoring the augmented columns for pivot selection: emulate by
    // running howell_form on a matrix whose trailing columns ride along.
    // howell_form treats all columns; restrict pivots by zeroing selection on
    // trailing columns is unnecessary because leading columns are processed
    // first and pivot rows are removed from the pool, so trailing-column
    // pivots only arise for rows whose leading part is already zero.
    Matrix<PadicNum> H = howell_form(aug);
    std::vector<PadicNum> r = b;
    std::vector<PadicNum> combo(rows, sample.zero());
    for (std::size_t i = 0; i < H.rows(); ++i) {
        std::size_t pc = 0;
        while (pc < cols + rows && H(i, pc).is_zero()) ++pc;
        if (pc >= cols) continue;  // row supported on the augmented part only
        if (r[pc].is_zero()) continue;
        int e = H(i, pc).valuation();
        if (r[pc].valuation() < e) { res.solvable = false; return res; }
        Int f = r[pc].residue() / int_pow(p, static_cast<unsigned long>(e));
        PadicNum c(p, N, f);
        for (std::size_t j = 0; j < cols; ++j) r[j] = r[j] - c * H(i, j);
        for (std::size_t j = 0; j < rows; ++j) combo[j] += c * H(i, cols + j);
    }
    for (auto& x : r)
        if (!x.is_zero()) { res.solvable = false; return res; }
    res.solvable = true;
    res.x = combo;
    return res;
}

// ---------------------------------------------------------------------------
// Fast F_p dense kernels (raw uint64 rows, Barrett reduction).
// ---------------------------------------------------------------------------

// Incremental rank engine: insert vectors one at a time, maintaining a
// forward-reduced basis with unit pivots. Supports early exit once a target
// rank is reached.
class FpRankEngine {
public:
    FpRankEngine(std::uint64_t p, std::size_t n) : p_(p), bar_(p), n_(n), colpivot_(n, -1) {}

    std::size_t rank() const { return rows_.size(); }

    // Returns true if the vector increased the rank.
    bool insert(std::vector<std::uint64_t> v) {
        reduce(v);
        std::size_t c = 0;
        while (c < n_ && v[c] == 0) ++c;
        if (c == n_) return false;
        std::uint64_t inv = invmod_u64(v[c], p_);
        for (std::size_t j = c; j < n_; ++j) v[j] = bar_.mul(v[j], inv);
        colpivot_[c] = static_cast<int>(rows_.size());
        pivcols_.push_back(c);
        rows_.push_back(std::move(v));
        return true;
    }

    // Reduce v in place against the current basis.
    void reduce(std::vector<std::uint64_t>& v) const {
        for (std::size_t c = 0; c < n_; ++c) {
            if (v[c] == 0 || colpivot_[c] < 0) continue;
            const std::vector<std::uint64_t>& row = rows_[static_cast<std::size_t>(colpivot_[c])];
            std::uint64_t f = p_ - v[c];  // add f*row == subtract v[c]*row
            v[c] = 0;
            for (std::size_t j = c + 1; j < n_; ++j) {
                if (row[j]) v[j] = bar_.reduce(v[j] + f * row[j]);
            }
        }
    }

private:
    std::uint64_t p_;
    Barrett bar_;
    std::size_t n_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::size_t> pivcols_;
    std::vector<int> colpivot_;
};

// Reduced row echelon form over F_p with pivot bookkeeping; provides normal
// forms of vectors modulo the row space (used as "reduction modulo an ideal
// slice" by the Jacobian ring).
class FpRref {
public:
    FpRref(std::uint64_t p, std::size_t n) : p_(p), bar_(p), n_(n), colpivot_(n, -1) {}

    void insert(std::vector<std::uint64_t> v) {
        reduce_forward(v);
        std::size_t c = 0;
        while (c < n_ && v[c] == 0) ++c;
        if (c == n_) return;
        std::uint64_t inv = invmod_u64(v[c], p_);
        for (std::size_t j = c; j < n_; ++j) v[j] = bar_.mul(v[j], inv);
        // Back-substitute into existing rows.
        for (auto& row : rows_) {
            std::uint64_t f = row[c];
            if (!f) continue;
            std::uint64_t g = p_ - f;
            for (std::size_t j = c; j < n_; ++j)
                if (v[j]) row[j] = bar_.reduce(row[j] + g * v[j]);
        }
        colpivot_[c] = static_cast<int>(rows_.size());
        pivcols_.push_back(c);
        rows_.push_back(std::move(v));
    }

    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::size_t>& pivot_cols() const { return pivcols_; }
    bool is_pivot(std::size_t c) const { return colpivot_[c] >= 0; }

    // Columns without pivots, in ascending order (a basis of the quotient).
    std::vector<std::size_t> free_cols() const {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < n_; ++c)
            if (colpivot_[c] < 0) out.push_back(c);
        return out;
    }

    // Normal form: v minus its row-space component; the result is supported
    // on free columns.
    void reduce_forward(std::vector<std::uint64_t>& v) const {
        for (std::size_t c = 0; c < n_; ++c) {
            if (v[c] == 0 || colpivot_[c] < 0) continue;
            const auto& row = rows_[static_cast<std::size_t>(colpivot_[c])];
            std::uint64_t f = p_ - v[c];
            v[c] = 0;
            for (std::size_t j = c + 1; j < n_; ++j)
                if (row[j]) v[j] = bar_.reduce(v[j] + f * row[j]);
        }
    }

private:
    std::uint64_t p_;
    Barrett bar_;
    std::size_t n_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::size_t> pivcols_;
    std::vector<int> colpivot_;
};

}  // namespace quintic
