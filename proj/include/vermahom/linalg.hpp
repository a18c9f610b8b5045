#pragma once

// Dense matrices of Laurent polynomials and fraction-free (Bareiss) exact
// linear algebra: echelon form, rank, determinant, kernel bases and adjugate
// inverses.  Everything stays inside the polynomial ring; fraction-field
// results are reported as (numerator, common denominator) pairs.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>

#include "vermahom/ring.hpp"

namespace vermahom {

class PolyMatrix {
  public:
    PolyMatrix() = default;
    PolyMatrix(int rows, int cols, VarsPtr vars)
        : rows_(rows), cols_(cols), vars_(std::move(vars)),
          a_(static_cast<size_t>(rows) * cols, LaurentPoly::zero(vars_))
    {
    }

    static PolyMatrix identity(int n, const VarsPtr& vars)
    {
        PolyMatrix m(n, n, vars);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = LaurentPoly::one(vars);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const VarsPtr& vars() const { return vars_; }

    LaurentPoly& at(int i, int j) { return a_.at(static_cast<size_t>(i) * cols_ + j); }
    const LaurentPoly& at(int i, int j) const { return a_.at(static_cast<size_t>(i) * cols_ + j); }

    friend bool operator==(const PolyMatrix& x, const PolyMatrix& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const PolyMatrix& x, const PolyMatrix& y) { return !(x == y); }

    friend PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y)
    {
        if (x.cols_ != y.rows_)
            throw std::invalid_argument("matrix product: dimension mismatch");
        PolyMatrix r(x.rows_, y.cols_, x.vars_ ? x.vars_ : y.vars_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                if (x.at(i, k).is_zero())
                    continue;
                for (int j = 0; j < y.cols_; ++j) {
                    if (y.at(k, j).is_zero())
                        continue;
                    r.at(i, j) += x.at(i, k) * y.at(k, j);
                }
            }
        return r;
    }

    friend PolyMatrix operator*(const LaurentPoly& c, const PolyMatrix& x)
    {
        PolyMatrix r = x;
        for (auto& p : r.a_)
            p *= c;
        return r;
    }

    friend PolyMatrix operator+(const PolyMatrix& x, const PolyMatrix& y)
    {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw std::invalid_argument("matrix sum: dimension mismatch");
        PolyMatrix r = x;
        for (size_t i = 0; i < r.a_.size(); ++i)
            r.a_[i] += y.a_[i];
        return r;
    }

    friend PolyMatrix operator-(const PolyMatrix& x, const PolyMatrix& y)
    {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw std::invalid_argument("matrix difference: dimension mismatch");
        PolyMatrix r = x;
        for (size_t i = 0; i < r.a_.size(); ++i)
            r.a_[i] -= y.a_[i];
        return r;
    }

    PolyMatrix transposed() const
    {
        PolyMatrix r(cols_, rows_, vars_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                r.at(j, i) = at(i, j);
        return r;
    }

    bool is_zero() const
    {
        for (const auto& p : a_)
            if (!p.is_zero())
                return false;
        return true;
    }

    std::vector<LaurentPoly> apply(const std::vector<LaurentPoly>& x) const
    {
        if (static_cast<int>(x.size()) != cols_)
            throw std::invalid_argument("matrix apply: dimension mismatch");
        std::vector<LaurentPoly> y(rows_, LaurentPoly::zero(vars_));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !x[j].is_zero())
                    y[i] += at(i, j) * x[j];
        return y;
    }

  private:
    int rows_ = 0, cols_ = 0;
    VarsPtr vars_;
    std::vector<LaurentPoly> a_;
};

struct EchelonForm {
    PolyMatrix u;                 // upper echelon, entries are minors of the input
    std::vector<int> pivot_cols;  // one per pivot row, increasing
    int rank = 0;
    int row_swaps = 0;
};

// Bareiss fraction-free elimination.  Pivot rows are chosen by the
// fewest-terms heuristic to keep intermediate polynomials small.
inline EchelonForm bareiss_echelon(PolyMatrix m)
{
    EchelonForm ef;
    const int rows = m.rows(), cols = m.cols();
    LaurentPoly prev_pivot = LaurentPoly::one(m.vars());
    int pr = 0;  // current pivot row
    for (int pc = 0; pc < cols && pr < rows; ++pc) {
        int best = -1;
        for (int i = pr; i < rows; ++i) {
            if (m.at(i, pc).is_zero())
                continue;
            if (best < 0 || m.at(i, pc).term_count() < m.at(best, pc).term_count())
                best = i;
        }
        if (best < 0)
            continue;
        if (best != pr) {
            for (int j = 0; j < cols; ++j)
                std::swap(m.at(pr, j), m.at(best, j));
            ++ef.row_swaps;
        }
        const LaurentPoly pivot = m.at(pr, pc);
        for (int i = pr + 1; i < rows; ++i) {
            const LaurentPoly factor = m.at(i, pc);
            for (int j = pc; j < cols; ++j) {
                LaurentPoly num = pivot * m.at(i, j) - factor * m.at(pr, j);
                m.at(i, j) = poly_exact_div_or_throw(num, prev_pivot, "bareiss");
            }
        }
        ef.pivot_cols.push_back(pc);
        prev_pivot = pivot;
        ++pr;
    }
    ef.rank = pr;
    ef.u = std::move(m);
    return ef;
}

inline int rank(const PolyMatrix& m) { return bareiss_echelon(m).rank; }

inline LaurentPoly determinant(const PolyMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: square matrix required");
    if (m.rows() == 0)
        return LaurentPoly::one(m.vars());
    EchelonForm ef = bareiss_echelon(m);
    if (ef.rank < m.rows())
        return LaurentPoly::zero(m.vars());
    LaurentPoly det = ef.u.at(m.rows() - 1, m.cols() - 1);
    return (ef.row_swaps % 2 == 0) ? det : -det;
}

// Basis of the right kernel of m, denominator-cleared and divided by the gcd
// of the integer contents of each vector's entries.
inline std::vector<std::vector<LaurentPoly>> kernel_basis(const PolyMatrix& m)
{
    const VarsPtr vars = m.vars();
    EchelonForm ef = bareiss_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : ef.pivot_cols)
        is_pivot[c] = true;

    std::vector<std::vector<LaurentPoly>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<LaurentPoly> x(m.cols(), LaurentPoly::zero(vars));
        x[f] = LaurentPoly::one(vars);
        for (int i = ef.rank - 1; i >= 0; --i) {
            const int pc = ef.pivot_cols[i];
            LaurentPoly s = LaurentPoly::zero(vars);
            for (int j = pc + 1; j < m.cols(); ++j)
                if (!ef.u.at(i, j).is_zero() && !x[j].is_zero())
                    s += ef.u.at(i, j) * x[j];
            const LaurentPoly& pivot = ef.u.at(i, pc);
            for (int j = 0; j < m.cols(); ++j)
                if (j != pc && !x[j].is_zero())
                    x[j] *= pivot;
            x[pc] = -s;
        }
        BigInt g = 0;
        for (const auto& p : x)
            g = boost::multiprecision::gcd(g, p.content());
        if (g > 1)
            for (auto& p : x)
                p = poly_exact_div_or_throw(p, LaurentPoly::constant(vars, g), "kernel content");
        basis.push_back(std::move(x));
    }
    return basis;
}

// Adjugate inverse: returns (N, d) with m*N == d*Id, d = det(m).
// Throws if the matrix is singular over the fraction field.
inline std::pair<PolyMatrix, LaurentPoly> inverse_with_denominator(const PolyMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse: square matrix required");
    const int n = m.rows();
    const VarsPtr vars = m.vars();
    LaurentPoly det = determinant(m);
    if (det.is_zero())
        throw std::runtime_error("inverse: singular matrix");
    PolyMatrix adj(n, n, vars);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            PolyMatrix minor(n - 1, n - 1, vars);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i)
                    continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j)
                        continue;
                    minor.at(rr, cc) = m.at(r, c);
                    ++cc;
                }
                ++rr;
            }
            LaurentPoly cof = determinant(minor);
            adj.at(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
        }
    }
    return {std::move(adj), std::move(det)};
}

// Solves span_matrix * c = v over the fraction field, where the columns of
// span_matrix are the spanning vectors.  Returns (numerators, denominator)
// with span * nums == den * v, or nullopt when v is outside the span.
inline std::optional<std::pair<std::vector<LaurentPoly>, LaurentPoly>>
solve_in_span(const PolyMatrix& span_matrix, const std::vector<LaurentPoly>& v)
{
    const VarsPtr vars = span_matrix.vars();
    const int rows = span_matrix.rows(), k = span_matrix.cols();
    if (static_cast<int>(v.size()) != rows)
        throw std::invalid_argument("solve_in_span: dimension mismatch");
    PolyMatrix aug(rows, k + 1, vars);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < k; ++j)
            aug.at(i, j) = span_matrix.at(i, j);
        aug.at(i, k) = v[i];
    }
    EchelonForm ef = bareiss_echelon(aug);
    for (int c : ef.pivot_cols)
        if (c == k)
            return std::nullopt;  // inconsistent: v adds rank

    // Back substitution on the pivot rows, free span-columns set to zero.
    // Invariant: the actual solution is x/den for the columns handled so far.
    std::vector<LaurentPoly> x(k, LaurentPoly::zero(vars));
    LaurentPoly den = LaurentPoly::one(vars);
    for (int i = ef.rank - 1; i >= 0; --i) {
        const int pc = ef.pivot_cols[i];
        LaurentPoly s = den * ef.u.at(i, k);
        for (int j = pc + 1; j < k; ++j)
            if (!ef.u.at(i, j).is_zero() && !x[j].is_zero())
                s -= ef.u.at(i, j) * x[j];
        const LaurentPoly& pivot = ef.u.at(i, pc);
        for (int j = 0; j < k; ++j)
            if (j != pc && !x[j].is_zero())
                x[j] *= pivot;
        den *= pivot;
        x[pc] = s;
    }
    return std::make_pair(std::move(x), std::move(den));
}

// Minimal helper for optional internal parallelism; VH_THREADS caps the
// worker count, default is sequential.
inline int configured_thread_count()
{
    if (const char* env = std::getenv("VH_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    return 1;
}

inline void parallel_for(int n, const std::function<void(int)>& body)
{
    const int workers = std::min(configured_thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                body(i);
        });
    for (auto& t : pool)
        t.join();
}

}  // namespace vermahom
