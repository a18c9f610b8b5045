#pragma once

// Integral Verma modules of the half-Lusztig quantum sl2 and their tensor
// products.  A factor of color c has basis v_0, v_1, ... on which
//   K v_j = s_c q^(-2j) v_j,   E v_j = v_{j-1},
//   F^(m) v_j = qbinom(m+j, j) prod_{k=0}^{m-1} (s_c q^(-k-j) - s_c^(-1) q^(j+k)) v_{j+m},
// and n-factor actions are given by the iterated coproduct
//   K  -> K (x) K,
//   E  -> K (x) E + E (x) 1,
//   F^(m) -> sum_j q^(-j(m-j)) F^(j) (x) K^(-j) F^(m-j).

#include "vermahom/linalg.hpp"
#include "vermahom/qnum.hpp"

namespace vermahom {

// (j_1,...,j_n), the tensor basis vector v_{j_1} (x) ... (x) v_{j_n}.
using VermaIndex = std::vector<int>;

// All (j_1,...,j_n) with sum r, in lexicographic order.
inline std::vector<VermaIndex> weight_basis(int n, int r)
{
    if (n < 1 || r < 0)
        throw std::invalid_argument("weight_basis: need n >= 1, r >= 0");
    std::vector<VermaIndex> out;
    VermaIndex cur(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int rest) {
        if (pos == n - 1) {
            cur[pos] = rest;
            out.push_back(cur);
            return;
        }
        for (int j = 0; j <= rest; ++j) {
            cur[pos] = j;
            rec(pos + 1, rest - j);
        }
    };
    rec(0, r);
    return out;
}

inline int weight_space_dim(int n, int r)
{
    // binom(n+r-1, r)
    long long num = 1, den = 1;
    for (int i = 1; i <= r; ++i) {
        num *= n - 1 + i;
        den *= i;
    }
    return static_cast<int>(num / den);
}

// Sparse vector in a tensor product of Verma modules.
struct QVector {
    int n = 0;
    VarsPtr vars;
    std::map<VermaIndex, LaurentPoly> terms;

    QVector() = default;
    QVector(int n_, VarsPtr vars_) : n(n_), vars(std::move(vars_)) {}

    static QVector basis_vector(int n, const VarsPtr& vars, VermaIndex idx)
    {
        QVector v(n, vars);
        v.terms.emplace(std::move(idx), LaurentPoly::one(vars));
        return v;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const VermaIndex& idx, const LaurentPoly& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms.emplace(idx, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms.erase(it);
        }
    }

    friend QVector operator+(const QVector& a, const QVector& b)
    {
        if (a.n != b.n)
            throw std::invalid_argument("QVector sum: factor count mismatch");
        QVector r = a;
        for (const auto& [idx, c] : b.terms)
            r.add_term(idx, c);
        return r;
    }

    friend QVector operator-(const QVector& a, const QVector& b) { return a + (LaurentPoly::constant(a.vars, -1) * b); }

    friend QVector operator*(const LaurentPoly& c, const QVector& v)
    {
        QVector r(v.n, v.vars);
        if (c.is_zero())
            return r;
        for (const auto& [idx, k] : v.terms)
            r.add_term(idx, c * k);
        return r;
    }

    friend bool operator==(const QVector& a, const QVector& b) { return a.n == b.n && a.terms == b.terms; }
    friend bool operator!=(const QVector& a, const QVector& b) { return !(a == b); }

    // Subweight when homogeneous, nullopt otherwise.
    std::optional<int> subweight() const
    {
        std::optional<int> r;
        for (const auto& [idx, c] : terms) {
            int s = 0;
            for (int j : idx)
                s += j;
            if (r && *r != s)
                return std::nullopt;
            r = s;
        }
        return r;
    }
};

namespace detail {

inline std::vector<int> identity_colors(int n)
{
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i)
        c[i] = i + 1;
    return c;
}

// Coefficient of F^(m) v_j = phi * v_{j+m} on the single factor of color c.
inline LaurentPoly fdiv_coeff(const VarsPtr& vars, int m, int j, int color)
{
    const int s = VariableSet::s_index(color);
    LaurentPoly phi = q_binomial(vars, m + j, j);
    for (int k = 0; k < m; ++k) {
        LaurentPoly lhs = LaurentPoly::variable(vars, s, 1) *
                          LaurentPoly::variable(vars, VariableSet::q_index, -k - j);
        LaurentPoly rhs = LaurentPoly::variable(vars, s, -1) *
                          LaurentPoly::variable(vars, VariableSet::q_index, j + k);
        phi *= lhs - rhs;
    }
    return phi;
}

// (s_c q^(-2j))^e
inline LaurentPoly k_power_coeff(const VarsPtr& vars, int j, int color, int e)
{
    ExpVec exps(vars->size(), 0);
    exps[VariableSet::s_index(color)] = e;
    exps[VariableSet::q_index] = -2 * j * e;
    return LaurentPoly::monomial(vars, 1, std::move(exps));
}

// Compositions of m into n non-negative parts, lexicographic.
inline std::vector<std::vector<int>> compositions_of(int m, int n)
{
    std::vector<std::vector<int>> out;
    for (auto& c : weight_basis(n, m))
        out.push_back(std::move(c));
    return out;
}

}  // namespace detail

// Single-factor (n=1) generator actions.
inline QVector verma_K(const QVector& v, int color = 1)
{
    QVector r(v.n, v.vars);
    for (const auto& [idx, c] : v.terms)
        r.add_term(idx, c * detail::k_power_coeff(v.vars, idx.at(0), color, 1));
    return r;
}

inline QVector verma_E(const QVector& v)
{
    QVector r(v.n, v.vars);
    for (const auto& [idx, c] : v.terms) {
        if (idx.at(0) == 0)
            continue;
        VermaIndex j = idx;
        --j[0];
        r.add_term(j, c);
    }
    return r;
}

inline QVector verma_Fdiv(int m, const QVector& v, int color = 1)
{
    if (m < 1)
        throw std::invalid_argument("verma_Fdiv: m >= 1 required");
    QVector r(v.n, v.vars);
    for (const auto& [idx, c] : v.terms) {
        VermaIndex j = idx;
        j[0] += m;
        r.add_term(j, c * detail::fdiv_coeff(v.vars, m, idx.at(0), color));
    }
    return r;
}

// Generator tags for the n-factor coproduct action.
struct Gen {
    enum Kind { E, K, Kinv, Fdiv } kind;
    int m = 1;  // divided-power order, for Fdiv

    static Gen e() { return {E, 1}; }
    static Gen k() { return {K, 1}; }
    static Gen kinv() { return {Kinv, 1}; }
    static Gen fdiv(int m) { return {Fdiv, m}; }
};

// Action of a generator on an n-factor tensor vector through the iterated
// coproduct.  colors[p] names the s-variable of factor p+1 (identity by
// default; braiding permutes them).
inline QVector coproduct_action(Gen x, const QVector& v, std::vector<int> colors = {})
{
    const VarsPtr& vars = v.vars;
    const int n = v.n;
    if (colors.empty())
        colors = detail::identity_colors(n);
    if (static_cast<int>(colors.size()) != n)
        throw std::invalid_argument("coproduct_action: one color per factor required");

    QVector r(n, vars);
    switch (x.kind) {
    case Gen::K:
    case Gen::Kinv: {
        const int e = x.kind == Gen::K ? 1 : -1;
        for (const auto& [idx, c] : v.terms) {
            LaurentPoly k = LaurentPoly::one(vars);
            for (int p = 0; p < n; ++p)
                k *= detail::k_power_coeff(vars, idx[p], colors[p], e);
            r.add_term(idx, c * k);
        }
        return r;
    }
    case Gen::E: {
        // sum_i K (x) ... (x) K (x) E_i (x) 1 (x) ... (x) 1
        for (const auto& [idx, c] : v.terms) {
            for (int i = 0; i < n; ++i) {
                if (idx[i] == 0)
                    continue;
                LaurentPoly k = c;
                for (int p = 0; p < i; ++p)
                    k *= detail::k_power_coeff(vars, idx[p], colors[p], 1);
                VermaIndex j = idx;
                --j[i];
                r.add_term(j, k);
            }
        }
        return r;
    }
    case Gen::Fdiv: {
        if (x.m < 1)
            throw std::invalid_argument("coproduct_action: F^(m) needs m >= 1");
        // sum over compositions m_1+...+m_n = m of
        //   q^(-sum_{p<p'} m_p m_p') prod_p K^(-(m_1+...+m_{p-1})) F^(m_p)
        for (const auto& comp : detail::compositions_of(x.m, n)) {
            long cross = 0;
            for (int p = 0; p < n; ++p)
                for (int pp = p + 1; pp < n; ++pp)
                    cross += static_cast<long>(comp[p]) * comp[pp];
            const LaurentPoly scale =
                LaurentPoly::variable(vars, VariableSet::q_index, static_cast<int>(-cross));
            for (const auto& [idx, c] : v.terms) {
                LaurentPoly coeff = c * scale;
                VermaIndex j = idx;
                int m_before = 0;
                for (int p = 0; p < n && !coeff.is_zero(); ++p) {
                    if (comp[p] > 0) {
                        coeff *= detail::fdiv_coeff(vars, comp[p], idx[p], colors[p]);
                        j[p] += comp[p];
                    }
                    if (m_before > 0)
                        coeff *= detail::k_power_coeff(vars, j[p], colors[p], -m_before);
                    m_before += comp[p];
                }
                r.add_term(j, coeff);
            }
        }
        return r;
    }
    }
    throw std::logic_error("coproduct_action: unknown generator");
}

// Matrix of the generator action on the weight space W_{n,r}, columns indexed
// by weight_basis(n, r_source) and rows by the basis of the target subweight.
inline PolyMatrix coproduct_action_matrix(Gen x, int n, int r, const VarsPtr& vars,
                                          std::vector<int> colors = {})
{
    const int r_target = x.kind == Gen::E ? r - 1 : (x.kind == Gen::Fdiv ? r + x.m : r);
    const auto src = weight_basis(n, r);
    const auto tgt = r_target >= 0 ? weight_basis(n, r_target) : std::vector<VermaIndex>{};
    std::map<VermaIndex, int> tgt_pos;
    for (size_t i = 0; i < tgt.size(); ++i)
        tgt_pos[tgt[i]] = static_cast<int>(i);

    PolyMatrix m(static_cast<int>(tgt.size()), static_cast<int>(src.size()), vars);
    for (size_t j = 0; j < src.size(); ++j) {
        QVector image = coproduct_action(x, QVector::basis_vector(n, vars, src[j]), colors);
        for (const auto& [idx, c] : image.terms)
            m.at(tgt_pos.at(idx), static_cast<int>(j)) = c;
    }
    return m;
}

// Spanning set of Y_{n,r} = W_{n,r} /\ Ker E over the fraction field,
// denominator-cleared and content-normalized.
inline std::vector<QVector> highest_weight_basis(int n, int r, const VarsPtr& vars)
{
    if (n < 1 || r < 1)
        throw std::invalid_argument("highest_weight_basis: need n >= 1, r >= 1");
    const auto src = weight_basis(n, r);
    PolyMatrix e = coproduct_action_matrix(Gen::e(), n, r, vars);
    std::vector<QVector> out;
    for (auto& x : kernel_basis(e)) {
        QVector v(n, vars);
        for (size_t j = 0; j < src.size(); ++j)
            v.add_term(src[j], x[j]);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace vermahom
