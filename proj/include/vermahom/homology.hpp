#pragma once

// The homological modules: free modules over the Laurent ring indexed by
// compositions (k_0,...,k_{n-1}) of r, in four bases (code sequences U,
// multi-arcs A'/A, multiforks, r-loops), with the operators E, K^{+-1} and
// the divided powers F^(k) acting in the normalized multi-arc basis A.

#include "vermahom/verma.hpp"

namespace vermahom {

enum class Basis { U, Aprime, A, Fork, Loop, VermaTensor };

inline const char* basis_name(Basis b)
{
    switch (b) {
    case Basis::U: return "U";
    case Basis::Aprime: return "Aprime";
    case Basis::A: return "A";
    case Basis::Fork: return "Fork";
    case Basis::Loop: return "Loop";
    case Basis::VermaTensor: return "VermaTensor";
    }
    return "?";
}

inline Basis basis_from_name(const std::string& s)
{
    for (Basis b : {Basis::U, Basis::Aprime, Basis::A, Basis::Fork, Basis::Loop, Basis::VermaTensor})
        if (s == basis_name(b))
            return b;
    if (s == "verma")
        return Basis::VermaTensor;
    throw std::invalid_argument("unknown basis tag: " + s);
}

// Compositions share the index combinatorics of the tensor weight basis.
using CompositionIndex = VermaIndex;

inline std::vector<CompositionIndex> composition_basis(int n, int r) { return weight_basis(n, r); }

// Sparse element of the homology module, tagged by the basis its
// coordinates refer to.  Indices with a negative part never occur; the
// convention A(..., -1, ...) = 0 is applied by the operators themselves.
struct HVector {
    Basis basis = Basis::A;
    int n = 0;
    VarsPtr vars;
    std::map<CompositionIndex, LaurentPoly> terms;

    HVector() = default;
    HVector(Basis b, int n_, VarsPtr vars_) : basis(b), n(n_), vars(std::move(vars_)) {}

    static HVector basis_vector(Basis b, int n, const VarsPtr& vars, CompositionIndex idx)
    {
        for (int k : idx)
            if (k < 0)
                throw std::invalid_argument("HVector: negative part in index");
        HVector v(b, n, vars);
        v.terms.emplace(std::move(idx), LaurentPoly::one(vars));
        return v;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const CompositionIndex& idx, const LaurentPoly& c)
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

    friend HVector operator+(const HVector& a, const HVector& b)
    {
        if (a.n != b.n || a.basis != b.basis)
            throw std::invalid_argument("HVector sum: incompatible operands");
        HVector r = a;
        for (const auto& [idx, c] : b.terms)
            r.add_term(idx, c);
        return r;
    }

    friend HVector operator*(const LaurentPoly& c, const HVector& v)
    {
        HVector r(v.basis, v.n, v.vars);
        if (c.is_zero())
            return r;
        for (const auto& [idx, k] : v.terms)
            r.add_term(idx, c * k);
        return r;
    }

    friend bool operator==(const HVector& a, const HVector& b)
    {
        return a.basis == b.basis && a.n == b.n && a.terms == b.terms;
    }
    friend bool operator!=(const HVector& a, const HVector& b) { return !(a == b); }

    std::optional<int> degree() const
    {
        std::optional<int> r;
        for (const auto& [idx, c] : terms) {
            int s = 0;
            for (int k : idx)
                s += k;
            if (r && *r != s)
                return std::nullopt;
            r = s;
        }
        return r;
    }
};

// Matrix with basis/grading metadata.  Operator matrices act on coordinate
// columns (x_target = mat * x_source / denominator); the basis-change
// builders below instead document a row-per-source-element table layout.
struct OperatorMatrix {
    int n = 0;
    int r_source = 0, r_target = 0;
    Basis basis_source = Basis::A, basis_target = Basis::A;
    std::vector<int> colors_source, colors_target;
    PolyMatrix mat;
    LaurentPoly denominator;
};

// ---------------------------------------------------------------------------
// Basis-change tables.  Each returns a square table whose row k expands the
// k-th source basis element in the target basis.

// Row k: A'(k) = sum_l  prod_i binom_tt(k_i + l_{i+1}, l_{i+1}) U(...);
// upper-triangular with unit diagonal in the lexicographic index order.
inline OperatorMatrix arcs_to_codes_matrix(int n, int r, const VarsPtr& vars)
{
    const auto idx = composition_basis(n, r);
    std::map<CompositionIndex, int> pos;
    for (size_t i = 0; i < idx.size(); ++i)
        pos[idx[i]] = static_cast<int>(i);

    OperatorMatrix out;
    out.n = n;
    out.r_source = out.r_target = r;
    out.basis_source = Basis::Aprime;
    out.basis_target = Basis::U;
    out.colors_source = out.colors_target = detail::identity_colors(n);
    out.denominator = LaurentPoly::one(vars);
    out.mat = PolyMatrix(static_cast<int>(idx.size()), static_cast<int>(idx.size()), vars);

    parallel_for(static_cast<int>(idx.size()), [&](int row) {
        const CompositionIndex& k = idx[row];
        // l[i] for i = 1..n-1; l_{n-1} in [0, k_{n-1}], l_i in [0, k_i + l_{i+1}].
        std::vector<int> l(n, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == 0) {
                LaurentPoly coeff = LaurentPoly::one(vars);
                for (int p = 0; p <= n - 2; ++p)
                    coeff *= t_binomial(vars, k[p] + l[p + 1], l[p + 1]);
                CompositionIndex u(n);
                u[0] = k[0] + l[1];
                for (int p = 1; p <= n - 2; ++p)
                    u[p] = k[p] + l[p + 1] - l[p];
                u[n - 1] = k[n - 1] - l[n - 1];
                out.mat.at(row, pos.at(u)) += coeff;
                return;
            }
            const int hi = (i == n - 1) ? k[n - 1] : k[i] + l[i + 1];
            for (l[i] = 0; l[i] <= hi; ++l[i])
                rec(i - 1);
            l[i] = 0;
        };
        if (n == 1)
            out.mat.at(row, row) = LaurentPoly::one(vars);
        else
            rec(n - 1);
    });
    return out;
}

// Diagonal entry of the multi-arc normalization: A(k) = c(k) A'(k) with
// c(k) = prod_{p=1}^{n-1} s_p^{k_p + ... + k_{n-1}}.
inline LaurentPoly arc_normalization_coeff(const VarsPtr& vars, const CompositionIndex& k)
{
    const int n = static_cast<int>(k.size());
    ExpVec e(vars->size(), 0);
    int tail = 0;
    for (int p = n - 1; p >= 1; --p) {
        tail += k[p];
        e[VariableSet::s_index(p)] = tail;
    }
    return LaurentPoly::monomial(vars, 1, std::move(e));
}

// Diagonal entry of the multifork expansion: F(k) = f(k) U(k).
inline LaurentPoly fork_coeff(const VarsPtr& vars, const CompositionIndex& k)
{
    LaurentPoly f = LaurentPoly::one(vars);
    for (int kp : k)
        f *= t_factorial(vars, kp);
    return f;
}

// Diagonal entry of the r-loop expansion: L(k) = g(k) A'(k) with
// g(k) = prod_p (k_p)_tt! prod_{m=0}^{k_p - 1} (1 - s_{p+1}^{-2} tt^{-m}).
// The inner product stops at k_p - 1: iterating the loop-crash relation from
// an empty arc contributes one factor per loop, and zero loops give 1.
inline LaurentPoly loop_coeff(const VarsPtr& vars, const CompositionIndex& k)
{
    LaurentPoly g = LaurentPoly::one(vars);
    for (size_t p = 0; p < k.size(); ++p) {
        g *= t_factorial(vars, k[p]);
        for (int m = 0; m < k[p]; ++m) {
            ExpVec e(vars->size(), 0);
            e[VariableSet::s_index(static_cast<int>(p) + 1)] = -2;
            e[VariableSet::tt_index] = -m;
            g *= LaurentPoly::one(vars) - LaurentPoly::monomial(vars, 1, std::move(e));
        }
    }
    return g;
}

namespace detail {

inline OperatorMatrix diagonal_table(int n, int r, const VarsPtr& vars, Basis src, Basis tgt,
                                     const std::function<LaurentPoly(const CompositionIndex&)>& entry)
{
    const auto idx = composition_basis(n, r);
    OperatorMatrix out;
    out.n = n;
    out.r_source = out.r_target = r;
    out.basis_source = src;
    out.basis_target = tgt;
    out.colors_source = out.colors_target = identity_colors(n);
    out.denominator = LaurentPoly::one(vars);
    out.mat = PolyMatrix(static_cast<int>(idx.size()), static_cast<int>(idx.size()), vars);
    for (size_t i = 0; i < idx.size(); ++i)
        out.mat.at(static_cast<int>(i), static_cast<int>(i)) = entry(idx[i]);
    return out;
}

}  // namespace detail

// Diagonal table with entries c(k): by Def. of the normalization, row k reads
// A(k) = c(k) A'(k).
inline OperatorMatrix normalize_arcs(int n, int r, const VarsPtr& vars)
{
    return detail::diagonal_table(n, r, vars, Basis::A, Basis::Aprime,
                                  [&](const CompositionIndex& k) { return arc_normalization_coeff(vars, k); });
}

inline OperatorMatrix fork_to_code_matrix(int n, int r, const VarsPtr& vars)
{
    return detail::diagonal_table(n, r, vars, Basis::Fork, Basis::U,
                                  [&](const CompositionIndex& k) { return fork_coeff(vars, k); });
}

inline OperatorMatrix loops_to_arcs_matrix(int n, int r, const VarsPtr& vars)
{
    return detail::diagonal_table(n, r, vars, Basis::Loop, Basis::Aprime,
                                  [&](const CompositionIndex& k) { return loop_coeff(vars, k); });
}

// ---------------------------------------------------------------------------
// Vector conversion between the homological bases.  Down-conversions
// (Fork -> U, Loop -> A', A -> A', A' -> U) always exist over the ring;
// the reverse directions divide exactly coordinate by coordinate and report
// the blocking diagonal factor when a division fails.

namespace detail {

inline HVector convert_one_step(const HVector& v, Basis target)
{
    const VarsPtr& vars = v.vars;
    HVector out(target, v.n, vars);

    auto diagonal_mul = [&](const std::function<LaurentPoly(const CompositionIndex&)>& entry) {
        for (const auto& [idx, c] : v.terms)
            out.add_term(idx, c * entry(idx));
    };
    auto diagonal_div = [&](const std::function<LaurentPoly(const CompositionIndex&)>& entry,
                            const char* what) {
        for (const auto& [idx, c] : v.terms) {
            const LaurentPoly d = entry(idx);
            auto q = poly_exact_div(c, d);
            if (!q)
                throw std::runtime_error(std::string("change of basis to ") + basis_name(target) +
                                         ": diagonal factor " + to_string(d) + " (" + what +
                                         ") is not a unit and does not divide the coordinate");
            out.add_term(idx, *q);
        }
    };

    switch (v.basis) {
    case Basis::A:
        if (target == Basis::Aprime) {
            diagonal_mul([&](const CompositionIndex& k) { return arc_normalization_coeff(vars, k); });
            return out;
        }
        break;
    case Basis::Aprime:
        if (target == Basis::A) {
            // the normalization entries are invertible monomials
            for (const auto& [idx, c] : v.terms)
                out.add_term(idx, c * pow(arc_normalization_coeff(vars, idx), -1));
            return out;
        }
        if (target == Basis::U) {
            std::map<int, OperatorMatrix> tables;  // per degree r
            for (const auto& [idx, c] : v.terms) {
                int r = 0;
                for (int k : idx)
                    r += k;
                auto it = tables.find(r);
                if (it == tables.end())
                    it = tables.emplace(r, arcs_to_codes_matrix(v.n, r, vars)).first;
                const auto basis_idx = composition_basis(v.n, r);
                std::map<CompositionIndex, int> pos;
                for (size_t i = 0; i < basis_idx.size(); ++i)
                    pos[basis_idx[i]] = static_cast<int>(i);
                const int row = pos.at(idx);
                for (size_t j = 0; j < basis_idx.size(); ++j)
                    if (!it->second.mat.at(row, static_cast<int>(j)).is_zero())
                        out.add_term(basis_idx[j], c * it->second.mat.at(row, static_cast<int>(j)));
            }
            return out;
        }
        break;
    case Basis::U:
        if (target == Basis::Aprime) {
            // Invert the unit-triangular table degree by degree: ascending
            // index order, x_A'[j] = x_U[j] - sum_{k < j} T[k][j] x_A'[k].
            std::map<int, std::map<CompositionIndex, LaurentPoly>> by_degree;
            for (const auto& [idx, c] : v.terms) {
                int r = 0;
                for (int k : idx)
                    r += k;
                by_degree[r][idx] = c;
            }
            for (auto& [r, coords] : by_degree) {
                const auto basis_idx = composition_basis(v.n, r);
                OperatorMatrix table = arcs_to_codes_matrix(v.n, r, vars);
                std::vector<LaurentPoly> xa(basis_idx.size(), LaurentPoly::zero(vars));
                for (size_t j = 0; j < basis_idx.size(); ++j) {
                    LaurentPoly xu = LaurentPoly::zero(vars);
                    auto it = coords.find(basis_idx[j]);
                    if (it != coords.end())
                        xu = it->second;
                    for (size_t k = 0; k < j; ++k)
                        if (!table.mat.at(static_cast<int>(k), static_cast<int>(j)).is_zero() &&
                            !xa[k].is_zero())
                            xu -= table.mat.at(static_cast<int>(k), static_cast<int>(j)) * xa[k];
                    xa[j] = std::move(xu);
                }
                for (size_t j = 0; j < basis_idx.size(); ++j)
                    out.add_term(basis_idx[j], xa[j]);
            }
            return out;
        }
        if (target == Basis::Fork) {
            diagonal_div([&](const CompositionIndex& k) { return fork_coeff(vars, k); },
                         "product of (k_i)_tt! factorials");
            return out;
        }
        break;
    case Basis::Fork:
        if (target == Basis::U) {
            diagonal_mul([&](const CompositionIndex& k) { return fork_coeff(vars, k); });
            return out;
        }
        break;
    case Basis::Loop:
        if (target == Basis::Aprime) {
            diagonal_mul([&](const CompositionIndex& k) { return loop_coeff(vars, k); });
            return out;
        }
        break;
    default:
        break;
    }
    throw std::logic_error("convert_one_step: no direct edge");
}

// Conversion graph: Fork - U - A' - A and Loop - A'.
inline std::vector<Basis> conversion_path(Basis from, Basis to)
{
    auto chain_pos = [](Basis b) -> int {
        switch (b) {
        case Basis::Fork: return 0;
        case Basis::U: return 1;
        case Basis::Aprime: return 2;
        case Basis::A: return 3;
        default: return -1;
        }
    };
    static const Basis chain[4] = {Basis::Fork, Basis::U, Basis::Aprime, Basis::A};
    std::vector<Basis> path;
    Basis cur = from == Basis::Loop ? Basis::Aprime : from;
    if (from == Basis::Loop)
        path.push_back(Basis::Aprime);
    Basis goal = to == Basis::Loop ? Basis::Aprime : to;
    int a = chain_pos(cur), b = chain_pos(goal);
    if (a < 0 || b < 0)
        throw std::invalid_argument("conversion_path: unsupported basis");
    while (a != b) {
        a += (b > a) ? 1 : -1;
        path.push_back(chain[a]);
    }
    if (to == Basis::Loop)
        path.push_back(Basis::Loop);
    return path;
}

}  // namespace detail

inline HVector change_basis(const HVector& v, Basis target)
{
    if (v.basis == target)
        return v;
    if (v.basis == Basis::VermaTensor || target == Basis::VermaTensor)
        throw std::invalid_argument("change_basis: VermaTensor is not a homological basis");
    if (target == Basis::Loop) {
        // A' -> Loop divides by the loop diagonal.
        HVector ap = change_basis(v, Basis::Aprime);
        HVector out(Basis::Loop, v.n, v.vars);
        for (const auto& [idx, c] : ap.terms) {
            const LaurentPoly d = loop_coeff(v.vars, idx);
            auto q = poly_exact_div(c, d);
            if (!q)
                throw std::runtime_error(std::string("change of basis to Loop: diagonal factor ") +
                                         to_string(d) + " is not a unit and does not divide the coordinate");
            out.add_term(idx, *q);
        }
        return out;
    }
    HVector cur = v;
    for (Basis step : detail::conversion_path(v.basis, target))
        cur = detail::convert_one_step(cur, step);
    return cur;
}

// ---------------------------------------------------------------------------
// Operators in the normalized multi-arc basis A.

namespace detail {

inline void require_basis(const HVector& v, Basis b, const char* who)
{
    if (v.basis != b)
        throw std::invalid_argument(std::string(who) + ": vector must be in basis " + basis_name(b));
}

}  // namespace detail

// K acts on a degree-r component by (prod_i s_i) tt^r; diagonal in every basis.
inline HVector op_K(const HVector& v, std::vector<int> colors = {})
{
    const VarsPtr& vars = v.vars;
    if (colors.empty())
        colors = detail::identity_colors(v.n);
    HVector r(v.basis, v.n, vars);
    for (const auto& [idx, c] : v.terms) {
        ExpVec e(vars->size(), 0);
        for (int col : colors)
            e[VariableSet::s_index(col)] += 1;
        for (int k : idx)
            e[VariableSet::tt_index] += k;
        r.add_term(idx, c * LaurentPoly::monomial(vars, 1, std::move(e)));
    }
    return r;
}

inline HVector op_Kinv(const HVector& v, std::vector<int> colors = {})
{
    const VarsPtr& vars = v.vars;
    if (colors.empty())
        colors = detail::identity_colors(v.n);
    HVector r(v.basis, v.n, vars);
    for (const auto& [idx, c] : v.terms) {
        ExpVec e(vars->size(), 0);
        for (int col : colors)
            e[VariableSet::s_index(col)] -= 1;
        for (int k : idx)
            e[VariableSet::tt_index] -= k;
        r.add_term(idx, c * LaurentPoly::monomial(vars, 1, std::move(e)));
    }
    return r;
}

// E A(k) = sum_i (s_1 ... s_i) tt^(k_0+...+k_{i-1}) A(k - e_i); terms hitting
// a -1 part vanish.
inline HVector op_E(const HVector& v, std::vector<int> colors = {})
{
    detail::require_basis(v, Basis::A, "op_E");
    const VarsPtr& vars = v.vars;
    if (colors.empty())
        colors = detail::identity_colors(v.n);
    HVector r(Basis::A, v.n, vars);
    for (const auto& [idx, c] : v.terms) {
        for (int i = 0; i < v.n; ++i) {
            if (idx[i] == 0)
                continue;
            ExpVec e(vars->size(), 0);
            for (int p = 0; p < i; ++p) {
                e[VariableSet::s_index(colors[p])] += 1;
                e[VariableSet::tt_index] += idx[p];
            }
            CompositionIndex j = idx;
            --j[i];
            r.add_term(j, c * LaurentPoly::monomial(vars, 1, std::move(e)));
        }
    }
    return r;
}

// F^(1) A(k) = sum_i [prod_{p>i} s_{p+1}^(-1) tt^(-k_p)] s_{i+1} (k_i+1)_tt
//              (1 - s_{i+1}^(-2) tt^(-k_i)) A(k + e_i).
inline HVector op_F1(const HVector& v, std::vector<int> colors = {})
{
    detail::require_basis(v, Basis::A, "op_F1");
    const VarsPtr& vars = v.vars;
    if (colors.empty())
        colors = detail::identity_colors(v.n);
    HVector r(Basis::A, v.n, vars);
    for (const auto& [idx, c] : v.terms) {
        for (int i = 0; i < v.n; ++i) {
            ExpVec e(vars->size(), 0);
            for (int p = i + 1; p < v.n; ++p) {
                e[VariableSet::s_index(colors[p])] -= 1;
                e[VariableSet::tt_index] -= idx[p];
            }
            e[VariableSet::s_index(colors[i])] += 1;
            LaurentPoly coeff = LaurentPoly::monomial(vars, 1, std::move(e));
            coeff *= t_integer(vars, idx[i] + 1);
            ExpVec f(vars->size(), 0);
            f[VariableSet::s_index(colors[i])] = -2;
            f[VariableSet::tt_index] = -idx[i];
            coeff *= LaurentPoly::one(vars) - LaurentPoly::monomial(vars, 1, std::move(f));
            CompositionIndex j = idx;
            ++j[i];
            r.add_term(j, c * coeff);
        }
    }
    return r;
}

// Divided powers: F^(m) = (F^(1))^m / (q^(m(m-1)/2) (m)_tt!), the division
// being exact; a failed division signals a formula bug.
inline HVector op_Fdiv(int m, const HVector& v, std::vector<int> colors = {})
{
    if (m < 1)
        throw std::invalid_argument("op_Fdiv: m >= 1 required");
    const VarsPtr& vars = v.vars;
    HVector power = v;
    for (int i = 0; i < m; ++i)
        power = op_F1(power, colors);
    const LaurentPoly den =
        LaurentPoly::variable(vars, VariableSet::q_index, m * (m - 1) / 2) * t_factorial(vars, m);
    HVector r(Basis::A, v.n, vars);
    for (const auto& [idx, c] : power.terms)
        r.add_term(idx, poly_exact_div_or_throw(c, den, "op_Fdiv"));
    return r;
}

// Closed form for one puncture:
// F^(l) A(k) = binom_tt(k+l, k) q^(-l(l-1)/2) s_1^l
//              prod_{m=k}^{k+l-1} (1 - s_1^(-2) tt^(-m)) A(k+l).
// The product range starts at m = k; it is forced by iterating the
// loop-crash relation and by matching the Verma module F^(l) coefficients.
inline LaurentPoly fdiv_closed_coeff_n1(const VarsPtr& vars, int k, int l)
{
    LaurentPoly c = t_binomial(vars, k + l, k);
    ExpVec e(vars->size(), 0);
    e[VariableSet::q_index] = -l * (l - 1) / 2;
    e[VariableSet::s_index(1)] = l;
    c *= LaurentPoly::monomial(vars, 1, std::move(e));
    for (int m = k; m < k + l; ++m) {
        ExpVec f(vars->size(), 0);
        f[VariableSet::s_index(1)] = -2;
        f[VariableSet::tt_index] = -m;
        c *= LaurentPoly::one(vars) - LaurentPoly::monomial(vars, 1, std::move(f));
    }
    return c;
}

// ---------------------------------------------------------------------------
// tens / untens: the coefficient-preserving identification of the basis A
// with the tensor basis of Verma modules, A(k_0,...,k_{n-1}) <-> v_{k_0} (x)
// ... (x) v_{k_{n-1}}.

inline QVector tens(const HVector& v)
{
    detail::require_basis(v, Basis::A, "tens");
    QVector out(v.n, v.vars);
    for (const auto& [idx, c] : v.terms)
        out.add_term(idx, c);
    return out;
}

inline HVector untens(const QVector& v)
{
    HVector out(Basis::A, v.n, v.vars);
    for (const auto& [idx, c] : v.terms)
        out.add_term(idx, c);
    return out;
}

inline std::string to_string(const HVector& v)
{
    if (v.is_zero())
        return "0";
    std::string out;
    for (const auto& [idx, c] : v.terms) {
        if (!out.empty())
            out += " + ";
        out += "(" + to_string(c) + ")*" + basis_name(v.basis) + "(";
        for (size_t i = 0; i < idx.size(); ++i)
            out += (i ? "," : "") + std::to_string(idx[i]);
        out += ")";
    }
    return out;
}

// Matrix of a homological operator on the degree-r piece, in basis A.
// Columns are indexed by composition_basis(n, r).
inline PolyMatrix hom_action_matrix(Gen x, int n, int r, const VarsPtr& vars,
                                    std::vector<int> colors = {})
{
    const int r_target = x.kind == Gen::E ? r - 1 : (x.kind == Gen::Fdiv ? r + x.m : r);
    const auto src = composition_basis(n, r);
    const auto tgt = r_target >= 0 ? composition_basis(n, r_target) : std::vector<CompositionIndex>{};
    std::map<CompositionIndex, int> tgt_pos;
    for (size_t i = 0; i < tgt.size(); ++i)
        tgt_pos[tgt[i]] = static_cast<int>(i);

    PolyMatrix m(static_cast<int>(tgt.size()), static_cast<int>(src.size()), vars);
    for (size_t j = 0; j < src.size(); ++j) {
        HVector b = HVector::basis_vector(Basis::A, n, vars, src[j]);
        HVector image;
        switch (x.kind) {
        case Gen::E: image = op_E(b, colors); break;
        case Gen::K: image = op_K(b, colors); break;
        case Gen::Kinv: image = op_Kinv(b, colors); break;
        case Gen::Fdiv: image = op_Fdiv(x.m, b, colors); break;
        }
        for (const auto& [idx, c] : image.terms)
            m.at(tgt_pos.at(idx), static_cast<int>(j)) = c;
    }
    return m;
}

// ---------------------------------------------------------------------------
// JSON for vectors and matrices.

inline Json qvector_to_json(const QVector& v)
{
    Json j;
    j["n"] = v.n;
    Json terms = Json::array();
    for (const auto& [idx, c] : v.terms) {
        Json t;
        t["index"] = idx;
        t["coeff"] = poly_to_json(c);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline Json hvector_to_json(const HVector& v)
{
    Json j;
    j["n"] = v.n;
    j["basis"] = basis_name(v.basis);
    Json terms = Json::array();
    for (const auto& [idx, c] : v.terms) {
        Json t;
        t["index"] = idx;
        t["coeff"] = poly_to_json(c);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline HVector hvector_from_json(const Json& j)
{
    const int n = j.at("n").get<int>();
    Basis b = basis_from_name(j.at("basis").get<std::string>());
    VarsPtr vars = VariableSet::with_colors(n);
    HVector v(b, n, vars);
    for (const auto& t : j.at("terms"))
        v.add_term(t.at("index").get<CompositionIndex>(), poly_from_json(t.at("coeff")));
    return v;
}

inline QVector qvector_from_json(const Json& j)
{
    const int n = j.at("n").get<int>();
    VarsPtr vars = VariableSet::with_colors(n);
    QVector v(n, vars);
    for (const auto& t : j.at("terms"))
        v.add_term(t.at("index").get<VermaIndex>(), poly_from_json(t.at("coeff")));
    return v;
}

inline Json matrix_to_json(const OperatorMatrix& m)
{
    Json j;
    j["n"] = m.n;
    j["r_source"] = m.r_source;
    j["r_target"] = m.r_target;
    j["basis_source"] = basis_name(m.basis_source);
    j["basis_target"] = basis_name(m.basis_target);
    j["colors_source"] = m.colors_source;
    j["colors_target"] = m.colors_target;
    j["denominator"] = poly_to_json(m.denominator);
    Json rows = Json::array();
    for (int i = 0; i < m.mat.rows(); ++i) {
        Json row = Json::array();
        for (int c = 0; c < m.mat.cols(); ++c)
            row.push_back(poly_to_json(m.mat.at(i, c)));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

inline OperatorMatrix matrix_from_json(const Json& j)
{
    OperatorMatrix m;
    m.n = j.at("n").get<int>();
    m.r_source = j.at("r_source").get<int>();
    m.r_target = j.at("r_target").get<int>();
    m.basis_source = basis_from_name(j.at("basis_source").get<std::string>());
    m.basis_target = basis_from_name(j.at("basis_target").get<std::string>());
    m.colors_source = j.at("colors_source").get<std::vector<int>>();
    m.colors_target = j.at("colors_target").get<std::vector<int>>();
    m.denominator = poly_from_json(j.at("denominator"));
    const auto& rows = j.at("rows");
    const int nr = static_cast<int>(rows.size());
    const int nc = nr > 0 ? static_cast<int>(rows.at(0).size()) : 0;
    VarsPtr vars = VariableSet::with_colors(m.n);
    m.mat = PolyMatrix(nr, nc, vars);
    for (int i = 0; i < nr; ++i)
        for (int c = 0; c < nc; ++c)
            m.mat.at(i, c) = poly_from_json(rows.at(i).at(c));
    return m;
}

}  // namespace vermahom
