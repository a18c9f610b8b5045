#pragma once

// Braid group actions on weight spaces.  On the quantum side a braid
// generator acts on a pair of adjacent Verma factors by the normalized
// R-matrix
//     R = q^(-a a'/2) (q^(H(x)H/2) o sum_l q^(l(l-1)/2) E^l (x) F^(l)) o T,
// whose combined diagonal stays in the integral ring: on v_x (color X)
// tensor v_y (color Y) it is q^(2xy) s_Y^(-x) s_X^(-y).  On the homological
// side the same generator acts on the multi-arc basis A by the two-puncture
// formula, tt-generically.  Both are assembled factor-locally into matrices
// on W_{n,r}; words act as written on column vectors (rightmost letter
// first), and inverse letters carry a scalar denominator.

#include <random>
#include <sstream>

#include "vermahom/homology.hpp"

namespace vermahom {

struct BraidWord {
    int n = 0;                               // strand count
    std::vector<std::pair<int, int>> letters;  // (generator index 1..n-1, sign +-1)

    static BraidWord parse(int n, const std::string& text)
    {
        BraidWord w;
        w.n = n;
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            int sign = 1;
            std::string base = tok;
            if (auto pos = tok.find('^'); pos != std::string::npos) {
                base = tok.substr(0, pos);
                std::string e = tok.substr(pos + 1);
                if (e != "-1")
                    throw std::invalid_argument("braid word: unsupported exponent in '" + tok + "'");
                sign = -1;
            }
            if (base.size() < 2 || base[0] != 's')
                throw std::invalid_argument("braid word: bad token '" + tok + "'");
            int idx = std::stoi(base.substr(1));
            if (idx < 1 || idx > n - 1)
                throw std::invalid_argument("braid word: generator index out of range in '" + tok + "'");
            w.letters.emplace_back(idx, sign);
        }
        return w;
    }

    std::string str() const
    {
        std::string out;
        for (const auto& [i, sign] : letters) {
            if (!out.empty())
                out += " ";
            out += "s" + std::to_string(i);
            if (sign < 0)
                out += "^-1";
        }
        return out;
    }

    // Strand permutation: perm[p] is the starting position (1-based) of the
    // strand that ends at position p+1, composing transpositions letter by
    // letter as the word acts (rightmost letter first).
    std::vector<int> permutation() const
    {
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i)
            perm[i] = i + 1;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it)
            std::swap(perm[it->first - 1], perm[it->first]);
        return perm;
    }

    bool is_pure() const
    {
        auto p = permutation();
        for (int i = 0; i < n; ++i)
            if (p[i] != i + 1)
                return false;
        return true;
    }
};

namespace detail {

// Quantum R-matrix block on the joint subweight-rho pair space, input colors
// (ca, cb), basis v_i (x) v_{rho-i} in ascending i on both sides.
inline PolyMatrix rmatrix_block(const VarsPtr& vars, int ca, int cb, int rho)
{
    const int d = rho + 1;
    PolyMatrix m(d, d, vars);
    for (int i = 0; i <= rho; ++i) {
        const int j = rho - i;
        for (int l = 0; l <= j; ++l) {
            // output v_{j-l} (x) v_{i+l}, first slot colored cb, second ca
            const int x = j - l, y = i + l;
            ExpVec e(vars->size(), 0);
            e[VariableSet::q_index] = l * (l - 1) / 2 + 2 * x * y;
            e[VariableSet::s_index(ca)] += -x;
            e[VariableSet::s_index(cb)] += -y;
            LaurentPoly coeff = LaurentPoly::monomial(vars, 1, std::move(e));
            coeff *= fdiv_coeff(vars, l, i, ca);  // F^(l) on the ca factor
            m.at(x, i) += coeff;                  // row indexed by first output slot
        }
    }
    return m;
}

// Homological R-matrix block in basis A, tt-generic: input pair index
// (k', k) at positions (first, second) with colors (ca, cb),
//   sigma A(k',k) = sum_{l<=k} tt^(-(k'+l)(k-l)) s_ca^(2l-k) s_cb^(-(k'+l))
//                   binom_tt(k'+l, l) prod_{m=k'}^{k'+l-1} (1 - s_ca^(-2) tt^(-m))
//                   A(k-l, k'+l).
// The product range m = k'..k'+l-1 is the corrected reading, forced by the
// divided-power computation (see fdiv_closed_coeff_n1).
inline PolyMatrix hom_rmatrix_block(const VarsPtr& vars, int ca, int cb, int rho)
{
    const int d = rho + 1;
    PolyMatrix m(d, d, vars);
    for (int kp = 0; kp <= rho; ++kp) {  // input (k', k), column index k'
        const int k = rho - kp;
        for (int l = 0; l <= k; ++l) {
            ExpVec e(vars->size(), 0);
            e[VariableSet::tt_index] = -(kp + l) * (k - l);
            e[VariableSet::s_index(ca)] += 2 * l - k;
            e[VariableSet::s_index(cb)] += -(kp + l);
            LaurentPoly coeff = LaurentPoly::monomial(vars, 1, std::move(e));
            coeff *= t_binomial(vars, kp + l, l);
            for (int mm = kp; mm < kp + l; ++mm) {
                ExpVec f(vars->size(), 0);
                f[VariableSet::s_index(ca)] = -2;
                f[VariableSet::tt_index] = -mm;
                coeff *= LaurentPoly::one(vars) - LaurentPoly::monomial(vars, 1, std::move(f));
            }
            m.at(k - l, kp) += coeff;  // output (k-l, k'+l), row index k-l
        }
    }
    return m;
}

}  // namespace detail

// Matrix of the normalized R on the subweight-r block of a Verma pair.
inline OperatorMatrix rmatrix_pair(const VarsPtr& vars, int color_a, int color_b, int r)
{
    OperatorMatrix out;
    out.n = 2;
    out.r_source = out.r_target = r;
    out.basis_source = out.basis_target = Basis::VermaTensor;
    out.colors_source = {color_a, color_b};
    out.colors_target = {color_b, color_a};
    out.denominator = LaurentPoly::one(vars);
    out.mat = detail::rmatrix_block(vars, color_a, color_b, r);
    return out;
}

// Exact inverse of the forward block, carried as (matrix, denominator) and
// verified by multiplication.
inline OperatorMatrix rmatrix_inverse_pair(const VarsPtr& vars, int color_a, int color_b, int r)
{
    PolyMatrix fwd = detail::rmatrix_block(vars, color_b, color_a, r);
    auto [inv, den] = inverse_with_denominator(fwd);
    if (!(fwd * inv == den * PolyMatrix::identity(fwd.rows(), vars)))
        throw std::runtime_error("rmatrix_inverse_pair: inverse verification failed");
    OperatorMatrix out;
    out.n = 2;
    out.r_source = out.r_target = r;
    out.basis_source = out.basis_target = Basis::VermaTensor;
    out.colors_source = {color_a, color_b};
    out.colors_target = {color_b, color_a};
    out.denominator = std::move(den);
    out.mat = std::move(inv);
    return out;
}

namespace detail {

// Generator matrix (one letter) on W_{n,r}, acting on factors pos, pos+1 of
// the current color state.  Quantum (VermaTensor) or homological (A) blocks.
inline std::pair<PolyMatrix, LaurentPoly> generator_matrix(const VarsPtr& vars, int n, int r,
                                                           int pos, int sign,
                                                           const std::vector<int>& colors,
                                                           bool homological)
{
    const auto idx = weight_basis(n, r);
    std::map<VermaIndex, int> pos_of;
    for (size_t i = 0; i < idx.size(); ++i)
        pos_of[idx[i]] = static_cast<int>(i);

    const int ca = colors[pos - 1], cb = colors[pos];
    // Per occurring joint subweight rho: forward block, or adjugate inverse
    // of the block for the swapped colors.
    std::vector<bool> occurs(r + 1, false);
    for (const auto& src : idx)
        occurs[src[pos - 1] + src[pos]] = true;
    std::vector<PolyMatrix> blocks(r + 1);
    std::vector<LaurentPoly> dens(r + 1, LaurentPoly::one(vars));
    for (int rho = 0; rho <= r; ++rho) {
        if (!occurs[rho])
            continue;
        if (sign > 0) {
            blocks[rho] = homological ? hom_rmatrix_block(vars, ca, cb, rho)
                                      : rmatrix_block(vars, ca, cb, rho);
        } else {
            PolyMatrix fwd = homological ? hom_rmatrix_block(vars, cb, ca, rho)
                                         : rmatrix_block(vars, cb, ca, rho);
            auto [inv, den] = inverse_with_denominator(fwd);
            blocks[rho] = std::move(inv);
            dens[rho] = std::move(den);
        }
    }
    LaurentPoly total_den = LaurentPoly::one(vars);
    for (int rho = 0; rho <= r; ++rho)
        total_den *= dens[rho];

    PolyMatrix m(static_cast<int>(idx.size()), static_cast<int>(idx.size()), vars);
    for (size_t col = 0; col < idx.size(); ++col) {
        const VermaIndex& src = idx[col];
        const int i = src[pos - 1], j = src[pos];
        const int rho = i + j;
        LaurentPoly scale = LaurentPoly::one(vars);
        for (int rr = 0; rr <= r; ++rr)
            if (rr != rho)
                scale *= dens[rr];
        for (int row_in_block = 0; row_in_block <= rho; ++row_in_block) {
            const LaurentPoly& c = blocks[rho].at(row_in_block, i);
            if (c.is_zero())
                continue;
            VermaIndex dst = src;
            dst[pos - 1] = row_in_block;
            dst[pos] = rho - row_in_block;
            m.at(pos_of.at(dst), static_cast<int>(col)) += scale * c;
        }
    }
    return {std::move(m), std::move(total_den)};
}

inline PolyMatrix coords_a_to_u(int n, int r, const VarsPtr& vars)
{
    const auto idx = composition_basis(n, r);
    const int d = static_cast<int>(idx.size());
    PolyMatrix c(d, d, vars);
    for (int j = 0; j < d; ++j) {
        HVector u = change_basis(HVector::basis_vector(Basis::A, n, vars, idx[j]), Basis::U);
        for (int i = 0; i < d; ++i) {
            auto it = u.terms.find(idx[i]);
            if (it != u.terms.end())
                c.at(i, j) = it->second;
        }
    }
    return c;
}

inline PolyMatrix coords_u_to_a(int n, int r, const VarsPtr& vars)
{
    const auto idx = composition_basis(n, r);
    const int d = static_cast<int>(idx.size());
    PolyMatrix c(d, d, vars);
    for (int j = 0; j < d; ++j) {
        HVector a = change_basis(HVector::basis_vector(Basis::U, n, vars, idx[j]), Basis::A);
        for (int i = 0; i < d; ++i) {
            auto it = a.terms.find(idx[i]);
            if (it != a.terms.end())
                c.at(i, j) = it->second;
        }
    }
    return c;
}

}  // namespace detail

// Matrix of a braid word on W_{n,r}.  basis selects the quantum route
// (VermaTensor) or the homological one (A, or U via conjugation); unicolor
// collapses every strand color to s_1, otherwise position p starts with
// color s_p and colors permute along the word.
inline OperatorMatrix braid_matrix(const BraidWord& word, int r, Basis basis, bool unicolor = false)
{
    const int n = word.n;
    const VarsPtr vars = VariableSet::with_colors(n);
    const bool homological = basis == Basis::A || basis == Basis::U;
    if (!homological && basis != Basis::VermaTensor)
        throw std::invalid_argument("braid_matrix: basis must be VermaTensor, A or U");

    std::vector<int> colors(n, 1);
    if (!unicolor)
        colors = detail::identity_colors(n);

    const int dim = weight_space_dim(n, r);
    PolyMatrix total = PolyMatrix::identity(dim, vars);
    LaurentPoly den = LaurentPoly::one(vars);
    std::vector<int> colors_start = colors;

    // Rightmost letter acts first.
    for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
        auto [g, gden] = detail::generator_matrix(vars, n, r, it->first, it->second, colors, homological);
        total = g * total;
        den *= gden;
        std::swap(colors[it->first - 1], colors[it->first]);
    }

    OperatorMatrix out;
    out.n = n;
    out.r_source = out.r_target = r;
    out.basis_source = out.basis_target = basis;
    out.colors_source = colors_start;
    out.colors_target = colors;
    out.denominator = std::move(den);
    out.mat = std::move(total);

    if (basis == Basis::U) {
        PolyMatrix to_u = detail::coords_a_to_u(n, r, vars);
        PolyMatrix from_u = detail::coords_u_to_a(n, r, vars);
        out.mat = to_u * (out.mat * from_u);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification reports.

struct Report {
    bool ok = true;
    std::string detail;

    static Report pass() { return {}; }
    static Report fail(std::string why) { return {false, std::move(why)}; }
};

// Commutation of the braid action with a quantum generator across the graded
// components r <= r_max.  Requires a pure word unless unicolored.
inline Report check_equivariance(const BraidWord& word, Gen x, int r_max, bool unicolor = false)
{
    const int n = word.n;
    const VarsPtr vars = VariableSet::with_colors(n);
    if (!unicolor && !word.is_pure()) {
        auto p = word.permutation();
        std::string ps = "(";
        for (int i = 0; i < n; ++i)
            ps += (i ? " " : "") + std::to_string(p[i]);
        ps += ")";
        return Report::fail("word is not pure (permutation " + ps +
                            "); distinct colors give an endomorphism only for pure braids");
    }
    std::vector<int> colors(n, 1);
    if (!unicolor)
        colors = detail::identity_colors(n);

    for (int r = 0; r <= r_max; ++r) {
        const int r_target = x.kind == Gen::E ? r - 1 : (x.kind == Gen::Fdiv ? r + x.m : r);
        if (r_target < 0)
            continue;
        OperatorMatrix b_src = braid_matrix(word, r, Basis::VermaTensor, unicolor);
        OperatorMatrix b_tgt = r_target == r ? b_src : braid_matrix(word, r_target, Basis::VermaTensor, unicolor);
        PolyMatrix gen = coproduct_action_matrix(x, n, r, vars, colors);
        // (b_tgt/d_tgt) gen == gen (b_src/d_src)
        PolyMatrix lhs = b_src.denominator * (b_tgt.mat * gen);
        PolyMatrix rhs = b_tgt.denominator * (gen * b_src.mat);
        if (lhs != rhs)
            return Report::fail("braid action does not commute with the generator at r = " +
                                std::to_string(r) + ", word " + word.str());
    }
    return Report::pass();
}

// Braid stability of Ker E inside W_{n,r}: maps a kernel basis through the
// braid matrix and verifies exact span membership over the fraction field.
inline Report kohno_kernel_stability(int n, int r, const BraidWord& word, bool unicolor = true)
{
    const VarsPtr vars = VariableSet::with_colors(n);
    if (!unicolor && !word.is_pure())
        return Report::fail("distinct colors require a pure word");
    std::vector<int> colors(n, 1);
    if (!unicolor)
        colors = detail::identity_colors(n);

    PolyMatrix e = coproduct_action_matrix(Gen::e(), n, r, vars, colors);
    auto kernel = kernel_basis(e);
    const int dim = weight_space_dim(n, r);
    if (static_cast<int>(kernel.size()) + bareiss_echelon(e).rank != dim)
        return Report::fail("rank-nullity mismatch for E on W_{" + std::to_string(n) + "," +
                            std::to_string(r) + "}");
    if (kernel.empty())
        return Report::pass();

    PolyMatrix kmat(dim, static_cast<int>(kernel.size()), vars);
    for (size_t j = 0; j < kernel.size(); ++j)
        for (int i = 0; i < dim; ++i)
            kmat.at(i, static_cast<int>(j)) = kernel[j][i];

    OperatorMatrix b = braid_matrix(word, r, Basis::VermaTensor, unicolor);
    for (size_t j = 0; j < kernel.size(); ++j) {
        std::vector<LaurentPoly> img = b.mat.apply(kernel[j]);
        if (!solve_in_span(kmat, img))
            return Report::fail("braid image of a kernel vector leaves Ker E (vector " +
                                std::to_string(j) + ", word " + word.str() + ")");
    }
    return Report::pass();
}

// Entry-wise ring-hom specialization; colors metadata collapses under the
// unicolor map.
inline OperatorMatrix specialize_matrix(const OperatorMatrix& m, const RingHom& h, bool collapses_colors = false)
{
    OperatorMatrix out = m;
    for (int i = 0; i < m.mat.rows(); ++i)
        for (int j = 0; j < m.mat.cols(); ++j)
            out.mat.at(i, j) = h(m.mat.at(i, j));
    out.denominator = h(m.denominator);
    if (collapses_colors) {
        out.colors_source.assign(m.colors_source.size(), 1);
        out.colors_target.assign(m.colors_target.size(), 1);
    }
    return out;
}

// Entry-wise numeric evaluation, dividing by the evaluated denominator.
inline std::vector<std::vector<std::complex<double>>>
evaluate_matrix(const OperatorMatrix& m, const std::vector<std::complex<double>>& values)
{
    const std::complex<double> den = evaluate_complex(m.denominator, values);
    if (den == std::complex<double>(0.0, 0.0))
        throw std::domain_error("evaluate_matrix: denominator vanishes at the evaluation point");
    std::vector<std::vector<std::complex<double>>> out(m.mat.rows());
    for (int i = 0; i < m.mat.rows(); ++i) {
        out[i].resize(m.mat.cols());
        for (int j = 0; j < m.mat.cols(); ++j)
            out[i][j] = evaluate_complex(m.mat.at(i, j), values) / den;
    }
    return out;
}

inline std::vector<std::vector<Rational>> evaluate_matrix_rational(const OperatorMatrix& m,
                                                                   const std::vector<Rational>& values)
{
    const Rational den = evaluate_rational(m.denominator, values);
    if (den == 0)
        throw std::domain_error("evaluate_matrix: denominator vanishes at the evaluation point");
    std::vector<std::vector<Rational>> out(m.mat.rows());
    for (int i = 0; i < m.mat.rows(); ++i) {
        out[i].resize(m.mat.cols());
        for (int j = 0; j < m.mat.cols(); ++j)
            out[i][j] = evaluate_rational(m.mat.at(i, j), values) / den;
    }
    return out;
}

// Random words with the identity permutation, for the equivariance and
// kernel-stability suites.
inline BraidWord random_pure_word(int n, int max_len, std::mt19937& rng)
{
    if (n < 2) {
        BraidWord w;
        w.n = n;
        return w;
    }
    std::uniform_int_distribution<int> len_dist(2, max_len);
    std::uniform_int_distribution<int> gen_dist(1, n - 1);
    std::uniform_int_distribution<int> sign_dist(0, 1);
    for (;;) {
        BraidWord w;
        w.n = n;
        const int len = len_dist(rng);
        for (int i = 0; i < len; ++i)
            w.letters.emplace_back(gen_dist(rng), sign_dist(rng) ? 1 : -1);
        if (w.is_pure())
            return w;
    }
}

}  // namespace vermahom
