#include <catch2/catch_amalgamated.hpp>

#include "vermahom/checks.hpp"

using namespace vermahom;

namespace {

const VarsPtr V2 = VariableSet::with_colors(2);
const VarsPtr V3 = VariableSet::with_colors(3);

LaurentPoly sv(const VarsPtr& v, int i, int e = 1) { return LaurentPoly::variable(v, VariableSet::s_index(i), e); }

}  // namespace

TEST_CASE("braid word parsing and permutations")
{
    BraidWord w = BraidWord::parse(3, "s1 s2^-1 s1");
    CHECK(w.letters == std::vector<std::pair<int, int>>{{1, 1}, {2, -1}, {1, 1}});
    CHECK(w.str() == "s1 s2^-1 s1");
    CHECK(!w.is_pure());

    BraidWord p = BraidWord::parse(2, "s1 s1^-1");
    CHECK(p.is_pure());
    CHECK(BraidWord::parse(3, "s1 s1 s2 s2").permutation() == std::vector<int>{1, 2, 3});

    CHECK_THROWS_AS(BraidWord::parse(2, "s2"), std::invalid_argument);
    CHECK_THROWS_AS(BraidWord::parse(2, "s1^2"), std::invalid_argument);
    CHECK_THROWS_AS(BraidWord::parse(2, "x1"), std::invalid_argument);
}

TEST_CASE("R-matrix on small blocks")
{
    // r = 0: the only case forced by weight reasons is the identity
    OperatorMatrix r0 = rmatrix_pair(V2, 1, 2, 0);
    CHECK(r0.mat == PolyMatrix::identity(1, V2));

    // r = 1 block in the basis v0 (x) v1, v1 (x) v0
    OperatorMatrix r1 = rmatrix_pair(V2, 1, 2, 1);
    CHECK(r1.mat.at(0, 0) == sv(V2, 2, -1) * (sv(V2, 1) - sv(V2, 1, -1)));
    CHECK(r1.mat.at(1, 0) == sv(V2, 1, -1));
    CHECK(r1.mat.at(0, 1) == sv(V2, 2, -1));
    CHECK(r1.mat.at(1, 1).is_zero());
    CHECK(r1.colors_target == std::vector<int>{2, 1});

    // R o R^-1 = id on blocks r <= 4
    for (int r = 0; r <= 4; ++r) {
        OperatorMatrix fwd = rmatrix_pair(V2, 1, 2, r);
        OperatorMatrix inv = rmatrix_inverse_pair(V2, 2, 1, r);
        PolyMatrix prod = inv.mat * fwd.mat;
        CHECK(prod == inv.denominator * PolyMatrix::identity(r + 1, V2));
    }

    // (R^-1)^-1 = R, as an equality of fractions; inverting the inverse of
    // the (1,2)-colored block recovers that same block
    OperatorMatrix inv = rmatrix_inverse_pair(V2, 2, 1, 2);
    auto [invinv, den2] = inverse_with_denominator(inv.mat);
    OperatorMatrix fwd = rmatrix_pair(V2, 1, 2, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(invinv.at(i, j) * inv.denominator == den2 * fwd.mat.at(i, j));
}

TEST_CASE("braid matrices")
{
    // empty word acts as the identity
    BraidWord empty;
    empty.n = 3;
    OperatorMatrix id = braid_matrix(empty, 2, Basis::VermaTensor);
    CHECK(id.mat == PolyMatrix::identity(6, V3));

    // the braid relation as byte-identical matrices, quantum and homological
    BraidWord lhs = BraidWord::parse(3, "s1 s2 s1"), rhs = BraidWord::parse(3, "s2 s1 s2");
    for (Basis b : {Basis::VermaTensor, Basis::A, Basis::U}) {
        OperatorMatrix m1 = braid_matrix(lhs, 2, b);
        OperatorMatrix m2 = braid_matrix(rhs, 2, b);
        CHECK(m1.mat == m2.mat);
        CHECK(m1.colors_target == m2.colors_target);
        CHECK(matrix_to_json(m1).dump() == matrix_to_json(m2).dump());
    }

    // n=2, r=1, unicolor, basis A: the frozen 2x2 matrix
    BraidWord s1 = BraidWord::parse(2, "s1");
    OperatorMatrix m = braid_matrix(s1, 1, Basis::A, /*unicolor=*/true);
    CHECK(m.mat.at(0, 0) == LaurentPoly::one(V2) - sv(V2, 1, -2));
    CHECK(m.mat.at(0, 1) == sv(V2, 1, -1));
    CHECK(m.mat.at(1, 0) == sv(V2, 1, -1));
    CHECK(m.mat.at(1, 1).is_zero());

    // colors permute along the word
    OperatorMatrix colored = braid_matrix(BraidWord::parse(3, "s1 s2"), 1, Basis::VermaTensor);
    CHECK(colored.colors_source == std::vector<int>{1, 2, 3});
    CHECK(colored.colors_target == BraidWord::parse(3, "s1 s2").permutation());

    // sigma sigma^-1 is the identity up to the carried denominator, r <= 3
    for (int r = 0; r <= 3; ++r) {
        OperatorMatrix cancel = braid_matrix(BraidWord::parse(2, "s1 s1^-1"), r, Basis::VermaTensor);
        CHECK(cancel.mat == cancel.denominator * PolyMatrix::identity(r + 1, V2));
        OperatorMatrix cancel_hom = braid_matrix(BraidWord::parse(2, "s1^-1 s1"), r, Basis::A);
        CHECK(cancel_hom.mat == cancel_hom.denominator * PolyMatrix::identity(r + 1, V2));
    }
}

TEST_CASE("quantum and homological braid actions agree after the bridge")
{
    CHECK(checks::quantum_homological(3, 2).ok);

    // word-level agreement, including an inverse letter
    const RingHom b = RingHom::bridge(V3);
    BraidWord w = BraidWord::parse(3, "s1 s2^-1");
    OperatorMatrix hom = braid_matrix(w, 2, Basis::A);
    OperatorMatrix quant = braid_matrix(w, 2, Basis::VermaTensor);
    for (int i = 0; i < hom.mat.rows(); ++i)
        for (int j = 0; j < hom.mat.cols(); ++j)
            CHECK(b(hom.mat.at(i, j)) * quant.denominator ==
                  quant.mat.at(i, j) * b(hom.denominator));
}

TEST_CASE("the homological route is a braid representation at generic tt")
{
    // braid relation and far commutation without specializing tt
    for (int r = 0; r <= 2; ++r) {
        OperatorMatrix ml = braid_matrix(BraidWord::parse(3, "s1 s2 s1"), r, Basis::A);
        OperatorMatrix mr = braid_matrix(BraidWord::parse(3, "s2 s1 s2"), r, Basis::A);
        CHECK(ml.mat == mr.mat);
    }
    OperatorMatrix fl = braid_matrix(BraidWord::parse(4, "s1 s3"), 2, Basis::A);
    OperatorMatrix fr = braid_matrix(BraidWord::parse(4, "s3 s1"), 2, Basis::A);
    CHECK(fl.mat == fr.mat);

    // pure words commute with the homological E without specializing tt
    BraidWord w = BraidWord::parse(3, "s1 s1");
    for (int r = 1; r <= 2; ++r) {
        OperatorMatrix br = braid_matrix(w, r, Basis::A);
        OperatorMatrix br1 = braid_matrix(w, r - 1, Basis::A);
        PolyMatrix e = hom_action_matrix(Gen::e(), 3, r, V3);
        CHECK(br1.mat * e == e * br.mat);
    }
}

TEST_CASE("equivariance")
{
    // K commutes with any braid word on each weight space
    BraidWord w = BraidWord::parse(2, "s1 s1");
    CHECK(check_equivariance(w, Gen::k(), 3).ok);
    CHECK(check_equivariance(w, Gen::e(), 3).ok);
    CHECK(check_equivariance(w, Gen::fdiv(1), 2).ok);

    BraidWord pure3 = BraidWord::parse(3, "s1 s2 s2 s1");
    REQUIRE(pure3.is_pure());
    CHECK(check_equivariance(pure3, Gen::fdiv(1), 2).ok);

    // non-pure words with distinct colors are rejected with the permutation
    BraidWord bad = BraidWord::parse(3, "s1");
    Report rep = check_equivariance(bad, Gen::e(), 1);
    CHECK(!rep.ok);
    CHECK(rep.detail.find("not pure") != std::string::npos);

    // ...but act fine in the unicolor specialization
    CHECK(check_equivariance(bad, Gen::e(), 2, /*unicolor=*/true).ok);
}

TEST_CASE("kernel of E is braid stable")
{
    CHECK(kohno_kernel_stability(2, 1, BraidWord::parse(2, "s1")).ok);
    CHECK(kohno_kernel_stability(2, 0, BraidWord::parse(2, "s1")).ok);  // whole space
    CHECK(kohno_kernel_stability(3, 2, BraidWord::parse(3, "s1 s2")).ok);
    CHECK(kohno_kernel_stability(3, 2, BraidWord::parse(3, "s1^-1 s2 s1")).ok);
}

TEST_CASE("specialization and evaluation")
{
    // unicolor specialization of a colored pure-braid matrix has one color
    OperatorMatrix m = braid_matrix(BraidWord::parse(2, "s1 s1"), 1, Basis::VermaTensor);
    OperatorMatrix u = specialize_matrix(m, RingHom::unicolor(V2), /*collapses_colors=*/true);
    for (int i = 0; i < u.mat.rows(); ++i)
        for (int j = 0; j < u.mat.cols(); ++j)
            for (const auto& [e, c] : u.mat.at(i, j).terms())
                CHECK(e[VariableSet::s_index(2)] == 0);
    CHECK(u.colors_source == std::vector<int>{1, 1});

    // classical limit q = 1, s = 1 of sigma_1 on W_{2,1} is the swap
    OperatorMatrix s1 = braid_matrix(BraidWord::parse(2, "s1"), 1, Basis::A, /*unicolor=*/true);
    auto num = evaluate_matrix_rational(s1, {Rational(1), Rational(1), Rational(1), Rational(1)});
    CHECK(num[0][0] == 0);
    CHECK(num[0][1] == 1);
    CHECK(num[1][0] == 1);
    CHECK(num[1][1] == 0);

    // evaluating at a zero of the denominator is a reported error
    OperatorMatrix bad = braid_matrix(BraidWord::parse(2, "s1"), 1, Basis::VermaTensor);
    bad.denominator = LaurentPoly::one(V2) - sv(V2, 1, -2);
    CHECK_THROWS_AS(evaluate_matrix_rational(bad, {Rational(1), Rational(1), Rational(1), Rational(1)}),
                    std::domain_error);

    // numeric sanity at a 5th root of unity: finite entries, right size
    OperatorMatrix w = braid_matrix(BraidWord::parse(3, "s1 s2"), 2, Basis::VermaTensor, true);
    const double pi = 3.14159265358979323846;
    std::complex<double> zeta = std::polar(1.0, 2 * pi / 5);
    auto cnum = evaluate_matrix(w, {zeta, zeta, std::polar(1.0, 0.7), std::polar(1.0, 0.7),
                                    std::polar(1.0, 0.7)});
    CHECK(cnum.size() == 6);
    for (const auto& row : cnum)
        for (const auto& z : row)
            CHECK(std::isfinite(std::abs(z)));
}

TEST_CASE("random pure words really are pure")
{
    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i)
        CHECK(random_pure_word(3, 6, rng).is_pure());
}

TEST_CASE("random words agree across the two routes")
{
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> len(1, 4), gen(1, 2), sign(0, 1);
    const RingHom b = RingHom::bridge(V3);
    for (int trial = 0; trial < 5; ++trial) {
        BraidWord w;
        w.n = 3;
        for (int i = len(rng); i > 0; --i)
            w.letters.emplace_back(gen(rng), sign(rng) ? 1 : -1);
        for (int r = 0; r <= 2; ++r) {
            OperatorMatrix hom = braid_matrix(w, r, Basis::A);
            OperatorMatrix quant = braid_matrix(w, r, Basis::VermaTensor);
            for (int i = 0; i < hom.mat.rows(); ++i)
                for (int j = 0; j < hom.mat.cols(); ++j)
                    CHECK(b(hom.mat.at(i, j)) * quant.denominator ==
                          quant.mat.at(i, j) * b(hom.denominator));
        }
    }
}

TEST_CASE("matrix JSON round trip with denominators")
{
    OperatorMatrix m = braid_matrix(BraidWord::parse(2, "s1^-1"), 2, Basis::VermaTensor);
    CHECK(!m.denominator.is_one());
    std::string s = matrix_to_json(m).dump();
    OperatorMatrix back = matrix_from_json(Json::parse(s));
    CHECK(back.mat == m.mat);
    CHECK(back.denominator == m.denominator);
    CHECK(matrix_to_json(back).dump() == s);
}

// The braid generator images on the highest weight spaces Y_{n,r} span the
// full matrix algebra over the fraction field; record the computed fact.
TEST_CASE("generated algebra on highest weight spaces has full rank")
{
    struct Case {
        int n, r;
    };
    for (Case c : {Case{2, 1}, Case{3, 1}, Case{3, 2}}) {
        const VarsPtr vars = VariableSet::with_colors(c.n);
        std::vector<int> colors(c.n, 1);  // unicolor: the whole braid group acts
        PolyMatrix e = coproduct_action_matrix(Gen::e(), c.n, c.r, vars, colors);
        auto ker = kernel_basis(e);
        const int d = static_cast<int>(ker.size());
        REQUIRE(d >= 1);
        const int dim = weight_space_dim(c.n, c.r);
        PolyMatrix y(dim, d, vars);
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < dim; ++i)
                y.at(i, j) = ker[j][i];

        std::vector<std::string> words = {"", "s1", "s1 s1", "s1^-1"};
        if (c.n == 3) {
            words.insert(words.end(),
                         {"s2", "s1 s2", "s2 s1", "s2 s2", "s1 s2 s1", "s1 s1 s2", "s2 s2 s1",
                          "s1 s2 s2 s1", "s2^-1 s1"});
        }

        // rows of vec(C_w) where B_w y = y C_w over the fraction field
        PolyMatrix vecs(static_cast<int>(words.size()), d * d, vars);
        for (size_t wi = 0; wi < words.size(); ++wi) {
            BraidWord w = BraidWord::parse(c.n, words[wi]);
            OperatorMatrix b = braid_matrix(w, c.r, Basis::VermaTensor, /*unicolor=*/true);
            // columns of C_w, cleared to the common denominator prod_j den_j
            std::vector<std::vector<LaurentPoly>> cols(d);
            std::vector<LaurentPoly> dens(d);
            for (int j = 0; j < d; ++j) {
                auto sol = solve_in_span(y, b.mat.apply(ker[j]));
                REQUIRE(sol.has_value());
                cols[j] = sol->first;
                dens[j] = sol->second;
            }
            for (int j = 0; j < d; ++j) {
                LaurentPoly scale = LaurentPoly::one(vars);
                for (int k = 0; k < d; ++k)
                    if (k != j)
                        scale *= dens[k];
                for (int i = 0; i < d; ++i)
                    vecs.at(static_cast<int>(wi), i * d + j) = scale * cols[j][i];
            }
        }
        CHECK(rank(vecs) == d * d);
    }
}
