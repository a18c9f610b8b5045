#include <catch2/catch_amalgamated.hpp>

#include "vermahom/linalg.hpp"

using namespace vermahom;

namespace {
const VarsPtr V = VariableSet::with_colors(2);
LaurentPoly c(long k) { return LaurentPoly::constant(V, k); }
LaurentPoly qv(int e) { return LaurentPoly::variable(V, VariableSet::q_index, e); }
LaurentPoly sv(int i, int e = 1) { return LaurentPoly::variable(V, VariableSet::s_index(i), e); }
}  // namespace

TEST_CASE("determinant via Bareiss")
{
    PolyMatrix m(3, 3, V);
    long vals[3][3] = {{2, 0, 1}, {1, 1, 0}, {0, 3, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m.at(i, j) = c(vals[i][j]);
    CHECK(determinant(m) == c(5));

    PolyMatrix t(2, 2, V);
    t.at(0, 0) = qv(1);
    t.at(0, 1) = sv(1) + sv(2, -3);
    t.at(1, 1) = qv(-1);
    CHECK(determinant(t) == LaurentPoly::one(V));
}

TEST_CASE("kernel basis is exact and content-normalized")
{
    // rows: [q, 1, 0], [0, s1, s1*q]  ->  kernel is one-dimensional
    PolyMatrix m(2, 3, V);
    m.at(0, 0) = qv(1);
    m.at(0, 1) = c(1);
    m.at(1, 1) = sv(1);
    m.at(1, 2) = sv(1) * qv(1);
    auto ker = kernel_basis(m);
    REQUIRE(ker.size() == 1);
    for (int i = 0; i < 2; ++i) {
        LaurentPoly acc = LaurentPoly::zero(V);
        for (int j = 0; j < 3; ++j)
            acc += m.at(i, j) * ker[0][j];
        CHECK(acc.is_zero());
    }
    BigInt g = 0;
    for (const auto& p : ker[0])
        g = boost::multiprecision::gcd(g, p.content());
    CHECK(g == 1);
    CHECK(rank(m) == 2);
}

TEST_CASE("rank detects dependent rows")
{
    PolyMatrix m(3, 3, V);
    m.at(0, 0) = qv(1);
    m.at(0, 2) = sv(2);
    m.at(1, 1) = c(1);
    // row 2 = q * row 0
    m.at(2, 0) = qv(2);
    m.at(2, 2) = qv(1) * sv(2);
    CHECK(rank(m) == 2);
    CHECK(kernel_basis(m).size() == 1);
}

TEST_CASE("adjugate inverse verified by multiplication")
{
    PolyMatrix m(3, 3, V);
    m.at(0, 0) = c(1);
    m.at(0, 1) = qv(1);
    m.at(0, 2) = sv(1, -1);
    m.at(1, 1) = c(1) + qv(2);
    m.at(1, 2) = c(2);
    m.at(2, 2) = sv(2);
    auto [inv, den] = inverse_with_denominator(m);
    CHECK(m * inv == den * PolyMatrix::identity(3, V));
    CHECK(inv * m == den * PolyMatrix::identity(3, V));
    CHECK(den == determinant(m));

    PolyMatrix sing(2, 2, V);
    sing.at(0, 0) = qv(1);
    sing.at(1, 0) = qv(1);
    CHECK_THROWS_AS(inverse_with_denominator(sing), std::runtime_error);
}

TEST_CASE("span membership")
{
    PolyMatrix span(3, 2, V);
    span.at(0, 0) = c(1);
    span.at(1, 0) = qv(1);
    span.at(1, 1) = sv(1);
    span.at(2, 1) = c(1);

    // v = q * col0 + (1 - q^2) * col1
    std::vector<LaurentPoly> v = {
        qv(1), qv(2) + sv(1) * (c(1) - qv(2)), c(1) - qv(2)};
    auto sol = solve_in_span(span, v);
    REQUIRE(sol.has_value());
    auto& [nums, den] = *sol;
    for (int i = 0; i < 3; ++i) {
        LaurentPoly acc = LaurentPoly::zero(V);
        for (int j = 0; j < 2; ++j)
            acc += span.at(i, j) * nums[j];
        CHECK(acc == den * v[i]);
    }

    std::vector<LaurentPoly> outside = {c(0), c(0), c(0)};
    outside[0] = c(1);
    outside[1] = c(0);
    outside[2] = c(0);
    // (1,0,0) is independent of the two columns
    CHECK(!solve_in_span(span, outside).has_value());
}

TEST_CASE("parallel_for covers every index")
{
    std::vector<std::atomic<int>> hits(37);
    parallel_for(37, [&](int i) { hits[i].fetch_add(1); });
    for (auto& h : hits)
        CHECK(h.load() == 1);
}
