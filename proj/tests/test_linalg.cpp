#include <doctest.h>

#include <random>

#include "bendlocus/linalg.hpp"
#include "bendlocus/polyhedron.hpp"
#include "oracles.hpp"

using namespace bendlocus;

namespace {

RatMatrix rat(const std::vector<std::vector<long>>& rows)
{
    std::vector<RatVector> r;
    for (const auto& row : rows)
    {
        RatVector v;
        for (long x : row)
            v.push_back(Rational(x));
        r.push_back(v);
    }
    return RatMatrix::from_rows(r);
}

IntMatrix integer(const std::vector<std::vector<long>>& rows)
{
    std::vector<std::vector<Integer>> r;
    for (const auto& row : rows)
    {
        std::vector<Integer> v;
        for (long x : row)
            v.push_back(Integer(x));
        r.push_back(v);
    }
    return IntMatrix::from_rows(r);
}

}   // namespace

TEST_CASE("rational text encoding")
{
    CHECK(to_string(Rational(3, 6)) == "1/2");
    CHECK(to_string(Rational(-4, 2)) == "-2");
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("rank of small matrices")
{
    CHECK(rank(rat({{2, 4}, {6, 8}})) == 2);
    CHECK(rank(rat({{1, 2}, {2, 4}})) == 1);
    CHECK(rank(rat({{0, 0}, {0, 0}})) == 0);
    CHECK(rank(RatMatrix(0, 3)) == 0);
}

TEST_CASE("kernel basis")
{
    auto k = kernel_basis(rat({{1, 2, 3}, {4, 5, 6}}));
    REQUIRE(k.size() == 1);
    RatVector expected{Rational(1), Rational(-2), Rational(1)};
    CHECK((k[0] == expected || k[0] == Rational(-1) * expected));
    CHECK(kernel_basis(rat({{1, 0}, {0, 1}})).empty());
    CHECK(kernel_basis(RatMatrix(0, 2)).size() == 2);
}

TEST_CASE("solve and determinant")
{
    auto x = solve(rat({{2, 1}, {1, 3}}), {Rational(3), Rational(4)});
    REQUIRE(x);
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 1);
    CHECK_FALSE(solve(rat({{1, 1}, {1, 1}}), {Rational(1), Rational(2)}));
    CHECK(determinant(rat({{1, 2}, {3, 4}})) == -2);
    CHECK(determinant(integer({{2, 0, 0}, {0, 3, 0}, {0, 0, 4}})) == 24);
}

TEST_CASE("Smith normal form examples")
{
    auto f = invariant_factors(integer({{2, 4}, {6, 8}}));
    REQUIRE(f.size() == 2);
    CHECK(f[0] == 2);
    CHECK(f[1] == 4);
    CHECK(invariant_factors(integer({{0, 0}, {0, 0}})).empty());
    auto g = invariant_factors(integer({{1, -1, 0}, {0, 1, -1}, {-1, 0, 1}}));
    REQUIRE(g.size() == 2);
    CHECK(g[0] == 1);
    CHECK(g[1] == 1);
}

TEST_CASE("Smith normal form transforms are unimodular and diagonalize")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> entry(-6, 6), shape(1, 5);
    for (int trial = 0; trial < 40; ++trial)
    {
        const auto r = static_cast<std::size_t>(shape(rng)), c = static_cast<std::size_t>(shape(rng));
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = entry(rng);
        SmithForm s = smith_normal_form(m);
        IntMatrix d = s.left * m * s.right;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
            {
                Integer expected = (i == j && i < s.invariant_factors.size()) ? s.invariant_factors[i] : Integer(0);
                CHECK(d(i, j) == expected);
            }
        CHECK(abs(determinant(s.left)) == 1);
        CHECK(abs(determinant(s.right)) == 1);
        CHECK(s.invariant_factors == invariant_factors(m));
    }
}

TEST_CASE("Smith invariant factors match the gcd-of-minors oracle")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> entry(-9, 9), shape(1, 5);
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto r = static_cast<std::size_t>(shape(rng)), c = static_cast<std::size_t>(shape(rng));
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = entry(rng) * (trial % 3 == 0 ? 2 : 1);
        CHECK(invariant_factors(m) == oracle::invariant_factors_by_minors(m));
    }
}

TEST_CASE("LP over the unit square")
{
    Polyhedron square(2, {},
                      {{{Rational(1), Rational(0)}, Rational(0)},
                       {{Rational(-1), Rational(0)}, Rational(1)},
                       {{Rational(0), Rational(1)}, Rational(0)},
                       {{Rational(0), Rational(-1)}, Rational(1)}});
    auto o = lp_optimize({Rational(1), Rational(1)}, square, Sense::Maximize);
    REQUIRE(o.status == LPStatus::Optimal);
    CHECK(*o.value == 2);
    CHECK(square.contains(*o.witness));
    auto lo = lp_optimize({Rational(1), Rational(1)}, square, Sense::Minimize);
    CHECK(*lo.value == 0);
    CHECK(dimension(square) == 2);
    CHECK(is_bounded(square));
    CHECK(implied_equalities(square).empty());
}

TEST_CASE("LP statuses and degenerate polyhedra")
{
    Polyhedron half(2, {}, {{{Rational(1), Rational(0)}, Rational(0)}});
    CHECK(lp_optimize({Rational(1), Rational(0)}, half, Sense::Maximize).status == LPStatus::Unbounded);
    CHECK_FALSE(is_bounded(half));
    CHECK(dimension(half) == 2);

    Polyhedron empty(1, {}, {{{Rational(1)}, Rational(-2)}, {{Rational(-1)}, Rational(1)}});
    CHECK(lp_optimize({Rational(1)}, empty, Sense::Maximize).status == LPStatus::Infeasible);
    CHECK(dimension(empty) == -1);
    CHECK_THROWS_AS(is_bounded(empty), EmptyPolyhedron);

    // x >= 0, -x >= 0: a point on a line
    Polyhedron segment(2, {{{Rational(0), Rational(1)}, Rational(0)}},
                       {{{Rational(1), Rational(0)}, Rational(0)}, {{Rational(-1), Rational(0)}, Rational(0)}});
    CHECK(dimension(segment) == 0);
    CHECK(implied_equalities(segment) == std::vector<std::size_t>{0, 1});
    CHECK(is_bounded(segment));
    auto p = relative_interior_point(segment);
    CHECK(segment.contains(p));
}
