#include <doctest.h>

#include "bendlocus/complex.hpp"
#include "bendlocus/homology.hpp"
#include "fixtures.hpp"

using namespace bendlocus;
using namespace fixture;

TEST_CASE("argmax evaluation and label cells")
{
    auto f = tropical_line();
    auto [v, s] = evaluate_with_argmax(f, vec({0, 0}));
    CHECK(v == 0);
    CHECK(s.indices() == std::vector<std::size_t>{0, 1, 2});
    auto [v2, s2] = evaluate_with_argmax(f, vec({2, -1}));
    CHECK(v2 == 2);
    CHECK(s2.indices() == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(evaluate_with_argmax(f, vec({1})), DimensionMismatch);
    CHECK_THROWS_AS(ConvexPLFunction(2, {form({1}, 0)}), DimensionMismatch);
    CHECK_THROWS_AS(ConvexPLFunction(2, {}), std::invalid_argument);

    Polyhedron ray = cell_of_label(f, ArgmaxLabel({0, 2}));
    CHECK(dimension(ray) == 1);
    CHECK_FALSE(is_bounded(ray));
    CHECK(dimension(cell_of_label(f, ArgmaxLabel({0, 1, 2}))) == 0);
}

TEST_CASE("realized labels agree with brute force")
{
    CHECK(realized_labels(tropical_line()) == realized_labels_brute_force(tropical_line()));
    CHECK(realized_labels(tropical_line()).size() == 7);
    CHECK(realized_labels(tropical_plane()) == realized_labels_brute_force(tropical_plane()));
}

TEST_CASE("tropical line as a complex")
{
    PolyComplex x = bend_locus(tropical_line());
    CHECK(x.count(0) == 1);
    CHECK(x.count(1) == 3);
    CHECK(x.genericity_violations.empty());
    REQUIRE(x.face_pairs.size() == 3);
    for (const auto& p : x.face_pairs)
        CHECK(p.facet == x.cells_of_dim(0).front());
    CHECK_THROWS_AS(boundary_matrices(x), UnboundedCell);

    PolyComplex cpt = compact_subcomplex(x);
    CHECK(cpt.cells.size() == 1);
    CHECK(betti(homology(cpt)) == std::vector<std::size_t>{1});

    CHECK(box_radius(x) == 0);
    CHECK(complete_intersection({tropical_line()}).cells.size() == 4);
}

TEST_CASE("single-form function has an empty bend locus")
{
    ConvexPLFunction f(2, {form({1, 2}, 3)});
    PolyComplex x = complete_intersection({f});
    CHECK(x.empty());
    CHECK(box_radius(x) == 1);
    CHECK(truncate_to_box(x, Rational(3)).empty());
    PolyComplex coned = cone_off(truncate_to_box(x, Rational(3)));
    CHECK(coned.cells.size() == 1);
    CHECK(betti(homology(coned)) == std::vector<std::size_t>{1});
}

TEST_CASE("complete intersection preconditions")
{
    ConvexPLFunction g(3, {form({1, 0, 0}, 0), form({0, 0, 0}, 0)});
    CHECK_THROWS_AS(complete_intersection({tropical_line(), g}), DimensionMismatch);
    CHECK_THROWS_AS(complete_intersection({tropical_line(), tropical_line()}), std::invalid_argument);
}

TEST_CASE("truncated tropical line")
{
    PolyComplex t = truncate_to_box(bend_locus(tropical_line()), Rational(5));
    CHECK(t.count(0) == 4);
    CHECK(t.count(1) == 3);
    CHECK(t.all_bounded());
    std::size_t marked = 0;
    for (const auto& c : t.cells)
        marked += c.boundary_marker ? 1 : 0;
    CHECK(marked == 3);
    // The diagonal ray exits through the corner (5, 5).
    CHECK(t.genericity_violations.size() == 1);
    CHECK(verify_face_inclusions(t));

    ChainComplex cc = boundary_matrices(t);
    REQUIRE(cc.boundary.size() == 2);
    const IntMatrix& d1 = cc.boundary[1];
    CHECK(rank(d1) == 3);
    for (std::size_t j = 0; j < d1.cols(); ++j)
    {
        Integer sum = 0, nonzero = 0;
        for (std::size_t i = 0; i < d1.rows(); ++i)
        {
            sum += d1(i, j);
            nonzero += d1(i, j) != 0 ? 1 : 0;
        }
        CHECK(sum == 0);
        CHECK(nonzero == 2);
    }

    HomologyResult h = homology(t);
    CHECK(betti(h) == std::vector<std::size_t>{1, 0});
    CHECK(connectivity_level(h, true).is_infinite());

    PolyComplex coned = cone_off(t);
    CHECK(coned.count(0) == 5);
    CHECK(coned.count(1) == 6);
    CHECK(coned.euler_characteristic() == -1);
    HomologyResult hc = homology(coned);
    CHECK(betti(hc) == std::vector<std::size_t>{1, 2});
    CHECK(connectivity_level(hc, true).level == 0);

    HomologyResult rel = relative_homology(t, boundary_selector(t));
    CHECK(betti(rel) == std::vector<std::size_t>{0, 2});
    CHECK(relative_connectivity_level(rel).level == 0);

    CHECK_THROWS_AS(cone_off(bend_locus(tropical_line())), NotTruncated);
    CHECK_THROWS_AS(truncate_to_box(bend_locus(tropical_line()), Rational(0)), std::invalid_argument);
}

TEST_CASE("box must contain every vertex")
{
    ConvexPLFunction f(2, {form({1, 0}, -7), form({0, 1}, 0), form({0, 0}, 0)});   // vertex at (7, 0)
    CHECK_THROWS_AS(truncate_to_box(bend_locus(f), Rational(7)), BoxTooSmall);
    CHECK_NOTHROW(truncate_to_box(bend_locus(f), Rational(8)));
}

TEST_CASE("cone-off of small boundary configurations")
{
    PolyComplex t = truncate_to_box(bend_locus(tropical_line()), Rational(5));
    // Drop markers: the apex becomes an isolated vertex.
    PolyComplex unmarked = t;
    for (auto& c : unmarked.cells)
        c.boundary_marker = false;
    PolyComplex c1 = cone_off(unmarked);
    CHECK(c1.cells.size() == t.cells.size() + 1);
    CHECK(betti(homology(c1)) == std::vector<std::size_t>{2, 0});

    // A single marked vertex gets one cone edge to the apex.
    PolyComplex one = unmarked;
    one.cells[one.cells_of_dim(0).front()].boundary_marker = true;
    PolyComplex c2 = cone_off(one);
    CHECK(c2.count(0) == 5);
    CHECK(c2.count(1) == 4);
    CHECK(betti(homology(c2)) == std::vector<std::size_t>{1, 0});
}

TEST_CASE("relative homology edge cases")
{
    PolyComplex t = truncate_to_box(bend_locus(tropical_line()), Rational(5));
    std::vector<bool> none(t.cells.size(), false), all(t.cells.size(), true);
    CHECK(relative_homology(t, none) == homology(t));
    HomologyResult h = relative_homology(t, all);
    for (auto b : h.betti)
        CHECK(b == 0);
    std::vector<bool> bad(t.cells.size(), false);
    bad[t.cells_of_dim(1).front()] = true;
    CHECK_THROWS_AS(relative_homology(t, bad), NotSubcomplex);
}

TEST_CASE("connectivity levels")
{
    HomologyResult point{{1}, {{}}};
    CHECK(connectivity_level(point, true).is_infinite());
    CHECK(connectivity_level(HomologyResult{}, false).level == -2);
    HomologyResult two_points{{2}, {{}}};
    CHECK(connectivity_level(two_points, true).level == -1);
    HomologyResult circle{{1, 1}, {{}, {}}};
    CHECK(connectivity_level(circle, true).level == 0);
    HomologyResult torsion{{1, 0, 0}, {{}, {Integer(2)}, {}}};
    CHECK(connectivity_level(torsion, true).level == 0);
}

TEST_CASE("pulling triangulation of a square and a pentagon")
{
    ConvexPLFunction constant(2, {form({0, 0}, 0)});
    PolyComplex plane = common_refinement({constant});
    REQUIRE(plane.cells.size() == 1);
    CHECK_FALSE(plane.cells[0].bounded);
    CHECK_THROWS_AS(triangulate(plane), UnboundedCell);

    PolyComplex square = truncate_to_box(plane, Rational(1));
    CHECK(square.count(2) == 1);
    CHECK(square.count(1) == 4);
    PolyComplex ts = triangulate(square);
    CHECK(ts.count(2) == 2);
    CHECK(ts.count(1) == 5);
    CHECK(ts.euler_characteristic() == square.euler_characteristic());
    CHECK(homology(ts) == homology(square));

    Polyhedron pentagon(2, {},
                        {form({0, 1}, 2), form({-2, 1}, 5), form({-1, -2}, 6), form({1, -2}, 6), form({2, 1}, 5)});
    PolyComplex pent = clip_to_polyhedron(plane, pentagon);
    CHECK(pent.count(0) == 5);
    CHECK(pent.count(2) == 1);
    PolyComplex tp = triangulate(pent);
    CHECK(tp.count(2) == 3);
    CHECK(homology(tp) == homology(pent));
    CHECK(boundary_squares_to_zero(boundary_matrices(tp)));
    CHECK(boundary_squares_to_zero(boundary_matrices(pent)));
}

TEST_CASE("already simplicial complexes triangulate to themselves")
{
    PolyComplex t = truncate_to_box(bend_locus(tropical_line()), Rational(5));
    PolyComplex s = triangulate(t);
    CHECK(s.count(0) == t.count(0));
    CHECK(s.count(1) == t.count(1));
    CHECK(homology(s) == homology(t));
}

TEST_CASE("refinement of the tropical line")
{
    PolyComplex full = common_refinement({tropical_line()});
    CHECK(full.count(2) == 3);
    CHECK(full.count(1) == 3);
    CHECK(full.count(0) == 1);
    CHECK(full.euler_characteristic() == 1);
    PolyComplex cpt = compact_subcomplex(full);
    CHECK(cpt.cells.size() == 1);
    CHECK(betti(homology(cpt)) == std::vector<std::size_t>{1});
}

TEST_CASE("tropical plane")
{
    PolyComplex x = bend_locus(tropical_plane());
    CHECK(x.count(0) == 1);
    CHECK(x.count(1) == 4);
    CHECK(x.count(2) == 6);
    PolyComplex t = truncate_to_box(x, Rational(3));
    CHECK(boundary_squares_to_zero(boundary_matrices(t)));
    CHECK(connectivity_level(homology(t), true).is_infinite());
    PolyComplex coned = cone_off(t);
    CHECK(boundary_squares_to_zero(boundary_matrices(coned)));
    CHECK(connectivity_level(homology(coned), true).at_least(1));
    CHECK(pi1_trivial_heuristic(t) == Pi1Verdict::Trivial);
    CHECK(homology(triangulate(t)) == homology(t));
    CHECK(homology(triangulate(coned)) == homology(coned));
}
