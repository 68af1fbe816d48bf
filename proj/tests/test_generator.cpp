#include <doctest.h>

#include "bendlocus/generator.hpp"
#include "bendlocus/homology.hpp"
#include "bendlocus/json_io.hpp"
#include "bendlocus/svg.hpp"
#include "bendlocus/verify.hpp"
#include "fixtures.hpp"

using namespace bendlocus;
using namespace fixture;

namespace {

InstanceSpec spec(std::size_t d, std::size_t n, std::size_t r, std::uint64_t seed)
{
    InstanceSpec s;
    s.d = d;
    s.n = n;
    s.r = r;
    s.seed = seed;
    return s;
}

std::size_t occurrences(const std::string& text, const std::string& needle)
{
    std::size_t count = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++count;
    return count;
}

}   // namespace

TEST_CASE("counter-based generator")
{
    Rng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    std::vector<std::uint64_t> xa, xb, xc, xd;
    for (int i = 0; i < 16; ++i)
    {
        xa.push_back(a.next());
        xb.push_back(b.next());
        xc.push_back(c.next());
        xd.push_back(d.next());
    }
    CHECK(xa == xb);
    CHECK(xa != xc);
    CHECK(xa != xd);

    Rng r(1);
    for (int i = 0; i < 1000; ++i)
    {
        const auto v = r.uniform_int(-3, 3);
        CHECK(v >= -3);
        CHECK(v <= 3);
    }
    CHECK_THROWS_AS(r.below(0), std::invalid_argument);
}

TEST_CASE("instance spec validation")
{
    CHECK_THROWS_AS(spec(2, 2, 3, 0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec(3, 0, 3, 0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec(3, 1, 1, 0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec(1, 1, 3, 0).validate(), std::invalid_argument);
    CHECK_NOTHROW(spec(3, 2, 4, 0).validate());
}

TEST_CASE("generation is deterministic and generic")
{
    const Instance a = generate(spec(3, 2, 4, 42));
    const Instance b = generate(spec(3, 2, 4, 42));
    CHECK(a.functions == b.functions);
    CHECK(a.attempts == b.attempts);
    CHECK(a.genericity.ok());
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(generate(spec(3, 2, 4, 43)).functions != a.functions);

    for (const auto& f : a.functions)
    {
        CHECK(f.dim() == 3);
        CHECK(f.size() == 4);
        for (const auto& g : f.forms())
            for (const auto& x : g.b)
            {
                CHECK(abs(x) <= 100);
                CHECK(denominator(x) <= (1 << 20));
            }
    }
}

TEST_CASE("parallel bend loci are not generic")
{
    const ConvexPLFunction f = tropical_line();
    const ConvexPLFunction g(2, {form({1, 0}, 0), form({0, 1}, 0), form({0, 0}, 1)});
    const GenericityReport rep = check_genericity({f, g});
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.no_parallel_faces);
    CHECK_FALSE(rep.details.empty());

    const ConvexPLFunction repeated(2, {form({1, 0}, 0), form({1, 0}, 1), form({0, 0}, 0)});
    CHECK_FALSE(check_genericity({repeated}).no_parallel_faces);
    CHECK(check_genericity({tropical_line()}).ok());
}

TEST_CASE("a polytope with a normal along a bend direction is not generic")
{
    // x = y is an edge direction of max(x, y, 0); its difference (1, -1) is
    // parallel to this facet normal.
    const Polyhedron p(2, {}, {form({1, -1}, 5), form({-1, -2}, 5), form({1, 3}, 5)});
    CHECK_FALSE(check_genericity({tropical_line()}, p).no_parallel_faces);
    CHECK(check_genericity({tropical_line()}, generic_triangle()).ok());
}

TEST_CASE("random simplices contain the requested cube")
{
    Rng rng(3, 9);
    for (std::size_t d = 2; d <= 4; ++d)
        for (int trial = 0; trial < 5; ++trial)
        {
            const Polyhedron p = random_simplex(d, 10, rng, 1 << 10);
            CHECK(p.inequalities.size() == d + 1);
            CHECK(is_bounded(p));
            CHECK(dimension(p) == static_cast<int>(d));
            // Corners of the cube [-10, 10]^d.
            for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask)
            {
                RatVector x;
                for (std::size_t i = 0; i < d; ++i)
                    x.push_back((mask >> i) & 1 ? 10 : -10);
                CHECK(p.contains(x));
            }
        }
}

TEST_CASE("generic truncation and box stability")
{
    for (std::uint64_t seed = 0; seed < 4; ++seed)
    {
        const Instance inst = generate(spec(3, 1, 4, seed));
        const PolyComplex x = intersection_part(inst.refinement);
        CHECK(x.genericity_violations.empty());
        const Truncation t1 = truncate_generic(x, seed, 1);
        const Truncation t2 = truncate_generic(x, seed, 2);
        CHECK(t2.m > t1.m);
        CHECK(homology(t1.complex) == homology(t2.complex));
        CHECK(homology(cone_off(t1.complex)) == homology(cone_off(t2.complex)));
    }
}

TEST_CASE("fundamental group heuristic")
{
    // The truncated plane, cut by the tropical line, is a disk.
    const PolyComplex disk = truncate_to_box(common_refinement({tropical_line()}), 5);
    CHECK(pi1_trivial_heuristic(disk) == Pi1Verdict::Trivial);

    const PolyComplex tree = truncate_to_box(bend_locus(tropical_line()), 5);
    CHECK(pi1_trivial_heuristic(tree) == Pi1Verdict::Trivial);

    // The boundary of the disk is a circle.
    const PolyComplex circle = subcomplex(disk, boundary_selector(disk));
    CHECK(betti(homology(circle)) == std::vector<std::size_t>{1, 1});
    CHECK_THROWS_AS(pi1_trivial_heuristic(circle), PreconditionFailed);
    CHECK_THROWS_AS(pi1_trivial_heuristic(cone_off(tree)), PreconditionFailed);

    const PolyComplex plane_box = truncate_to_box(bend_locus(tropical_plane()), 5);
    CHECK(pi1_trivial_heuristic(plane_box) == Pi1Verdict::Trivial);
    CHECK(to_string(Pi1Verdict::Inconclusive) != to_string(Pi1Verdict::Trivial));
}

TEST_CASE("JSON encodings round-trip")
{
    CHECK(to_json(Rational(3)).get<std::string>() == "3");
    CHECK(to_json(Rational(-1, 2)).get<std::string>() == "-1/2");
    CHECK(rational_from_json(Json("6/4")) == Rational(3, 2));
    CHECK(rational_from_json(Json(-5)) == -5);
    CHECK_THROWS_AS(rational_from_json(Json(0.5)), JsonFormatError);

    const Instance inst = generate(spec(2, 1, 4, 11));
    const Json j = to_json(inst);
    CHECK(functions_from_json(j) == inst.functions);
    CHECK(functions_from_json(j.at("functions")) == inst.functions);
    CHECK(functions_from_json(j.at("functions")[0]) == inst.functions);
    CHECK(spec_from_json(j.at("spec")) == inst.spec);

    const Polyhedron p = generic_triangle();
    const Json pj = to_json(p);
    CHECK(pj.at("inequalities")[0] == Json::parse(R"([["2","1"],"7"])"));
    const Polyhedron q = polyhedron_from_json(pj);
    CHECK(q.inequalities == p.inequalities);
    CHECK(q.ambient_dim == 2);

    const PolyComplex c = truncate_to_box(bend_locus(tropical_line()), 5);
    const Json cj = to_json(c);
    CHECK(cj.at("cells").size() == c.cells.size());
    CHECK(cj.at("face_pairs").size() == c.face_pairs.size());
    CHECK(cj.at("cells")[0].contains("geometry"));

    const HomologyResult h = homology(cone_off(c));
    const Json hj = to_json(h, connectivity_level(h, true));
    CHECK(hj.at("betti") == Json::parse("[1, 2]"));
    CHECK(hj.at("connectivity_level") == 0);
    CHECK(to_json(ConnectivityLevel{ConnectivityLevel::infinite}) == "inf");
}

TEST_CASE("reports are byte-stable and omit timings by default")
{
    RunOptions opt;
    opt.workers = 2;
    const auto a = verify_theorem(spec(2, 1, 3, 100), 4, opt);
    opt.workers = 1;
    const auto b = verify_theorem(spec(2, 1, 3, 100), 4, opt);
    const std::string ja = to_json(a).dump(2), jb = to_json(b).dump(2);
    CHECK(ja == jb);
    CHECK(ja.find("seconds") == std::string::npos);
    CHECK(a.all_pass());
    CHECK(a.records[3].seed == 103);
    CHECK(to_json(a, true).at("records")[0].contains("seconds"));
    CHECK_THROWS_AS(verify_base(spec(3, 2, 3, 0), 1), std::invalid_argument);
}

TEST_CASE("planar pictures")
{
    const std::string svg = render_svg({tropical_line()}, 5);
    CHECK(occurrences(svg, "<line ") == 3);
    CHECK(occurrences(svg, "<circle ") == 1);
    CHECK(svg == render_svg({tropical_line()}, 5));

    // Two generic tropical lines cross in one point.
    const ConvexPLFunction g(2, {form({2, 1}, 1), form({-1, 3}, -2), form({0, 0}, 0)});
    REQUIRE(check_genericity({tropical_line(), g}).ok());
    const std::string two = render_svg({tropical_line(), g}, 20);
    CHECK(occurrences(two, "fill=\"#e377c2\"") == intersection_complex({tropical_line(), g}).count(0));
    CHECK(intersection_complex({tropical_line(), g}).count(0) >= 1);

    CHECK_THROWS_AS(render_svg({tropical_plane()}, 5), UnsupportedDimension);
    const ConvexPLFunction shifted(2, {form({1, 0}, -1), form({0, 1}, 0), form({0, 0}, 0)});
    CHECK_THROWS_AS(render_svg({shifted}, Rational(1, 2)), BoxTooSmall);
}
