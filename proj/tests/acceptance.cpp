// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "bendlocus/generator.hpp"
#include "bendlocus/homology.hpp"
#include "bendlocus/json_io.hpp"
#include "bendlocus/verify.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bendlocus;

namespace {

// Tolerances and sizes.
constexpr double kRelGap = 1e-6;
constexpr double kResidual = 1e-9;
constexpr std::size_t kInstances = 25;
constexpr std::size_t kInstancesLarge = 10;
constexpr std::size_t kSnfMatrices = 100;
constexpr std::size_t kOracleInstances = 24;
constexpr std::uint64_t kSeed = 20000;

struct Tuple
{
    std::size_t d, n, r, count;
};

const std::vector<Tuple> kTuples = {{2, 1, 3, kInstances}, {2, 1, 4, kInstances}, {3, 1, 3, kInstances},
                                    {3, 2, 3, kInstances}, {3, 2, 4, kInstances}, {4, 2, 3, kInstances},
                                    {4, 3, 3, kInstancesLarge}};

InstanceSpec make_spec(std::size_t d, std::size_t n, std::size_t r, std::uint64_t seed)
{
    InstanceSpec s;
    s.d = d;
    s.n = n;
    s.r = r;
    s.seed = seed;
    return s;
}

std::string tuple_name(const Tuple& t)
{
    return "(" + std::to_string(t.d) + "," + std::to_string(t.n) + "," + std::to_string(t.r) + ")";
}

class Criterion
{
    public:
        explicit Criterion(int number) : number_(number), start_(std::chrono::steady_clock::now()) {}

        void check(bool ok, const std::string& what)
        {
            ++checks_;
            if (!ok)
            {
                ++failures_;
                if (failures_ <= 5)
                    std::fprintf(stderr, "  criterion %d failure: %s\n", number_, what.c_str());
            }
        }
        void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
        bool finish() const
        {
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
            std::printf("criterion %d: %s (%zu checks, %zu failures, %.1fs) %s\n", number_,
                        failures_ == 0 ? "PASS" : "FAIL", checks_, failures_, secs, notes_.c_str());
            std::fflush(stdout);
            return failures_ == 0;
        }

    private:
        int number_;
        std::chrono::steady_clock::time_point start_;
        std::size_t checks_ = 0;
        std::size_t failures_ = 0;
        std::string notes_;
};

bool euler_poincare(const PolyComplex& c)
{
    return c.euler_characteristic() == homology(c).euler_characteristic();
}

bool boundary_squares_to_zero(const PolyComplex& c)
{
    return fixture::boundary_squares_to_zero(boundary_matrices(c));
}

// Per-instance data for the Lemma and Morse criteria.
struct LemmaFacts
{
    std::string error;
    bool lemma_pass = false;
    bool morse_pass = false;
    std::size_t vertices_inside = 0;
    std::size_t vertex_points = 0;
    std::size_t max_per_face = 0;
    bool residuals_ok = true;
    bool values_distinct = true;
    bool links_pass = true;
    std::size_t links_checked = 0;
    bool invariants_ok = true;
};

bool pairwise_distinct(const std::vector<CriticalPoint>& pts)
{
    double scale = 0;
    for (const auto& p : pts)
        scale = std::max(scale, std::fabs(p.value));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (std::fabs(pts[i].value - pts[j].value) <= kRelGap * scale)
                return false;
    return true;
}

LemmaFacts lemma_facts(const InstanceSpec& spec)
{
    LemmaFacts f;
    try
    {
        const LemmaRecord rec = verify_lemma_instance(spec);
        f.lemma_pass = rec.pass;
        f.morse_pass = rec.morse_pass;
        if (rec.error)
            f.error = *rec.error;

        // Recompute the Morse data for the same instance and polytope and
        // check its structure directly.
        const LemmaSetup ls = lemma_setup(generate(spec));
        const PolyComplex& c = ls.setup.x_in_p;
        for (const auto& cell : c.cells)
            if (cell.dim == 0 && !cell.boundary_marker)
                ++f.vertices_inside;
        const auto& pts = ls.morse.points;
        std::map<std::size_t, std::size_t> per_face;
        for (const auto& p : pts)
        {
            if (p.kind == CriticalKind::Vertex)
                ++f.vertex_points;
            else
            {
                f.max_per_face = std::max(f.max_per_face, ++per_face[p.host_cell]);
                f.residuals_ok = f.residuals_ok && p.residual <= kResidual;
            }
        }
        f.values_distinct = pairwise_distinct(pts);
        for (const auto& l : verify_links(ls.setup, pts))
        {
            ++f.links_checked;
            f.links_pass = f.links_pass && l.pass && l.observed.at_least(l.expected);
        }
        f.invariants_ok = boundary_squares_to_zero(c) && euler_poincare(c);
    }
    catch (const std::exception& e)
    {
        f.error = e.what();
    }
    return f;
}

template <typename T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& job)
{
    return run_parallel<T>(count, default_workers(), job);
}

}   // namespace

int main()
{
    bool all = true;
    RunOptions opt;
    opt.workers = default_workers();
    std::map<std::string, std::size_t> pi1_outcomes;
    std::size_t pi1_runs = 0;
    bool pi1_ok = true;

    // 1. Connectivity of X and of its one-point compactification.
    {
        Criterion c(1);
        for (const auto& t : kTuples)
        {
            const auto start = std::chrono::steady_clock::now();
            const auto rep = verify_theorem(make_spec(t.d, t.n, t.r, kSeed), t.count, opt);
            const int required = static_cast<int>(t.d - t.n) - 1;
            std::size_t ok = 0;
            for (const auto& r : rep.records)
            {
                const bool pass = !r.error && r.level_x.at_least(required) && r.level_cone.at_least(required) &&
                                  r.level_x.level != -2 && r.genericity.ok();
                c.check(pass && r.pass, tuple_name(t) + " seed " + std::to_string(r.seed) +
                                            (r.error ? ": " + *r.error : ""));
                ok += pass;
                if (required >= 1)
                    for (const auto& v : {r.pi1_x, r.pi1_cone})
                    {
                        ++pi1_runs;
                        const std::string s = v.value_or("missing");
                        ++pi1_outcomes[s];
                        pi1_ok = pi1_ok && (s == "trivial" || s == "inconclusive");
                    }
            }
            c.check(rep.records.size() == t.count, tuple_name(t) + " record count");
            char buf[96];
            std::snprintf(buf, sizeof buf, "%s %zu/%zu %.1fs", tuple_name(t).c_str(), ok, rep.records.size(),
                          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
            c.note(buf);
        }
        all = c.finish() && all;
    }

    // 2. The single-hypersurface statements.
    {
        Criterion c(2);
        for (std::size_t d = 2; d <= 4; ++d)
        {
            const auto rep = verify_base(make_spec(d, 1, d + 1, kSeed), kInstances, opt);
            std::size_t ok = 0;
            for (const auto& r : rep.records)
            {
                const int required = static_cast<int>(d) - 2;
                const bool pass = !r.error && r.level_cone.at_least(required) && r.compact_x_nonempty &&
                                  r.level_compact_x.at_least(required) && r.compact_refinement_applicable &&
                                  r.compact_refinement_is_point;
                c.check(pass && r.pass, "d=" + std::to_string(d) + " seed " + std::to_string(r.seed) +
                                            (r.error ? ": " + *r.error : ""));
                ok += pass;
            }
            c.note("d=" + std::to_string(d) + " " + std::to_string(ok) + "/" + std::to_string(rep.records.size()));
        }
        all = c.finish() && all;
    }

    // 3 and 4. Relative connectivity inside a random simplex; Morse data.
    {
        Criterion c3(3);
        std::vector<std::pair<Tuple, std::vector<LemmaFacts>>> facts;
        for (const auto& t : kTuples)
        {
            auto f = parallel_map<LemmaFacts>(t.count, [&](std::size_t i) {
                return lemma_facts(make_spec(t.d, t.n, t.r, kSeed + i));
            });
            std::size_t ok = 0;
            for (std::size_t i = 0; i < f.size(); ++i)
            {
                c3.check(f[i].lemma_pass, tuple_name(t) + " seed " + std::to_string(kSeed + i) + " " + f[i].error);
                ok += f[i].lemma_pass;
            }
            c3.note(tuple_name(t) + " " + std::to_string(ok) + "/" + std::to_string(f.size()));
            facts.emplace_back(t, std::move(f));
        }
        all = c3.finish() && all;

        Criterion c4(4);
        std::size_t points = 0, links = 0;
        for (const auto& [t, fs] : facts)
            for (std::size_t i = 0; i < fs.size(); ++i)
            {
                const auto& f = fs[i];
                const std::string where = tuple_name(t) + " seed " + std::to_string(kSeed + i);
                c4.check(f.error.empty(), where + " error " + f.error);
                c4.check(f.morse_pass, where + " Morse report");
                c4.check(f.vertex_points == f.vertices_inside, where + " vertices in int P not all critical");
                c4.check(f.max_per_face <= 1, where + " several critical points on one face");
                c4.check(f.residuals_ok, where + " Newton residual");
                c4.check(f.values_distinct, where + " critical values not distinct");
                c4.check(f.links_pass, where + " link connectivity");
                c4.check(f.invariants_ok, where + " chain invariants of X in P");
                points += f.vertex_points;
                links += f.links_checked;
            }
        c4.note(std::to_string(links) + " links checked, " + std::to_string(points) + " vertex critical points");
        all = c4.finish() && all;
    }

    // 5. Oracle equivalences.
    {
        Criterion c(5);
        std::mt19937_64 rng(77);
        std::uniform_int_distribution<int> entry(-12, 12), shape(1, 5);
        for (std::size_t trial = 0; trial < kSnfMatrices; ++trial)
        {
            const auto r = static_cast<std::size_t>(shape(rng)), k = static_cast<std::size_t>(shape(rng));
            IntMatrix m(r, k);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    m(i, j) = entry(rng) * (trial % 4 == 0 ? 6 : 1);
            c.check(invariant_factors(m) == oracle::invariant_factors_by_minors(m),
                    "SNF matrix " + std::to_string(trial));
        }

        const std::vector<Tuple> small = {{2, 1, 4, 0}, {3, 1, 3, 0}, {3, 2, 3, 0}, {3, 1, 4, 0}};
        struct Pair
        {
            bool triangulation, box, ran;
            std::string error;
        };
        std::size_t tri = 0, box = 0;
        for (const auto& t : small)
        {
            const auto res = parallel_map<Pair>(kOracleInstances / small.size(), [&](std::size_t i) {
                Pair p{false, false, false, {}};
                try
                {
                    const InstanceSpec s = make_spec(t.d, t.n, t.r, kSeed + 500 + i);
                    const PolyComplex x = intersection_part(generate(s).refinement);
                    const Truncation tr = truncate_generic(x, s.seed);
                    const PolyComplex coned = cone_off(tr.complex);
                    p.triangulation = homology(tr.complex) == homology(triangulate(tr.complex)) &&
                                      homology(coned) == homology(triangulate(coned));
                    const PolyComplex big = truncate_to_box(x, 2 * tr.m);
                    p.box = homology(tr.complex) == homology(big) && homology(coned) == homology(cone_off(big));
                    p.ran = true;
                }
                catch (const std::exception& e)
                {
                    p.error = e.what();
                }
                return p;
            });
            for (const auto& p : res)
            {
                c.check(p.ran, tuple_name(t) + " " + p.error);
                c.check(p.triangulation, tuple_name(t) + " triangulation homology differs");
                c.check(p.box, tuple_name(t) + " box M vs 2M homology differs");
                tri += p.triangulation;
                box += p.box;
            }
        }
        c.note("SNF " + std::to_string(kSnfMatrices) + " matrices; triangulation " + std::to_string(tri) +
               " instances; box " + std::to_string(box) + " instances");
        c.check(tri >= 20 && box >= 20, "too few oracle instances");
        all = c.finish() && all;
    }

    // 6. Tropical line closed forms.
    {
        Criterion c(6);
        const ConvexPLFunction line = fixture::tropical_line();
        const PolyComplex x = truncate_to_box(intersection_complex({line}), 5);
        const PolyComplex coned = cone_off(x);
        const MorseSetup s = make_morse_setup({line}, fixture::generic_triangle());
        const HomologyResult hx = homology(x), hc = homology(coned),
                             hr = relative_homology(s.x_in_p, fixture::boundary_selector(s.x_in_p));
        c.check(hx.betti == std::vector<std::size_t>{1, 0} && hx.torsion_free_at(0) && hx.torsion_free_at(1),
                "X betti");
        c.check(hc.betti == std::vector<std::size_t>{1, 2} && hc.torsion_free_at(1), "cone betti");
        c.check(hr.betti == std::vector<std::size_t>{0, 2} && hr.torsion_free_at(1), "relative betti");
        c.check(x.count(0) == 4 && x.count(1) == 3, "truncated cell counts");
        c.check(coned.count(0) == 5 && coned.count(1) == 6, "cone cell counts");
        all = c.finish() && all;
    }

    // 7. Structural invariants and determinism.
    {
        Criterion c(7);
        std::size_t complexes = 0, cells = 0;
        for (const auto& t : kTuples)
        {
            if (t.d == 4 && t.n == 3)
                continue;
            for (std::size_t i = 0; i < 4; ++i)
            {
                const InstanceSpec s = make_spec(t.d, t.n, t.r, kSeed + 900 + i);
                const Instance inst = generate(s);
                const PolyComplex x = intersection_part(inst.refinement);
                for (const auto& cell : x.cells)
                {
                    ++cells;
                    const long expected =
                        static_cast<long>(t.d) - static_cast<long>(cell.label.codimension_count());
                    c.check(cell.dim == expected && dimension(*cell.geometry) == expected,
                            tuple_name(t) + " dimension formula");
                }
                c.check(inst.refinement.euler_characteristic() == (t.d % 2 == 0 ? 1 : -1),
                        tuple_name(t) + " refinement cell count");
                const Truncation tr = truncate_generic(x, s.seed);
                const Rational m = std::max(tr.m, 2 * box_radius(inst.refinement) + 1);
                const PolyComplex box_refinement = truncate_to_box(inst.refinement, m);
                for (const PolyComplex* k : {&tr.complex, &box_refinement})
                {
                    const PolyComplex coned = cone_off(*k);
                    for (const PolyComplex* q : {k, &coned})
                    {
                        ++complexes;
                        c.check(boundary_squares_to_zero(*q), tuple_name(t) + " boundary of boundary");
                        c.check(euler_poincare(*q), tuple_name(t) + " Euler-Poincare");
                        c.check(verify_face_inclusions(*q), tuple_name(t) + " face inclusions");
                    }
                }
                c.check(box_refinement.euler_characteristic() == 1, tuple_name(t) + " box is a ball");
                const Instance again = generate(s);
                c.check(to_json(inst).dump() == to_json(again).dump(), tuple_name(t) + " generator determinism");
            }
        }
        RunOptions one = opt, many = opt;
        one.workers = 1;
        many.workers = std::max<std::size_t>(2, opt.workers);
        const InstanceSpec s = make_spec(3, 1, 4, kSeed + 1000);
        c.check(to_json(verify_theorem(s, 6, one)).dump() == to_json(verify_theorem(s, 6, many)).dump(),
                "verify-theorem report determinism");
        c.check(to_json(verify_lemma(s, 3, one)).dump() == to_json(verify_lemma(s, 3, many)).dump(),
                "verify-lemma report determinism");
        c.note(std::to_string(complexes) + " complexes, " + std::to_string(cells) + " cells");
        all = c.finish() && all;
    }

    // 8. Fundamental group heuristic.
    {
        Criterion c(8);
        const ConvexPLFunction line = fixture::tropical_line();
        const PolyComplex disk = truncate_to_box(common_refinement({line}), 5);
        const PolyComplex tree = truncate_to_box(bend_locus(line), 5);
        c.check(pi1_trivial_heuristic(disk) == Pi1Verdict::Trivial, "disk");
        c.check(pi1_trivial_heuristic(tree) == Pi1Verdict::Trivial, "truncated tropical line");
        c.check(pi1_runs > 0, "no runs with required level at least 1");
        c.check(pi1_ok, "unexpected heuristic outcome");
        std::ostringstream os;
        os << pi1_runs << " runs:";
        for (const auto& [k, v] : pi1_outcomes)
            os << " " << k << "=" << v;
        c.note(os.str());
        all = c.finish() && all;
    }

    std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}
