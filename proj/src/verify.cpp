#include "bendlocus/verify.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <thread>

namespace bendlocus {

namespace {

constexpr std::size_t kMaxDraws = 100;
constexpr std::uint64_t kBoxStream = 0x626f78;
constexpr std::uint64_t kPolytopeStream = 0x706f6c79;

double elapsed(std::chrono::steady_clock::time_point since)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::vector<bool> boundary_cells(const PolyComplex& c)
{
    std::vector<bool> sel(c.cells.size());
    for (const auto& cell : c.cells)
        sel[cell.id] = cell.boundary_marker;
    return sel;
}

std::string pi1_outcome(const PolyComplex& c)
{
    try
    {
        return to_string(pi1_trivial_heuristic(c));
    }
    catch (const PreconditionFailed& e)
    {
        return std::string("precondition failed: ") + e.what();
    }
}

bool is_point(const HomologyResult& h)
{
    if (h.betti_at(0) != 1 || !h.torsion_free_at(0))
        return false;
    for (std::size_t k = 1; k < h.betti.size(); ++k)
        if (h.betti[k] != 0 || !h.torsion_free_at(k))
            return false;
    return true;
}

}   // namespace

std::size_t default_workers()
{
    if (const char* env = std::getenv("BENDLOCUS_WORKERS"))
    {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

Truncation truncate_generic(const PolyComplex& x, std::uint64_t seed, const Rational& scale)
{
    const Rational v = box_radius(x);
    for (std::size_t draw = 0; draw < kMaxDraws; ++draw)
    {
        Rng rng(seed, kBoxStream + draw);
        const Rational m = scale * random_box_half_width(v, rng, std::uint64_t{1} << 20);
        PolyComplex t = truncate_to_box(x, m);
        if (t.genericity_violations.size() <= x.genericity_violations.size())
            return Truncation{std::move(t), m, draw + 1};
    }
    throw RejectionLimitExceeded("no generic box after " + std::to_string(kMaxDraws) + " draws");
}

TheoremRecord verify_theorem_instance(const InstanceSpec& spec, const RunOptions& opt)
{
    const auto start = std::chrono::steady_clock::now();
    TheoremRecord rec;
    rec.seed = spec.seed;
    rec.required = static_cast<int>(spec.d) - static_cast<int>(spec.n) - 1;
    try
    {
        Instance inst = generate(spec);
        rec.attempts = inst.attempts;
        rec.genericity = inst.genericity;
        PolyComplex x = intersection_part(inst.refinement);
        for (int k = 0; k <= x.top_dim(); ++k)
            rec.cells_by_dim.push_back(x.count(k));
        Truncation t = truncate_generic(x, spec.seed, opt.box_scale);
        rec.box = t.m;
        rec.homology_x = homology(t.complex);
        rec.level_x = connectivity_level(rec.homology_x, !t.complex.empty());
        PolyComplex coned = cone_off(t.complex);
        rec.homology_cone = homology(coned);
        rec.level_cone = connectivity_level(rec.homology_cone, true);
        rec.pass = rec.level_x.at_least(rec.required) && rec.level_cone.at_least(rec.required);
        if (rec.required >= 1)
        {
            rec.pi1_x = pi1_outcome(t.complex);
            rec.pi1_cone = pi1_outcome(coned);
        }
    }
    catch (const std::exception& e)
    {
        rec.error = e.what();
        rec.pass = false;
    }
    rec.seconds = opt.timings ? elapsed(start) : 0;
    return rec;
}

BaseRecord verify_base_instance(const InstanceSpec& spec, const RunOptions& opt)
{
    const auto start = std::chrono::steady_clock::now();
    BaseRecord rec;
    rec.seed = spec.seed;
    rec.required = static_cast<int>(spec.d) - 2;
    try
    {
        if (spec.n != 1)
            throw std::invalid_argument("verify-base needs n = 1");
        Instance inst = generate(spec);
        rec.attempts = inst.attempts;
        rec.genericity = inst.genericity;
        PolyComplex x = intersection_part(inst.refinement);
        Truncation t = truncate_generic(x, spec.seed, opt.box_scale);
        rec.level_cone = connectivity_level(homology(cone_off(t.complex)), true);

        PolyComplex cx = compact_subcomplex(x);
        rec.compact_x_nonempty = !cx.empty();
        rec.level_compact_x = connectivity_level(homology(cx), !cx.empty());

        PolyComplex cr = compact_subcomplex(inst.refinement);
        rec.compact_refinement_applicable = !cr.empty();
        rec.homology_compact_refinement = homology(cr);
        rec.compact_refinement_is_point = is_point(rec.homology_compact_refinement);

        rec.pass = rec.level_cone.at_least(rec.required) &&
                   (!rec.compact_x_nonempty || rec.level_compact_x.at_least(rec.required)) &&
                   (!rec.compact_refinement_applicable || rec.compact_refinement_is_point);
    }
    catch (const std::exception& e)
    {
        rec.error = e.what();
        rec.pass = false;
    }
    rec.seconds = opt.timings ? elapsed(start) : 0;
    return rec;
}

LemmaSetup lemma_setup(const Instance& inst)
{
    const PolyComplex x = intersection_part(inst.refinement);
    const Rational radius = box_radius(x) + 1;
    std::optional<std::string> last;
    for (std::size_t draw = 0; draw < kMaxDraws; ++draw)
    {
        Rng rng(inst.spec.seed, kPolytopeStream + draw);
        Polyhedron p = random_simplex(inst.spec.d, radius, rng, inst.spec.denominator);
        GenericityReport g = check_genericity(inst.functions, inst.refinement, p);
        if (!g.ok())
        {
            last = g.details.empty() ? std::string("polytope not generic") : g.details.front();
            continue;
        }
        MorseSetup s = make_morse_setup(inst.functions, p, &x);
        MorseReport rep = morse_report(s);
        if (rep.rejection)
        {
            last = rep.rejection;
            continue;
        }
        return LemmaSetup{std::move(s), std::move(rep), draw + 1, std::move(g)};
    }
    throw RejectionLimitExceeded("no generic polytope after " + std::to_string(kMaxDraws) +
                                 " draws; last: " + last.value_or("?"));
}

LemmaRecord verify_lemma_instance(const InstanceSpec& spec, const RunOptions& opt)
{
    const auto start = std::chrono::steady_clock::now();
    LemmaRecord rec;
    rec.seed = spec.seed;
    rec.required = static_cast<int>(spec.d) - static_cast<int>(spec.n) - 1;
    try
    {
        Instance inst = generate(spec);
        rec.attempts = inst.attempts;
        LemmaSetup ls = lemma_setup(inst);
        rec.polytope_draws = ls.draws;
        rec.genericity = ls.genericity;
        rec.polytope = ls.setup.p;
        rec.relative = relative_homology(ls.setup.x_in_p, boundary_cells(ls.setup.x_in_p));
        rec.level_relative = relative_connectivity_level(rec.relative);
        rec.pass = rec.level_relative.at_least(rec.required);
        rec.morse = std::move(ls.morse);
        rec.morse_pass = rec.morse.overall;
    }
    catch (const std::exception& e)
    {
        rec.error = e.what();
        rec.pass = false;
        rec.morse_pass = false;
    }
    rec.seconds = opt.timings ? elapsed(start) : 0;
    return rec;
}

namespace {

template <typename Record>
Report<Record> run(const std::string& command, const InstanceSpec& spec, std::size_t count, const RunOptions& opt,
                   Record (*one)(const InstanceSpec&, const RunOptions&))
{
    spec.validate();
    Report<Record> rep;
    rep.command = command;
    rep.spec = spec;
    rep.count = count;
    std::function<Record(std::size_t)> job = [&](std::size_t i) {
        InstanceSpec s = spec;
        s.seed = spec.seed + i;
        return one(s, opt);
    };
    rep.records = run_parallel<Record>(count, opt.workers, job);
    return rep;
}

}   // namespace

Report<TheoremRecord> verify_theorem(const InstanceSpec& spec, std::size_t count, const RunOptions& opt)
{
    return run<TheoremRecord>("verify-theorem", spec, count, opt, &verify_theorem_instance);
}

Report<BaseRecord> verify_base(const InstanceSpec& spec, std::size_t count, const RunOptions& opt)
{
    if (spec.n != 1)
        throw std::invalid_argument("verify-base needs n = 1");
    return run<BaseRecord>("verify-base", spec, count, opt, &verify_base_instance);
}

Report<LemmaRecord> verify_lemma(const InstanceSpec& spec, std::size_t count, const RunOptions& opt)
{
    return run<LemmaRecord>("verify-lemma", spec, count, opt, &verify_lemma_instance);
}

}   // namespace bendlocus
