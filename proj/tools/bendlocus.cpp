// Command-line front end: instance generation, batch verification, Morse
// reports, homology of single instances and planar pictures.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bendlocus/json_io.hpp"
#include "bendlocus/svg.hpp"
#include "bendlocus/verify.hpp"

using namespace bendlocus;

namespace {

struct Options
{
    InstanceSpec spec;
    std::size_t count = 1;
    std::string box_scale = "1";
    std::string box;
    std::size_t workers = default_workers();
    std::string out;
    std::string instance;
    std::string polytope;
    bool timings = false;
};

// Accepts "p/q", integers and plain decimals such as 1.5.
Rational parse_number(const std::string& text)
{
    const auto dot = text.find('.');
    if (dot == std::string::npos)
        return parse_rational(text);
    const std::string frac = text.substr(dot + 1);
    Rational scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
        scale *= 10;
    const std::string digits = text.substr(0, dot) + frac;
    return parse_rational(digits.empty() || digits == "-" ? "0" : digits) / scale;
}

void emit(const Options& o, const Json& j)
{
    if (o.out.empty())
        write_json(std::cout, j);
    else
        write_json_file(o.out, j);
}

std::vector<ConvexPLFunction> load_functions(const Options& o, std::optional<Instance>* generated = nullptr)
{
    if (!o.instance.empty())
        return functions_from_json(read_json_file(o.instance));
    Instance inst = generate(o.spec);
    auto fs = inst.functions;
    if (generated)
        *generated = std::move(inst);
    return fs;
}

std::optional<Polyhedron> load_polytope(const Options& o)
{
    if (o.polytope.empty())
        return std::nullopt;
    return polyhedron_from_json(read_json_file(o.polytope));
}

template <typename Record>
int finish(const Options& o, const Report<Record>& rep)
{
    emit(o, to_json(rep, o.timings));
    std::cerr << rep.command << ": " << rep.passed() << "/" << rep.records.size() << " passed\n";
    return rep.all_pass() ? 0 : 1;
}

int cmd_gen(const Options& o)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < o.count; ++i)
    {
        InstanceSpec s = o.spec;
        s.seed = o.spec.seed + i;
        out.push_back(to_json(generate(s)));
    }
    emit(o, o.count == 1 ? out[0] : out);
    return 0;
}

int cmd_morse(const Options& o)
{
    std::optional<Instance> generated;
    const auto fs = load_functions(o, &generated);
    std::optional<Polyhedron> p = load_polytope(o);
    MorseSetup setup;
    MorseReport rep;
    Json j;
    if (p)
    {
        setup = make_morse_setup(fs, *p);
        rep = morse_report(setup);
    }
    else
    {
        if (!generated)
        {
            Instance inst;
            inst.spec.d = fs.front().dim();
            inst.spec.n = fs.size();
            inst.spec.seed = o.spec.seed;
            inst.functions = fs;
            inst.refinement = common_refinement(fs);
            generated = std::move(inst);
        }
        LemmaSetup ls = lemma_setup(*generated);
        setup = std::move(ls.setup);
        rep = std::move(ls.morse);
        j["polytope_draws"] = ls.draws;
    }
    if (generated && o.instance.empty())
        j["spec"] = to_json(generated->spec);
    j["functions"] = to_json(fs);
    j["polytope"] = to_json(setup.p);
    j["report"] = to_json(rep);
    emit(o, j);
    return rep.overall ? 0 : 1;
}

int cmd_homology(const Options& o)
{
    std::optional<Instance> generated;
    const auto fs = load_functions(o, &generated);
    const PolyComplex x = intersection_complex(fs);
    const Truncation t = truncate_generic(x, o.spec.seed, parse_number(o.box_scale));
    const HomologyResult hx = homology(t.complex);
    const HomologyResult hc = homology(cone_off(t.complex));
    const int required = static_cast<int>(fs.front().dim()) - static_cast<int>(fs.size()) - 1;

    Json j;
    if (generated)
        j["spec"] = to_json(generated->spec);
    j["functions"] = to_json(fs);
    j["genericity_violations"] = x.genericity_violations;
    j["box"] = to_json(t.m);
    j["required_level"] = required;
    j["x"] = to_json(hx, connectivity_level(hx, !t.complex.empty()));
    j["cone"] = to_json(hc, connectivity_level(hc, true));
    if (std::optional<Polyhedron> p = load_polytope(o))
    {
        const MorseSetup s = make_morse_setup(fs, *p, &x);
        std::vector<bool> in_a(s.x_in_p.cells.size());
        for (const auto& cell : s.x_in_p.cells)
            in_a[cell.id] = cell.boundary_marker;
        const HomologyResult hr = relative_homology(s.x_in_p, in_a);
        j["relative"] = to_json(hr, relative_connectivity_level(hr));
    }
    emit(o, j);
    return 0;
}

int cmd_svg(const Options& o)
{
    const auto fs = load_functions(o);
    SvgOverlay overlay;
    overlay.polytope = load_polytope(o);
    if (overlay.polytope)
        overlay.critical_points = critical_points(make_morse_setup(fs, *overlay.polytope));
    Rational m;
    if (!o.box.empty())
        m = parse_number(o.box);
    else
    {
        Rational v = box_radius(common_refinement(fs));
        if (overlay.polytope)
            v = std::max(v, box_radius(clip_to_polyhedron(common_refinement(fs), *overlay.polytope)));
        m = parse_number(o.box_scale) * (2 * v + 1);
    }
    const std::string path = o.out.empty() ? "bendlocus.svg" : o.out;
    render_svg_file(fs, m, path, overlay);
    std::cerr << "wrote " << path << "\n";
    return 0;
}

}   // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Connectivity checks for complete intersections of generic polyhedral hypersurfaces"};
    app.require_subcommand(1);
    Options o;

    auto add_spec = [&](CLI::App* c) {
        c->add_option("--d", o.spec.d, "ambient dimension")->capture_default_str();
        c->add_option("--n", o.spec.n, "number of hypersurfaces")->capture_default_str();
        c->add_option("--r", o.spec.r, "affine pieces per function")->capture_default_str();
        c->add_option("--seed", o.spec.seed, "base seed")->capture_default_str();
        c->add_option("--coeff-bound", o.spec.coeff_bound, "coefficient bound")->capture_default_str();
        c->add_option("--denominator", o.spec.denominator, "coefficient grid denominator")->capture_default_str();
        c->add_option("--out", o.out, "output file (default stdout)");
    };
    auto add_batch = [&](CLI::App* c) {
        add_spec(c);
        c->add_option("--count", o.count, "number of instances")->capture_default_str();
        c->add_option("--box-scale", o.box_scale, "box half-width multiplier")->capture_default_str();
        c->add_option("--workers", o.workers, "worker threads (default BENDLOCUS_WORKERS)")->capture_default_str();
        c->add_flag("--timings", o.timings, "include per-instance timings");
    };
    auto add_files = [&](CLI::App* c) {
        c->add_option("--instance", o.instance, "instance JSON (default: generate from the spec)");
        c->add_option("--polytope", o.polytope, "polytope JSON");
    };

    CLI::App* gen = app.add_subcommand("gen", "generate generic instances");
    add_spec(gen);
    gen->add_option("--count", o.count, "number of instances")->capture_default_str();

    CLI::App* vt = app.add_subcommand("verify-theorem", "connectivity of X and of its one-point compactification");
    add_batch(vt);
    CLI::App* vb = app.add_subcommand("verify-base", "the single-hypersurface statements");
    add_batch(vb);
    CLI::App* vl = app.add_subcommand("verify-lemma", "relative connectivity inside a random simplex, with Morse report");
    add_batch(vl);

    CLI::App* mr = app.add_subcommand("morse-report", "critical points and links for one instance");
    add_spec(mr);
    add_files(mr);

    CLI::App* hom = app.add_subcommand("homology", "homology of one instance");
    add_spec(hom);
    add_files(hom);
    hom->add_option("--box-scale", o.box_scale, "box half-width multiplier")->capture_default_str();

    CLI::App* svg = app.add_subcommand("render-svg", "draw a planar instance");
    add_spec(svg);
    add_files(svg);
    svg->add_option("--box", o.box, "box half-width M");
    svg->add_option("--box-scale", o.box_scale, "multiplier for the automatic box")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try
    {
        RunOptions run;
        run.workers = o.workers;
        run.timings = o.timings;
        if (gen->parsed())
            return cmd_gen(o);
        if (vt->parsed() || vb->parsed() || vl->parsed())
            run.box_scale = parse_number(o.box_scale);
        if (vt->parsed())
            return finish(o, verify_theorem(o.spec, o.count, run));
        if (vb->parsed())
            return finish(o, verify_base(o.spec, o.count, run));
        if (vl->parsed())
            return finish(o, verify_lemma(o.spec, o.count, run));
        if (mr->parsed())
            return cmd_morse(o);
        if (hom->parsed())
            return cmd_homology(o);
        if (svg->parsed())
            return cmd_svg(o);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
