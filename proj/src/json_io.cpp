#include "bendlocus/json_io.hpp"

#include <fstream>
#include <ostream>

namespace bendlocus {

namespace {

std::string kind_name(CellKind k)
{
    switch (k)
    {
        case CellKind::Geometric: return "geometric";
        case CellKind::Apex: return "apex";
        case CellKind::Cone: return "cone";
        case CellKind::Simplex: return "simplex";
    }
    return "?";
}

std::string clip_name(ClipKind k)
{
    switch (k)
    {
        case ClipKind::None: return "none";
        case ClipKind::Box: return "box";
        case ClipKind::Polyhedron: return "polyhedron";
    }
    return "?";
}

Json form_pair(const AffineForm& f)
{
    return Json::array({to_json(f.b), to_json(f.a)});
}

AffineForm form_from_pair(const Json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw JsonFormatError("expected [[b...], a]");
    return AffineForm{vector_from_json(j[0]), rational_from_json(j[1])};
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw JsonFormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

void put_optional(Json& j, const char* key, const std::optional<std::string>& v)
{
    if (v)
        j[key] = *v;
}

}   // namespace

Json to_json(const Rational& q)
{
    return to_string(q);
}

Json to_json(const RatVector& v)
{
    Json j = Json::array();
    for (const auto& x : v)
        j.push_back(to_string(x));
    return j;
}

Json to_json(const AffineForm& f)
{
    Json j;
    j["b"] = to_json(f.b);
    j["a"] = to_json(f.a);
    return j;
}

Json to_json(const Polyhedron& p)
{
    Json j;
    j["ambient_dim"] = p.ambient_dim;
    Json eq = Json::array(), ineq = Json::array();
    for (const auto& f : p.equalities)
        eq.push_back(form_pair(f));
    for (const auto& f : p.inequalities)
        ineq.push_back(form_pair(f));
    j["equalities"] = std::move(eq);
    j["inequalities"] = std::move(ineq);
    return j;
}

Json to_json(const ConvexPLFunction& f)
{
    Json j;
    j["d"] = f.dim();
    Json forms = Json::array();
    for (const auto& g : f.forms())
        forms.push_back(to_json(g));
    j["forms"] = std::move(forms);
    return j;
}

Json to_json(const std::vector<ConvexPLFunction>& fs)
{
    Json j = Json::array();
    for (const auto& f : fs)
        j.push_back(to_json(f));
    return j;
}

Json to_json(const InstanceSpec& s)
{
    Json j;
    j["d"] = s.d;
    j["n"] = s.n;
    j["r"] = s.r;
    j["seed"] = s.seed;
    j["coeff_bound"] = s.coeff_bound;
    j["denominator"] = s.denominator;
    return j;
}

Json to_json(const GenericityReport& g)
{
    Json j;
    j["ok"] = g.ok();
    j["transversal"] = g.transversal;
    j["no_parallel_faces"] = g.no_parallel_faces;
    j["dimension_formula_ok"] = g.dimension_formula_ok;
    j["euler_ok"] = g.euler_ok;
    j["details"] = g.details;
    return j;
}

Json to_json(const Instance& inst)
{
    Json j;
    j["spec"] = to_json(inst.spec);
    j["functions"] = to_json(inst.functions);
    j["attempts"] = inst.attempts;
    j["genericity"] = to_json(inst.genericity);
    return j;
}

Json to_json(const CellLabel& l)
{
    Json j;
    Json argmax = Json::array();
    for (const auto& s : l.argmax)
        argmax.push_back(s.indices());
    j["argmax"] = std::move(argmax);
    j["facets"] = l.facets;
    return j;
}

Json to_json(const PolyComplex& c)
{
    Json j;
    j["ambient_dim"] = c.ambient_dim;
    j["n"] = c.n;
    j["clip"] = clip_name(c.clip);
    Json facets = Json::array();
    for (const auto& f : c.clip_facets)
        facets.push_back(form_pair(f));
    j["clip_facets"] = std::move(facets);
    Json cells = Json::array();
    for (const auto& cell : c.cells)
    {
        Json e;
        e["id"] = cell.id;
        e["dim"] = cell.dim;
        e["kind"] = kind_name(cell.kind);
        e["label"] = to_json(cell.label);
        e["geometry"] = cell.geometry ? to_json(*cell.geometry) : Json(nullptr);
        e["bounded"] = cell.bounded;
        e["boundary_marker"] = cell.boundary_marker;
        if (!cell.vertices.empty())
            e["vertices"] = cell.vertices;
        if (cell.cone_base)
            e["cone_base"] = *cell.cone_base;
        cells.push_back(std::move(e));
    }
    j["cells"] = std::move(cells);
    Json pairs = Json::array();
    for (const auto& p : c.face_pairs)
        pairs.push_back(Json::array({p.cell, p.facet, p.sign}));
    j["face_pairs"] = std::move(pairs);
    j["genericity_violations"] = c.genericity_violations;
    return j;
}

Json to_json(const ConnectivityLevel& l)
{
    if (l.is_infinite())
        return "inf";
    return l.level;
}

Json to_json(const HomologyResult& h, const ConnectivityLevel& level)
{
    Json j;
    j["betti"] = h.betti;
    Json torsion = Json::array();
    for (const auto& t : h.torsion)
    {
        Json row = Json::array();
        for (const auto& z : t)
            row.push_back(to_string(z));
        torsion.push_back(std::move(row));
    }
    j["torsion"] = std::move(torsion);
    j["connectivity_level"] = to_json(level);
    return j;
}

Json to_json(const MorseReport& r)
{
    Json j;
    Json pts = Json::array();
    for (const auto& p : r.points)
    {
        Json e;
        e["location"] = p.location;
        e["value"] = p.value;
        e["host_cell"] = p.host_cell;
        e["host_dim"] = p.host_dim;
        e["kind"] = to_string(p.kind);
        pts.push_back(std::move(e));
    }
    j["critical_points"] = std::move(pts);
    j["distinct_values"] = r.distinct_values;
    Json links = Json::array();
    for (const auto& l : r.links)
    {
        Json e;
        e["cell"] = l.cell;
        e["expected"] = l.expected;
        e["observed"] = to_json(l.observed);
        e["vacuous"] = l.vacuous;
        e["descending_rays"] = l.descending_rays;
        e["pass"] = l.pass;
        links.push_back(std::move(e));
    }
    j["links"] = std::move(links);
    j["overall"] = r.overall;
    put_optional(j, "rejection", r.rejection);
    return j;
}

Json to_json(const TheoremRecord& r, bool timings)
{
    Json j;
    j["seed"] = r.seed;
    j["attempts"] = r.attempts;
    j["genericity"] = to_json(r.genericity);
    j["cells_by_dim"] = r.cells_by_dim;
    j["box"] = to_json(r.box);
    j["required_level"] = r.required;
    j["homology_x"] = to_json(r.homology_x, r.level_x);
    j["homology_cone"] = to_json(r.homology_cone, r.level_cone);
    put_optional(j, "pi1_x", r.pi1_x);
    put_optional(j, "pi1_cone", r.pi1_cone);
    j["pass"] = r.pass;
    put_optional(j, "error", r.error);
    if (timings)
        j["seconds"] = r.seconds;
    return j;
}

Json to_json(const BaseRecord& r, bool timings)
{
    Json j;
    j["seed"] = r.seed;
    j["attempts"] = r.attempts;
    j["genericity"] = to_json(r.genericity);
    j["required_level"] = r.required;
    j["level_cone"] = to_json(r.level_cone);
    j["compact_x_nonempty"] = r.compact_x_nonempty;
    j["level_compact_x"] = to_json(r.level_compact_x);
    j["compact_refinement_applicable"] = r.compact_refinement_applicable;
    j["homology_compact_refinement"] =
        to_json(r.homology_compact_refinement,
                connectivity_level(r.homology_compact_refinement, r.compact_refinement_applicable));
    j["compact_refinement_is_point"] = r.compact_refinement_is_point;
    j["pass"] = r.pass;
    put_optional(j, "error", r.error);
    if (timings)
        j["seconds"] = r.seconds;
    return j;
}

Json to_json(const LemmaRecord& r, bool timings)
{
    Json j;
    j["seed"] = r.seed;
    j["attempts"] = r.attempts;
    j["polytope_draws"] = r.polytope_draws;
    j["genericity"] = to_json(r.genericity);
    j["polytope"] = to_json(r.polytope);
    j["required_level"] = r.required;
    j["relative_homology"] = to_json(r.relative, r.level_relative);
    j["pass"] = r.pass;
    j["morse"] = to_json(r.morse);
    j["morse_pass"] = r.morse_pass;
    put_optional(j, "error", r.error);
    if (timings)
        j["seconds"] = r.seconds;
    return j;
}

Rational rational_from_json(const Json& j)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return j.is_number_unsigned() ? Rational(Integer(j.get<std::uint64_t>()))
                                      : Rational(Integer(j.get<std::int64_t>()));
    throw JsonFormatError("expected a rational string or an integer");
}

RatVector vector_from_json(const Json& j)
{
    if (!j.is_array())
        throw JsonFormatError("expected an array of rationals");
    RatVector v;
    for (const auto& x : j)
        v.push_back(rational_from_json(x));
    return v;
}

AffineForm form_from_json(const Json& j)
{
    if (j.is_array())
        return form_from_pair(j);
    return AffineForm{vector_from_json(field(j, "b")), rational_from_json(field(j, "a"))};
}

Polyhedron polyhedron_from_json(const Json& j)
{
    const auto d = field(j, "ambient_dim").get<std::size_t>();
    std::vector<AffineForm> eq, ineq;
    if (j.contains("equalities"))
        for (const auto& f : j.at("equalities"))
            eq.push_back(form_from_pair(f));
    if (j.contains("inequalities"))
        for (const auto& f : j.at("inequalities"))
            ineq.push_back(form_from_pair(f));
    return Polyhedron(d, std::move(eq), std::move(ineq));
}

ConvexPLFunction function_from_json(const Json& j)
{
    const auto d = field(j, "d").get<std::size_t>();
    std::vector<AffineForm> forms;
    for (const auto& f : field(j, "forms"))
        forms.push_back(form_from_json(f));
    return ConvexPLFunction(d, std::move(forms));
}

InstanceSpec spec_from_json(const Json& j)
{
    InstanceSpec s;
    s.d = field(j, "d").get<std::size_t>();
    s.n = field(j, "n").get<std::size_t>();
    s.r = field(j, "r").get<std::size_t>();
    s.seed = field(j, "seed").get<std::uint64_t>();
    if (j.contains("coeff_bound"))
        s.coeff_bound = j.at("coeff_bound").get<std::uint64_t>();
    if (j.contains("denominator"))
        s.denominator = j.at("denominator").get<std::uint64_t>();
    return s;
}

std::vector<ConvexPLFunction> functions_from_json(const Json& j)
{
    std::vector<ConvexPLFunction> fs;
    if (j.is_object() && j.contains("functions"))
        return functions_from_json(j.at("functions"));
    if (j.is_object())
        fs.push_back(function_from_json(j));
    else if (j.is_array())
        for (const auto& f : j)
            fs.push_back(function_from_json(f));
    else
        throw JsonFormatError("expected an instance, a function, or an array of functions");
    return fs;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    try
    {
        return Json::parse(in);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw JsonFormatError(path + ": " + e.what());
    }
}

void write_json(std::ostream& out, const Json& j)
{
    out << j.dump(2) << '\n';
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    write_json(out, j);
}

}   // namespace bendlocus
