#include "bendlocus/generator.hpp"

#include <algorithm>
#include <limits>

namespace bendlocus {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::size_t kMaxDraws = 100;

bool parallel(const RatVector& u, const RatVector& v)
{
    for (std::size_t a = 0; a < u.size(); ++a)
        for (std::size_t b = a + 1; b < u.size(); ++b)
            if (u[a] * v[b] != u[b] * v[a])
                return false;
    return true;
}

struct Difference
{
    std::size_t i, j;
    RatVector v;
};

std::vector<Difference> differences(const ConvexPLFunction& f)
{
    std::vector<Difference> out;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j)
            out.push_back({i, j, f.form(i).b - f.form(j).b});
    return out;
}

std::string pair_name(std::size_t k, const Difference& d)
{
    return "f" + std::to_string(k) + "(" + std::to_string(d.i) + "," + std::to_string(d.j) + ")";
}

void check_dimensions(const PolyComplex& c, const std::string& what, GenericityReport& rep)
{
    if (!c.genericity_violations.empty())
    {
        rep.transversal = false;
        for (const auto& v : c.genericity_violations)
            rep.details.push_back(what + ": " + v);
    }
    const long d = static_cast<long>(c.ambient_dim);
    for (const auto& cell : c.cells)
    {
        if (!cell.geometry)
            continue;
        const long expected = d - static_cast<long>(cell.label.codimension_count());
        const int dim = dimension(*cell.geometry);
        if (dim != expected)
        {
            rep.dimension_formula_ok = false;
            rep.details.push_back(what + ": closed cell " + std::to_string(cell.id) + " has dimension " +
                                  std::to_string(dim) + ", expected " + std::to_string(expected));
        }
    }
}

}   // namespace

std::uint64_t splitmix64(std::uint64_t x)
{
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : key_(splitmix64(seed ^ splitmix64(stream))) {}

std::uint64_t Rng::next()
{
    ++counter_;
    return splitmix64(key_ + counter_ * kGolden);
}

std::uint64_t Rng::below(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("Rng::below(0)");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do
        x = next();
    while (x >= limit);
    return x % n;
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(below(span));
}

Rng Rng::split(std::uint64_t stream) const
{
    return Rng(key_, stream);
}

void InstanceSpec::validate() const
{
    if (d < 2)
        throw std::invalid_argument("instance spec needs d >= 2");
    if (n < 1 || n >= d)
        throw std::invalid_argument("instance spec needs 1 <= n < d");
    if (r < 2)
        throw std::invalid_argument("instance spec needs r >= 2");
    if (coeff_bound == 0 || denominator == 0)
        throw std::invalid_argument("instance spec needs a positive grid");
    if (coeff_bound > (std::uint64_t{1} << 40) || denominator > (std::uint64_t{1} << 40))
        throw std::invalid_argument("instance grid too large");
}

Rational random_coefficient(Rng& rng, std::uint64_t bound, std::uint64_t denominator)
{
    const auto k = static_cast<std::int64_t>(bound * denominator);
    return Rational(rng.uniform_int(-k, k), static_cast<std::int64_t>(denominator));
}

GenericityReport check_genericity(const std::vector<ConvexPLFunction>& fs, const std::optional<Polyhedron>& p)
{
    return check_genericity(fs, common_refinement(fs), p);
}

GenericityReport check_genericity(const std::vector<ConvexPLFunction>& fs, const PolyComplex& refinement,
                                  const std::optional<Polyhedron>& p)
{
    GenericityReport rep;
    std::vector<std::vector<Difference>> diffs;
    for (const auto& f : fs)
        diffs.push_back(differences(f));

    for (std::size_t k = 0; k < fs.size(); ++k)
        for (const auto& a : diffs[k])
            if (is_zero(a.v))
            {
                rep.no_parallel_faces = false;
                rep.details.push_back("repeated slope " + pair_name(k, a));
            }
    for (std::size_t k = 0; k < fs.size(); ++k)
        for (std::size_t l = k + 1; l < fs.size(); ++l)
            for (const auto& a : diffs[k])
                for (const auto& b : diffs[l])
                    if (parallel(a.v, b.v))
                    {
                        rep.no_parallel_faces = false;
                        rep.details.push_back("parallel facet normals " + pair_name(k, a) + " and " + pair_name(l, b));
                    }
    if (p)
        for (std::size_t k = 0; k < fs.size(); ++k)
            for (const auto& a : diffs[k])
                for (std::size_t j = 0; j < p->inequalities.size(); ++j)
                    if (parallel(a.v, p->inequalities[j].b))
                    {
                        rep.no_parallel_faces = false;
                        rep.details.push_back("facet normal " + pair_name(k, a) + " parallel to P facet " +
                                              std::to_string(j));
                    }

    check_dimensions(refinement, "refinement", rep);
    const long chi = refinement.euler_characteristic();
    const long expected = refinement.ambient_dim % 2 == 0 ? 1 : -1;
    if (chi != expected)
    {
        rep.euler_ok = false;
        rep.details.push_back("refinement has alternating cell count " + std::to_string(chi) + ", expected " +
                              std::to_string(expected));
    }
    if (p)
        check_dimensions(clip_to_polyhedron(intersection_part(refinement), *p), "clip by P", rep);
    return rep;
}

PolyComplex intersection_part(const PolyComplex& refinement)
{
    std::vector<bool> keep(refinement.cells.size());
    for (const auto& cell : refinement.cells)
        keep[cell.id] = std::all_of(cell.label.argmax.begin(), cell.label.argmax.end(),
                                    [](const ArgmaxLabel& s) { return s.size() >= 2; });
    PolyComplex x = subcomplex(refinement, keep);
    x.genericity_violations.clear();
    for (const auto& cell : x.cells)
    {
        const long expected = static_cast<long>(x.ambient_dim) - static_cast<long>(cell.label.codimension_count());
        if (cell.dim != expected)
            x.genericity_violations.push_back("cell " + std::to_string(cell.id) + " has dimension " +
                                              std::to_string(cell.dim) + ", expected " + std::to_string(expected));
    }
    return x;
}

Instance generate(const InstanceSpec& spec)
{
    spec.validate();
    for (std::size_t attempt = 0; attempt < kMaxDraws; ++attempt)
    {
        Rng rng(spec.seed, attempt);
        std::vector<ConvexPLFunction> fs;
        for (std::size_t k = 0; k < spec.n; ++k)
        {
            std::vector<AffineForm> forms;
            for (std::size_t i = 0; i < spec.r; ++i)
            {
                AffineForm f;
                for (std::size_t j = 0; j < spec.d; ++j)
                    f.b.push_back(random_coefficient(rng, spec.coeff_bound, spec.denominator));
                f.a = random_coefficient(rng, spec.coeff_bound, spec.denominator);
                forms.push_back(std::move(f));
            }
            fs.emplace_back(spec.d, std::move(forms));
        }
        PolyComplex refinement = common_refinement(fs);
        GenericityReport rep = check_genericity(fs, refinement);
        if (rep.ok())
            return Instance{spec, std::move(fs), attempt + 1, std::move(rep), std::move(refinement)};
    }
    throw RejectionLimitExceeded("no generic instance after " + std::to_string(kMaxDraws) + " draws");
}

std::vector<ConvexPLFunction> random_instance(const InstanceSpec& spec)
{
    return generate(spec).functions;
}

Polyhedron random_simplex(std::size_t d, const Rational& radius, Rng& rng, std::uint64_t denominator)
{
    const auto den = static_cast<std::int64_t>(denominator);
    for (;;)
    {
        std::vector<RatVector> normals;
        for (std::size_t j = 0; j < d; ++j)
        {
            RatVector c;
            for (std::size_t i = 0; i < d; ++i)
                c.push_back(random_coefficient(rng, 1, denominator));
            normals.push_back(std::move(c));
        }
        if (rank(RatMatrix::from_rows(normals)) < d)
            continue;
        RatVector last = zero_vector(d);
        for (const auto& c : normals)
            last = last - Rational(rng.uniform_int(1, den), den) * c;
        normals.push_back(std::move(last));

        RatVector centre;
        for (std::size_t i = 0; i < d; ++i)
            centre.push_back(Rational(rng.uniform_int(-den, den), 2 * den) * radius);
        Polyhedron p;
        p.ambient_dim = d;
        for (auto& c : normals)
        {
            // The centre is within radius / 2 of the origin, so a slack of at
            // least 3/2 * radius * |c|_1 keeps the cube of half-width `radius` inside.
            Rational l1 = 0;
            for (const auto& x : c)
                l1 += abs(x);
            const Rational slack = radius * l1 * Rational(rng.uniform_int(2 * den, 3 * den), den);
            p.inequalities.push_back({c, slack - dot(c, centre)});
        }
        return p;
    }
}

Rational random_box_half_width(const Rational& v, Rng& rng, std::uint64_t denominator)
{
    const auto den = static_cast<std::int64_t>(denominator);
    return 2 * v + 1 + v * Rational(rng.uniform_int(0, den), den);
}

}   // namespace bendlocus
