#include "bendlocus/morse.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "bendlocus/generator.hpp"

namespace bendlocus {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr int kMaxIterations = 200;
constexpr double kMembershipTol = 1e-7;

struct DoubleForms
{
    Eigen::MatrixXd c;   // one row per facet
    Eigen::VectorXd e;
};

DoubleForms to_double_forms(const std::vector<AffineForm>& forms, std::size_t d)
{
    DoubleForms f{Eigen::MatrixXd(forms.size(), d), Eigen::VectorXd(forms.size())};
    for (std::size_t j = 0; j < forms.size(); ++j)
    {
        for (std::size_t i = 0; i < d; ++i)
            f.c(j, i) = to_double(forms[j].b[i]);
        f.e(j) = to_double(forms[j].a);
    }
    return f;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v)
{
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> from_eigen(const Eigen::VectorXd& v)
{
    return std::vector<double>(v.data(), v.data() + v.size());
}

bool strictly_inside(const DoubleForms& f, const Eigen::VectorXd& x)
{
    return ((f.c * x + f.e).array() > 0).all();
}

double log_f(const DoubleForms& f, const Eigen::VectorXd& x)
{
    return (f.c * x + f.e).array().log().sum();
}

struct NewtonResult
{
    Eigen::VectorXd x;
    double residual;
};

/// Maximizes sum log l_j over p0 + B y from the start point p0 + B y0.
std::optional<NewtonResult> newton(const DoubleForms& f, const Eigen::VectorXd& p0, const Eigen::MatrixXd& b,
                                   Eigen::VectorXd y)
{
    const Eigen::MatrixXd cb = f.c * b;   // rows: B^T c_j
    for (int it = 0; it <= kMaxIterations; ++it)
    {
        const Eigen::VectorXd x = p0 + b * y;
        const Eigen::VectorXd l = f.c * x + f.e;
        if ((l.array() <= 0).any())
            return std::nullopt;
        const Eigen::VectorXd inv = l.cwiseInverse();
        const Eigen::VectorXd g = cb.transpose() * inv;
        double scale = 0;
        for (Eigen::Index j = 0; j < cb.rows(); ++j)
            scale += cb.row(j).norm() * inv(j);
        const double residual = scale > 0 ? g.norm() / scale : g.norm();
        if (residual <= kResidualTol)
            return NewtonResult{x, residual};
        if (it == kMaxIterations)
            break;
        // -H = sum (B^T c_j)(B^T c_j)^T / l_j^2 is positive definite for bounded P.
        const Eigen::MatrixXd w = inv.asDiagonal() * cb;
        const Eigen::MatrixXd neg_h = w.transpose() * w;
        const Eigen::VectorXd step = neg_h.ldlt().solve(g);
        const double slope = g.dot(step);
        const double phi = log_f(f, x);
        double t = 1;
        bool accepted = false;
        while (t > 1e-14)
        {
            const Eigen::VectorXd yn = y + t * step;
            const Eigen::VectorXd xn = p0 + b * yn;
            if (strictly_inside(f, xn) && log_f(f, xn) >= phi + 1e-4 * t * slope)
            {
                y = yn;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted)
        {
            // No ascent left in double precision: accept if nearly stationary.
            if (residual <= 1e3 * kResidualTol)
                return NewtonResult{x, residual};
            return std::nullopt;
        }
    }
    return std::nullopt;
}

Eigen::MatrixXd orthonormal_basis(const std::vector<RatVector>& basis, std::size_t d)
{
    Eigen::MatrixXd m(d, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < d; ++i)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(basis[j][i]);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d), m.cols());
}

}   // namespace

std::string to_string(CriticalKind k)
{
    return k == CriticalKind::Vertex ? "vertex" : "face_interior";
}

MorseSetup make_morse_setup(const std::vector<ConvexPLFunction>& fs, const Polyhedron& p, const PolyComplex* x)
{
    if (!p.equalities.empty() || dimension(p) != static_cast<int>(p.ambient_dim) || !is_bounded(p))
        throw std::invalid_argument("Morse setup needs a bounded full-dimensional polytope");
    MorseSetup s{fs, p, {}};
    s.x_in_p = clip_to_polyhedron(x ? *x : complete_intersection(fs), p);
    return s;
}

double morse_value(const Polyhedron& p, const std::vector<double>& x)
{
    const DoubleForms f = to_double_forms(p.inequalities, p.ambient_dim);
    const Eigen::VectorXd l = f.c * to_eigen(x) + f.e;
    double v = 1;
    for (Eigen::Index j = 0; j < l.size(); ++j)
        v *= l(j) / f.c.row(j).norm();
    return v;
}

std::vector<CriticalPoint> critical_points(const MorseSetup& s)
{
    const std::size_t d = s.p.ambient_dim;
    const DoubleForms f = to_double_forms(s.p.inequalities, d);
    std::vector<CriticalPoint> out;
    for (const auto& cell : s.x_in_p.cells)
    {
        if (!cell.label.facets.empty() || cell.kind != CellKind::Geometric)
            continue;
        if (cell.dim == 0)
        {
            CriticalPoint cp;
            cp.location = to_doubles(*cell.interior_point);
            cp.value = morse_value(s.p, cp.location);
            cp.host_cell = cell.id;
            cp.host_dim = 0;
            cp.kind = CriticalKind::Vertex;
            out.push_back(std::move(cp));
            continue;
        }

        const Eigen::VectorXd p0 = to_eigen(to_doubles(*cell.interior_point));
        const Eigen::MatrixXd b = orthonormal_basis(cell.orientation, d);
        const auto k = b.cols();

        // Seeds: the interior point, and two points pushed along the first
        // basis direction, halfway to the boundary of P.
        std::vector<Eigen::VectorXd> seeds{Eigen::VectorXd::Zero(k)};
        {
            const Eigen::VectorXd l = f.c * p0 + f.e;
            const Eigen::VectorXd rate = f.c * b.col(0);
            double reach = std::numeric_limits<double>::infinity();
            for (Eigen::Index j = 0; j < l.size(); ++j)
                if (std::abs(rate(j)) > 0)
                    reach = std::min(reach, l(j) / std::abs(rate(j)));
            for (double sgn : {1.0, -1.0})
            {
                Eigen::VectorXd y = Eigen::VectorXd::Zero(k);
                y(0) = sgn * 0.5 * reach;
                seeds.push_back(y);
            }
        }
        std::optional<NewtonResult> best;
        for (const auto& y0 : seeds)
            if ((best = newton(f, p0, b, y0)))
                break;
        if (!best)
            throw NewtonDivergence("no convergence on cell " + std::to_string(cell.id));

        // Membership in the open cell: every defining inequality positive.
        const double scale = 1 + best->x.cwiseAbs().maxCoeff();
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& g : cell.geometry->inequalities)
        {
            double v = to_double(g.a), norm = 0;
            for (std::size_t i = 0; i < d; ++i)
            {
                const double bi = to_double(g.b[i]);
                v += bi * best->x(static_cast<Eigen::Index>(i));
                norm += bi * bi;
            }
            worst = std::min(worst, v / std::sqrt(norm));
        }
        if (std::abs(worst) <= kMembershipTol * scale)
            throw AmbiguousCriticalPoint("maximizer on the boundary of cell " + std::to_string(cell.id));
        if (worst < 0)
            continue;
        CriticalPoint cp;
        cp.location = from_eigen(best->x);
        cp.value = morse_value(s.p, cp.location);
        cp.host_cell = cell.id;
        cp.host_dim = cell.dim;
        cp.kind = CriticalKind::FaceInterior;
        cp.residual = best->residual;
        out.push_back(std::move(cp));
    }
    std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        return a.host_cell < b.host_cell;
    });
    return out;
}

bool distinct_critical_values(const std::vector<CriticalPoint>& pts, double rel_gap)
{
    double top = 0;
    for (const auto& p : pts)
        top = std::max(top, std::abs(p.value));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (!(std::abs(pts[i].value - pts[j].value) > rel_gap * top))
                return false;
    return true;
}

LinkComplex link_complex(const MorseSetup& s, const CriticalPoint& cp)
{
    const Cell& host = s.x_in_p.cells.at(cp.host_cell);
    const std::size_t d = s.p.ambient_dim;
    const int k = host.dim;
    const int m = static_cast<int>(d) - k;
    const int n = static_cast<int>(s.functions.size());

    LinkComplex link;
    link.expected_connectivity = m - n - 2;
    if (link.expected_connectivity <= -2)
        return link;

    // Normal space of the host cell, spanned by its equality gradients.
    std::vector<RatVector> normal;
    for (const auto& e : host.geometry->equalities)
        normal.push_back(e.b);
    const RatMatrix nm = RatMatrix::from_rows(normal, d);
    if (static_cast<int>(normal.size()) != m || static_cast<int>(rank(nm)) != m)
        throw DegenerateGradient("host cell " + std::to_string(host.id) + " is not transversal");

    // Gradient of log f at the critical point and its normal component.
    const DoubleForms f = to_double_forms(s.p.inequalities, d);
    const Eigen::VectorXd x = to_eigen(cp.location);
    const Eigen::VectorXd l = f.c * x + f.e;
    const Eigen::VectorXd grad = f.c.transpose() * l.cwiseInverse();
    double scale = 0;
    for (Eigen::Index j = 0; j < l.size(); ++j)
        scale += f.c.row(j).norm() / l(j);
    Eigen::MatrixXd ndbl(m, static_cast<Eigen::Index>(d));
    for (int i = 0; i < m; ++i)
        for (std::size_t j = 0; j < d; ++j)
            ndbl(i, static_cast<Eigen::Index>(j)) = to_double(nm(static_cast<std::size_t>(i), j));
    const Eigen::VectorXd coeff = ndbl.transpose().colPivHouseholderQr().solve(grad);
    const Eigen::VectorXd projected = ndbl.transpose() * coeff;
    if (projected.norm() <= 1e-9 * scale)
        throw DegenerateGradient("gradient vanishes on the normal space at cell " + std::to_string(host.id));

    const Eigen::VectorXd unit = grad / grad.norm();
    RatVector g;
    for (std::size_t i = 0; i < d; ++i)
        g.push_back(rationalize(unit(static_cast<Eigen::Index>(i))));
    const RatVector u = nm * g;
    link.gradient = u;

    // Local homogeneous functions on the normal space.
    std::vector<ConvexPLFunction> local, sliced_forms;
    std::vector<std::vector<RatVector>> slopes(s.functions.size());
    for (std::size_t h = 0; h < s.functions.size(); ++h)
    {
        std::vector<AffineForm> forms;
        for (auto i : host.label.argmax[h].indices())
        {
            RatVector nb = nm * s.functions[h].form(i).b;
            slopes[h].push_back(nb);
            forms.push_back({nb, Rational(0)});
        }
        local.emplace_back(static_cast<std::size_t>(m), std::move(forms));
    }
    PolyComplex fan = intersection_complex(local);

    Rational min_ratio = -1;
    for (const auto& cell : fan.cells)
    {
        if (cell.dim != 1)
            continue;
        ++link.fan_rays;
        const RatVector& r = *cell.interior_point;
        const Rational sp = dot(u, r);
        if (sp == 0)
            throw DegenerateGradient("gradient orthogonal to a fan ray at cell " + std::to_string(host.id));
        if (sp < 0)
            ++link.descending_rays;
        const Rational ratio = abs(sp) / max_abs(r);
        if (min_ratio < 0 || ratio < min_ratio)
            min_ratio = ratio;
    }
    link.delta = min_ratio > 0 ? Rational(min_ratio / 2) : Rational(1);

    // Slice {z : <u, z> = -delta} = z0 + Q w.
    const Rational uu = dot(u, u);
    const RatVector z0 = Rational(-link.delta / uu) * u;
    RatMatrix ut(1, static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        ut(0, static_cast<std::size_t>(i)) = u[static_cast<std::size_t>(i)];
    const std::vector<RatVector> q = kernel_basis(ut);
    for (std::size_t h = 0; h < s.functions.size(); ++h)
    {
        std::vector<AffineForm> forms;
        for (const auto& nb : slopes[h])
        {
            RatVector b;
            for (const auto& col : q)
                b.push_back(dot(col, nb));
            forms.push_back({b, dot(nb, z0)});
        }
        sliced_forms.emplace_back(q.size(), std::move(forms));
    }
    link.complex = intersection_complex(sliced_forms);
    link.built = true;
    return link;
}

ConnectivityLevel link_connectivity(const LinkComplex& link)
{
    if (link.complex.empty())
        return {-2};
    // The link is conical outside a compact set, like X itself.
    Rng rng(link.complex.cells.size(), 0x6c696e6b);
    const Rational v = box_radius(link.complex);
    PolyComplex t = truncate_to_box(link.complex, random_box_half_width(v, rng, std::uint64_t{1} << 20));
    return connectivity_level(homology(t), true);
}

std::vector<LinkCheck> verify_links(const MorseSetup& s, const std::vector<CriticalPoint>& pts)
{
    std::vector<LinkCheck> out;
    for (const auto& cp : pts)
    {
        LinkCheck c;
        c.cell = cp.host_cell;
        c.host_dim = cp.host_dim;
        c.kind = cp.kind;
        LinkComplex link = link_complex(s, cp);
        c.expected = link.expected_connectivity;
        c.vacuous = !link.built;
        if (link.built)
        {
            c.observed = link_connectivity(link);
            c.pass = c.observed.at_least(c.expected);
            c.descending_rays = link.descending_rays;
            c.link_vertices = link.complex.count(0);
        }
        out.push_back(c);
    }
    return out;
}

MorseReport morse_report(const MorseSetup& s, double rel_gap)
{
    MorseReport rep;
    try
    {
        rep.points = critical_points(s);
        rep.distinct_values = distinct_critical_values(rep.points, rel_gap);
        if (!rep.distinct_values)
            rep.rejection = "critical values are not distinct";
        rep.links = verify_links(s, rep.points);
    }
    catch (const NewtonDivergence& e)
    {
        rep.rejection = std::string("Newton divergence: ") + e.what();
    }
    catch (const AmbiguousCriticalPoint& e)
    {
        rep.rejection = std::string("ambiguous critical point: ") + e.what();
    }
    catch (const DegenerateGradient& e)
    {
        rep.rejection = std::string("degenerate gradient: ") + e.what();
    }
    rep.overall = !rep.rejection && std::all_of(rep.links.begin(), rep.links.end(),
                                                [](const LinkCheck& c) { return c.pass; });
    return rep;
}

}   // namespace bendlocus
