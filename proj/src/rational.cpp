#include "bendlocus/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace bendlocus {

std::string to_string(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_string(const Integer& z)
{
    return z.str();
}

namespace {

bool valid_integer_text(std::string_view s, bool allow_sign)
{
    if (s.empty())
        return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+'))
        i = 1;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            return false;
    return true;
}

}   // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!valid_integer_text(num, true))
        throw std::invalid_argument("malformed rational: " + std::string(text));
    std::string num_str(num);
    if (num_str[0] == '+')
        num_str.erase(0, 1);
    Integer p(num_str);
    if (slash == std::string_view::npos)
        return Rational(p);
    std::string_view den = text.substr(slash + 1);
    if (!valid_integer_text(den, false))
        throw std::invalid_argument("malformed rational: " + std::string(text));
    Integer q{std::string(den)};
    if (q == 0)
        throw std::invalid_argument("zero denominator: " + std::string(text));
    return Rational(p, q);
}

double to_double(const Rational& q)
{
    return q.convert_to<double>();
}

Rational rationalize(double x, int bits)
{
    if (!std::isfinite(x))
        throw std::invalid_argument("cannot rationalize a non-finite value");
    double scaled = std::ldexp(x, bits);
    if (std::fabs(scaled) >= 9.0e18)
        return Rational(x);   // already coarser than 2^-bits; exact value
    Integer k(std::llround(scaled));
    Integer den = Integer(1) << bits;
    return Rational(k, den);
}

Rational dot(const RatVector& u, const RatVector& v)
{
    if (u.size() != v.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!u[i].is_zero() && !v[i].is_zero())
            s += u[i] * v[i];
    return s;
}

RatVector operator+(const RatVector& u, const RatVector& v)
{
    if (u.size() != v.size())
        throw std::invalid_argument("vector addition: dimension mismatch");
    RatVector w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        w[i] = u[i] + v[i];
    return w;
}

RatVector operator-(const RatVector& u, const RatVector& v)
{
    if (u.size() != v.size())
        throw std::invalid_argument("vector subtraction: dimension mismatch");
    RatVector w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        w[i] = u[i] - v[i];
    return w;
}

RatVector operator*(const Rational& s, const RatVector& v)
{
    RatVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        w[i] = s * v[i];
    return w;
}

RatVector zero_vector(std::size_t dim)
{
    return RatVector(dim, Rational(0));
}

bool is_zero(const RatVector& v)
{
    for (const auto& x : v)
        if (!x.is_zero())
            return false;
    return true;
}

Rational max_abs(const RatVector& v)
{
    Rational m = 0;
    for (const auto& x : v)
        if (abs(x) > m)
            m = abs(x);
    return m;
}

RatVector primitive(const RatVector& v)
{
    Integer l = 1;
    for (const auto& x : v)
        l = boost::multiprecision::lcm(l, denominator(x));
    Integer g = 0;
    for (const auto& x : v)
        g = boost::multiprecision::gcd(g, numerator(x) * (l / denominator(x)));
    if (g == 0)
        return v;
    RatVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        w[i] = Rational(numerator(v[i]) * (l / denominator(v[i])) / g);
    return w;
}

std::vector<double> to_doubles(const RatVector& v)
{
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = to_double(v[i]);
    return out;
}

}   // namespace bendlocus
