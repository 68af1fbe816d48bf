/**
 * Exact scalar types and rational vectors.
 *
 * Rationals are GMP-backed `mpq_rational` values, always kept in lowest
 * terms with a positive denominator. They serialize as "p/q", with the
 * denominator omitted when it is 1.
 */
#ifndef BENDLOCUS_RATIONAL_HPP
#define BENDLOCUS_RATIONAL_HPP

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace bendlocus {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Points, gradients, and directions in R^d.
using RatVector = std::vector<Rational>;

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parse "p/q" or "p"; throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

/// Nearest rational k / 2^bits to x. Used to bring floating-point
/// quantities back into the exact world.
Rational rationalize(double x, int bits = 40);

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Integer& z) { return z.sign(); }

Rational dot(const RatVector& u, const RatVector& v);
RatVector operator+(const RatVector& u, const RatVector& v);
RatVector operator-(const RatVector& u, const RatVector& v);
RatVector operator*(const Rational& s, const RatVector& v);
RatVector zero_vector(std::size_t dim);
bool is_zero(const RatVector& v);
Rational max_abs(const RatVector& v);

/// Scale v by a positive rational so that its entries are coprime integers.
RatVector primitive(const RatVector& v);

std::vector<double> to_doubles(const RatVector& v);

}   // namespace bendlocus

#endif
