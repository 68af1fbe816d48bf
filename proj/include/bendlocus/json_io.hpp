/**
 * JSON encodings. Rationals are strings "p/q" ("p" when q = 1); keys keep
 * insertion order so that reports are byte-stable.
 */
#ifndef BENDLOCUS_JSON_IO_HPP
#define BENDLOCUS_JSON_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "bendlocus/generator.hpp"
#include "bendlocus/homology.hpp"
#include "bendlocus/morse.hpp"
#include "bendlocus/verify.hpp"

namespace bendlocus {

using Json = nlohmann::ordered_json;

class JsonFormatError : public std::runtime_error
{
    public:
        explicit JsonFormatError(const std::string& what) : std::runtime_error(what) {}
};

Json to_json(const Rational& q);
Json to_json(const RatVector& v);
Json to_json(const AffineForm& f);                 // {b, a}
Json to_json(const Polyhedron& p);                 // {ambient_dim, equalities: [[b..], a], inequalities}
Json to_json(const ConvexPLFunction& f);           // {d, forms}
Json to_json(const std::vector<ConvexPLFunction>& fs);
Json to_json(const InstanceSpec& s);
Json to_json(const GenericityReport& g);
Json to_json(const Instance& inst);                // {spec, functions, attempts, genericity}
Json to_json(const CellLabel& l);
Json to_json(const PolyComplex& c);
Json to_json(const ConnectivityLevel& l);          // integer, or "inf"
Json to_json(const HomologyResult& h, const ConnectivityLevel& level);
Json to_json(const MorseReport& r);

Json to_json(const TheoremRecord& r, bool timings = false);
Json to_json(const BaseRecord& r, bool timings = false);
Json to_json(const LemmaRecord& r, bool timings = false);

template <typename Record>
Json to_json(const Report<Record>& rep, bool timings = false)
{
    Json j;
    j["command"] = rep.command;
    j["spec"] = to_json(rep.spec);
    j["count"] = rep.count;
    Json records = Json::array();
    for (const auto& r : rep.records)
        records.push_back(to_json(r, timings));
    j["records"] = std::move(records);
    j["passed"] = rep.passed();
    j["pass_rate"] = rep.records.empty() ? 1.0 : static_cast<double>(rep.passed()) / rep.records.size();
    j["all_pass"] = rep.all_pass();
    return j;
}

Rational rational_from_json(const Json& j);        // accepts "p/q" strings and integers
RatVector vector_from_json(const Json& j);
AffineForm form_from_json(const Json& j);
Polyhedron polyhedron_from_json(const Json& j);
ConvexPLFunction function_from_json(const Json& j);
InstanceSpec spec_from_json(const Json& j);

/// Accepts an instance object, an array of functions, or one function.
std::vector<ConvexPLFunction> functions_from_json(const Json& j);

Json read_json_file(const std::string& path);
/// Two-space indented dump with a trailing newline.
void write_json(std::ostream& out, const Json& j);
void write_json_file(const std::string& path, const Json& j);

}   // namespace bendlocus

#endif
