#pragma once

#include <cstdio>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "arrangelab/arrangement.hpp"

namespace arrangelab {

namespace detail {

inline cplx scalar_from_json(const nlohmann::json& j, const char* field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ParseError(std::string("malformed document: coefficient '") + field +
                     "' must be a number or a [re, im] pair");
}

/// Shortest-round-trip is not what we want here: coefficients are always
/// written with 17 significant digits.
inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_scalar(cplx z) {
    return "[" + format_real(z.real()) + ", " + format_real(z.imag()) + "]";
}

}  // namespace detail

inline Line line_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("malformed document: each line must be an object");
    for (const char* k : {"a", "b", "c"})
        if (!j.contains(k)) throw ParseError(std::string("malformed document: line missing '") + k + "'");
    return Line(detail::scalar_from_json(j["a"], "a"), detail::scalar_from_json(j["b"], "b"),
                detail::scalar_from_json(j["c"], "c"));
}

inline Arrangement arrangement_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("lines") || !doc["lines"].is_array())
        throw ParseError("malformed document: expected an object with a 'lines' array");
    std::vector<Line> lines;
    for (const auto& jl : doc["lines"]) lines.push_back(line_from_json(jl));
    return Arrangement(std::move(lines));
}

/// Reads an arrangement document. Throws ParseError, DegenerateLineError or
/// DuplicateLineError.
inline Arrangement parse_arrangement(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
    return arrangement_from_json(doc);
}

inline Arrangement parse_arrangement(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_arrangement(in);
}

inline std::string serialize_line(const Line& l) {
    return "{\"a\": " + detail::format_scalar(l.a()) + ", \"b\": " + detail::format_scalar(l.b()) +
           ", \"c\": " + detail::format_scalar(l.c()) + "}";
}

inline std::string serialize_arrangement(const Arrangement& arr) {
    std::string out = "{\"lines\": [";
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) out += ", ";
        out += serialize_line(arr[i]);
    }
    return out + "]}";
}

inline nlohmann::json to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }
inline nlohmann::json to_json(Point p) { return nlohmann::json::array({to_json(p.x), to_json(p.y)}); }

inline nlohmann::json to_json(const Arrangement& arr) {
    return nlohmann::json::parse(serialize_arrangement(arr));
}

}  // namespace arrangelab
