#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "covmin/families.hpp"
#include "covmin/lattice.hpp"
#include "covmin/polytope.hpp"

namespace covmin::io {

using json = nlohmann::json;

/// Either explicit vertices or a named family with parameters.
struct BodySpec {
    std::vector<RatVec> vertices;
    std::string family;
    json params = json::object();

    bool is_family() const { return !family.empty(); }
    friend bool operator==(const BodySpec& a, const BodySpec& b) {
        return a.vertices == b.vertices && a.family == b.family && a.params == b.params;
    }
};

struct IndexRange {
    std::size_t lo = 1, hi = 1;
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct ProblemSpec {
    std::optional<BodySpec> body;
    std::optional<std::vector<RatVec>> lattice;  ///< basis vectors
    std::optional<IndexRange> index;
    std::optional<Rat> tol;
    std::vector<std::string> flags;

    friend bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
        return a.body == b.body && a.lattice == b.lattice && a.index == b.index && a.tol == b.tol &&
               a.flags == b.flags;
    }
};

namespace detail {

[[noreturn]] inline void field_error(const std::string& field, const std::string& what) {
    fail(Errc::InvalidInput, "field '" + field + "': " + what);
}

inline Rat rat_from(const json& j, const std::string& field) {
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const Error& e) {
            field_error(field, e.what());
        }
    }
    if (j.is_number_integer())
        return Rat(Int(j.dump()));
    if (j.is_number_float())
        field_error(field, "floating-point number " + j.dump() + " rejected; write rationals as strings \"p/q\"");
    field_error(field, "expected a rational string, got " + std::string(j.type_name()));
}

inline RatVec vec_from(const json& j, const std::string& field) {
    if (!j.is_array())
        field_error(field, "expected an array");
    RatVec v(j.size());
    for (std::size_t k = 0; k < j.size(); ++k)
        v[k] = rat_from(j[k], field + "[" + std::to_string(k) + "]");
    return v;
}

inline std::vector<RatVec> points_from(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty())
        field_error(field, "expected a nonempty array of points");
    std::vector<RatVec> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(vec_from(j[k], field + "[" + std::to_string(k) + "]"));
        if (out.back().size() != out.front().size())
            field_error(field + "[" + std::to_string(k) + "]", "dimension differs from the first point");
    }
    return out;
}

inline void reject_floats(const json& j, const std::string& field) {
    if (j.is_number_float())
        field_error(field, "floating-point number " + j.dump() + " rejected; write rationals as strings \"p/q\"");
    if (j.is_array())
        for (std::size_t k = 0; k < j.size(); ++k)
            reject_floats(j[k], field + "[" + std::to_string(k) + "]");
    if (j.is_object())
        for (auto it = j.begin(); it != j.end(); ++it)
            reject_floats(it.value(), field + "." + it.key());
}

inline json vec_to(const RatVec& v) {
    json a = json::array();
    for (const auto& x : v)
        a.push_back(covmin::to_string(x));
    return a;
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t k = 0; k < std::min(byte, text.size()); ++k)
        if (text[k] == '\n')
            ++line;
    return line;
}

} // namespace detail

/// "3" or "2..4".
inline IndexRange parse_index_range(const std::string& s) {
    auto dots = s.find("..");
    auto number = [&](const std::string& t) -> std::size_t {
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            fail(Errc::InvalidInput, "malformed index '" + s + "'");
        return std::stoul(t);
    };
    IndexRange r;
    if (dots == std::string::npos) {
        r.lo = r.hi = number(s);
    } else {
        r.lo = number(s.substr(0, dots));
        r.hi = number(s.substr(dots + 2));
    }
    require(r.lo <= r.hi, Errc::InvalidInput, "empty index range '" + s + "'");
    return r;
}

inline std::string to_string(const IndexRange& r) {
    return r.lo == r.hi ? std::to_string(r.lo) : std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(Errc::InvalidInput, "malformed JSON at line " + std::to_string(detail::line_of(text, e.byte)) +
                                     " (byte " + std::to_string(e.byte) + ")");
    }
}

inline BodySpec body_from_json(const json& j, const std::string& field = "body") {
    if (!j.is_object())
        detail::field_error(field, "expected an object");
    BodySpec b;
    bool has_v = j.contains("vertices"), has_f = j.contains("family");
    if (has_v == has_f)
        detail::field_error(field, "give exactly one of 'vertices' or 'family'");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "vertices" && it.key() != "family" && it.key() != "params")
            detail::field_error(field + "." + it.key(), "unknown field");
    if (has_v) {
        if (j.contains("params"))
            detail::field_error(field + ".params", "only valid together with 'family'");
        b.vertices = detail::points_from(j["vertices"], field + ".vertices");
    } else {
        if (!j["family"].is_string())
            detail::field_error(field + ".family", "expected a string");
        b.family = j["family"].get<std::string>();
        if (j.contains("params")) {
            if (!j["params"].is_object())
                detail::field_error(field + ".params", "expected an object");
            detail::reject_floats(j["params"], field + ".params");
            b.params = j["params"];
        }
    }
    return b;
}

inline json body_to_json(const BodySpec& b) {
    json j = json::object();
    if (b.is_family()) {
        j["family"] = b.family;
        if (!b.params.empty())
            j["params"] = b.params;
    } else {
        json v = json::array();
        for (const auto& p : b.vertices)
            v.push_back(detail::vec_to(p));
        j["vertices"] = v;
    }
    return j;
}

inline std::vector<RatVec> lattice_from_json(const json& j, const std::string& field = "lattice") {
    if (j.is_object()) {
        if (!j.contains("basis"))
            detail::field_error(field, "expected a 'basis' array");
        return detail::points_from(j["basis"], field + ".basis");
    }
    return detail::points_from(j, field);
}

inline ProblemSpec spec_from_json(const json& j) {
    if (!j.is_object())
        fail(Errc::InvalidInput, "problem spec must be a JSON object");
    ProblemSpec s;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        if (key == "body") {
            s.body = body_from_json(v);
        } else if (key == "lattice") {
            s.lattice = lattice_from_json(v);
        } else if (key == "i") {
            if (v.is_number_unsigned())
                s.index = IndexRange{v.get<std::size_t>(), v.get<std::size_t>()};
            else if (v.is_string())
                s.index = parse_index_range(v.get<std::string>());
            else
                detail::field_error("i", "expected an integer or \"a..b\"");
        } else if (key == "tol") {
            s.tol = detail::rat_from(v, "tol");
            if (*s.tol <= 0)
                detail::field_error("tol", "must be positive");
        } else if (key == "flags") {
            if (!v.is_array())
                detail::field_error("flags", "expected an array of strings");
            for (std::size_t k = 0; k < v.size(); ++k) {
                if (!v[k].is_string())
                    detail::field_error("flags[" + std::to_string(k) + "]", "expected a string");
                s.flags.push_back(v[k].get<std::string>());
            }
            std::sort(s.flags.begin(), s.flags.end());
        } else {
            detail::field_error(key, "unknown field");
        }
    }
    return s;
}

inline ProblemSpec parse_spec(const std::string& text) { return spec_from_json(parse_json_text(text)); }

inline json spec_to_json(const ProblemSpec& s) {
    json j = json::object();
    if (s.body)
        j["body"] = body_to_json(*s.body);
    if (s.lattice) {
        json b = json::array();
        for (const auto& v : *s.lattice)
            b.push_back(detail::vec_to(v));
        j["lattice"] = json{{"basis", b}};
    }
    if (s.index) {
        if (s.index->lo == s.index->hi)
            j["i"] = s.index->lo;
        else
            j["i"] = to_string(*s.index);
    }
    if (s.tol)
        j["tol"] = covmin::to_string(*s.tol);
    if (!s.flags.empty())
        j["flags"] = s.flags;
    return j;
}

inline std::string serialize_spec(const ProblemSpec& s) { return spec_to_json(s).dump(); }

namespace detail {

inline const json& param(const json& p, const std::string& name) {
    if (!p.contains(name))
        field_error("body.params." + name, "missing");
    return p[name];
}

inline std::size_t param_size(const json& p, const std::string& name) {
    const json& v = param(p, name);
    if (v.is_number_unsigned())
        return v.get<std::size_t>();
    if (v.is_string()) {
        Rat r = rat_from(v, "body.params." + name);
        if (is_integer(r) && r >= 0)
            return static_cast<std::size_t>(to_i64(num(r)));
    }
    field_error("body.params." + name, "expected a nonnegative integer");
}

inline std::vector<Rat> param_rats(const json& p, const std::string& name) {
    const json& v = param(p, name);
    if (v.is_string() && v.get<std::string>().find(',') != std::string::npos) {
        std::vector<Rat> out;
        std::string s = v.get<std::string>();
        std::size_t start = 0;
        while (true) {
            auto comma = s.find(',', start);
            out.push_back(rat_from(json(s.substr(start, comma - start)), "body.params." + name));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        return out;
    }
    RatVec r = vec_from(v, "body.params." + name);
    return {r.begin(), r.end()};
}

} // namespace detail

/// Builds the body a spec describes. Families: terminal {d}, weighted {omega},
/// cube {d, r}, crosspolytope {d}, segment {a, b}, unimodular {d},
/// terminal-polytope {dims}, box {lo, hi}.
inline Polytope build_body(const BodySpec& b) {
    if (!b.is_family()) {
        std::size_t d = b.vertices.front().size();
        return Polytope(d, b.vertices);
    }
    const json& p = b.params;
    const std::string& f = b.family;
    if (f == "terminal")
        return terminal_simplex(detail::param_size(p, "d"));
    if (f == "weighted")
        return weighted_simplex(WeightVector(detail::param_rats(p, "omega")));
    if (f == "cube") {
        Rat r = p.contains("r") ? detail::rat_from(p["r"], "body.params.r") : Rat(1);
        require(r > 0, Errc::InvalidInput, "field 'body.params.r': must be positive");
        return cube(detail::param_size(p, "d"), r);
    }
    if (f == "crosspolytope")
        return crosspolytope(detail::param_size(p, "d"));
    if (f == "segment")
        return segment(detail::rat_from(detail::param(p, "a"), "body.params.a"),
                       detail::rat_from(detail::param(p, "b"), "body.params.b"));
    if (f == "unimodular")
        return unimodular_simplex(detail::param_size(p, "d"));
    if (f == "terminal-polytope") {
        std::vector<std::size_t> dims;
        for (const auto& x : detail::param_rats(p, "dims")) {
            require(is_integer(x) && x > 0, Errc::InvalidInput, "field 'body.params.dims': positive integers");
            dims.push_back(static_cast<std::size_t>(to_i64(num(x))));
        }
        return terminal_polytope(dims);
    }
    if (f == "box") {
        auto lo = detail::param_rats(p, "lo"), hi = detail::param_rats(p, "hi");
        require(lo.size() == hi.size() && !lo.empty(), Errc::InvalidInput, "field 'body.params': lo and hi differ in length");
        for (std::size_t k = 0; k < lo.size(); ++k)
            require(lo[k] < hi[k], Errc::InvalidInput, "field 'body.params': box side with lo >= hi");
        return box(RatVec(lo), RatVec(hi));
    }
    fail(Errc::InvalidInput, "field 'body.family': unknown family '" + f + "'");
}

inline Lattice build_lattice(const std::optional<std::vector<RatVec>>& basis, std::size_t d) {
    if (!basis)
        return Lattice::standard(d);
    require(basis->size() == d && basis->front().size() == d, Errc::DimensionMismatch,
            "lattice basis must have " + std::to_string(d) + " vectors of length " + std::to_string(d));
    if (det(RatMat::from_columns(*basis, d)) == 0)
        fail(Errc::Singular, "lattice basis is singular");
    return Lattice::from_vectors(*basis);
}

} // namespace covmin::io
