#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "family.hpp"
#include "lnd.hpp"

namespace cylcert {

using Json = nlohmann::ordered_json;

// 64-bit FNV-1a, used for stable input digests in CLI reports.
inline std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StructuralError("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline Json parse_json_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw StructuralError("malformed JSON input");
    return j;
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw StructuralError(std::string("missing JSON field: ") + key);
    return j[key];
}

inline int int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw StructuralError(std::string("expected integer: ") + key);
    return v.get<int>();
}

inline std::string str_value(const Json& v, const char* what) {
    if (!v.is_string()) throw StructuralError(std::string("expected string: ") + what);
    return v.get<std::string>();
}

inline std::vector<std::string> str_array(const Json& v, const char* what) {
    if (!v.is_array()) throw StructuralError(std::string("expected array: ") + what);
    std::vector<std::string> out;
    for (auto& e : v) out.push_back(str_value(e, what));
    return out;
}

}  // namespace detail

// ---- VarietySpec ----------------------------------------------------------
// {"m": int, "n": [int..], "q": int, "r": int,
//  "p": [coefficient strings, low to high],
//  "parameters": [names]}            (optional; marks a parametric spec)

inline Json to_json(const VarietySpec& spec) {
    Json j;
    j["m"] = spec.m;
    j["n"] = spec.n;
    j["q"] = spec.q;
    j["r"] = spec.r;
    Json coeffs = Json::array();
    for (auto& c : spec.p.coeffs()) coeffs.push_back(to_string(c));
    j["p"] = coeffs;
    return j;
}

inline VarietySpec variety_spec_from_json(const Json& j) {
    VarietySpec spec;
    spec.m = detail::int_field(j, "m");
    const Json& n = detail::field(j, "n");
    if (!n.is_array()) throw StructuralError("expected array: n");
    for (auto& e : n) {
        if (!e.is_number_integer()) throw StructuralError("expected integer entry in n");
        spec.n.push_back(e.get<int>());
    }
    spec.q = detail::int_field(j, "q");
    spec.r = detail::int_field(j, "r");
    if (j.contains("parameters") && !j["parameters"].empty())
        throw StructuralError("parametric spec given where a ground spec is required");
    std::vector<Rational> coeffs;
    for (auto& s : detail::str_array(detail::field(j, "p"), "p"))
        coeffs.push_back(parse_rational(s));
    spec.p = UniPoly<Rational>(std::move(coeffs));
    return spec;
}

// ---- Derivation -----------------------------------------------------------
// {"images": {generator: polynomial text}, "extend_w": bool}

inline Json to_json(const VarietySpec& spec, const Derivation& d) {
    Json j;
    Json images = Json::object();
    for (auto& v : derivation_vars(spec, d.extend_w)) {
        auto it = d.images.find(v);
        if (it != d.images.end()) images[v] = it->second.to_text();
    }
    j["images"] = images;
    j["extend_w"] = d.extend_w;
    return j;
}

inline Derivation derivation_from_json(const Json& j, const VarietySpec& spec) {
    Derivation d;
    const Json& ext = detail::field(j, "extend_w");
    if (!ext.is_boolean()) throw StructuralError("expected boolean: extend_w");
    d.extend_w = ext.get<bool>();
    auto vars = derivation_vars(spec, d.extend_w);
    const Json& images = detail::field(j, "images");
    if (!images.is_object()) throw StructuralError("expected object: images");
    for (auto& [key, value] : images.items()) {
        if (std::find(vars.begin(), vars.end(), key) == vars.end())
            throw StructuralError("image for unknown generator: " + key);
        d.images[key] = parse_ground(vars, detail::str_value(value, "image"));
    }
    for (auto& v : vars)  // unstated generators map to zero
        d.images.try_emplace(v, QPoly::zero(vars));
    return d;
}

// ---- CylinderCertificate --------------------------------------------------
// {"spec": .., "precision": N, "g1": [..], "g2": [..], "h": [3 texts],
//  "det": "num/den", "inverse": [9 texts row-major], "F": text,
//  "forward_cofactors": [4 texts row-major], "backward_cofactors": [..],
//  "rescaling": {"mu0": "num/den", "lambda0": "num/den"}}

inline Json to_json(const CylinderCertificate& cert) {
    Json j;
    j["spec"] = to_json(cert.spec);
    j["precision"] = cert.matrix.precision;
    auto coeff_array = [](const UniPoly<Rational>& f) {
        Json a = Json::array();
        for (auto& c : f.coeffs()) a.push_back(to_string(c));
        return a;
    };
    j["g1"] = coeff_array(cert.matrix.g1);
    j["g2"] = coeff_array(cert.matrix.g2);
    j["h"] = Json::array(
        {cert.matrix.h1.to_text(), cert.matrix.h2.to_text(), cert.matrix.h3.to_text()});
    j["det"] = to_string(cert.matrix.det);
    Json inv = Json::array();
    for (auto& row : cert.inverse)
        for (auto& e : row) inv.push_back(e.to_text());
    j["inverse"] = inv;
    j["F"] = cert.remainder.to_text();
    auto cof_array = [](const std::array<std::array<QPoly, 2>, 2>& c) {
        Json a = Json::array();
        for (auto& row : c)
            for (auto& e : row) a.push_back(e.to_text());
        return a;
    };
    j["forward_cofactors"] = cof_array(cert.forward);
    j["backward_cofactors"] = cof_array(cert.backward);
    j["rescaling"] = Json{{"mu0", to_string(cert.rescaling.mu0)},
                          {"lambda0", to_string(cert.rescaling.lambda0)}};
    return j;
}

inline CylinderCertificate cert_from_json(const Json& j) {
    CylinderCertificate cert;
    cert.spec = variety_spec_from_json(detail::field(j, "spec"));
    cert.matrix.precision = detail::int_field(j, "precision");
    auto parse_coeffs = [&](const char* key) {
        std::vector<Rational> coeffs;
        for (auto& s : detail::str_array(detail::field(j, key), key))
            coeffs.push_back(parse_rational(s));
        return UniPoly<Rational>(std::move(coeffs));
    };
    cert.matrix.g1 = parse_coeffs("g1");
    cert.matrix.g2 = parse_coeffs("g2");
    auto xvars = cert.spec.x_vars();
    auto h = detail::str_array(detail::field(j, "h"), "h");
    if (h.size() != 3) throw StructuralError("h must have 3 entries");
    cert.matrix.h1 = parse_ground(xvars, h[0]);
    cert.matrix.h2 = parse_ground(xvars, h[1]);
    cert.matrix.h3 = parse_ground(xvars, h[2]);
    cert.matrix.det = parse_rational(detail::str_value(detail::field(j, "det"), "det"));
    auto inv = detail::str_array(detail::field(j, "inverse"), "inverse");
    if (inv.size() != 9) throw StructuralError("inverse must have 9 entries");
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k)
            cert.inverse[i][k] = parse_ground(xvars, inv[3 * i + k]);
    auto cvars = cert.spec.cylinder_vars();
    cert.remainder = parse_ground(cvars, detail::str_value(detail::field(j, "F"), "F"));
    auto parse_cof = [&](const char* key) {
        auto texts = detail::str_array(detail::field(j, key), key);
        if (texts.size() != 4) throw StructuralError(std::string(key) + " must have 4 entries");
        std::array<std::array<QPoly, 2>, 2> out{
            {{parse_ground(cvars, texts[0]), parse_ground(cvars, texts[1])},
             {parse_ground(cvars, texts[2]), parse_ground(cvars, texts[3])}}};
        return out;
    };
    cert.forward = parse_cof("forward_cofactors");
    cert.backward = parse_cof("backward_cofactors");
    const Json& resc = detail::field(j, "rescaling");
    cert.rescaling.mu0 =
        parse_rational(detail::str_value(detail::field(resc, "mu0"), "mu0"));
    cert.rescaling.lambda0 =
        parse_rational(detail::str_value(detail::field(resc, "lambda0"), "lambda0"));
    return cert;
}

// ---- FamilyCertificate ----------------------------------------------------
// {"n","m","q","r", "parameters": [..], "precision": N,
//  "P": [texts in the parameters], "G1": [..], "G2": [..],
//  "bezout_s": [..], "bezout_t": [..], "resultant": text,
//  "h": [{"num": tower text, "denominator_power": int} x3],
//  "det": {"num": .., "denominator_power": int}}

inline Json to_json(const FamilyCertificate& fc) {
    Json j;
    j["n"] = fc.n;
    j["m"] = fc.m;
    j["q"] = fc.q;
    j["r"] = fc.r;
    j["parameters"] = fc.params;
    j["precision"] = fc.precision;
    auto coeff_array = [](const UniPoly<APoly>& f) {
        Json a = Json::array();
        for (auto& c : f.coeffs()) a.push_back(c.to_text());
        return a;
    };
    j["P"] = coeff_array(fc.P);
    j["G1"] = coeff_array(fc.G1);
    j["G2"] = coeff_array(fc.G2);
    j["bezout_s"] = coeff_array(fc.bez_s);
    j["bezout_t"] = coeff_array(fc.bez_t);
    j["resultant"] = fc.resultant.to_text();
    auto loc = [](const LocElem& e) {
        return Json{{"num", e.num.to_text()}, {"denominator_power", e.power}};
    };
    j["h"] = Json::array({loc(fc.h1), loc(fc.h2), loc(fc.h3)});
    j["det"] = loc(fc.det);
    return j;
}

inline FamilyCertificate family_from_json(const Json& j) {
    FamilyCertificate fc;
    fc.n = detail::int_field(j, "n");
    fc.m = detail::int_field(j, "m");
    fc.q = detail::int_field(j, "q");
    fc.r = detail::int_field(j, "r");
    fc.params = detail::str_array(detail::field(j, "parameters"), "parameters");
    fc.precision = detail::int_field(j, "precision");
    auto parse_coeffs = [&](const char* key) {
        std::vector<APoly> coeffs;
        for (auto& s : detail::str_array(detail::field(j, key), key))
            coeffs.push_back(parse_ground(fc.params, s));
        return UniPoly<APoly>(std::move(coeffs));
    };
    fc.P = parse_coeffs("P");
    fc.G1 = parse_coeffs("G1");
    fc.G2 = parse_coeffs("G2");
    fc.bez_s = parse_coeffs("bezout_s");
    fc.bez_t = parse_coeffs("bezout_t");
    fc.resultant =
        parse_ground(fc.params, detail::str_value(detail::field(j, "resultant"), "resultant"));
    FamilySpec spec = detail::family_spec(fc);
    auto xvars = spec.x_vars();
    auto loc = [&](const Json& v) {
        LocElem e;
        e.num = parse_tower(xvars, fc.params,
                            detail::str_value(detail::field(v, "num"), "num"));
        e.power = detail::int_field(v, "denominator_power");
        return e;
    };
    const Json& h = detail::field(j, "h");
    if (!h.is_array() || h.size() != 3) throw StructuralError("h must have 3 entries");
    fc.h1 = loc(h[0]);
    fc.h2 = loc(h[1]);
    fc.h3 = loc(h[2]);
    fc.det = loc(detail::field(j, "det"));
    return fc;
}

}  // namespace cylcert
