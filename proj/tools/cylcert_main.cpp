#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cylcert/json_io.hpp"

namespace {

using namespace cylcert;

// Exit-code contract: 0 success/pass, 1 mathematical failure, 2 input or
// validation error, 3 resource-capped inconclusive.
constexpr int kPass = 0;
constexpr int kMathFail = 1;
constexpr int kBadInput = 2;
constexpr int kInconclusive = 3;

struct Options {
    int pair_cap = 50000;
    int nilpotency_cap = 64;
    std::string output;
    unsigned seed = 0;  // reserved for external corpus drivers; never used internally
};

struct Timer {
    std::string label;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~Timer() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cerr << "[timing] " << label << ": " << ms << " ms\n";
    }
};

int finish(const Options& opts, Json report, int code,
           const std::optional<Json>& artifact = std::nullopt) {
    if (!opts.output.empty()) {
        std::ofstream out(opts.output, std::ios::binary);
        if (!out) {
            std::cout << Json{{"verdict", "error"},
                              {"detail", "cannot write output file: " + opts.output}}
                             .dump(2)
                      << "\n";
            return kBadInput;
        }
        out << (artifact ? *artifact : report).dump(2) << "\n";
    }
    std::cout << report.dump(2) << "\n";
    return code;
}

struct LoadedFile {
    std::string text;
    Json json;
};

LoadedFile load_json(const std::string& path) {
    LoadedFile f;
    f.text = read_text_file(path);
    f.json = parse_json_text(f.text);
    return f;
}

Json input_digests(const std::vector<std::pair<std::string, const LoadedFile*>>& files) {
    Json j = Json::object();
    for (auto& [path, file] : files) j[path] = fnv1a_hex(file->text);
    return j;
}

Json checks_json(const std::vector<CheckResult>& checks) {
    Json a = Json::array();
    for (auto& c : checks) a.push_back(Json{{"name", c.name}, {"pass", c.pass}});
    return a;
}

int cmd_build(const Options& opts, const std::string& spec_path) {
    Timer timer{"build"};
    LoadedFile file = load_json(spec_path);
    Json report{{"command", "build"}, {"inputs", input_digests({{spec_path, &file}})}};
    VarietySpec spec = variety_spec_from_json(file.json);
    if (auto clause = invalid_clause(spec)) {
        report["verdict"] = "error";
        report["clause"] = *clause;
        return finish(opts, report, kBadInput);
    }
    report["verdict"] = "pass";
    report["variables"] = spec.ambient_vars();
    report["defining_polynomial"] = build_defining(spec).to_text();
    return finish(opts, report, kPass);
}

int cmd_smooth(const Options& opts, const std::string& spec_path) {
    Timer timer{"smooth"};
    LoadedFile file = load_json(spec_path);
    Json report{{"command", "smooth"}, {"inputs", input_digests({{spec_path, &file}})}};
    VarietySpec spec = variety_spec_from_json(file.json);
    if (auto clause = invalid_clause(spec, false)) {
        report["verdict"] = "error";
        report["clause"] = *clause;
        return finish(opts, report, kBadInput);
    }
    GroebnerOptions gopts;
    gopts.pair_cap = opts.pair_cap;
    SmoothnessReport sr = check_smooth(spec, gopts);
    switch (sr.verdict) {
        case SmoothnessReport::Verdict::smooth: {
            report["verdict"] = "smooth";
            report["detail"] = sr.detail;
            return finish(opts, report, kPass);
        }
        case SmoothnessReport::Verdict::singular: {
            report["verdict"] = "singular";
            if (sr.point) {
                Json pt = Json::array();
                for (auto& v : *sr.point) pt.push_back(to_string(v));
                report["witness_point"] = pt;
            }
            report["detail"] = sr.detail;
            return finish(opts, report, kMathFail);
        }
        case SmoothnessReport::Verdict::undecided:
        default: {
            report["verdict"] = "undecided";
            report["detail"] = sr.detail;
            return finish(opts, report, kInconclusive);
        }
    }
}

int cmd_cylinder(const Options& opts, const std::string& spec_path,
                 const std::string& emit_path, const std::string& verify_path) {
    Timer timer{"cylinder"};
    LoadedFile file = load_json(spec_path);
    Json report{{"command", "cylinder"}, {"inputs", input_digests({{spec_path, &file}})}};
    VarietySpec spec = variety_spec_from_json(file.json);
    if (auto clause = invalid_clause(spec)) {
        report["verdict"] = "error";
        report["clause"] = *clause;
        return finish(opts, report, kBadInput);
    }
    if (!verify_path.empty()) {
        LoadedFile cert_file = load_json(verify_path);
        report["inputs"] = input_digests({{spec_path, &file}, {verify_path, &cert_file}});
        CylinderCertificate cert = cert_from_json(cert_file.json);
        CertReport cr = verify_cylinder_certificate(spec, cert);
        report["verdict"] = cr.pass ? "pass" : "fail";
        if (!cr.pass) report["first_failing"] = cr.first_failing;
        report["checks"] = checks_json(cr.checks);
        return finish(opts, report, cr.pass ? kPass : kMathFail);
    }
    CylinderCertificate cert = build_cylinder_certificate(spec);
    Json cert_json = to_json(cert);
    report["verdict"] = "pass";
    report["certificate_digest"] = fnv1a_hex(cert_json.dump());
    if (!emit_path.empty()) {
        std::ofstream out(emit_path, std::ios::binary);
        if (!out) {
            report["verdict"] = "error";
            report["detail"] = "cannot write certificate file: " + emit_path;
            return finish(opts, report, kBadInput);
        }
        out << cert_json.dump(2) << "\n";
        report["emitted_to"] = emit_path;
        return finish(opts, report, kPass);
    }
    report["certificate"] = cert_json;
    return finish(opts, report, kPass, cert_json);
}

int cmd_family(const Options& opts, int n, int m, int q, int r,
               const std::vector<std::string>& specialize_args, const std::string& cert_path) {
    Timer timer{"family"};
    Json report{{"command", "family"}, {"inputs", Json::object()}};
    FamilyCertificate fc;
    if (!cert_path.empty()) {
        LoadedFile cert_file = load_json(cert_path);
        report["inputs"] = input_digests({{cert_path, &cert_file}});
        fc = family_from_json(cert_file.json);
        if (fc.n != n || fc.m != m || fc.q != q || fc.r != r) {
            report["verdict"] = "error";
            report["clause"] = "certificate (n, m, q, r) must match the arguments";
            return finish(opts, report, kBadInput);
        }
    } else {
        fc = build_family_certificate(n, m, q, r);
    }
    if (specialize_args.empty()) {
        FamilyReport fr = verify_family_certificate(fc);
        report["verdict"] = fr.pass ? "pass" : "fail";
        if (!fr.pass) report["first_failing"] = fr.first_failing;
        report["checks"] = checks_json(fr.checks);
        if (!fr.pass) return finish(opts, report, kMathFail);
        Json cert_json = to_json(fc);
        report["certificate"] = cert_json;
        return finish(opts, report, kPass, cert_json);
    }
    if (specialize_args.size() != fc.params.size()) {
        report["verdict"] = "error";
        report["clause"] = "expected " + std::to_string(fc.params.size()) +
                           " specialization values";
        return finish(opts, report, kBadInput);
    }
    std::vector<Rational> avals;
    for (auto& s : specialize_args) avals.push_back(parse_rational(s));
    Rational res_val = resultant_at(fc, avals);
    Json point = Json::object();
    for (std::size_t i = 0; i < avals.size(); ++i) point[fc.params[i]] = to_string(avals[i]);
    report["specialization"] = point;
    report["resultant_value"] = to_string(res_val);
    if (res_val == 0) {
        report["verdict"] = "fail";
        report["detail"] = "specialization point lies on the vanishing locus of the resultant";
        return finish(opts, report, kMathFail);
    }
    CylinderCertificate cert;
    try {
        cert = specialize_family(fc, avals);
    } catch (const ConstructionError& e) {
        report["verdict"] = "fail";
        report["detail"] = e.what();
        return finish(opts, report, kMathFail);
    }
    CertReport cr = verify_cylinder_certificate(cert.spec, cert);
    report["verdict"] = cr.pass ? "pass" : "fail";
    if (!cr.pass) {
        report["first_failing"] = cr.first_failing;
        return finish(opts, report, kMathFail);
    }
    Json cert_json = to_json(cert);
    report["certificate"] = cert_json;
    return finish(opts, report, kPass, cert_json);
}

int cmd_classify(const Options& opts, const std::string& path1, const std::string& path2) {
    Timer timer{"classify"};
    LoadedFile f1 = load_json(path1), f2 = load_json(path2);
    Json report{{"command", "classify"},
                {"inputs", input_digests({{path1, &f1}, {path2, &f2}})}};
    VarietySpec s1 = variety_spec_from_json(f1.json), s2 = variety_spec_from_json(f2.json);
    for (auto* s : {&s1, &s2})
        if (auto clause = invalid_clause(*s)) {
            report["verdict"] = "error";
            report["clause"] = *clause;
            return finish(opts, report, kBadInput);
        }
    if (s1.m != s2.m || s1.n != s2.n || s1.q != s2.q || s1.r != s2.r) {
        report["verdict"] = "error";
        report["clause"] = "specs must share (m, n, q, r)";
        return finish(opts, report, kBadInput);
    }
    auto witness = scaling_equivalent(s1.p, s2.p, s1.n[0]);
    report["verdict"] = "pass";
    report["equivalent"] = witness.has_value();
    if (!witness) return finish(opts, report, kPass);
    report["mu"] = to_string(witness->mu);
    report["lambda"] = to_string(witness->lambda);
    if (s1.m >= 1) {
        RingMap eta = build_eta(s1, *witness);
        RingMapReport rr = verify_ring_map(s1, s2, eta);
        Json images = Json::object();
        for (auto& v : eta.vars) images[v] = eta.images.at(v).to_text();
        report["eta"] = Json{{"images", images}};
        report["eta_verified"] = rr.pass;
        report["unit"] = to_string(rr.unit);
        if (!rr.pass) {
            report["verdict"] = "fail";
            report["first_failing"] = rr.failing;
            return finish(opts, report, kMathFail);
        }
    } else {
        report["eta"] = nullptr;  // the explicit map needs x1; m = 0 has none
    }
    return finish(opts, report, kPass);
}

int cmd_lnd(const Options& opts, const std::string& spec_path, const std::string& deriv_path) {
    Timer timer{"lnd"};
    LoadedFile spec_file = load_json(spec_path), deriv_file = load_json(deriv_path);
    Json report{{"command", "lnd"},
                {"inputs", input_digests({{spec_path, &spec_file}, {deriv_path, &deriv_file}})}};
    VarietySpec spec = variety_spec_from_json(spec_file.json);
    if (auto clause = invalid_clause(spec)) {
        report["verdict"] = "error";
        report["clause"] = *clause;
        return finish(opts, report, kBadInput);
    }
    Derivation d = derivation_from_json(deriv_file.json, spec);
    WellDefinedReport wd = check_well_defined(spec, d);
    report["well_defined"] = wd.pass;
    if (wd.pass) report["cofactor"] = wd.cofactor.to_text();
    report["well_defined_detail"] = wd.detail;
    if (!wd.pass) {
        report["verdict"] = "fail";
        return finish(opts, report, kMathFail);
    }
    NilpotencyOutcome nil = check_locally_nilpotent(spec, d, opts.nilpotency_cap);
    report["nilpotency_cap"] = nil.cap;
    switch (nil.kind) {
        case NilpotencyOutcome::Kind::evidence: {
            Json degrees = Json::object();
            for (auto& v : derivation_vars(spec, d.extend_w)) degrees[v] = nil.degrees.at(v);
            report["verdict"] = "pass";
            report["degrees"] = degrees;
            report["detail"] = nil.detail;
            return finish(opts, report, kPass);
        }
        case NilpotencyOutcome::Kind::refuted: {
            report["verdict"] = "fail";
            report["refuted_generator"] = nil.refuted_generator;
            report["cycle_element"] = nil.cycle_element.to_text();
            report["detail"] = nil.detail;
            return finish(opts, report, kMathFail);
        }
        case NilpotencyOutcome::Kind::inconclusive:
        default: {
            report["verdict"] = "inconclusive";
            report["detail"] = nil.detail;
            return finish(opts, report, kInconclusive);
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certificates for cylinder isomorphisms of the x^n y + z^q + t^r + "
                 "x0 p(x) varieties"};
    app.require_subcommand(1);
    Options opts;
    app.add_option("--pair-cap", opts.pair_cap, "Groebner S-pair budget before giving up");
    app.add_option("--nilpotency-cap", opts.nilpotency_cap,
                   "max derivation applications per generator");
    app.add_option("--output", opts.output, "also write the primary artifact to this file");
    app.add_option("--seed", opts.seed, "reserved for external test drivers");

    std::string spec_path, spec_path2, emit_path, verify_path, cert_path;
    std::vector<std::string> specialize_args;
    int fam_n = 0, fam_m = 0, fam_q = 0, fam_r = 0;

    auto* build = app.add_subcommand("build", "validate a spec and print its defining polynomial");
    build->add_option("spec", spec_path, "VarietySpec JSON file")->required();

    auto* smooth = app.add_subcommand("smooth", "Jacobian-criterion smoothness check");
    smooth->add_option("spec", spec_path, "VarietySpec JSON file")->required();

    auto* cylinder = app.add_subcommand("cylinder", "build or verify a cylinder certificate");
    cylinder->add_option("spec", spec_path, "VarietySpec JSON file")->required();
    auto* emit_opt = cylinder->add_option("--emit", emit_path, "write the certificate here");
    auto* verify_opt =
        cylinder->add_option("--verify", verify_path, "verify this certificate file");
    emit_opt->excludes(verify_opt);
    verify_opt->excludes(emit_opt);

    auto* family = app.add_subcommand("family", "parametric certificate over Q[a2..a_{n-2}]");
    family->add_option("n", fam_n, "common exponent n (>= 4)")->required();
    family->add_option("m", fam_m, "number of extra x variables")->required();
    family->add_option("q", fam_q, "z exponent")->required();
    family->add_option("r", fam_r, "t exponent")->required();
    family->add_option("--specialize", specialize_args,
                       "parameter values a2 .. a_{n-2} (rationals)");
    family->add_option("--cert", cert_path, "use this stored family certificate");

    auto* classify = app.add_subcommand("classify", "decide scaling equivalence of two specs");
    classify->add_option("spec1", spec_path, "first VarietySpec JSON file")->required();
    classify->add_option("spec2", spec_path2, "second VarietySpec JSON file")->required();

    auto* lnd = app.add_subcommand("lnd", "verify a locally nilpotent derivation");
    lnd->add_option("spec", spec_path, "VarietySpec JSON file")->required();
    lnd->add_option("derivation", spec_path2, "Derivation JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(opts, spec_path);
        if (smooth->parsed()) return cmd_smooth(opts, spec_path);
        if (cylinder->parsed()) return cmd_cylinder(opts, spec_path, emit_path, verify_path);
        if (family->parsed())
            return cmd_family(opts, fam_n, fam_m, fam_q, fam_r, specialize_args, cert_path);
        if (classify->parsed()) return cmd_classify(opts, spec_path, spec_path2);
        if (lnd->parsed()) return cmd_lnd(opts, spec_path, spec_path2);
    } catch (const ValidationError& e) {
        std::cout << Json{{"verdict", "error"}, {"clause", e.clause}}.dump(2) << "\n";
        return kBadInput;
    } catch (const CapacityError& e) {
        std::cout << Json{{"verdict", "inconclusive"}, {"detail", e.what()}}.dump(2) << "\n";
        return kInconclusive;
    } catch (const DomainError& e) {
        std::cout << Json{{"verdict", "error"}, {"detail", e.what()}}.dump(2) << "\n";
        return kBadInput;
    } catch (const Error& e) {
        std::cout << Json{{"verdict", "error"}, {"detail", e.what()}}.dump(2) << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cout << Json{{"verdict", "error"}, {"detail", e.what()}}.dump(2) << "\n";
        return kBadInput;
    }
    return kBadInput;
}
