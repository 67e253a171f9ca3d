#include "cylcert/json_io.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <string>

using namespace cylcert;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

std::string temp_path(const std::string& name) {
    return testing::TempDir() + "cylcert_cli_" + name;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string out_file = temp_path("stdout_" + std::to_string(counter++) + ".json");
    std::string cmd =
        std::string(CYLCERT_CLI_PATH) + " " + args + " > " + out_file + " 2> /dev/null";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_text_file(out_file);
    return r;
}

std::string sample(const std::string& name) {
    return std::string(CYLCERT_SAMPLES_DIR) + "/" + name;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    ASSERT_TRUE(out) << path;
    out << text;
}

}  // namespace

TEST(Cli, BuildReportsDefiningPolynomial) {
    auto r = run_cli("build " + sample("spec_m0_1plusu.json"));
    ASSERT_EQ(r.code, 0);
    Json j = parse_json_text(r.out);
    EXPECT_EQ(j["command"], "build");
    EXPECT_EQ(j["verdict"], "pass");
    ASSERT_TRUE(j["inputs"].is_object());
    VarietySpec spec =
        variety_spec_from_json(parse_json_text(read_text_file(sample("spec_m0_1plusu.json"))));
    auto vars = spec.ambient_vars();
    EXPECT_EQ(j["variables"].get<std::vector<std::string>>(), vars);
    EXPECT_EQ(parse_ground(vars, j["defining_polynomial"].get<std::string>()),
              build_defining(spec));
}

TEST(Cli, BuildRejectsInvalidInput) {
    auto bad_qr = run_cli("build " + sample("spec_invalid_qr.json"));
    EXPECT_EQ(bad_qr.code, 2);
    EXPECT_EQ(parse_json_text(bad_qr.out)["clause"], "gcd(q, r) = 1");

    auto malformed = run_cli("build " + sample("malformed.json"));
    EXPECT_EQ(malformed.code, 2);
    EXPECT_EQ(parse_json_text(malformed.out)["verdict"], "error");
}

TEST(Cli, SmoothCoversAllThreeVerdicts) {
    auto smooth = run_cli("smooth " + sample("spec_m0_1plusu.json"));
    EXPECT_EQ(smooth.code, 0);
    EXPECT_EQ(parse_json_text(smooth.out)["verdict"], "smooth");

    auto singular = run_cli("smooth " + sample("spec_singular.json"));
    EXPECT_EQ(singular.code, 1);
    Json js = parse_json_text(singular.out);
    EXPECT_EQ(js["verdict"], "singular");
    ASSERT_TRUE(js.contains("witness_point"));
    for (auto& c : js["witness_point"]) EXPECT_EQ(c, "0");

    auto capped = run_cli("--pair-cap 1 smooth " + sample("spec_m0_1plusu.json"));
    EXPECT_EQ(capped.code, 3);
    EXPECT_EQ(parse_json_text(capped.out)["verdict"], "undecided");
}

TEST(Cli, CylinderEmitThenVerify) {
    std::string cert_path = temp_path("cert_m1.json");
    auto emit = run_cli("cylinder " + sample("spec_m1.json") + " --emit " + cert_path);
    ASSERT_EQ(emit.code, 0);
    Json je = parse_json_text(emit.out);
    EXPECT_EQ(je["verdict"], "pass");
    EXPECT_EQ(je["emitted_to"], cert_path);

    auto verify = run_cli("cylinder " + sample("spec_m1.json") + " --verify " + cert_path);
    ASSERT_EQ(verify.code, 0);
    Json jv = parse_json_text(verify.out);
    EXPECT_EQ(jv["verdict"], "pass");
    ASSERT_TRUE(jv["checks"].is_array());
    EXPECT_EQ(jv["checks"].size(), 12u);
    EXPECT_EQ(jv["checks"][0]["name"], "spec-validation");
    EXPECT_EQ(jv["checks"][11]["name"], "backward-cofactors");
    for (auto& c : jv["checks"]) EXPECT_TRUE(c["pass"].get<bool>());

    // the emitted digest matches what the verifier was handed
    EXPECT_EQ(je["certificate_digest"],
              fnv1a_hex(parse_json_text(read_text_file(cert_path)).dump()));
}

TEST(Cli, CylinderVerifyFlagsCorruptedCertificate) {
    std::string cert_path = temp_path("cert_good.json");
    ASSERT_EQ(run_cli("cylinder " + sample("spec_m1.json") + " --emit " + cert_path).code, 0);
    Json cert = parse_json_text(read_text_file(cert_path));
    cert["g1"][1] = "1/3";
    std::string bad_path = temp_path("cert_bad.json");
    write_file(bad_path, cert.dump(2) + "\n");

    auto verify = run_cli("cylinder " + sample("spec_m1.json") + " --verify " + bad_path);
    EXPECT_EQ(verify.code, 1);
    Json jv = parse_json_text(verify.out);
    EXPECT_EQ(jv["verdict"], "fail");
    EXPECT_EQ(jv["first_failing"], "g-congruence-q");
}

TEST(Cli, CylinderRefusesSpecWithVanishingConstantTerm) {
    auto r = run_cli("cylinder " + sample("spec_singular.json"));
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(parse_json_text(r.out)["clause"], "p(0) != 0");
}

TEST(Cli, FamilyBuildVerifyAndSpecialize) {
    auto fam = run_cli("family 4 0 2 3");
    ASSERT_EQ(fam.code, 0);
    Json jf = parse_json_text(fam.out);
    EXPECT_EQ(jf["verdict"], "pass");
    ASSERT_TRUE(jf.contains("certificate"));
    EXPECT_EQ(jf["certificate"]["parameters"], Json::array({"a2"}));

    auto spec = run_cli("family 4 0 2 3 --specialize 1/2");
    ASSERT_EQ(spec.code, 0);
    Json js = parse_json_text(spec.out);
    EXPECT_EQ(js["verdict"], "pass");
    EXPECT_EQ(js["resultant_value"], "2348455321/2821109907456");
    EXPECT_EQ(js["specialization"]["a2"], "1/2");

    EXPECT_EQ(run_cli("family 3 0 2 3").code, 2);
    EXPECT_EQ(run_cli("family 4 0 2 3 --specialize 1 2").code, 2);
}

TEST(Cli, FamilyStoredCertificateAndLocusRejection) {
    // emit the real certificate, then plant a resultant with a rational root
    auto fam = run_cli("family 4 0 2 3");
    ASSERT_EQ(fam.code, 0);
    Json cert = parse_json_text(fam.out)["certificate"];
    std::string good_path = temp_path("family_good.json");
    write_file(good_path, cert.dump(2) + "\n");
    EXPECT_EQ(run_cli("family 4 0 2 3 --cert " + good_path + " --specialize -2").code, 0);
    EXPECT_EQ(run_cli("family 5 0 2 3 --cert " + good_path).code, 2);

    cert["resultant"] = "a2";
    std::string bad_path = temp_path("family_locus.json");
    write_file(bad_path, cert.dump(2) + "\n");
    auto locus = run_cli("family 4 0 2 3 --cert " + bad_path + " --specialize 0");
    EXPECT_EQ(locus.code, 1);
    Json jl = parse_json_text(locus.out);
    EXPECT_EQ(jl["verdict"], "fail");
    EXPECT_EQ(jl["resultant_value"], "0");
    EXPECT_NE(jl["detail"].get<std::string>().find("vanishing locus"), std::string::npos);
}

TEST(Cli, ClassifyBothVerdictsAndEta) {
    auto eq = run_cli("classify " + sample("spec_m1.json") + " " + sample("spec_m1_scaled.json"));
    ASSERT_EQ(eq.code, 0);
    Json je = parse_json_text(eq.out);
    EXPECT_EQ(je["verdict"], "pass");
    EXPECT_EQ(je["equivalent"], true);
    EXPECT_EQ(je["mu"], "2");
    EXPECT_EQ(je["lambda"], "3");
    EXPECT_EQ(je["eta"]["images"]["x0"], "2*x0");
    EXPECT_EQ(je["eta"]["images"]["x1"], "3/2*x1");
    EXPECT_EQ(je["eta"]["images"]["y"], "1/18*y");
    EXPECT_EQ(je["eta_verified"], true);
    EXPECT_EQ(je["unit"], "1");

    std::string constant_spec = temp_path("spec_constant.json");
    write_file(constant_spec,
               R"({"m": 1, "n": [3, 2], "q": 2, "r": 3, "p": ["3"]})" "\n");
    auto ne = run_cli("classify " + sample("spec_m1.json") + " " + constant_spec);
    ASSERT_EQ(ne.code, 0);
    Json jn = parse_json_text(ne.out);
    EXPECT_EQ(jn["equivalent"], false);
    EXPECT_FALSE(jn.contains("mu"));

    auto mismatch = run_cli("classify " + sample("spec_m1.json") + " " + sample("spec_m0_p1.json"));
    EXPECT_EQ(mismatch.code, 2);
    EXPECT_EQ(parse_json_text(mismatch.out)["clause"], "specs must share (m, n, q, r)");

    auto edge = run_cli("classify " + sample("spec_degree_edge.json") + " " +
                        sample("spec_degree_edge.json"));
    EXPECT_EQ(edge.code, 2);
}

TEST(Cli, LndCoversAllThreeVerdicts) {
    auto good = run_cli("lnd " + sample("spec_m1.json") + " " + sample("deriv_z_m1.json"));
    ASSERT_EQ(good.code, 0);
    Json jg = parse_json_text(good.out);
    EXPECT_EQ(jg["verdict"], "pass");
    EXPECT_EQ(jg["well_defined"], true);
    EXPECT_EQ(jg["cofactor"], "0");
    EXPECT_EQ(jg["degrees"]["y"], 2);
    EXPECT_EQ(jg["degrees"]["z"], 1);
    EXPECT_EQ(jg["degrees"]["x0"], 0);

    auto extended = run_cli("lnd " + sample("spec_m1.json") + " " + sample("deriv_z_m1_w.json"));
    ASSERT_EQ(extended.code, 0);
    EXPECT_EQ(parse_json_text(extended.out)["degrees"]["w"], 0);

    auto eigen = run_cli("lnd " + sample("spec_m1.json") + " " + sample("deriv_eigen.json"));
    EXPECT_EQ(eigen.code, 1);
    EXPECT_EQ(parse_json_text(eigen.out)["verdict"], "fail");

    auto capped = run_cli("--nilpotency-cap 0 lnd " + sample("spec_m1.json") + " " +
                          sample("deriv_z_m1.json"));
    EXPECT_EQ(capped.code, 3);
    EXPECT_EQ(parse_json_text(capped.out)["verdict"], "inconclusive");
}

TEST(Cli, OutputFlagWritesPrimaryArtifact) {
    std::string art = temp_path("artifact.json");
    auto r = run_cli("--output " + art + " cylinder " + sample("spec_m0_1plusu.json"));
    ASSERT_EQ(r.code, 0);
    Json report = parse_json_text(r.out);
    Json artifact = parse_json_text(read_text_file(art));
    EXPECT_EQ(artifact.dump(2), report["certificate"].dump(2));
}

TEST(Cli, StdoutIsByteIdenticalAcrossRuns) {
    std::vector<std::string> commands{
        "build " + sample("spec_m1.json"),
        "smooth " + sample("spec_m0_p1.json"),
        "cylinder " + sample("spec_m0_1plusu.json"),
        "family 4 0 2 3 --specialize -3/7",
        "classify " + sample("spec_m1.json") + " " + sample("spec_m1_scaled.json"),
        "lnd " + sample("spec_m1.json") + " " + sample("deriv_z_m1.json"),
    };
    for (const std::string& args : commands) {
        auto first = run_cli(args);
        auto second = run_cli(args);
        EXPECT_EQ(first.code, second.code) << args;
        EXPECT_EQ(first.out, second.out) << args;
    }
}
