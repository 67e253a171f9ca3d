// Build a cylinder certificate for one variety in code and re-verify it.

#include <iostream>

#include "cylcert/cylinder.hpp"

using namespace cylcert;

int main() {
    // x0^3 x1^2 y + z^2 + t^3 + x0 (1 + x0 x1)
    VarietySpec spec{1, {3, 2}, 2, 3, UniPoly<Rational>({Rational(1), Rational(1)})};

    std::cout << "defining polynomial: " << build_defining(spec).to_text() << "\n";

    CylinderCertificate cert = build_cylinder_certificate(spec);
    std::cout << "g1 = " << to_text(cert.matrix.g1) << "\n";
    std::cout << "g2 = " << to_text(cert.matrix.g2) << "\n";
    std::cout << "det = " << to_string(cert.matrix.det) << "\n";

    CertReport report = verify_cylinder_certificate(spec, cert);
    for (const auto& check : report.checks)
        std::cout << (check.pass ? "  ok  " : " FAIL ") << check.name << "\n";
    return report.pass ? 0 : 1;
}
