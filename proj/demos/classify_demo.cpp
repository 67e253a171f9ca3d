// Decide whether two defining polynomials differ by a variable rescaling,
// and print the induced ring isomorphism when they do.

#include <iostream>

#include "cylcert/classify.hpp"

using namespace cylcert;

int main() {
    UniPoly<Rational> p1({Rational(1), Rational(1)});  // 1 + u
    UniPoly<Rational> p2({Rational(2), Rational(6)});  // 2 + 6u
    VarietySpec s1{1, {3, 2}, 2, 3, p1}, s2{1, {3, 2}, 2, 3, p2};

    auto witness = scaling_equivalent(p1, p2, s1.n[0]);
    if (!witness) {
        std::cout << "not scaling-equivalent\n";
        return 0;
    }
    std::cout << "mu = " << to_string(witness->mu) << ", lambda = " << to_string(witness->lambda)
              << "\n";

    RingMap eta = build_eta(s1, *witness);
    for (const auto& var : s1.ambient_vars())
        std::cout << "  " << var << " -> " << eta.images.at(var).to_text() << "\n";

    RingMapReport report = verify_ring_map(s1, s2, eta);
    std::cout << "eta(F1) = " << to_string(report.unit) << " * F2: "
              << (report.pass ? "verified" : "FAILED") << "\n";
    return report.pass ? 0 : 1;
}
