#include "casq/system.hpp"

#include <cmath>

namespace casq {

void SystemParams::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(delta) || !finite(delta_c) || !finite(g) || !finite(omega) || !finite(gamma) ||
        !finite(kappa) || !finite(kx1) || !finite(kx2))
        throw ConfigError("SystemParams: all rates and phases must be finite");
    if (kappa < 0.0) throw ConfigError("SystemParams: kappa must be >= 0");
    if (gamma < 0.0) throw ConfigError("SystemParams: gamma must be >= 0");
    if (g < 0.0) throw ConfigError("SystemParams: g must be >= 0");
    if (omega < 0.0) throw ConfigError("SystemParams: omega must be >= 0");
    if (n_max < 1) throw ConfigError("SystemParams: n_max must be >= 1");
}

PatternGeometry PatternGeometry::classify(double kx1, double kx2, double tol) {
    const double c1 = std::cos(kx1);
    const double c2 = std::cos(kx2);
    PatternGeometry geo{PatternLabel::custom, kx1, kx2};
    if (std::abs(std::abs(c1) - 1.0) <= tol && std::abs(c1 - c2) <= tol)
        geo.label = PatternLabel::lambda;
    else if (std::abs(std::abs(c1) - 1.0) <= tol && std::abs(c1 + c2) <= tol)
        geo.label = PatternLabel::half_lambda;
    return geo;
}

PatternGeometry PatternGeometry::lambda() {
    return {PatternLabel::lambda, 0.0, 2.0 * std::numbers::pi};
}

PatternGeometry PatternGeometry::half_lambda() {
    return {PatternLabel::half_lambda, 0.0, std::numbers::pi};
}

CouplingConstants coupling_constants(double kx1, double kx2, double g) {
    const double c1 = std::cos(kx1);
    const double c2 = std::cos(kx2);
    const double s = g / std::numbers::sqrt2;
    return {s * (c1 + c2), s * (c1 - c2)};
}

Operator build_hamiltonian(const SystemParams& p, const OperatorSet& ops) {
    p.validate();
    const Matrix& s1 = ops.sigma(1).mat();
    const Matrix& s2 = ops.sigma(2).mat();
    const Matrix& a = ops.a().mat();
    Matrix h = -p.delta * (s1.adjoint() * s1 + s2.adjoint() * s2) -
               p.delta_c * (a.adjoint() * a) +
               p.omega * (s1 + s1.adjoint() + s2 + s2.adjoint());
    const double g1 = p.g * std::cos(p.kx1);
    const double g2 = p.g * std::cos(p.kx2);
    h += g1 * (a.adjoint() * s1 + s1.adjoint() * a);
    h += g2 * (a.adjoint() * s2 + s2.adjoint() * a);
    return Operator(ops.space(), std::move(h));
}

SuperOperator build_liouvillian(const SystemParams& p, const OperatorSet& ops) {
    const Operator h = build_hamiltonian(p, ops);
    Matrix l = hamiltonian_superop(h.mat());
    l += lindblad_superop(p.kappa, ops.a().mat());
    if (p.gamma != 0.0) {
        l += lindblad_superop(p.gamma / 2.0, ops.sigma(1).mat());
        l += lindblad_superop(p.gamma / 2.0, ops.sigma(2).mat());
    }
    return SuperOperator(ops.space(), std::move(l));
}

}  // namespace casq
