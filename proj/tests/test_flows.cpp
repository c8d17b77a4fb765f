#include <doctest.h>

#include "cmpoisson/flows.hpp"
#include "cmpoisson/parse.hpp"
#include "support.hpp"

using namespace cmpoisson;
using namespace testsupport;

namespace {

double max_diff(const MatrixPair& a, const MatrixPair& b) {
    return std::max((a.X - b.X).cwiseAbs().maxCoeff(), (a.Y - b.Y).cwiseAbs().maxCoeff()) / a.scale();
}

std::vector<CMPoint> flow_points(int n, int count, std::uint64_t seed) {
    return sample_batch(n, true, seed, static_cast<std::size_t>(count), flow_sampler_config());
}

TracePolynomial P(const std::string& text) { return parse_polynomial(text, Mode::Traceless); }

}  // namespace

TEST_CASE("families at t = 0 are the identity") {
    const CMPoint pt = sample_cm(3, true, 1);
    for (FamilyId id : all_families()) CHECK(max_diff(apply_family(FlowFamily{id, 0.0}, pt.pair), pt.pair) < 1e-15);
}

TEST_CASE("one-parameter group law") {
    for (const CMPoint& pt : flow_points(3, 5, 2))
        for (FamilyId id : all_families()) {
            const Complex t(0.3, 0.1), s(-0.7, 0.4);
            const MatrixPair two_steps = apply_family(FlowFamily{id, s}, apply_family(FlowFamily{id, t}, pt.pair));
            CHECK(max_diff(two_steps, apply_family(FlowFamily{id, t + s}, pt.pair)) < 1e-12);
        }
}

TEST_CASE("scaling preserves tr AB") {
    const auto trab = P("tr(A B)");
    for (const CMPoint& pt : sample_batch(3, true, 3, 5)) {
        const CMPoint out = apply_family(FlowFamily{FamilyId::Scaling, Complex(0.2, 0.5)}, pt);
        CHECK(relative_error(evaluate(trab, pt), evaluate(trab, out), 0) < 1e-10);
    }
}

TEST_CASE("family Hamiltonians") {
    CHECK(family_hamiltonian(FamilyId::ShearB) == P("tr(A^2)"));
    CHECK(family_hamiltonian(FamilyId::ShearA) == P("tr(B^2)"));
    CHECK(family_hamiltonian(FamilyId::CubicShear) == P("tr(A^3)"));
    CHECK(family_hamiltonian(FamilyId::Scaling) == P("tr(A B)*tr(A B)"));
    CHECK(family_from_name("cubicShear") == FamilyId::CubicShear);
    CHECK_THROWS(family_from_name("twist"));
}

TEST_CASE("ode_flow reproduces the closed forms") {
    const CMPoint pt = sample_cm(3, true, 4, flow_sampler_config());
    const MatrixPair shear = ode_flow(P("tr(A^2)"), pt.pair, 0.3, 200);
    CHECK(max_diff(shear, apply_family(FlowFamily{FamilyId::ShearB, 0.3}, pt.pair)) < 1e-8);
    const MatrixPair cubic = ode_flow(P("tr(A^3)"), pt.pair, Complex(0.5, 0.5), 50);
    CHECK(max_diff(cubic, apply_family(FlowFamily{FamilyId::CubicShear, Complex(0.5, 0.5)}, pt.pair)) < 1e-8);
    for (FamilyId id : all_families()) {
        const OdeResult r = ode_flow_with_estimate(family_hamiltonian(id), pt.pair, Complex(1.0, 1.0), 100);
        CHECK(max_diff(r.pair, apply_family(FlowFamily{id, Complex(1.0, 1.0)}, pt.pair)) < 1e-8);
        CHECK(r.error_estimate < 1e-8);
    }
}

TEST_CASE("tr AB flow scales tr A^2 B by exp(t)") {
    // {tr A^j B^k, tr AB} = (j - k) tr A^j B^k, so along the flow of tr AB the
    // value of tr A^2 B grows like exp(c t) with c = 1 in our sign convention.
    const CMPoint pt = sample_cm(3, true, 5);
    const Complex t(0.4, 0.3);
    const MatrixPair moved = ode_flow(P("tr(A B)"), pt.pair, t, 400);
    const auto a2b = P("tr(A^2 B)");
    const Complex expected = evaluate(a2b, pt) * std::exp(t);
    CHECK(relative_error(evaluate(a2b, moved, 3), expected, 0) < 1e-9);
    CHECK(max_diff(moved, MatrixPair{pt.pair.X * std::exp(t), pt.pair.Y * std::exp(-t)}) < 1e-9);
}

TEST_CASE("kernel shear: tr AB is constant along the (tr AB)^2 flow") {
    const CMPoint pt = sample_cm(2, true, 6, flow_sampler_config());
    const MatrixPair moved = ode_flow(family_hamiltonian(FamilyId::Scaling), pt.pair, Complex(2.0, -1.0), 300);
    const auto trab = P("tr(A B)");
    CHECK(relative_error(evaluate(trab, moved, 2), evaluate(trab, pt), 0) < 1e-10);
}

TEST_CASE("completeness witnesses for large |t|") {
    for (const CMPoint& pt : sample_batch(3, true, 8, 5))
        for (FamilyId id : all_families()) {
            Complex t(1e3, 0.0);
            if (id == FamilyId::Scaling) {
                // exp(2t tr AB) stays bounded when 2t tr AB is imaginary.
                const Complex trab = evaluate(P("tr(A B)"), pt);
                t = Complex(0.0, 1e3) * std::conj(trab) / std::abs(trab);
            }
            const CMPoint out = apply_family(FlowFamily{id, t}, pt);
            CHECK(out.pair.X.allFinite());
            CHECK(out.pair.Y.allFinite());
            CHECK(trace_residual(out.pair) < 1e-10);
        }
}

TEST_CASE("certify_symplectic") {
    const auto pts = flow_points(2, 4, 9);
    for (FamilyId id : all_families()) {
        const auto report = certify_symplectic(FlowFamily{id, Complex(1.0, 1.0)}, pts);
        CHECK(report.passed());
        CHECK(report.records.size() == pts.size());
    }
    const auto identity = certify_symplectic("identity", 0.0, [](const MatrixPair& p) { return p; }, pts);
    CHECK(identity.passed());
    CHECK(identity.records[0].symplectic_residual < 1e-12);
    const auto control = certify_symplectic(
        "control", 0.0, [](const MatrixPair& p) { return MatrixPair{p.X, 2.0 * p.Y}; }, pts);
    CHECK_FALSE(control.passed());
    CHECK(to_json(control)["records"][0]["failure"].get<std::string>().find("symplectic") != std::string::npos);
}
