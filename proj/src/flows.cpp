#include "cmpoisson/flows.hpp"

#include <cmath>
#include <stdexcept>

#include "cmpoisson/parse.hpp"

namespace cmpoisson {

const char* family_name(FamilyId id) {
    switch (id) {
        case FamilyId::ShearB: return "shearB";
        case FamilyId::ShearA: return "shearA";
        case FamilyId::CubicShear: return "cubicShear";
        case FamilyId::Scaling: return "scaling";
    }
    return "?";
}

FamilyId family_from_name(const std::string& name) {
    for (FamilyId id : all_families())
        if (name == family_name(id)) return id;
    throw std::invalid_argument("unknown flow family '" + name + "'");
}

const std::vector<FamilyId>& all_families() {
    static const std::vector<FamilyId> ids{FamilyId::ShearB, FamilyId::ShearA, FamilyId::CubicShear,
                                           FamilyId::Scaling};
    return ids;
}

SamplerConfig flow_sampler_config() {
    SamplerConfig config;
    config.momentum_radius = 0.05;
    config.max_condition = 10.0;
    return config;
}

MatrixPair apply_family(const FlowFamily& fam, const MatrixPair& pair) {
    const int n = pair.n();
    const Matrix id = Matrix::Identity(n, n);
    const Complex sx = pair.X.trace() / double(n);
    const Complex sy = pair.Y.trace() / double(n);
    Matrix a = pair.X - sx * id;
    Matrix b = pair.Y - sy * id;
    const Complex t = fam.t;
    switch (fam.id) {
        case FamilyId::ShearB: b -= 2.0 * t * a; break;
        case FamilyId::ShearA: a += 2.0 * t * b; break;
        case FamilyId::CubicShear: {
            const Matrix a2 = a * a;
            b += -3.0 * t * a2 + (3.0 * t * a2.trace() / double(n)) * id;
            break;
        }
        case FamilyId::Scaling: {
            const Complex c = 2.0 * t * a.cwiseProduct(b.transpose()).sum();
            a *= std::exp(c);
            b *= std::exp(-c);
            break;
        }
    }
    return {a + sx * id, b + sy * id};
}

CMPoint apply_family(const FlowFamily& fam, const CMPoint& pt) {
    CMPoint out = pt;
    out.pair = apply_family(fam, pt.pair);
    if (!out.pair.X.allFinite() || !out.pair.Y.allFinite())
        throw std::runtime_error(std::string(family_name(fam.id)) + ": non-finite output");
    out.rank_residual = rank_residual(out.pair, pt.lambda);
    if (!(out.rank_residual < 1e-9))
        throw std::runtime_error(std::string(family_name(fam.id)) + ": rank residual " +
                                 std::to_string(out.rank_residual) + " after the flow");
    return out;
}

TracePolynomial family_hamiltonian(FamilyId id) {
    switch (id) {
        case FamilyId::ShearB: return parse_polynomial("tr(A^2)", Mode::Traceless);
        case FamilyId::ShearA: return parse_polynomial("tr(B^2)", Mode::Traceless);
        case FamilyId::CubicShear: return parse_polynomial("tr(A^3)", Mode::Traceless);
        case FamilyId::Scaling: return parse_polynomial("tr(A B)*tr(A B)", Mode::Traceless);
    }
    throw std::invalid_argument("unknown family");
}

MatrixPair hamiltonian_vector_field(const TracePolynomial& h, const MatrixPair& pair) {
    const Gradient g = numeric_gradient(h, pair);
    return {g.dY.transpose(), -g.dX.transpose()};
}

namespace {

MatrixPair axpy(const MatrixPair& z, Complex a, const MatrixPair& v) { return {z.X + a * v.X, z.Y + a * v.Y}; }

}  // namespace

MatrixPair ode_flow(const TracePolynomial& h, const MatrixPair& pair, Complex t, int steps) {
    if (steps < 1) throw std::invalid_argument("ode_flow needs steps >= 1");
    const Complex dt = t / double(steps);
    MatrixPair z = pair;
    for (int s = 0; s < steps; ++s) {
        const MatrixPair k1 = hamiltonian_vector_field(h, z);
        const MatrixPair k2 = hamiltonian_vector_field(h, axpy(z, dt / 2.0, k1));
        const MatrixPair k3 = hamiltonian_vector_field(h, axpy(z, dt / 2.0, k2));
        const MatrixPair k4 = hamiltonian_vector_field(h, axpy(z, dt, k3));
        z.X += (dt / 6.0) * (k1.X + 2.0 * k2.X + 2.0 * k3.X + k4.X);
        z.Y += (dt / 6.0) * (k1.Y + 2.0 * k2.Y + 2.0 * k3.Y + k4.Y);
        if (!z.X.allFinite() || !z.Y.allFinite())
            throw std::runtime_error("ode_flow: non-finite state at step " + std::to_string(s + 1));
    }
    return z;
}

CMPoint ode_flow(const TracePolynomial& h, const CMPoint& pt, Complex t, int steps) {
    CMPoint out = pt;
    out.pair = ode_flow(h, pt.pair, t, steps);
    out.rank_residual = rank_residual(out.pair, pt.lambda);
    return out;
}

OdeResult ode_flow_with_estimate(const TracePolynomial& h, const MatrixPair& pair, Complex t, int steps) {
    OdeResult r;
    r.pair = ode_flow(h, pair, t, steps);
    const MatrixPair fine = ode_flow(h, pair, t, 2 * steps);
    const double diff = std::max((r.pair.X - fine.X).cwiseAbs().maxCoeff(), (r.pair.Y - fine.Y).cwiseAbs().maxCoeff());
    r.error_estimate = diff / 15.0 / r.pair.scale();
    return r;
}

bool SymplecticReport::passed() const {
    for (const auto& r : records)
        if (!r.passed) return false;
    return true;
}

SymplecticReport certify_symplectic(const std::string& label, Complex t, const PointMap& map,
                                    const std::vector<CMPoint>& pts, const SymplecticTolerances& tol) {
    SymplecticReport report;
    report.records.resize(pts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < pts.size(); ++i) {
        SymplecticRecord& rec = report.records[i];
        rec.family = label;
        rec.t = t;
        rec.n = pts[i].n();
        rec.point_id = i;
        try {
            const MatrixPair image = map(pts[i].pair);
            rec.rank_residual = rank_residual(image, pts[i].lambda);
            rec.trace_residual = pts[i].traceless ? trace_residual(image) : 0.0;
            rec.symplectic_residual = symplectic_pullback_residual(map, pts[i].pair, tol.step);
            std::string why;
            if (!(rec.symplectic_residual < tol.symplectic)) why += "symplectic ";
            if (!(rec.rank_residual < tol.rank)) why += "rank ";
            if (!(rec.trace_residual < tol.trace)) why += "trace ";
            rec.passed = why.empty();
            if (!why.empty()) rec.failure = why.substr(0, why.size() - 1);
        } catch (const std::exception& e) {
            rec.passed = false;
            rec.failure = e.what();
        }
    }
    return report;
}

SymplecticReport certify_symplectic(const FlowFamily& fam, const std::vector<CMPoint>& pts,
                                    const SymplecticTolerances& tol) {
    return certify_symplectic(
        family_name(fam.id), fam.t, [fam](const MatrixPair& p) { return apply_family(fam, p); }, pts, tol);
}

nlohmann::json to_json(const SymplecticRecord& r) {
    nlohmann::json j{{"family", r.family},
                     {"t", {r.t.real(), r.t.imag()}},
                     {"n", r.n},
                     {"point_id", r.point_id},
                     {"symplectic_residual", r.symplectic_residual},
                     {"rank_residual", r.rank_residual},
                     {"trace_residual", r.trace_residual},
                     {"passed", r.passed}};
    if (!r.failure.empty()) j["failure"] = r.failure;
    return j;
}

nlohmann::json to_json(const SymplecticReport& r) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : r.records) records.push_back(to_json(rec));
    return {{"passed", r.passed()}, {"records", records}};
}

}  // namespace cmpoisson
