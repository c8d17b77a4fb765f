#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cmpoisson/cm_numeric.hpp"
#include "cmpoisson/trace_polynomial.hpp"

namespace cmpoisson {

enum class FamilyId { ShearB, ShearA, CubicShear, Scaling };

const char* family_name(FamilyId id);
FamilyId family_from_name(const std::string& name);
const std::vector<FamilyId>& all_families();

/// Sampler settings for flow certification: small momenta keep
/// exp(2t tr AB) within a few orders of magnitude up to |t| = 10, and a milder
/// conjugator keeps the difference Jacobian accurate.
SamplerConfig flow_sampler_config();

struct FlowFamily {
    FamilyId id;
    Complex t;
};

/// Closed-form flows on the traceless part (A, B) of a pair; the scalar parts
/// tr X / n and tr Y / n are carried along unchanged.
///   ShearB:     (A, B - 2tA)
///   ShearA:     (A + 2tB, B)
///   CubicShear: (A, B - 3tA^2 + 3t tr(A^2)/n I)
///   Scaling:    (A exp(2t tr AB), B exp(-2t tr AB))
MatrixPair apply_family(const FlowFamily& fam, const MatrixPair& pair);

/// Mapped point with recomputed residuals. Throws if the rank condition is
/// lost (residual >= 1e-9).
CMPoint apply_family(const FlowFamily& fam, const CMPoint& pt);

/// tr A^2, tr B^2, tr A^3 and (tr AB)^2.
TracePolynomial family_hamiltonian(FamilyId id);

/// Vector field of h: dX/dt = (dh/dY)^T, dY/dt = -(dh/dX)^T, so that
/// dF/dt = {F, h} along the flow.
MatrixPair hamiltonian_vector_field(const TracePolynomial& h, const MatrixPair& pair);

struct OdeResult {
    MatrixPair pair;
    /// Richardson estimate |y_N - y_2N| / 15, relative to the entry scale.
    double error_estimate = 0.0;
};

/// Fixed-step RK4 along the segment 0 -> t with `steps` steps.
MatrixPair ode_flow(const TracePolynomial& h, const MatrixPair& pair, Complex t, int steps);
CMPoint ode_flow(const TracePolynomial& h, const CMPoint& pt, Complex t, int steps);
/// Same, also integrating with 2*steps to estimate the error of the coarse run.
OdeResult ode_flow_with_estimate(const TracePolynomial& h, const MatrixPair& pair, Complex t, int steps);

struct SymplecticRecord {
    std::string family;
    Complex t;
    int n = 0;
    std::size_t point_id = 0;
    double symplectic_residual = 0.0;
    double rank_residual = 0.0;
    double trace_residual = 0.0;
    bool passed = false;
    std::string failure;
};

struct SymplecticTolerances {
    double symplectic = 1e-7;
    double rank = 1e-9;
    double trace = 1e-10;
    /// Radius of the difference circle.
    double step = 1e-3;
};

struct SymplecticReport {
    std::vector<SymplecticRecord> records;
    bool passed() const;
};

/// Pullback residual, rank residual and trace residual of map(pt) for every
/// point. The trace check only applies to traceless input points.
SymplecticReport certify_symplectic(const std::string& label, Complex t, const PointMap& map,
                                    const std::vector<CMPoint>& pts, const SymplecticTolerances& tol = {});
SymplecticReport certify_symplectic(const FlowFamily& fam, const std::vector<CMPoint>& pts,
                                    const SymplecticTolerances& tol = {});

nlohmann::json to_json(const SymplecticRecord& r);
nlohmann::json to_json(const SymplecticReport& r);

}  // namespace cmpoisson
