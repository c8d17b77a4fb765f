#pragma once

#include "cmpoisson/trace_polynomial.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace cmpoisson {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

struct MatrixPair {
    Matrix X;
    Matrix Y;

    int n() const { return static_cast<int>(X.rows()); }
    /// Largest entry magnitude of X and Y, at least 1.
    double scale() const;
};

/// Knobs of the Calogero-Moser sampler. The rank condition reads
/// rank([X,Y] + lambda I) = 1.
struct SamplerConfig {
    Complex lambda{0.0, -1.0};
    double position_radius = 1.5;   // x_j uniform in the square [-r, r]^2
    double momentum_radius = 1.0;   // p_j uniform in the square [-r, r]^2
    double min_separation = 0.1;
    double max_condition = 100.0;   // of the random conjugator
    int max_retries = 1000;
};

struct CMPoint {
    MatrixPair pair;
    bool traceless = false;
    double rank_residual = 0.0;
    std::uint64_t seed = 0;
    Complex lambda{0.0, -1.0};

    int n() const { return pair.n(); }
};

/// sigma_2 / sigma_1 of [X,Y] + lambda I (zero when n = 1).
double rank_residual(const MatrixPair& pair, Complex lambda = {0.0, -1.0});

/// |tr X| + |tr Y| divided by n times the entry scale.
double trace_residual(const MatrixPair& pair);

/// Diagonal normal form X = diag(x), Y_jj = p_j,
/// Y_jk = lambda (-1)^(j+k) / (x_j - x_k), for which [X,Y] + lambda I = lambda s s^T
/// with s_j = (-1)^j.
MatrixPair calogero_moser_normal_form(const std::vector<Complex>& x, const std::vector<Complex>& p,
                                      Complex lambda = {0.0, -1.0});

/// Deterministic child seed for the index-th point of a seeded batch
/// (splitmix64 of seed + (index + 1) * golden ratio constant).
std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index);

/// Random Calogero-Moser point: normal form with random positions and
/// momenta, conjugated by a random invertible matrix.
CMPoint sample_cm(int n, bool traceless, std::uint64_t seed, const SamplerConfig& config = {});

/// Batch of points with seeds child_seed(seed, i).
std::vector<CMPoint> sample_batch(int n, bool traceless, std::uint64_t seed, std::size_t count,
                                  const SamplerConfig& config = {});

/// Matrices realizing the letters of a polynomial at one point. In traceless
/// mode A = X - (tr X / n) I, B = Y - (tr Y / n) I and the central factors
/// evaluate to tr X, tr Y.
class PointContext {
public:
    PointContext(const MatrixPair& pair, Mode mode);

    const Matrix& letter_power(Letter l, int exponent);
    Matrix product(const Word& w);
    Complex trace(const CyclicWord& w);
    int n() const { return n_; }
    Mode mode() const { return mode_; }

private:
    int n_;
    Mode mode_;
    Complex trace_x_;
    Complex trace_y_;
    std::map<std::pair<Letter, int>, Matrix> powers_;
    std::map<CyclicWord, Complex> traces_;
};

/// Value of p at the point with the formal n set to n_symbol_value, which must
/// equal the matrix size.
Complex evaluate(const TracePolynomial& p, const MatrixPair& pair, long n_symbol_value);
Complex evaluate(const TracePolynomial& p, const CMPoint& pt);

/// (dp/dX, dp/dY) with entry (j,k) holding the derivative with respect to
/// X_jk (resp. Y_jk), assembled from splice cuts.
struct Gradient {
    Matrix dX;
    Matrix dY;
};

Gradient numeric_gradient(const TracePolynomial& p, const MatrixPair& pair);

/// sum_jk dF/dX_jk dG/dY_kj - dF/dY_jk dG/dX_kj at the point.
Complex numeric_bracket(const TracePolynomial& f, const TracePolynomial& g, const MatrixPair& pair);

/// Cauchy-Schwarz bound on |numeric_bracket|, used as the relative scale.
double bracket_scale(const TracePolynomial& f, const TracePolynomial& g, const MatrixPair& pair);

using PointMap = std::function<MatrixPair(const MatrixPair&)>;

/// ||J^T S J - S||_F / ||S||_F for the Jacobian J of the map at the point and
/// S the matrix of tr(dX ^ dY) in entry coordinates. J is taken by symmetric
/// differences on a circle of radius h around each coordinate (16 nodes),
/// which assumes the map is holomorphic.
double symplectic_pullback_residual(const PointMap& map, const MatrixPair& pair, double h);

nlohmann::json to_json(const CMPoint& pt);
CMPoint cmpoint_from_json(const nlohmann::json& j);

}  // namespace cmpoisson
