#pragma once

#include <vector>

#include "cmpoisson/cm_numeric.hpp"
#include "cmpoisson/trace_polynomial.hpp"

namespace cmpoisson {

/// Sampler settings for evaluation pools: random unitary conjugation, since
/// the evaluated functions are conjugation invariant and an ill-conditioned
/// conjugator only adds rounding error.
SamplerConfig pool_sampler_config();

/// `count` traceless points drawn with pool_sampler_config().
std::vector<CMPoint> sample_pool(int n, std::size_t count, std::uint64_t seed);

/// Polynomials sharing one table of distinct trace factors, with
/// coefficients specialized to double at a fixed n.
class CompiledPolynomials {
public:
    struct Term {
        Complex coefficient;
        std::vector<int> factors;  // indices into words()
    };

    CompiledPolynomials(const std::vector<TracePolynomial>& polys, long n_value);

    Mode mode() const { return mode_; }
    long n_value() const { return n_value_; }
    std::size_t size() const { return polys_.size(); }
    const std::vector<CyclicWord>& words() const { return words_; }
    const std::vector<Term>& terms(std::size_t i) const { return polys_[i]; }

    /// Values of every polynomial at one point; each factor is traced once.
    /// If `magnitudes` is given it receives sum |c| prod size(w) per
    /// polynomial, with size(w) = sqrt(n) prod |L|_F over the letters of w:
    /// the scale of the rounding error, below which a value is noise.
    Eigen::VectorXcd evaluate(const MatrixPair& pair, Eigen::VectorXd* magnitudes = nullptr) const;

private:
    Mode mode_ = Mode::Traceless;
    long n_value_;
    std::vector<CyclicWord> words_;
    std::vector<std::vector<Term>> polys_;
};

/// values(i, k) = polys[k] at pts[i]. Parallel over points.
Matrix evaluate_pool(const std::vector<TracePolynomial>& polys, const std::vector<CMPoint>& pts);
Matrix evaluate_pool(const CompiledPolynomials& compiled, const std::vector<CMPoint>& pts);

/// Term magnitudes matching evaluate_pool, entry by entry.
Eigen::MatrixXd magnitude_pool(const CompiledPolynomials& compiled, const std::vector<CMPoint>& pts);

/// Reference for evaluate_pool: one evaluate() call per entry, no sharing.
Matrix evaluate_pool_serial(const std::vector<TracePolynomial>& polys, const std::vector<CMPoint>& pts);

struct LeastSquaresFit {
    Eigen::VectorXcd coefficients;
    /// max over rows of |target - basis * c| / max(|target|, |basis_ik c_k|,
    /// target_scale), i.e. the cancellation left relative to the size of the
    /// terms.
    double residual = 0.0;
    /// sigma_max / sigma_min of the column-normalized basis (inf if singular).
    double condition = 0.0;
    int rank = 0;
};

/// Least squares by a rank-revealing orthogonal factorization of the
/// column-normalized basis. Rows may be rescaled freely beforehand.
/// `target_scale` (optional, per row) is a floor for the residual scale,
/// typically the term magnitudes of the target.
LeastSquaresFit least_squares_fit(const Matrix& basis, const Eigen::VectorXcd& target,
                                  const Eigen::VectorXd& target_scale = {});

/// Relative residual of a given combination, measured as in LeastSquaresFit.
double combination_residual(const Matrix& basis, const Eigen::VectorXcd& coefficients,
                            const Eigen::VectorXcd& target, const Eigen::VectorXd& target_scale = {});

}  // namespace cmpoisson
