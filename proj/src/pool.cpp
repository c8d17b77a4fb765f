#include "cmpoisson/pool.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace cmpoisson {

SamplerConfig pool_sampler_config() {
    SamplerConfig config;
    config.max_condition = 1.0;
    return config;
}

std::vector<CMPoint> sample_pool(int n, std::size_t count, std::uint64_t seed) {
    return sample_batch(n, true, seed, count, pool_sampler_config());
}

CompiledPolynomials::CompiledPolynomials(const std::vector<TracePolynomial>& polys, long n_value)
    : n_value_(n_value) {
    if (!polys.empty()) mode_ = polys.front().mode();
    std::map<CyclicWord, int> index;
    polys_.reserve(polys.size());
    for (const auto& p : polys) {
        if (p.mode() != mode_) throw std::invalid_argument("CompiledPolynomials: mixed modes");
        std::vector<Term> terms;
        for (const auto& [factors, c] : p.terms()) {
            Term t{Complex(c.to_double(n_value)), {}};
            for (const auto& f : factors) {
                auto [it, inserted] = index.emplace(f, static_cast<int>(words_.size()));
                if (inserted) words_.push_back(f);
                t.factors.push_back(it->second);
            }
            terms.push_back(std::move(t));
        }
        polys_.push_back(std::move(terms));
    }
}

Eigen::VectorXcd CompiledPolynomials::evaluate(const MatrixPair& pair, Eigen::VectorXd* magnitudes) const {
    if (pair.n() != n_value_)
        throw std::invalid_argument("CompiledPolynomials: point of size " + std::to_string(pair.n()) +
                                    " for n = " + std::to_string(n_value_));
    PointContext ctx(pair, mode_);
    std::vector<Complex> traces(words_.size());
    for (std::size_t w = 0; w < words_.size(); ++w) traces[w] = ctx.trace(words_[w]);
    // Rounding in tr w scales with sqrt(n) prod |L|_F over its letters, not
    // with |tr w|, which may vanish identically.
    std::vector<double> bounds;
    if (magnitudes) {
        const double n = static_cast<double>(pair.n());
        const Matrix id = Matrix::Identity(pair.n(), pair.n());
        const double norm_x = pair.X.norm(), norm_y = pair.Y.norm();
        const double norm_a = (pair.X - pair.X.trace() / n * id).norm();
        const double norm_b = (pair.Y - pair.Y.trace() / n * id).norm();
        bounds.resize(words_.size());
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w].empty()) {
                bounds[w] = n;
                continue;
            }
            double b = std::sqrt(n);
            for (const auto& run : words_[w].runs()) {
                double l = 0.0;
                switch (run.letter) {
                    case Letter::A: l = norm_a; break;
                    case Letter::B: l = norm_b; break;
                    case Letter::X: l = norm_x; break;
                    case Letter::Y: l = norm_y; break;
                }
                b *= std::pow(l, run.exponent);
            }
            bounds[w] = b;
        }
    }
    Eigen::VectorXcd out(static_cast<Eigen::Index>(polys_.size()));
    if (magnitudes) magnitudes->resize(static_cast<Eigen::Index>(polys_.size()));
    for (std::size_t k = 0; k < polys_.size(); ++k) {
        Complex sum(0.0);
        double size = 0.0;
        for (const auto& t : polys_[k]) {
            Complex v = t.coefficient;
            for (int f : t.factors) v *= traces[static_cast<std::size_t>(f)];
            sum += v;
            if (magnitudes) {
                double s = std::abs(t.coefficient);
                for (int f : t.factors) s *= bounds[static_cast<std::size_t>(f)];
                size += s;
            }
        }
        out(static_cast<Eigen::Index>(k)) = sum;
        if (magnitudes) (*magnitudes)(static_cast<Eigen::Index>(k)) = size;
    }
    return out;
}

Matrix evaluate_pool(const CompiledPolynomials& compiled, const std::vector<CMPoint>& pts) {
    Matrix values(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(compiled.size()));
    const auto count = static_cast<std::ptrdiff_t>(pts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i)
        values.row(i) = compiled.evaluate(pts[static_cast<std::size_t>(i)].pair).transpose();
    return values;
}

Eigen::MatrixXd magnitude_pool(const CompiledPolynomials& compiled, const std::vector<CMPoint>& pts) {
    Eigen::MatrixXd sizes(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(compiled.size()));
    const auto count = static_cast<std::ptrdiff_t>(pts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        Eigen::VectorXd m;
        compiled.evaluate(pts[static_cast<std::size_t>(i)].pair, &m);
        sizes.row(i) = m.transpose();
    }
    return sizes;
}

Matrix evaluate_pool(const std::vector<TracePolynomial>& polys, const std::vector<CMPoint>& pts) {
    if (pts.empty()) return Matrix(0, static_cast<Eigen::Index>(polys.size()));
    return evaluate_pool(CompiledPolynomials(polys, pts.front().n()), pts);
}

Matrix evaluate_pool_serial(const std::vector<TracePolynomial>& polys, const std::vector<CMPoint>& pts) {
    Matrix values(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(polys.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t k = 0; k < polys.size(); ++k)
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = evaluate(polys[k], pts[i]);
    return values;
}

double combination_residual(const Matrix& basis, const Eigen::VectorXcd& coefficients, const Eigen::VectorXcd& target,
                            const Eigen::VectorXd& target_scale) {
    if (target_scale.size() != 0 && target_scale.size() != target.size())
        throw std::invalid_argument("combination_residual: scale size mismatch");
    double worst = 0.0;
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
        double scale = std::abs(target(i));
        if (target_scale.size() != 0) scale = std::max(scale, target_scale(i));
        Complex sum(0.0);
        for (Eigen::Index k = 0; k < basis.cols(); ++k) {
            const Complex term = basis(i, k) * coefficients(k);
            scale = std::max(scale, std::abs(term));
            sum += term;
        }
        const double diff = std::abs(target(i) - sum);
        if (diff == 0.0) continue;
        worst = std::max(worst, scale > 0.0 ? diff / scale : std::numeric_limits<double>::infinity());
    }
    return worst;
}

LeastSquaresFit least_squares_fit(const Matrix& basis, const Eigen::VectorXcd& target,
                                  const Eigen::VectorXd& target_scale) {
    if (basis.rows() != target.size()) throw std::invalid_argument("least_squares_fit: row mismatch");
    LeastSquaresFit fit;
    const Eigen::Index cols = basis.cols();
    if (cols == 0) {
        fit.coefficients = Eigen::VectorXcd(0);
        fit.residual = combination_residual(basis, fit.coefficients, target, target_scale);
        fit.condition = 1.0;
        return fit;
    }
    // Rows are divided by the size of the target so that the fit minimizes
    // the target-relative error the residual measures. Scaling by the basis
    // entries instead lets rounding-level coefficients on large columns swamp
    // rows where the target is small.
    Matrix scaled = basis;
    Eigen::VectorXcd rhs = target;
    for (Eigen::Index i = 0; i < scaled.rows(); ++i) {
        double size = std::abs(target(i));
        if (target_scale.size() != 0) size = std::max(size, target_scale(i));
        if (size == 0.0) size = scaled.row(i).cwiseAbs().maxCoeff();
        if (size > 0.0) {
            scaled.row(i) /= size;
            rhs(i) /= size;
        }
    }
    Eigen::VectorXd norms(cols);
    for (Eigen::Index k = 0; k < cols; ++k) {
        norms(k) = scaled.col(k).norm();
        if (norms(k) > 0.0) scaled.col(k) /= norms(k);
    }
    Eigen::JacobiSVD<Matrix> svd(scaled);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    fit.condition = (sv.size() < cols || smin == 0.0) ? std::numeric_limits<double>::infinity() : sv(0) / smin;
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(scaled);
    cod.setThreshold(1e-12);
    fit.rank = static_cast<int>(cod.rank());
    Eigen::VectorXcd c = cod.solve(rhs);
    for (Eigen::Index k = 0; k < cols; ++k)
        if (norms(k) > 0.0) c(k) /= norms(k);
    fit.coefficients = c;
    fit.residual = combination_residual(basis, c, target, target_scale);
    return fit;
}

}  // namespace cmpoisson
