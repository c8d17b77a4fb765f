#include "cmpoisson/cm_numeric.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cmpoisson {

double MatrixPair::scale() const {
    double s = 1.0;
    if (X.size() > 0) s = std::max(s, X.cwiseAbs().maxCoeff());
    if (Y.size() > 0) s = std::max(s, Y.cwiseAbs().maxCoeff());
    return s;
}

double rank_residual(const MatrixPair& pair, Complex lambda) {
    const int n = pair.n();
    if (n <= 1) return 0.0;
    Matrix m = pair.X * pair.Y - pair.Y * pair.X;
    m.diagonal().array() += lambda;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) return 1.0;
    return s(1) / s(0);
}

double trace_residual(const MatrixPair& pair) {
    return (std::abs(pair.X.trace()) + std::abs(pair.Y.trace())) / (pair.n() * pair.scale());
}

MatrixPair calogero_moser_normal_form(const std::vector<Complex>& x, const std::vector<Complex>& p, Complex lambda) {
    const auto n = static_cast<Eigen::Index>(x.size());
    if (static_cast<Eigen::Index>(p.size()) != n) throw std::invalid_argument("positions and momenta differ in size");
    MatrixPair pair{Matrix::Zero(n, n), Matrix::Zero(n, n)};
    for (Eigen::Index j = 0; j < n; ++j) {
        pair.X(j, j) = x[static_cast<std::size_t>(j)];
        pair.Y(j, j) = p[static_cast<std::size_t>(j)];
        for (Eigen::Index k = 0; k < n; ++k) {
            if (j == k) continue;
            const Complex gap = x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(k)];
            if (gap == Complex(0.0)) throw std::invalid_argument("positions must be distinct");
            const double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
            pair.Y(j, k) = lambda * sign / gap;
        }
    }
    return pair;
}

std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

Complex uniform_square(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    const double re = u(rng);
    const double im = u(rng);
    return {re, im};
}

Matrix random_unitary(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const double re = g(rng);
            const double im = g(rng);
            m(j, k) = Complex(re, im);
        }
    Eigen::HouseholderQR<Matrix> qr(m);
    return qr.householderQ() * Matrix::Identity(n, n);
}

/// U diag(s) V^* with singular values in [1, max_condition].
Matrix random_conjugator(std::mt19937_64& rng, int n, double max_condition) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::VectorXcd s(n);
    for (int j = 0; j < n; ++j) s(j) = std::pow(max_condition, u(rng));
    return random_unitary(rng, n) * s.asDiagonal() * random_unitary(rng, n).adjoint();
}

}  // namespace

CMPoint sample_cm(int n, bool traceless, std::uint64_t seed, const SamplerConfig& config) {
    if (n < 1) throw std::invalid_argument("sample_cm needs n >= 1");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < config.max_retries; ++attempt) {
        std::vector<Complex> x(static_cast<std::size_t>(n));
        std::vector<Complex> p(static_cast<std::size_t>(n));
        for (auto& v : x) v = uniform_square(rng, config.position_radius);
        for (auto& v : p) v = uniform_square(rng, config.momentum_radius);
        if (traceless) {
            Complex mx(0.0), mp(0.0);
            for (int j = 0; j < n; ++j) {
                mx += x[static_cast<std::size_t>(j)];
                mp += p[static_cast<std::size_t>(j)];
            }
            for (int j = 0; j < n; ++j) {
                x[static_cast<std::size_t>(j)] -= mx / double(n);
                p[static_cast<std::size_t>(j)] -= mp / double(n);
            }
        }
        bool separated = true;
        for (int j = 0; j < n && separated; ++j)
            for (int k = j + 1; k < n; ++k)
                if (std::abs(x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(k)]) < config.min_separation) {
                    separated = false;
                    break;
                }
        if (!separated) continue;

        MatrixPair normal = calogero_moser_normal_form(x, p, config.lambda);
        const Matrix g = random_conjugator(rng, n, config.max_condition);
        Eigen::PartialPivLU<Matrix> lu(g);
        CMPoint pt;
        const Matrix g_inv = lu.inverse();
        pt.pair.X = g * normal.X * g_inv;
        pt.pair.Y = g * normal.Y * g_inv;
        if (traceless) {
            pt.pair.X.diagonal().array() -= pt.pair.X.trace() / double(n);
            pt.pair.Y.diagonal().array() -= pt.pair.Y.trace() / double(n);
        }
        pt.traceless = traceless;
        pt.seed = seed;
        pt.lambda = config.lambda;
        pt.rank_residual = rank_residual(pt.pair, config.lambda);
        if (pt.rank_residual < 1e-10) return pt;
    }
    throw std::runtime_error("sample_cm: no admissible point after " + std::to_string(config.max_retries) +
                             " attempts");
}

std::vector<CMPoint> sample_batch(int n, bool traceless, std::uint64_t seed, std::size_t count,
                                  const SamplerConfig& config) {
    std::vector<CMPoint> out(count);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < count; ++i) out[i] = sample_cm(n, traceless, child_seed(seed, i), config);
    return out;
}

PointContext::PointContext(const MatrixPair& pair, Mode mode)
    : n_(pair.n()), mode_(mode), trace_x_(pair.X.trace()), trace_y_(pair.Y.trace()) {
    const Matrix id = Matrix::Identity(n_, n_);
    if (mode == Mode::Plain) {
        powers_[{Letter::X, 1}] = pair.X;
        powers_[{Letter::Y, 1}] = pair.Y;
    } else {
        powers_[{Letter::A, 1}] = pair.X - (trace_x_ / double(n_)) * id;
        powers_[{Letter::B, 1}] = pair.Y - (trace_y_ / double(n_)) * id;
    }
}

const Matrix& PointContext::letter_power(Letter l, int exponent) {
    auto found = powers_.find({l, exponent});
    if (found != powers_.end()) return found->second;
    if (exponent == 0) return powers_[{l, 0}] = Matrix::Identity(n_, n_);
    auto base = powers_.find({l, 1});
    if (base == powers_.end())
        throw std::invalid_argument(std::string("letter ") + letter_char(l) + " has no matrix in " + mode_name(mode_) +
                                    " mode");
    const Matrix value = letter_power(l, exponent - 1) * base->second;
    return powers_[{l, exponent}] = value;
}

Matrix PointContext::product(const Word& w) {
    Matrix out = Matrix::Identity(n_, n_);
    for (const auto& run : w.runs()) out = out * letter_power(run.letter, run.exponent);
    return out;
}

Complex PointContext::trace(const CyclicWord& w) {
    if (w.empty()) return Complex(double(n_));
    if (mode_ == Mode::Traceless) {
        if (w.is_single_letter(Letter::X)) return trace_x_;
        if (w.is_single_letter(Letter::Y)) return trace_y_;
    }
    auto found = traces_.find(w);
    if (found != traces_.end()) return found->second;
    const auto& runs = w.runs();
    Complex value;
    if (runs.size() == 1) {
        value = letter_power(runs[0].letter, runs[0].exponent).trace();
    } else {
        // tr(P L) without forming the last product.
        Word head(std::vector<Run>(runs.begin(), runs.end() - 1));
        const Matrix left = product(head);
        const Matrix& right = letter_power(runs.back().letter, runs.back().exponent);
        value = left.cwiseProduct(right.transpose()).sum();
    }
    traces_.emplace(w, value);
    return value;
}

Complex evaluate(const TracePolynomial& p, const MatrixPair& pair, long n_symbol_value) {
    if (pair.X.rows() != pair.X.cols() || pair.Y.rows() != pair.Y.cols() || pair.X.rows() != pair.Y.rows())
        throw std::invalid_argument("evaluate: matrices must be square and of equal size");
    if (n_symbol_value != pair.n())
        throw std::invalid_argument("evaluate: n_symbol_value " + std::to_string(n_symbol_value) +
                                    " differs from matrix size " + std::to_string(pair.n()));
    PointContext ctx(pair, p.mode());
    Complex sum(0.0);
    for (const auto& [factors, c] : p.terms()) {
        Complex term(c.to_double(n_symbol_value));
        for (const auto& f : factors) term *= ctx.trace(f);
        sum += term;
    }
    return sum;
}

Complex evaluate(const TracePolynomial& p, const CMPoint& pt) { return evaluate(p, pt.pair, pt.n()); }

namespace {

Gradient factor_gradient(PointContext& ctx, const CyclicWord& w) {
    const int n = ctx.n();
    const Matrix id = Matrix::Identity(n, n);
    Gradient g{Matrix::Zero(n, n), Matrix::Zero(n, n)};
    if (ctx.mode() == Mode::Plain) {
        for (const auto& cut : splice_derivative(w, Letter::X)) g.dX += double(cut.multiplicity) * ctx.product(cut.word).transpose();
        for (const auto& cut : splice_derivative(w, Letter::Y)) g.dY += double(cut.multiplicity) * ctx.product(cut.word).transpose();
        return g;
    }
    if (w.is_single_letter(Letter::X)) {
        g.dX = id;
        return g;
    }
    if (w.is_single_letter(Letter::Y)) {
        g.dY = id;
        return g;
    }
    for (const auto& cut : splice_derivative(w, Letter::A)) {
        const Matrix m = ctx.product(cut.word);
        g.dX += double(cut.multiplicity) * (m.transpose() - (m.trace() / double(n)) * id);
    }
    for (const auto& cut : splice_derivative(w, Letter::B)) {
        const Matrix m = ctx.product(cut.word);
        g.dY += double(cut.multiplicity) * (m.transpose() - (m.trace() / double(n)) * id);
    }
    return g;
}

}  // namespace

Gradient numeric_gradient(const TracePolynomial& p, const MatrixPair& pair) {
    const int n = pair.n();
    if (pair.Y.rows() != n) throw std::invalid_argument("numeric_gradient: dimension mismatch");
    PointContext ctx(pair, p.mode());
    Gradient total{Matrix::Zero(n, n), Matrix::Zero(n, n)};
    for (const auto& [factors, c] : p.terms()) {
        const Complex coeff(c.to_double(n));
        std::vector<Complex> values;
        values.reserve(factors.size());
        for (const auto& f : factors) values.push_back(ctx.trace(f));
        for (std::size_t i = 0; i < factors.size(); ++i) {
            Complex others = coeff;
            for (std::size_t k = 0; k < factors.size(); ++k)
                if (k != i) others *= values[k];
            if (others == Complex(0.0)) continue;
            const Gradient g = factor_gradient(ctx, factors[i]);
            total.dX += others * g.dX;
            total.dY += others * g.dY;
        }
    }
    return total;
}

Complex numeric_bracket(const TracePolynomial& f, const TracePolynomial& g, const MatrixPair& pair) {
    const Gradient gf = numeric_gradient(f, pair);
    const Gradient gg = numeric_gradient(g, pair);
    return gf.dX.cwiseProduct(gg.dY.transpose()).sum() - gf.dY.cwiseProduct(gg.dX.transpose()).sum();
}

double bracket_scale(const TracePolynomial& f, const TracePolynomial& g, const MatrixPair& pair) {
    const Gradient gf = numeric_gradient(f, pair);
    const Gradient gg = numeric_gradient(g, pair);
    return gf.dX.norm() * gg.dY.norm() + gf.dY.norm() * gg.dX.norm();
}

namespace {

Eigen::VectorXcd flatten(const MatrixPair& pair) {
    const int n = pair.n();
    Eigen::VectorXcd z(2 * n * n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            z(j * n + k) = pair.X(j, k);
            z(n * n + j * n + k) = pair.Y(j, k);
        }
    return z;
}

MatrixPair unflatten(const Eigen::VectorXcd& z, int n) {
    MatrixPair pair{Matrix(n, n), Matrix(n, n)};
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            pair.X(j, k) = z(j * n + k);
            pair.Y(j, k) = z(n * n + j * n + k);
        }
    return pair;
}

}  // namespace

double symplectic_pullback_residual(const PointMap& map, const MatrixPair& pair, double h) {
    const int n = pair.n();
    const int dim = 2 * n * n;
    if (!(h > 0.0) || h < 1e-14 * pair.scale()) throw std::invalid_argument("symplectic_pullback_residual: step underflow");
    const Eigen::VectorXcd z = flatten(pair);
    // The map is holomorphic, so each column is the trapezoidal rule for the
    // Cauchy integral on a circle of radius h: symmetric like a central
    // difference, with error O(h^m) instead of O(h^4).
    constexpr int m = 16;
    std::vector<Complex> roots(m);
    for (int k = 0; k < m; ++k) roots[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
    Matrix jac(dim, dim);
    for (int c = 0; c < dim; ++c) {
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(dim);
        for (Complex w : roots) {
            Eigen::VectorXcd v = z;
            v(c) += h * w;
            acc += flatten(map(unflatten(v, n))) / w;
        }
        jac.col(c) = acc / (double(m) * h);
    }
    if (!jac.allFinite()) throw std::runtime_error("symplectic_pullback_residual: non-finite Jacobian");
    Matrix s = Matrix::Zero(dim, dim);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            s(j * n + k, n * n + k * n + j) = 1.0;
            s(n * n + k * n + j, j * n + k) = -1.0;
        }
    const Matrix pulled = jac.transpose() * s * jac;
    return (pulled - s).norm() / s.norm();
}

nlohmann::json to_json(const CMPoint& pt) {
    auto entries = [](const Matrix& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.rows(); ++j)
            for (Eigen::Index k = 0; k < m.cols(); ++k) rows.push_back({m(j, k).real(), m(j, k).imag()});
        return rows;
    };
    return {{"n", pt.n()},
            {"traceless", pt.traceless},
            {"seed", pt.seed},
            {"rank_residual", pt.rank_residual},
            {"lambda", {pt.lambda.real(), pt.lambda.imag()}},
            {"X", entries(pt.pair.X)},
            {"Y", entries(pt.pair.Y)}};
}

CMPoint cmpoint_from_json(const nlohmann::json& j) {
    CMPoint pt;
    const int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("CMPoint: n must be positive");
    auto read = [n](const nlohmann::json& rows) {
        if (rows.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
            throw std::invalid_argument("CMPoint: expected n*n entries");
        Matrix m(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const auto& e = rows.at(static_cast<std::size_t>(r * n + c));
                m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
            }
        return m;
    };
    pt.pair.X = read(j.at("X"));
    pt.pair.Y = read(j.at("Y"));
    pt.traceless = j.at("traceless").get<bool>();
    pt.seed = j.at("seed").get<std::uint64_t>();
    pt.rank_residual = j.at("rank_residual").get<double>();
    if (j.contains("lambda")) pt.lambda = Complex(j["lambda"].at(0).get<double>(), j["lambda"].at(1).get<double>());
    return pt;
}

}  // namespace cmpoisson
