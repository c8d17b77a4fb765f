#include <doctest.h>

#include "cmpoisson/parse.hpp"
#include "cmpoisson/poisson.hpp"
#include "support.hpp"

using namespace cmpoisson;
using namespace testsupport;

namespace {

TracePolynomial P(const std::string& text, Mode mode = Mode::Plain) { return parse_polynomial(text, mode); }

}  // namespace

TEST_CASE("normal form at n = 2") {
    const MatrixPair pair = calogero_moser_normal_form({1.0, -1.0}, {0.0, 0.0});
    Matrix m = pair.X * pair.Y - pair.Y * pair.X;
    m.diagonal().array() -= Complex(0.0, 1.0);
    Matrix expected(2, 2);
    expected << 1.0, -1.0, -1.0, 1.0;
    expected *= Complex(0.0, -1.0);
    CHECK((m - expected).norm() == 0.0);
    CHECK(rank_residual(pair) < 1e-15);
}

TEST_CASE("sampler satisfies the rank condition") {
    CHECK(sample_cm(1, false, 4).rank_residual == 0.0);
    const CMPoint p3 = sample_cm(3, false, 12345);
    CHECK(p3.rank_residual < 1e-12);
    for (int n = 1; n <= 4; ++n)
        for (const auto& pt : sample_batch(n, true, 99, 50)) {
            CHECK(pt.rank_residual < 1e-10);
            CHECK(rank_residual(pt.pair) == pt.rank_residual);
            CHECK(trace_residual(pt.pair) < 1e-12);
        }
    CHECK(sample_cm(3, true, 8).pair.X == sample_cm(3, true, 8).pair.X);
    CHECK(child_seed(1, 0) != child_seed(1, 1));
    CHECK_THROWS(sample_cm(0, false, 1));
}

TEST_CASE("generic lambda") {
    SamplerConfig config;
    config.lambda = Complex(0.3, 2.0);
    const CMPoint pt = sample_cm(4, false, 3, config);
    CHECK(rank_residual(pt.pair, config.lambda) < 1e-10);
}

TEST_CASE("evaluate") {
    const CMPoint pt = sample_cm(3, true, 1);
    CHECK(evaluate(TracePolynomial::trace(Word(), Mode::Traceless), pt) == Complex(3.0));
    CHECK(std::abs(evaluate(P("tr(X)"), pt)) < 1e-12 * pt.pair.scale());
    Matrix x(2, 2);
    x << 1.0, 0.0, 0.0, -1.0;
    const MatrixPair pair{x, Matrix::Zero(2, 2)};
    CHECK(evaluate(P("tr(X^2)"), pair, 2) == Complex(2.0));
    CHECK_THROWS(evaluate(P("tr(X^2)"), pair, 3));
}

TEST_CASE("conjugation invariance") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 3;
        const auto p = random_polynomial(rng, trial % 2 ? Mode::Plain : Mode::Traceless, 5, 3, true);
        const CMPoint pt = sample_cm(n, false, static_cast<std::uint64_t>(trial));
        const Matrix g = random_matrix(rng, n) + 3.0 * Matrix::Identity(n, n);
        Eigen::JacobiSVD<Matrix> svd(g);
        REQUIRE(svd.singularValues()(0) / svd.singularValues()(n - 1) < 100.0);
        const Matrix gi = g.inverse();
        const MatrixPair moved{g * pt.pair.X * gi, g * pt.pair.Y * gi};
        CHECK(relative_error(evaluate(p, pt), evaluate(p, moved, n), 0) < 1e-9);
    }
}

TEST_CASE("gradients") {
    std::mt19937_64 rng(37);
    const MatrixPair pair = random_pair(rng, 3);
    const Gradient gx2 = numeric_gradient(P("tr(X^2)"), pair);
    CHECK((gx2.dX - 2.0 * pair.X.transpose()).norm() < 1e-13);
    CHECK(gx2.dY.norm() == 0.0);
    const Gradient gxy = numeric_gradient(P("tr(X Y)"), pair);
    CHECK((gxy.dX - pair.Y.transpose()).norm() < 1e-13);

    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 3;
        const auto p = random_polynomial(rng, trial % 2 ? Mode::Plain : Mode::Traceless, 5, 3, true);
        const MatrixPair q = random_pair(rng, n, 0.8);
        const Gradient exact = numeric_gradient(p, q);
        const Gradient fd = finite_difference_gradient(p, q, 1e-6);
        const double scale = std::max(1.0, std::sqrt(exact.dX.squaredNorm() + exact.dY.squaredNorm()));
        const double err = std::sqrt((exact.dX - fd.dX).squaredNorm() + (exact.dY - fd.dY).squaredNorm());
        CHECK(err / scale < 1e-6);
    }
}

TEST_CASE("numeric bracket examples") {
    const CMPoint pt = sample_cm(3, false, 2);
    CHECK(std::abs(numeric_bracket(P("tr(X)"), P("tr(Y)"), pt.pair) - Complex(3.0)) < 1e-12);
    const auto x2 = P("tr(X^2)"), x3 = P("tr(X^3)"), y2 = P("tr(Y^2)");
    const Gradient g2 = numeric_gradient(x2, pt.pair), g3 = numeric_gradient(x3, pt.pair);
    CHECK(std::abs(numeric_bracket(x2, x3, pt.pair)) <= 1e-12 * std::max(1.0, g2.dX.norm() * g3.dX.norm()));
    const Complex expected = evaluate(P("4*tr(X Y)"), pt);
    CHECK(std::abs(numeric_bracket(x2, y2, pt.pair) - expected) < 1e-9 * bracket_scale(x2, y2, pt.pair));
}

TEST_CASE("symplectic pullback residual") {
    const CMPoint pt = sample_cm(2, true, 5);
    CHECK(symplectic_pullback_residual([](const MatrixPair& p) { return p; }, pt.pair, 1e-3) < 1e-11);
    const Complex t(0.4, -0.2);
    const double shear = symplectic_pullback_residual(
        [t](const MatrixPair& p) { return MatrixPair{p.X, p.Y - 2.0 * t * p.X}; }, pt.pair, 1e-3);
    CHECK(shear < 1e-8);
    const double bad = symplectic_pullback_residual(
        [](const MatrixPair& p) { return MatrixPair{p.X, 2.0 * p.Y}; }, pt.pair, 1e-3);
    CHECK(bad > 0.5);
    CHECK_THROWS(symplectic_pullback_residual([](const MatrixPair& p) { return p; }, pt.pair, 0.0));
}

TEST_CASE("CMPoint JSON round trip is bit exact") {
    const CMPoint pt = sample_cm(3, true, 77);
    const std::string text = to_json(pt).dump();
    const CMPoint back = cmpoint_from_json(nlohmann::json::parse(text));
    CHECK(back.pair.X == pt.pair.X);
    CHECK(back.pair.Y == pt.pair.Y);
    CHECK(back.seed == pt.seed);
    CHECK(back.rank_residual == pt.rank_residual);
    CHECK(back.traceless);
    CHECK(to_json(back).dump() == text);
}
