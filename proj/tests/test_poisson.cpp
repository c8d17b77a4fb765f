#include <doctest.h>

#include "cmpoisson/parse.hpp"
#include "cmpoisson/poisson.hpp"
#include "support.hpp"

using namespace cmpoisson;
using namespace testsupport;

namespace {

TracePolynomial P(const std::string& text, Mode mode = Mode::Traceless) { return parse_polynomial(text, mode); }

std::string ab(int j, int k) {
    std::string body;
    if (j > 0) body += "A^" + std::to_string(j);
    if (k > 0) body += (body.empty() ? "" : " ") + std::string("B^") + std::to_string(k);
    return "tr(" + body + ")";
}

}  // namespace

TEST_CASE("standard bracket examples") {
    const Mode m = Mode::Plain;
    CHECK(bracket_standard(P("tr(X)", m), P("tr(Y)", m)) == P("n", m));
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k)
            CHECK(bracket_standard(P("tr(X^" + std::to_string(j) + ")", m), P("tr(X^" + std::to_string(k) + ")", m))
                      .is_zero());
    CHECK(bracket_standard(P("tr(X^2)", m), P("tr(Y^2)", m)) == P("4*tr(X Y)", m));
    CHECK_THROWS(bracket_standard(P("tr(A^2)"), P("tr(B^2)")));
}

TEST_CASE("traceless bracket examples") {
    CHECK(bracket_traceless(P("tr(A^2)"), P("tr(B^2)")) == P("4*tr(A B)"));
    CHECK(bracket_traceless_unreduced(P("tr(A^2)"), P("tr(B^2)")).str() == "4*tr(A B) - 4*n^-1*tr(A)*tr(B)");
    // tr A = tr B = 0 in this mode, so exponents start at 2.
    for (int j = 2; j <= 5; ++j)
        for (int q = 2; q <= 5; ++q) {
            const TracePolynomial expected = P(std::to_string(j * q) + "*" + ab(j - 1, q - 1) + " - " +
                                               std::to_string(j * q) + "*n^-1*" + ab(j - 1, 0) + "*" + ab(0, q - 1));
            CHECK(bracket_traceless(P(ab(j, 0)), P(ab(0, q))) == expected);
        }
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k)
            CHECK(bracket_traceless(P(ab(j, k)), P("tr(A B)")) == P(std::to_string(j - k) + "*" + ab(j, k)));
    CHECK(bracket_traceless(P("tr(X)"), P("tr(Y)")) == P("n"));
    CHECK(bracket_traceless(P("tr(X)"), P("tr(A^2 B)")).is_zero());
}

TEST_CASE("antisymmetry, Leibniz and Jacobi on random polynomials") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const Mode mode = trial % 2 ? Mode::Plain : Mode::Traceless;
        const auto f = random_polynomial(rng, mode, 4, 2, true);
        const auto g = random_polynomial(rng, mode, 4, 2, true);
        const auto h = random_polynomial(rng, mode, 3, 2, true);
        CHECK((bracket(f, g) + bracket(g, f)).is_zero());
        CHECK(bracket(f * g, h) == f * bracket(g, h) + g * bracket(f, h));
        CHECK(jacobi_check(f, g, h).is_zero());
    }
    CHECK(jacobi_check(P("tr(A^2)"), P("tr(B^2)"), P("tr(A B)")).is_zero());
    CHECK(jacobi_check(P("tr(A^3)"), P("tr(B^2)"), P("tr(A B^2)")).is_zero());
}

TEST_CASE("traceless bracket is the standard bracket after substitution") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = random_polynomial(rng, Mode::Plain, 5, 2);
        const auto g = random_polynomial(rng, Mode::Plain, 4, 2);
        CHECK(to_traceless(bracket_standard(f, g)) == bracket_traceless(to_traceless(f), to_traceless(g)));
    }
}

TEST_CASE("bracket agrees with the numeric bracket") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + trial % 3;
        const Mode mode = trial % 2 ? Mode::Plain : Mode::Traceless;
        const auto f = random_polynomial(rng, mode, 5, 2, true);
        const auto g = random_polynomial(rng, mode, 5, 2, true);
        const auto pair = random_pair(rng, n, 0.7);
        const Complex symbolic = evaluate(bracket(f, g), pair, n);
        const Complex numeric = numeric_bracket(f, g, pair);
        CHECK(std::abs(symbolic - numeric) <= 1e-9 * std::max(1.0, bracket_scale(f, g, pair)));
    }
}

TEST_CASE("leading-term degree bound") {
    for (int j = 0; j <= 3; ++j)
        for (int k = 0; k <= 3; ++k)
            for (int p = 0; p <= 3; ++p)
                for (int q = 0; q <= 3; ++q) {
                    if (j + k < 2 || p + q < 2) continue;
                    const auto b = bracket_traceless(P(ab(j, k)), P(ab(p, q)));
                    if (b.is_zero()) continue;
                    const auto d = *bidegree(b);
                    CHECK(d.first <= std::max(j + p - 1, 0));
                    CHECK(d.second <= std::max(k + q - 1, 0));
                }
}
