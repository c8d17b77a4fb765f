#pragma once

// Shared helpers for the unit and acceptance tests: random polynomials,
// random matrix pairs and the independent oracles they are checked against.

#include <algorithm>
#include <random>
#include <vector>

#include <doctest.h>

#include "cmpoisson/cm_numeric.hpp"
#include "cmpoisson/trace_polynomial.hpp"

namespace testsupport {

using namespace cmpoisson;

inline Word random_word(std::mt19937_64& rng, Mode mode, int length) {
    const Letter first = mode == Mode::Plain ? Letter::X : Letter::A;
    const Letter second = mode == Mode::Plain ? Letter::Y : Letter::B;
    std::vector<Letter> letters;
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < length; ++i) letters.push_back(coin(rng) ? first : second);
    return Word::from_letters(letters);
}

/// Random polynomial with up to `terms` monomials, each a product of at most
/// three traces and of total degree at most `max_degree`.
inline TracePolynomial random_polynomial(std::mt19937_64& rng, Mode mode, int max_degree, int terms = 3,
                                         bool allow_central = false) {
    TracePolynomial p(mode);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> npow(-1, 1);
    std::uniform_int_distribution<int> nfactors(1, 3);
    for (int t = 0; t < terms; ++t) {
        int budget = std::uniform_int_distribution<int>(1, max_degree)(rng);
        Factors factors;
        const int k = nfactors(rng);
        for (int f = 0; f < k && budget > 0; ++f) {
            if (allow_central && mode == Mode::Traceless && std::bernoulli_distribution(0.2)(rng)) {
                factors.emplace_back(Word({{std::bernoulli_distribution(0.5)(rng) ? Letter::X : Letter::Y, 1}}));
                budget -= 1;
                continue;
            }
            const int len = std::uniform_int_distribution<int>(mode == Mode::Traceless ? 2 : 1,
                                                              std::max(budget, mode == Mode::Traceless ? 2 : 1))(rng);
            if (len > budget) break;
            factors.emplace_back(random_word(rng, mode, len));
            budget -= len;
        }
        if (factors.empty()) continue;
        int c = coeff(rng);
        if (c == 0) c = 1;
        p.add_term(Coefficient(Rational(c, den(rng)), npow(rng)), factors);
    }
    return p;
}

inline Matrix random_matrix(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Matrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const double re = g(rng);
            const double im = g(rng);
            m(j, k) = Complex(re, im);
        }
    return m;
}

inline MatrixPair random_pair(std::mt19937_64& rng, int n, double scale = 1.0) {
    return {random_matrix(rng, n, scale), random_matrix(rng, n, scale)};
}

inline double relative_error(Complex a, Complex b, double scale) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b), scale});
}

/// Least rotation by enumerating every rotation of the flat letter sequence.
inline std::vector<Letter> brute_force_min_rotation(const std::vector<Letter>& letters) {
    std::vector<Letter> best = letters;
    for (std::size_t r = 1; r < letters.size(); ++r) {
        std::vector<Letter> rot(letters.begin() + static_cast<long>(r), letters.end());
        rot.insert(rot.end(), letters.begin(), letters.begin() + static_cast<long>(r));
        best = std::min(best, rot);
    }
    return best;
}

/// Central finite-difference gradient of p, entry by entry.
inline Gradient finite_difference_gradient(const TracePolynomial& p, const MatrixPair& pair, double h) {
    const int n = pair.n();
    Gradient g{Matrix::Zero(n, n), Matrix::Zero(n, n)};
    for (int which = 0; which < 2; ++which)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                MatrixPair plus = pair, minus = pair;
                (which == 0 ? plus.X : plus.Y)(j, k) += h;
                (which == 0 ? minus.X : minus.Y)(j, k) -= h;
                const Complex d = (evaluate(p, plus, n) - evaluate(p, minus, n)) / (2.0 * h);
                (which == 0 ? g.dX : g.dY)(j, k) = d;
            }
    return g;
}

}  // namespace testsupport

namespace doctest {
template <>
struct StringMaker<cmpoisson::TracePolynomial> {
    static String convert(const cmpoisson::TracePolynomial& p) { return p.str().c_str(); }
};
}  // namespace doctest
