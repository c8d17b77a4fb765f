#include <doctest.h>

#include "cmpoisson/parse.hpp"
#include "support.hpp"

using namespace cmpoisson;
using namespace testsupport;

namespace {

TracePolynomial P(const char* text, Mode mode = Mode::Traceless) { return parse_polynomial(text, mode); }

Word W(const char* letters) {
    std::vector<Letter> out;
    for (const char* c = letters; *c; ++c) {
        switch (*c) {
            case 'A': out.push_back(Letter::A); break;
            case 'B': out.push_back(Letter::B); break;
            case 'X': out.push_back(Letter::X); break;
            case 'Y': out.push_back(Letter::Y); break;
            default: break;
        }
    }
    return Word::from_letters(out);
}

}  // namespace

TEST_CASE("canonicalize picks the least rotation") {
    CHECK(canonicalize(W("BAAB")).word() == W("AABB"));
    CHECK(canonicalize(W("A")).word() == W("A"));
    CHECK(canonicalize(W("ABAB")) == canonicalize(W("BABA")));
    CHECK(canonicalize(W("AABB")).runs().size() == 2);
}

TEST_CASE("canonicalize agrees with brute-force rotation on random words") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        const int len = std::uniform_int_distribution<int>(1, 12)(rng);
        const Word w = random_word(rng, Mode::Traceless, len);
        const auto letters = w.letters();
        const CyclicWord c = canonicalize(w);
        CHECK(c.word().letters() == brute_force_min_rotation(letters));
        CHECK(canonicalize(c.word()) == c);
        for (std::size_t r = 1; r < letters.size(); ++r) {
            std::vector<Letter> rot(letters.begin() + static_cast<long>(r), letters.end());
            rot.insert(rot.end(), letters.begin(), letters.begin() + static_cast<long>(r));
            CHECK(canonicalize(Word::from_letters(rot)) == c);
        }
    }
}

TEST_CASE("coefficient arithmetic in Q[n, 1/n]") {
    const Coefficient inv_n = Coefficient::n_power(-1);
    CHECK(inv_n + (Coefficient(1) - inv_n) == Coefficient(1));
    CHECK((inv_n * Coefficient::n_power(1)) == Coefficient(1));
    CHECK(Coefficient(Rational(3, 2), 2).specialize(3) == Rational(27, 2));
    CHECK((Coefficient(2) - Coefficient(2)).is_zero());
}

TEST_CASE("add and multiply") {
    CHECK((P("tr(A^2)") + P("-tr(A^2)")).is_zero());
    CHECK((P("tr(A^2)") + P("tr(B^2)")).size() == 2);
    CHECK(P("n^-1*tr(A B)") + P("tr(A B) - n^-1*tr(A B)") == P("tr(A B)"));
    const auto prod = P("tr(A^2)") * P("tr(B^2)");
    REQUIRE(prod.size() == 1);
    CHECK(prod.terms().begin()->first.size() == 2);
    CHECK((TracePolynomial(Mode::Traceless) * P("tr(A^2 B)")).is_zero());
    const auto sum = P("tr(X) + tr(Y)", Mode::Plain);
    CHECK(sum * sum == P("tr(X)*tr(X) + 2*tr(X)*tr(Y) + tr(Y)*tr(Y)", Mode::Plain));
    CHECK_THROWS(P("tr(A^2)") + P("tr(X^2)", Mode::Plain));
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const Mode mode = trial % 2 ? Mode::Plain : Mode::Traceless;
        const auto a = random_polynomial(rng, mode, 4);
        const auto b = random_polynomial(rng, mode, 4);
        const auto c = random_polynomial(rng, mode, 4);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("traceless mode drops tr A and tr B") {
    CHECK(P("tr(A)").is_zero());
    CHECK(P("tr(A)*tr(B^2) + tr(A B)") == P("tr(A B)"));
    CHECK(TracePolynomial::trace(Word(), Mode::Plain) == TracePolynomial::constant(Coefficient::n_power(1), Mode::Plain));
}

TEST_CASE("bidegree and truncation") {
    CHECK(bidegree(P("tr(A^2 B)")) == Bidegree{2, 1});
    CHECK_FALSE(bidegree(TracePolynomial(Mode::Traceless)).has_value());
    CHECK(bidegree(P("tr(A^2)*tr(B^3)")) == Bidegree{2, 3});
    CHECK(truncate_below_degree(P("tr(A^3 B) + tr(A B)"), 2) == P("tr(A^3 B)"));
    const auto p = P("tr(A^3 B) + tr(A B) + 3");
    CHECK(truncate_below_degree(p, -1) == p);
}

TEST_CASE("to_traceless examples") {
    CHECK(to_traceless(P("tr(X^2)", Mode::Plain)) == P("tr(A^2) + n^-1*tr(X)*tr(X)"));
    CHECK(to_traceless(P("tr(X Y)", Mode::Plain)) == P("tr(A B) + n^-1*tr(X)*tr(Y)"));
    CHECK(to_traceless(P("tr(X)", Mode::Plain)) == P("tr(X)"));
}

TEST_CASE("to_traceless agrees with evaluation and is a ring homomorphism") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 3;
        const auto p = random_polynomial(rng, Mode::Plain, 5);
        const auto q = random_polynomial(rng, Mode::Plain, 3);
        const auto tp = to_traceless(p);
        CHECK(to_traceless(p * q) == tp * to_traceless(q));
        CHECK(to_plain(tp) == p);
        const auto pair = random_pair(rng, n);
        CHECK(relative_error(evaluate(p, pair, n), evaluate(tp, pair, n), 0) < 1e-10);
    }
}

TEST_CASE("cayley_hamilton_reduce") {
    const auto tx3 = P("tr(X^3)", Mode::Plain);
    const auto reduced = cayley_hamilton_reduce(tx3, 2);
    CHECK(reduced == P("3/2*tr(X)*tr(X^2) - 1/2*tr(X)*tr(X)*tr(X)", Mode::Plain));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto pair = random_pair(rng, 2);
        CHECK(relative_error(evaluate(tx3, pair, 2), evaluate(reduced, pair, 2), 0) < 1e-12);
    }
    CHECK(cayley_hamilton_reduce(P("tr(X^2)", Mode::Plain), 3) == P("tr(X^2)", Mode::Plain));

    const auto mixed = P("tr(X^3 Y)", Mode::Plain);
    const auto mixed_reduced = cayley_hamilton_reduce(mixed, 2);
    CHECK(max_run_exponent(mixed_reduced) <= 2);
    for (int i = 0; i < 20; ++i) {
        const auto pair = random_pair(rng, 2);
        CHECK(relative_error(evaluate(mixed, pair, 2), evaluate(mixed_reduced, pair, 2), 0) < 1e-10);
    }
    CHECK_THROWS(cayley_hamilton_reduce(tx3, 0));
}

TEST_CASE("cayley_hamilton_reduce preserves evaluation on random input") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const long n = 1 + trial % 4;
        const Mode mode = trial % 2 ? Mode::Plain : Mode::Traceless;
        const auto p = random_polynomial(rng, mode, 7);
        const auto r = cayley_hamilton_reduce(p, n);
        CHECK(max_run_exponent(r) <= n);
        const auto pair = random_pair(rng, static_cast<int>(n));
        const Complex a = evaluate(p, pair, n), b = evaluate(r, pair, n);
        CHECK(relative_error(a, b, 0) < 1e-10);
    }
}

TEST_CASE("parse and print") {
    const auto p = P("4*tr(A B) - 4*n^-1*tr(A^2 B)*tr(B^2) + 1/3 n^2 tr(B A^2 B)");
    CHECK(P(p.str().c_str()) == p);
    CHECK(P(p.str().c_str()).str() == p.str());
    CHECK(P("tr(B^2) + tr(A^2)").str() == "tr(A^2) + tr(B^2)");
    CHECK(TracePolynomial(Mode::Plain).str() == "0");
    try {
        P("tr(A^2) +\n  tr(C)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 6);
    }
    CHECK_THROWS_AS(P("tr(X^2)"), ParseError);
    CHECK_THROWS_AS(P("tr(A^2", Mode::Traceless), ParseError);
}

TEST_CASE("parse and print round trip on random polynomials") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const Mode mode = trial % 2 ? Mode::Plain : Mode::Traceless;
        const auto p = random_polynomial(rng, mode, 6, 4, true);
        const auto q = parse_polynomial(p.str(), mode);
        CHECK(q == p);
        CHECK(q.str() == p.str());
    }
}
