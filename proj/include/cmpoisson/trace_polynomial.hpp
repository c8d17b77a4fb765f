#pragma once

#include "cmpoisson/coefficient.hpp"
#include "cmpoisson/word.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cmpoisson {

/// Plain polynomials are written in tr of X,Y-words. Traceless polynomials are
/// written in tr of A,B-words and may carry the central factors tr X, tr Y.
enum class Mode { Plain, Traceless };

const char* mode_name(Mode mode);

/// Sorted multiset of trace factors.
using Factors = std::vector<CyclicWord>;

Bidegree factors_bidegree(const Factors& factors);

struct TraceMonomial {
    Coefficient coefficient;
    Factors factors;
};

class TracePolynomial {
public:
    using TermMap = std::map<Factors, Coefficient>;

    explicit TracePolynomial(Mode mode = Mode::Plain) : mode_(mode) {}

    static TracePolynomial constant(const Coefficient& c, Mode mode);
    /// tr(word); the empty word gives the constant n.
    static TracePolynomial trace(const Word& word, Mode mode);
    static TracePolynomial monomial(const Coefficient& c, Factors factors, Mode mode);
    /// A traceless polynomial that keeps tr A and tr B factors instead of
    /// rewriting them to zero. Only used to display intermediate results.
    static TracePolynomial unreduced(Mode mode);

    Mode mode() const { return mode_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_reduced() const { return reduced_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    /// Adds c * prod(factors). Factors may be unsorted and may contain empty
    /// words (each contributes a factor n).
    void add_term(Coefficient c, Factors factors);

    /// Drops every monomial holding tr A or tr B.
    TracePolynomial reduced() const;

    /// Monomials in display order: degree descending, then fewer factors,
    /// then factor order.
    std::vector<TraceMonomial> ordered_monomials() const;

    TracePolynomial operator-() const;
    TracePolynomial& operator+=(const TracePolynomial& other);
    TracePolynomial& operator-=(const TracePolynomial& other);
    TracePolynomial& operator*=(const Coefficient& c);

    friend TracePolynomial operator+(TracePolynomial a, const TracePolynomial& b) { return a += b; }
    friend TracePolynomial operator-(TracePolynomial a, const TracePolynomial& b) { return a -= b; }
    friend TracePolynomial operator*(TracePolynomial a, const Coefficient& c) { return a *= c; }
    friend TracePolynomial operator*(const Coefficient& c, TracePolynomial a) { return a *= c; }
    friend TracePolynomial operator*(const TracePolynomial& a, const TracePolynomial& b);

    friend bool operator==(const TracePolynomial& a, const TracePolynomial& b) {
        return a.mode_ == b.mode_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const TracePolynomial& a, const TracePolynomial& b) { return !(a == b); }

    std::string str() const;

private:
    void check_mode(const TracePolynomial& other) const;
    bool admissible(const CyclicWord& w) const;

    Mode mode_;
    bool reduced_ = true;
    TermMap terms_;
};

TracePolynomial add(const TracePolynomial& p, const TracePolynomial& q);
TracePolynomial multiply(const TracePolynomial& p, const TracePolynomial& q);

/// Componentwise maximum of the monomial bidegrees; nullopt stands for -inf.
std::optional<Bidegree> bidegree(const TracePolynomial& p);
/// Maximum monomial degree; nullopt for the zero polynomial.
std::optional<int> degree(const TracePolynomial& p);
/// True when every monomial has the same bidegree.
bool is_bihomogeneous(const TracePolynomial& p);

/// Drops every monomial of degree <= d.
TracePolynomial truncate_below_degree(const TracePolynomial& p, int d);

/// X -> A + (tr X / n) I, Y -> B + (tr Y / n) I, with tr A = tr B = 0.
TracePolynomial to_traceless(const TracePolynomial& p);
/// A -> X - (tr X / n) I, B -> Y - (tr Y / n) I.
TracePolynomial to_plain(const TracePolynomial& p);

/// Substitutes n -> n_value in every coefficient.
TracePolynomial specialize(const TracePolynomial& p, long n_value);

/// Replaces every factor by the sorted word of the same bidegree,
/// tr w -> tr A^i B^j (or X^i Y^j). Used to compare leading terms.
TracePolynomial sorted_word_projection(const TracePolynomial& p);

/// Rewrites single-letter runs of exponent > n_value with the characteristic
/// identity of an n_value x n_value matrix; coefficients are specialized.
TracePolynomial cayley_hamilton_reduce(const TracePolynomial& p, long n_value);

/// Largest single-letter run exponent among all factors (0 for constants).
int max_run_exponent(const TracePolynomial& p);

}  // namespace cmpoisson

namespace cmpoisson {

/// Distinct cyclic words of the given length over the two letters of the
/// mode (A,B or X,Y).
std::vector<CyclicWord> cyclic_words(Mode mode, int length);

/// Every product of traces of degree in [min_degree, max_degree], each with
/// coefficient 1, in a deterministic order. Traceless mode uses words of
/// length >= 2 only; the empty product is the constant 1.
std::vector<TracePolynomial> trace_monomials(Mode mode, int max_degree, int min_degree = 0);

}  // namespace cmpoisson
