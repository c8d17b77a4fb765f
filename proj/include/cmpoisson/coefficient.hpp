#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace cmpoisson {

using Rational = mpq_class;

/// Exact element of Q[n, 1/n]: a finite sum of rationals times integer powers
/// of the formal matrix size n. Terms are kept sorted by power, zero rationals
/// are never stored.
class Coefficient {
public:
    using Term = std::pair<int, Rational>;

    Coefficient() = default;
    Coefficient(long value);  // NOLINT(google-explicit-constructor)
    Coefficient(Rational value, int n_power = 0);

    static Coefficient n_power(int power) { return Coefficient(Rational(1), power); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
    const std::vector<Term>& terms() const { return terms_; }

    /// Rational part at n^0 (zero if absent).
    Rational constant_term() const;

    Coefficient operator-() const;
    Coefficient& operator+=(const Coefficient& other);
    Coefficient& operator-=(const Coefficient& other);
    Coefficient& operator*=(const Coefficient& other);

    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
    friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }

    friend bool operator==(const Coefficient& a, const Coefficient& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Coefficient& a, const Coefficient& b) { return !(a == b); }

    /// Substitute n -> n_value, exactly.
    Rational specialize(long n_value) const;
    /// Substitute n -> n_value in double precision.
    double to_double(long n_value) const;

    std::string str() const;

private:
    explicit Coefficient(std::vector<Term> terms) : terms_(std::move(terms)) {}
    std::vector<Term> terms_;
};

}  // namespace cmpoisson
