#include "cmpoisson/coefficient.hpp"

#include <sstream>

namespace cmpoisson {

namespace {

Rational rational_power(long base, int exponent) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), mpz_class(base).get_mpz_t(), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0) return Rational(p);
    Rational r(mpz_class(1), p);
    r.canonicalize();
    return r;
}

}  // namespace

Coefficient::Coefficient(long value) {
    if (value != 0) terms_.emplace_back(0, Rational(value));
}

Coefficient::Coefficient(Rational value, int n_power) {
    value.canonicalize();
    if (value != 0) terms_.emplace_back(n_power, std::move(value));
}

Rational Coefficient::constant_term() const {
    for (const auto& [power, value] : terms_)
        if (power == 0) return value;
    return Rational(0);
}

Coefficient Coefficient::operator-() const {
    Coefficient out = *this;
    for (auto& term : out.terms_) term.second = -term.second;
    return out;
}

Coefficient& Coefficient::operator+=(const Coefficient& other) {
    if (other.terms_.empty()) return *this;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() || b != other.terms_.end()) {
        if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            merged.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->first < a->first) {
            merged.push_back(*b++);
        } else {
            Rational sum = a->second + b->second;
            if (sum != 0) merged.emplace_back(a->first, std::move(sum));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& other) { return *this += -other; }

Coefficient& Coefficient::operator*=(const Coefficient& other) {
    if (terms_.empty()) return *this;
    if (other.terms_.empty()) {
        terms_.clear();
        return *this;
    }
    if (other.terms_.size() == 1) {
        const auto& [power, value] = other.terms_.front();
        for (auto& term : terms_) {
            term.first += power;
            term.second *= value;
        }
        return *this;
    }
    Coefficient product;
    for (const auto& [pa, va] : terms_)
        for (const auto& [pb, vb] : other.terms_) product += Coefficient(Rational(va * vb), pa + pb);
    *this = std::move(product);
    return *this;
}

Rational Coefficient::specialize(long n_value) const {
    Rational sum(0);
    for (const auto& [power, value] : terms_) sum += value * rational_power(n_value, power);
    sum.canonicalize();
    return sum;
}

double Coefficient::to_double(long n_value) const { return specialize(n_value).get_d(); }

std::string Coefficient::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [power, value] = *it;
        if (!first) out << (value < 0 ? " - " : " + ");
        else if (value < 0) out << "-";
        first = false;
        Rational magnitude = abs(value);
        if (power == 0) {
            out << magnitude.get_str();
            continue;
        }
        if (magnitude != 1) out << magnitude.get_str() << "*";
        out << (power == 1 ? std::string("n") : "n^" + std::to_string(power));
    }
    return out.str();
}

}  // namespace cmpoisson
