#include "cmpoisson/trace_polynomial.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <tuple>

namespace cmpoisson {

const char* mode_name(Mode mode) { return mode == Mode::Plain ? "plain" : "traceless"; }

Bidegree factors_bidegree(const Factors& factors) {
    Bidegree d;
    for (const auto& f : factors) {
        Bidegree b = f.bidegree();
        d.first += b.first;
        d.second += b.second;
    }
    return d;
}

TracePolynomial TracePolynomial::constant(const Coefficient& c, Mode mode) {
    TracePolynomial p(mode);
    p.add_term(c, {});
    return p;
}

TracePolynomial TracePolynomial::trace(const Word& word, Mode mode) {
    TracePolynomial p(mode);
    p.add_term(Coefficient(1), {CyclicWord(word)});
    return p;
}

TracePolynomial TracePolynomial::monomial(const Coefficient& c, Factors factors, Mode mode) {
    TracePolynomial p(mode);
    p.add_term(c, std::move(factors));
    return p;
}

TracePolynomial TracePolynomial::unreduced(Mode mode) {
    TracePolynomial p(mode);
    p.reduced_ = false;
    return p;
}

bool TracePolynomial::admissible(const CyclicWord& w) const {
    const auto& runs = w.runs();
    if (mode_ == Mode::Plain)
        return std::all_of(runs.begin(), runs.end(),
                           [](const Run& r) { return r.letter == Letter::X || r.letter == Letter::Y; });
    if (w.is_single_letter(Letter::X) || w.is_single_letter(Letter::Y)) return true;
    return std::all_of(runs.begin(), runs.end(),
                       [](const Run& r) { return r.letter == Letter::A || r.letter == Letter::B; });
}

void TracePolynomial::add_term(Coefficient c, Factors factors) {
    if (c.is_zero()) return;
    Factors kept;
    kept.reserve(factors.size());
    for (auto& f : factors) {
        if (f.empty()) {
            c *= Coefficient::n_power(1);
            continue;
        }
        if (!admissible(f))
            throw std::invalid_argument("factor tr(" + word_body(f.word()) + ") is not valid in " + mode_name(mode_) +
                                        " mode");
        if (mode_ == Mode::Traceless && reduced_ && (f.is_single_letter(Letter::A) || f.is_single_letter(Letter::B)))
            return;
        kept.push_back(std::move(f));
    }
    std::sort(kept.begin(), kept.end());
    auto [it, inserted] = terms_.try_emplace(std::move(kept), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TracePolynomial TracePolynomial::reduced() const {
    TracePolynomial out(mode_);
    for (const auto& [f, c] : terms_) out.add_term(c, f);
    return out;
}

std::vector<TraceMonomial> TracePolynomial::ordered_monomials() const {
    std::vector<TraceMonomial> out;
    out.reserve(terms_.size());
    for (const auto& [f, c] : terms_) out.push_back({c, f});
    std::stable_sort(out.begin(), out.end(), [](const TraceMonomial& a, const TraceMonomial& b) {
        const int da = factors_bidegree(a.factors).total();
        const int db = factors_bidegree(b.factors).total();
        if (da != db) return da > db;
        return a.factors.size() < b.factors.size();
    });
    return out;
}

void TracePolynomial::check_mode(const TracePolynomial& other) const {
    if (mode_ != other.mode_)
        throw std::invalid_argument(std::string("mode mismatch: ") + mode_name(mode_) + " vs " + mode_name(other.mode_));
}

TracePolynomial TracePolynomial::operator-() const {
    TracePolynomial out = *this;
    for (auto& [f, c] : out.terms_) c = -c;
    return out;
}

TracePolynomial& TracePolynomial::operator+=(const TracePolynomial& other) {
    check_mode(other);
    reduced_ = reduced_ && other.reduced_;
    for (const auto& [f, c] : other.terms_) {
        auto [it, inserted] = terms_.try_emplace(f, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

TracePolynomial& TracePolynomial::operator-=(const TracePolynomial& other) { return *this += -other; }

TracePolynomial& TracePolynomial::operator*=(const Coefficient& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [f, coeff] : terms_) coeff *= c;
    return *this;
}

TracePolynomial operator*(const TracePolynomial& a, const TracePolynomial& b) {
    a.check_mode(b);
    TracePolynomial out(a.mode_);
    out.reduced_ = a.reduced_ && b.reduced_;
    for (const auto& [fa, ca] : a.terms_) {
        for (const auto& [fb, cb] : b.terms_) {
            Factors merged;
            merged.reserve(fa.size() + fb.size());
            std::merge(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(merged));
            out.add_term(ca * cb, std::move(merged));
        }
    }
    return out;
}

namespace {

std::string factor_text(const CyclicWord& w) { return "tr(" + word_body(w.word()) + ")"; }

}  // namespace

std::string TracePolynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& m : ordered_monomials()) {
        const auto& cterms = m.coefficient.terms();
        for (auto it = cterms.rbegin(); it != cterms.rend(); ++it) {
            const auto& [power, value] = *it;
            const bool negative = value < 0;
            if (first) out += negative ? "-" : "";
            else out += negative ? " - " : " + ";
            first = false;
            std::vector<std::string> parts;
            Rational magnitude = abs(value);
            if (magnitude != 1 || (power == 0 && m.factors.empty())) parts.push_back(magnitude.get_str());
            if (power != 0) parts.push_back(power == 1 ? std::string("n") : "n^" + std::to_string(power));
            for (const auto& f : m.factors) parts.push_back(factor_text(f));
            for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
        }
    }
    return out;
}

TracePolynomial add(const TracePolynomial& p, const TracePolynomial& q) { return p + q; }
TracePolynomial multiply(const TracePolynomial& p, const TracePolynomial& q) { return p * q; }

std::optional<Bidegree> bidegree(const TracePolynomial& p) {
    if (p.is_zero()) return std::nullopt;
    Bidegree d{0, 0};
    for (const auto& [f, c] : p.terms()) {
        Bidegree b = factors_bidegree(f);
        d.first = std::max(d.first, b.first);
        d.second = std::max(d.second, b.second);
    }
    return d;
}

std::optional<int> degree(const TracePolynomial& p) {
    if (p.is_zero()) return std::nullopt;
    int d = 0;
    for (const auto& [f, c] : p.terms()) d = std::max(d, factors_bidegree(f).total());
    return d;
}

bool is_bihomogeneous(const TracePolynomial& p) {
    std::optional<Bidegree> seen;
    for (const auto& [f, c] : p.terms()) {
        Bidegree b = factors_bidegree(f);
        if (seen && *seen != b) return false;
        seen = b;
    }
    return true;
}

TracePolynomial truncate_below_degree(const TracePolynomial& p, int d) {
    TracePolynomial out = TracePolynomial(p.mode());
    for (const auto& [f, c] : p.terms())
        if (factors_bidegree(f).total() > d) out.add_term(c, f);
    return out;
}

namespace {

Rational binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

/// Expands tr(w) under letter -> image(letter) + sign * (central / n) I.
TracePolynomial expand_shifted_trace(const CyclicWord& w, Mode target, int sign) {
    auto image = [&](Letter l) {
        if (target == Mode::Traceless) return l == Letter::X ? Letter::A : Letter::B;
        return l == Letter::A ? Letter::X : Letter::Y;
    };
    auto central = [](Letter l) { return is_first(l) ? Letter::X : Letter::Y; };
    const auto& runs = w.runs();
    TracePolynomial out(target);
    std::vector<int> picks(runs.size(), 0);
    std::function<void(std::size_t)> recurse = [&](std::size_t i) {
        if (i == runs.size()) {
            Coefficient c(1);
            Word remaining;
            Factors factors;
            for (std::size_t k = 0; k < runs.size(); ++k) {
                const int e = runs[k].exponent;
                const int m = picks[k];
                remaining.append(image(runs[k].letter), e - m);
                if (m == 0) continue;
                Rational scalar = binomial(e, m);
                if (sign < 0 && m % 2 == 1) scalar = -scalar;
                c *= Coefficient(scalar, -m);
                for (int r = 0; r < m; ++r) factors.push_back(CyclicWord(Word({{central(runs[k].letter), 1}})));
            }
            factors.push_back(CyclicWord(remaining));
            out.add_term(c, std::move(factors));
            return;
        }
        for (int m = 0; m <= runs[i].exponent; ++m) {
            picks[i] = m;
            recurse(i + 1);
        }
    };
    recurse(0);
    return out;
}

TracePolynomial substitute(const TracePolynomial& p, Mode target, int sign) {
    TracePolynomial out(target);
    for (const auto& [factors, c] : p.terms()) {
        TracePolynomial term = TracePolynomial::constant(c, target);
        for (const auto& f : factors) {
            const bool central = f.is_single_letter(Letter::X) || f.is_single_letter(Letter::Y);
            if (central) {
                term = term * TracePolynomial::trace(f.word(), target);
            } else {
                term = term * expand_shifted_trace(f, target, sign);
            }
        }
        out += term;
    }
    return out;
}

}  // namespace

TracePolynomial to_traceless(const TracePolynomial& p) {
    if (p.mode() != Mode::Plain) throw std::invalid_argument("to_traceless expects a plain polynomial");
    return substitute(p, Mode::Traceless, +1);
}

TracePolynomial to_plain(const TracePolynomial& p) {
    if (p.mode() != Mode::Traceless) throw std::invalid_argument("to_plain expects a traceless polynomial");
    return substitute(p, Mode::Plain, -1);
}

TracePolynomial specialize(const TracePolynomial& p, long n_value) {
    TracePolynomial out(p.mode());
    for (const auto& [f, c] : p.terms()) out.add_term(Coefficient(c.specialize(n_value)), f);
    return out;
}

TracePolynomial sorted_word_projection(const TracePolynomial& p) {
    TracePolynomial out(p.mode());
    for (const auto& [factors, c] : p.terms()) {
        Factors sorted;
        for (const auto& f : factors) {
            if (f.is_single_letter(Letter::X) || f.is_single_letter(Letter::Y)) {
                sorted.push_back(f);
                continue;
            }
            const bool plain_letters = f.runs().front().letter == Letter::X || f.runs().front().letter == Letter::Y;
            Bidegree b = f.bidegree();
            Word w;
            w.append(plain_letters ? Letter::X : Letter::A, b.first);
            w.append(plain_letters ? Letter::Y : Letter::B, b.second);
            sorted.push_back(CyclicWord(w));
        }
        out.add_term(c, std::move(sorted));
    }
    return out;
}

int max_run_exponent(const TracePolynomial& p) {
    int m = 0;
    for (const auto& [factors, c] : p.terms())
        for (const auto& f : factors)
            for (const auto& r : f.runs()) m = std::max(m, static_cast<int>(r.exponent));
    return m;
}

namespace {

/// Memoized rewriting of single traces at a fixed matrix size.
class CayleyHamiltonReducer {
public:
    CayleyHamiltonReducer(long n_value, Mode mode) : n_(n_value), mode_(mode) {}

    TracePolynomial reduce_trace(const CyclicWord& w) {
        if (w.empty()) return TracePolynomial::constant(Coefficient(n_), mode_);
        auto cached = cache_.find(w);
        if (cached != cache_.end()) return cached->second;

        const auto& runs = w.runs();
        std::size_t at = runs.size();
        for (std::size_t i = 0; i < runs.size(); ++i) {
            if (runs[i].exponent > n_) {
                at = i;
                break;
            }
        }
        TracePolynomial result(mode_);
        if (at == runs.size()) {
            result = TracePolynomial::trace(w.word(), mode_);
        } else {
            const Letter letter = runs[at].letter;
            const int e = runs[at].exponent;
            const auto& sigma = elementary(letter);
            // L^e R = sum_{i=1..n} (-1)^{i-1} e_i L^{e-i} R
            for (long i = 1; i <= n_; ++i) {
                Word shifted;
                shifted.append(letter, e - static_cast<int>(i));
                for (std::size_t k = 1; k < runs.size(); ++k) {
                    const Run& r = runs[(at + k) % runs.size()];
                    shifted.append(r.letter, r.exponent);
                }
                TracePolynomial tail = reduce_trace(CyclicWord(shifted));
                TracePolynomial term = sigma[static_cast<std::size_t>(i)] * tail;
                if (i % 2 == 0) result -= term;
                else result += term;
            }
        }
        cache_.emplace(w, result);
        return result;
    }

private:
    /// e_0..e_n of the letter's matrix in power traces (Newton's identities).
    const std::vector<TracePolynomial>& elementary(Letter letter) {
        auto found = sigma_.find(letter);
        if (found != sigma_.end()) return found->second;
        std::vector<TracePolynomial> e;
        e.push_back(TracePolynomial::constant(Coefficient(1), mode_));
        for (long k = 1; k <= n_; ++k) {
            TracePolynomial sum(mode_);
            for (long i = 1; i <= k; ++i) {
                Word power;
                power.append(letter, static_cast<int>(i));
                TracePolynomial term = e[static_cast<std::size_t>(k - i)] * TracePolynomial::trace(power, mode_);
                if (i % 2 == 0) sum -= term;
                else sum += term;
            }
            e.push_back(sum * Coefficient(Rational(1, k)));
        }
        return sigma_.emplace(letter, std::move(e)).first->second;
    }

    long n_;
    Mode mode_;
    std::map<CyclicWord, TracePolynomial> cache_;
    std::map<Letter, std::vector<TracePolynomial>> sigma_;
};

}  // namespace

TracePolynomial cayley_hamilton_reduce(const TracePolynomial& p, long n_value) {
    if (n_value < 1) throw std::invalid_argument("cayley_hamilton_reduce needs n_value >= 1");
    thread_local std::map<std::pair<long, Mode>, CayleyHamiltonReducer> reducers;
    auto key = std::make_pair(n_value, p.mode());
    auto it = reducers.find(key);
    if (it == reducers.end()) it = reducers.emplace(key, CayleyHamiltonReducer(n_value, p.mode())).first;
    CayleyHamiltonReducer& reducer = it->second;

    TracePolynomial out(p.mode());
    for (const auto& [factors, c] : p.terms()) {
        TracePolynomial term = TracePolynomial::constant(Coefficient(c.specialize(n_value)), p.mode());
        for (const auto& f : factors) term = term * reducer.reduce_trace(f);
        out += term;
    }
    return specialize(out, n_value);
}

}  // namespace cmpoisson

namespace cmpoisson {

std::vector<CyclicWord> cyclic_words(Mode mode, int length) {
    if (length < 0 || length > 24) throw std::invalid_argument("cyclic_words: length out of range");
    const Letter first = mode == Mode::Plain ? Letter::X : Letter::A;
    const Letter second = mode == Mode::Plain ? Letter::Y : Letter::B;
    std::set<CyclicWord> seen;
    for (std::uint32_t bits = 0; bits < (1u << length); ++bits) {
        std::vector<Letter> letters;
        for (int i = 0; i < length; ++i) letters.push_back((bits >> i) & 1u ? second : first);
        seen.insert(canonicalize(Word::from_letters(letters)));
    }
    return {seen.begin(), seen.end()};
}

std::vector<TracePolynomial> trace_monomials(Mode mode, int max_degree, int min_degree) {
    if (max_degree < 0 || max_degree < min_degree) return {};
    const int shortest = mode == Mode::Traceless ? 2 : 1;
    std::vector<CyclicWord> words;
    for (int len = shortest; len <= max_degree; ++len)
        for (const auto& w : cyclic_words(mode, len)) words.push_back(w);
    std::vector<Factors> products;
    Factors current;
    // Multisets as non-decreasing index sequences.
    std::function<void(std::size_t, int)> extend = [&](std::size_t start, int degree) {
        if (degree >= min_degree) products.push_back(current);
        for (std::size_t i = start; i < words.size(); ++i) {
            if (degree + words[i].degree() > max_degree) continue;
            current.push_back(words[i]);
            extend(i, degree + words[i].degree());
            current.pop_back();
        }
    };
    extend(0, 0);
    std::stable_sort(products.begin(), products.end(), [](const Factors& a, const Factors& b) {
        return factors_bidegree(a).total() < factors_bidegree(b).total();
    });
    std::vector<TracePolynomial> out;
    out.reserve(products.size());
    for (auto& f : products) out.push_back(TracePolynomial::monomial(Coefficient(1), std::move(f), mode));
    return out;
}

}  // namespace cmpoisson
