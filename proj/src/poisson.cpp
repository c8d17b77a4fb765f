#include "cmpoisson/poisson.hpp"

#include <map>
#include <stdexcept>

namespace cmpoisson {

namespace {

bool is_central(const CyclicWord& w) { return w.is_single_letter(Letter::X) || w.is_single_letter(Letter::Y); }

Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.append(b);
    return w;
}

/// Contractions over cuts at `first` in V and at `second` in W, with sign.
void contract(const CyclicWord& v, Letter first, const CyclicWord& w, Letter second, bool traceless, int sign,
              TracePolynomial& out) {
    const auto cuts_v = splice_derivative(v, first);
    if (cuts_v.empty()) return;
    const auto cuts_w = splice_derivative(w, second);
    for (const auto& cv : cuts_v) {
        for (const auto& cw : cuts_w) {
            const long m = static_cast<long>(sign) * cv.multiplicity * cw.multiplicity;
            out.add_term(Coefficient(m), {CyclicWord(concat(cv.word, cw.word))});
            if (traceless) out.add_term(Coefficient(Rational(-m), -1), {CyclicWord(cv.word), CyclicWord(cw.word)});
        }
    }
}

TracePolynomial factor_bracket_uncached(const CyclicWord& v, const CyclicWord& w, Mode mode, bool reduce) {
    TracePolynomial out = reduce ? TracePolynomial(mode) : TracePolynomial::unreduced(mode);
    if (mode == Mode::Plain) {
        contract(v, Letter::X, w, Letter::Y, false, +1, out);
        contract(v, Letter::Y, w, Letter::X, false, -1, out);
        return out;
    }
    const bool cv = is_central(v);
    const bool cw = is_central(w);
    if (cv || cw) {
        if (cv && cw && v != w) {
            const long sign = v.is_single_letter(Letter::X) ? 1 : -1;
            out.add_term(Coefficient(Rational(sign), 1), {});
        }
        return out;
    }
    contract(v, Letter::A, w, Letter::B, true, +1, out);
    contract(v, Letter::B, w, Letter::A, true, -1, out);
    return out;
}

const TracePolynomial& factor_bracket(const CyclicWord& v, const CyclicWord& w, Mode mode, bool reduce) {
    using Key = std::tuple<CyclicWord, CyclicWord, Mode, bool>;
    thread_local std::map<Key, TracePolynomial> cache;
    Key key{v, w, mode, reduce};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(std::move(key), factor_bracket_uncached(v, w, mode, reduce)).first->second;
}

TracePolynomial leibniz_bracket(const TracePolynomial& f, const TracePolynomial& g, bool reduce) {
    if (f.mode() != g.mode())
        throw std::invalid_argument(std::string("mode mismatch: ") + mode_name(f.mode()) + " vs " + mode_name(g.mode()));
    const Mode mode = f.mode();
    TracePolynomial out = reduce ? TracePolynomial(mode) : TracePolynomial::unreduced(mode);
    for (const auto& [ff, cf] : f.terms()) {
        for (const auto& [fg, cg] : g.terms()) {
            const Coefficient c = cf * cg;
            for (std::size_t i = 0; i < ff.size(); ++i) {
                if (i > 0 && ff[i] == ff[i - 1]) continue;
                // Repeated factors contribute once per copy.
                std::size_t copies_i = 1;
                while (i + copies_i < ff.size() && ff[i + copies_i] == ff[i]) ++copies_i;
                for (std::size_t j = 0; j < fg.size(); ++j) {
                    if (j > 0 && fg[j] == fg[j - 1]) continue;
                    std::size_t copies_j = 1;
                    while (j + copies_j < fg.size() && fg[j + copies_j] == fg[j]) ++copies_j;
                    const TracePolynomial& fb = factor_bracket(ff[i], fg[j], mode, reduce);
                    if (fb.is_zero()) continue;
                    Factors rest;
                    rest.reserve(ff.size() + fg.size());
                    for (std::size_t k = 0; k < ff.size(); ++k)
                        if (k != i) rest.push_back(ff[k]);
                    for (std::size_t k = 0; k < fg.size(); ++k)
                        if (k != j) rest.push_back(fg[k]);
                    const Coefficient scale = c * Coefficient(static_cast<long>(copies_i * copies_j));
                    for (const auto& [fbf, fbc] : fb.terms()) {
                        Factors merged = rest;
                        merged.insert(merged.end(), fbf.begin(), fbf.end());
                        out.add_term(scale * fbc, std::move(merged));
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace

TracePolynomial bracket_standard(const TracePolynomial& f, const TracePolynomial& g) {
    if (f.mode() != Mode::Plain || g.mode() != Mode::Plain)
        throw std::invalid_argument("bracket_standard expects plain polynomials");
    return leibniz_bracket(f, g, true);
}

TracePolynomial bracket_traceless(const TracePolynomial& f, const TracePolynomial& g) {
    if (f.mode() != Mode::Traceless || g.mode() != Mode::Traceless)
        throw std::invalid_argument("bracket_traceless expects traceless polynomials");
    return leibniz_bracket(f, g, true);
}

TracePolynomial bracket_traceless_unreduced(const TracePolynomial& f, const TracePolynomial& g) {
    if (f.mode() != Mode::Traceless || g.mode() != Mode::Traceless)
        throw std::invalid_argument("bracket_traceless expects traceless polynomials");
    return leibniz_bracket(f, g, false);
}

TracePolynomial bracket(const TracePolynomial& f, const TracePolynomial& g) {
    return f.mode() == Mode::Plain ? bracket_standard(f, g) : bracket_traceless(f, g);
}

TracePolynomial jacobi_check(const TracePolynomial& f, const TracePolynomial& g, const TracePolynomial& h) {
    return bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g));
}

}  // namespace cmpoisson
