#include <algorithm>
#include <set>
#include <sstream>

#include "cmpoisson/generation.hpp"

namespace cmpoisson {

namespace {

bool allowed(ModelSpace space, Exponent e) {
    switch (space) {
        case ModelSpace::Plane: return e.first >= 0 && e.second >= 0;
        case ModelSpace::Cylinder: return e.first >= 0;
        case ModelSpace::Torus: return true;
    }
    return false;
}

/// {z^a w^b, z^c w^d} = (ad - bc) z^(a+c) w^(b+d) times z^-1 w^-1 (plane),
/// z^-1 (cylinder) or 1 (torus).
std::pair<Rational, Exponent> monomial_bracket(ModelSpace space, Exponent f, Exponent g) {
    const Rational c(f.first * g.second - f.second * g.first);
    Exponent e{f.first + g.first, f.second + g.second};
    if (space == ModelSpace::Plane) {
        e.first -= 1;
        e.second -= 1;
    } else if (space == ModelSpace::Cylinder) {
        e.first -= 1;
    }
    return {c, e};
}

std::string monomial_text(const char* z, const char* w, Exponent e) {
    std::string out;
    auto power = [&](const char* v, int k) {
        if (k == 0) return;
        if (!out.empty()) out += "*";
        out += v;
        if (k != 1) out += "^" + std::to_string(k);
    };
    power(z, e.first);
    power(w, e.second);
    return out;
}

void append_term(std::string& out, const Rational& c, const std::string& mono) {
    Rational a = abs(c);
    if (out.empty()) {
        if (sgn(c) < 0) out += "-";
    } else {
        out += sgn(c) < 0 ? " - " : " + ";
    }
    if (mono.empty()) {
        out += a.get_str();
    } else {
        if (a != 1) out += a.get_str() + "*";
        out += mono;
    }
}

/// Inside the exponent box of the given cap.
bool in_box(ModelSpace space, int cap, Exponent e) {
    if (!allowed(space, e)) return false;
    switch (space) {
        case ModelSpace::Plane: return e.first + e.second <= cap;
        case ModelSpace::Cylinder: return e.first <= cap && std::abs(e.second) <= cap;
        case ModelSpace::Torus: return std::abs(e.first) <= cap && std::abs(e.second) <= cap;
    }
    return false;
}

}  // namespace

const char* space_name(ModelSpace space) {
    switch (space) {
        case ModelSpace::Plane: return "plane";
        case ModelSpace::Cylinder: return "cylinder";
        case ModelSpace::Torus: return "torus";
    }
    return "?";
}

ModelSpace space_from_name(const std::string& name) {
    if (name == "plane") return ModelSpace::Plane;
    if (name == "cylinder") return ModelSpace::Cylinder;
    if (name == "torus") return ModelSpace::Torus;
    throw std::invalid_argument("unknown model space '" + name + "'");
}

LaurentPoly2 LaurentPoly2::monomial(ModelSpace space, int j, int k, const Rational& c) {
    LaurentPoly2 p(space);
    p.add_term(c, {j, k});
    return p;
}

void LaurentPoly2::add_term(const Rational& c, Exponent e) {
    if (!allowed(space_, e))
        throw std::invalid_argument("exponent (" + std::to_string(e.first) + ", " + std::to_string(e.second) +
                                    ") not allowed on the " + space_name(space_));
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void LaurentPoly2::check_space(const LaurentPoly2& other) const {
    if (space_ != other.space_)
        throw std::invalid_argument(std::string("space mismatch: ") + space_name(space_) + " vs " +
                                    space_name(other.space_));
}

LaurentPoly2& LaurentPoly2::operator+=(const LaurentPoly2& other) {
    check_space(other);
    for (const auto& [e, c] : other.terms_) add_term(c, e);
    return *this;
}

LaurentPoly2& LaurentPoly2::operator-=(const LaurentPoly2& other) {
    check_space(other);
    for (const auto& [e, c] : other.terms_) add_term(-c, e);
    return *this;
}

LaurentPoly2& LaurentPoly2::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
    a.check_space(b);
    LaurentPoly2 out(a.space_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) out.add_term(ca * cb, {ea.first + eb.first, ea.second + eb.second});
    return out;
}

std::string LaurentPoly2::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) append_term(out, it->second, monomial_text("z", "w", it->first));
    return out;
}

LaurentPoly2 model_bracket(const LaurentPoly2& f, const LaurentPoly2& g) {
    if (f.space() != g.space())
        throw std::invalid_argument(std::string("model_bracket: space mismatch: ") + space_name(f.space()) + " vs " +
                                    space_name(g.space()));
    LaurentPoly2 out(f.space());
    for (const auto& [ef, cf] : f.terms())
        for (const auto& [eg, cg] : g.terms()) {
            const auto [c, e] = monomial_bracket(f.space(), ef, eg);
            if (c != 0) out.add_term(c * cf * cg, e);
        }
    return out;
}

std::vector<Exponent> model_box(ModelSpace space, int degree_cap) {
    std::vector<Exponent> out;
    for (int j = -degree_cap; j <= degree_cap; ++j)
        for (int k = -degree_cap; k <= degree_cap; ++k)
            if ((j != 0 || k != 0) && in_box(space, degree_cap, {j, k})) out.emplace_back(j, k);
    return out;
}

ModelGenerationReport model_generation(ModelSpace space, const std::vector<Exponent>& generators, int degree_cap) {
    if (degree_cap < 1) throw std::invalid_argument("model_generation: degree cap must be positive");
    ModelGenerationReport report;
    report.space = space;
    report.degree_cap = degree_cap;
    report.generators = generators;

    // Brackets of monomials are monomials, so the span of the closure is the
    // span of the monomials reached. Plane and cylinder brackets lower an
    // exponent by one, so the search runs in a slightly larger box.
    const int search_cap = degree_cap + 2;
    std::set<Exponent> reached;
    std::vector<Exponent> frontier;
    for (const auto& g : generators) {
        if (!allowed(space, g)) throw std::invalid_argument("generator exponent outside the space");
        if (g != Exponent{0, 0} && reached.insert(g).second) frontier.push_back(g);
    }
    while (!frontier.empty()) {
        ++report.rounds;
        std::vector<Exponent> next;
        const std::vector<Exponent> all(reached.begin(), reached.end());
        for (const auto& f : frontier)
            for (const auto& g : all) {
                const auto [c, e] = monomial_bracket(space, f, g);
                if (c == 0 || e == Exponent{0, 0} || !in_box(space, search_cap, e)) continue;
                if (reached.insert(e).second) next.push_back(e);
            }
        frontier = std::move(next);
    }
    for (const auto& e : model_box(space, degree_cap)) {
        if (reached.count(e)) report.reached.push_back(e);
        else report.missing.push_back(e);
    }
    return report;
}

nlohmann::json to_json(const ModelGenerationReport& report) {
    auto list = [](const std::vector<Exponent>& es) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& e : es) a.push_back({e.first, e.second});
        return a;
    };
    nlohmann::json missing = nlohmann::json::array();
    for (const auto& e : report.missing) {
        const std::string m = monomial_text("z", "w", e);
        missing.push_back(m);
    }
    return {{"space", space_name(report.space)},
            {"degree_cap", report.degree_cap},
            {"passed", report.passed()},
            {"rounds", report.rounds},
            {"generators", list(report.generators)},
            {"reached", report.reached.size()},
            {"box", report.reached.size() + report.missing.size()},
            {"missing", missing}};
}

// ---------------------------------------------------------------------------

TensorPolynomial TensorPolynomial::embed(const LaurentPoly2& f, Side side, ModelSpace other) {
    TensorPolynomial out = side == Side::Left ? TensorPolynomial(f.space(), other) : TensorPolynomial(other, f.space());
    for (const auto& [e, c] : f.terms()) {
        if (side == Side::Left) out.add_term(c, {e.first, e.second, 0, 0});
        else out.add_term(c, {0, 0, e.first, e.second});
    }
    return out;
}

void TensorPolynomial::add_term(const Rational& c, const Key& key) {
    if (!allowed(left_, {key[0], key[1]}) || !allowed(right_, {key[2], key[3]}))
        throw std::invalid_argument("exponent not allowed on the product space");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void TensorPolynomial::check_spaces(const TensorPolynomial& other) const {
    if (left_ != other.left_ || right_ != other.right_) throw std::invalid_argument("product space mismatch");
}

TensorPolynomial& TensorPolynomial::operator+=(const TensorPolynomial& other) {
    check_spaces(other);
    for (const auto& [k, c] : other.terms_) add_term(c, k);
    return *this;
}

TensorPolynomial& TensorPolynomial::operator-=(const TensorPolynomial& other) {
    check_spaces(other);
    for (const auto& [k, c] : other.terms_) add_term(-c, k);
    return *this;
}

TensorPolynomial& TensorPolynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

TensorPolynomial operator*(const TensorPolynomial& a, const TensorPolynomial& b) {
    a.check_spaces(b);
    TensorPolynomial out(a.left_, a.right_);
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            out.add_term(ca * cb, {ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3]});
    return out;
}

std::string TensorPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& k = it->first;
        std::string left = monomial_text("z1", "w1", {k[0], k[1]});
        const std::string right = monomial_text("z2", "w2", {k[2], k[3]});
        if (!left.empty() && !right.empty()) left += "*";
        append_term(out, it->second, left + right);
    }
    return out;
}

TensorPolynomial product_bracket(const TensorPolynomial& f, const TensorPolynomial& g) {
    if (f.left() != g.left() || f.right() != g.right()) throw std::invalid_argument("product space mismatch");
    // {f1 f2, g1 g2} = {f1, g1} f2 g2 + f1 g1 {f2, g2} for f1, g1 on the left
    // factor and f2, g2 on the right one.
    TensorPolynomial out(f.left(), f.right());
    for (const auto& [kf, cf] : f.terms())
        for (const auto& [kg, cg] : g.terms()) {
            const Rational c = cf * cg;
            const auto [cl, el] = monomial_bracket(f.left(), {kf[0], kf[1]}, {kg[0], kg[1]});
            if (cl != 0) out.add_term(c * cl, {el.first, el.second, kf[2] + kg[2], kf[3] + kg[3]});
            const auto [cr, er] = monomial_bracket(f.right(), {kf[2], kf[3]}, {kg[2], kg[3]});
            if (cr != 0) out.add_term(c * cr, {kf[0] + kg[0], kf[1] + kg[1], er.first, er.second});
        }
    return out;
}

}  // namespace cmpoisson
