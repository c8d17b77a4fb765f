#include "cmpoisson/catalog.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

#include "cmpoisson/parse.hpp"
#include "cmpoisson/poisson.hpp"
#include "cmpoisson/pool.hpp"

namespace cmpoisson {

namespace {

Mode mode_from_name(const std::string& name) {
    if (name == "plain") return Mode::Plain;
    if (name == "traceless") return Mode::Traceless;
    throw std::invalid_argument("unknown mode '" + name + "'");
}

TracePolynomial convert(const TracePolynomial& p, Mode to) {
    if (p.mode() == to) return p;
    return to == Mode::Plain ? to_plain(p) : to_traceless(p);
}

/// Part of p of exactly degree d.
TracePolynomial degree_part(const TracePolynomial& p, int d) {
    TracePolynomial out(p.mode());
    for (const auto& [factors, c] : p.terms())
        if (factors_bidegree(factors).total() == d) out.add_term(c, factors);
    return out;
}

}  // namespace

std::vector<BracketCatalogEntry> parse_catalog(const nlohmann::json& doc) {
    std::vector<BracketCatalogEntry> entries;
    for (const auto& rec : doc.at("entries")) {
        BracketCatalogEntry e;
        e.id = rec.at("id").get<std::string>();
        const Mode mode = mode_from_name(rec.value("mode", std::string("traceless")));
        const Mode input = mode_from_name(rec.value("input_mode", std::string(mode_name(mode))));
        auto read = [&](const char* key) {
            try {
                return convert(parse_polynomial(rec.at(key).get<std::string>(), input), mode);
            } catch (const ParseError& err) {
                throw std::invalid_argument("catalog entry " + e.id + ", field " + key + ": " + err.what());
            }
        };
        e.lhs = read("lhs");
        e.rhs = read("rhs");
        e.expected = read("expected");
        const std::string kind = rec.at("kind").get<std::string>();
        if (kind == "exact") e.kind = EqualityKind::Exact;
        else if (kind == "leading") e.kind = EqualityKind::Leading;
        else throw std::invalid_argument("catalog entry " + e.id + ": unknown kind '" + kind + "'");
        if (e.kind == EqualityKind::Leading) e.degree_bound = rec.at("degree_bound").get<int>();
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<BracketCatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog " + path);
    return parse_catalog(nlohmann::json::parse(in));
}

std::string default_catalog_path() { return std::string(CMPOISSON_DATA_DIR) + "/bracket_catalog.json"; }

LeadingChecker::LeadingChecker(long n_value, std::vector<CMPoint> pts, double tail_tolerance)
    : n_value_(n_value), pts_(std::move(pts)), tail_tolerance_(tail_tolerance) {}

LeadingChecker::Result LeadingChecker::check(const TracePolynomial& value, const TracePolynomial& expected,
                                             int degree_bound) {
    Result r;
    if (value.mode() != Mode::Traceless || expected.mode() != Mode::Traceless) {
        r.message = "leading comparisons need traceless polynomials";
        return r;
    }
    const auto top = degree(expected);
    const auto top_value = degree(value);
    if (top && top_value && *top_value > *top) {
        r.message = "value has degree above the expected leading term";
        return r;
    }
    if (top && sorted_word_projection(degree_part(value, *top)) != sorted_word_projection(degree_part(expected, *top))) {
        r.message = "leading terms differ after sorting words";
        return r;
    }
    const int d = degree_bound;
    if (!bases_.count(d)) {
        const auto monomials = trace_monomials(Mode::Traceless, d);
        bases_[d] = {evaluate_pool(CompiledPolynomials(monomials, n_value_), pts_), monomials.size()};
    }
    const auto& [basis_values, basis_size] = bases_[d];
    const CompiledPolynomials compiled({value - expected}, n_value_);
    const Eigen::VectorXcd target = evaluate_pool(compiled, pts_).col(0);
    const Eigen::VectorXd scale = magnitude_pool(compiled, pts_).col(0);
    const LeastSquaresFit fit = least_squares_fit(basis_values, target, scale);
    r.tail_residual = fit.residual;
    r.tail_basis = basis_size;
    r.passed = fit.residual < tail_tolerance_;
    if (!r.passed) r.message = "tail does not fit degree <= " + std::to_string(d);
    return r;
}

bool CatalogReport::passed() const { return failures() == 0; }

std::size_t CatalogReport::failures() const {
    std::size_t count = 0;
    for (const auto& r : results) count += r.passed ? 0 : 1;
    return count;
}

CatalogReport verify_catalog(const std::vector<BracketCatalogEntry>& entries, long n_value, std::size_t sample_count,
                             std::uint64_t seed, const CatalogOptions& options) {
    if (n_value < 1) throw std::invalid_argument("verify_catalog needs n >= 1");
    CatalogReport report;
    report.n_value = n_value;
    report.sample_count = sample_count;
    report.seed = seed;
    report.results.resize(entries.size());

    std::vector<TracePolynomial> brackets(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        auto& r = report.results[i];
        r.id = e.id;
        r.kind = e.kind;
        try {
            brackets[i] = bracket(e.lhs, e.rhs);
            const TracePolynomial diff = brackets[i] - e.expected;
            if (!diff.is_zero()) r.difference = diff.str();
            if (e.kind == EqualityKind::Exact) {
                r.passed = diff.is_zero();
                if (!r.passed) r.message = "bracket differs from expected";
            }
        } catch (const std::exception& ex) {
            r.message = ex.what();
        }
    }

    LeadingChecker checker(n_value, sample_pool(static_cast<int>(n_value), sample_count, seed),
                           options.tail_tolerance);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        auto& r = report.results[i];
        if (e.kind != EqualityKind::Leading || !r.message.empty()) continue;
        const auto res = checker.check(brackets[i], e.expected, e.degree_bound);
        r.passed = res.passed;
        r.tail_residual = res.tail_residual;
        r.tail_basis = res.tail_basis;
        r.message = res.message;
    }
    return report;
}

nlohmann::json to_json(const CatalogReport& report) {
    nlohmann::json results = nlohmann::json::array();
    for (const auto& r : report.results) {
        nlohmann::json j{{"id", r.id}, {"kind", r.kind == EqualityKind::Exact ? "exact" : "leading"}, {"passed", r.passed}};
        if (!r.difference.empty()) j["difference"] = r.difference;
        if (r.kind == EqualityKind::Leading) {
            j["tail_residual"] = r.tail_residual;
            j["tail_basis"] = r.tail_basis;
        }
        if (!r.message.empty()) j["message"] = r.message;
        results.push_back(j);
    }
    return {{"n", report.n_value},
            {"samples", report.sample_count},
            {"seed", report.seed},
            {"passed", report.passed()},
            {"failures", report.failures()},
            {"entries", results}};
}

}  // namespace cmpoisson
