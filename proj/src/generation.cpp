#include "cmpoisson/generation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "cmpoisson/parse.hpp"
#include "cmpoisson/poisson.hpp"

namespace cmpoisson {

namespace {

TracePolynomial traceless(const std::string& text) { return parse_polynomial(text, Mode::Traceless); }

Eigen::VectorXcd project_out(const Matrix& q, Eigen::Index k, Eigen::VectorXcd u) {
    // Two passes of classical Gram-Schmidt are as accurate as modified GS.
    for (int pass = 0; pass < 2 && k > 0; ++pass) u -= q.leftCols(k) * (q.leftCols(k).adjoint() * u);
    return u;
}

}  // namespace

int default_depth_cap(long n_value) { return n_value <= 2 ? 8 : 10; }

std::vector<TracePolynomial> standard_generators() {
    return {traceless("tr(A^2)"), traceless("tr(B^2)"), traceless("tr(A^3)"), traceless("tr(A B)*tr(A B)")};
}

std::string LieClosureBasis::tree(std::size_t i) const {
    const auto& e = elements.at(i);
    if (e.generator >= 0) return generators.at(static_cast<std::size_t>(e.generator)).str();
    return "{" + generators.at(static_cast<std::size_t>(e.left)).str() + ", " +
           tree(static_cast<std::size_t>(e.right)) + "}";
}

TracePolynomial LieClosureBasis::replay(std::size_t i) const {
    const auto& e = elements.at(i);
    if (e.generator >= 0) return cayley_hamilton_reduce(generators.at(static_cast<std::size_t>(e.generator)), n_value);
    return cayley_hamilton_reduce(
        bracket_traceless(generators.at(static_cast<std::size_t>(e.left)), replay(static_cast<std::size_t>(e.right))),
        n_value);
}

LieClosureBasis build_closure(const std::vector<TracePolynomial>& generators, int depth_cap, int degree_cap,
                              long n_value, const ClosureOptions& options) {
    if (generators.empty()) throw std::invalid_argument("build_closure: no generators");
    for (const auto& g : generators)
        if (g.mode() != Mode::Traceless) throw std::invalid_argument("build_closure: generators must be traceless");
    if (depth_cap < 0 || degree_cap < 1 || n_value < 1)
        throw std::invalid_argument("build_closure: caps and n must be positive");

    LieClosureBasis basis;
    basis.generators = generators;
    basis.depth_cap = depth_cap;
    basis.degree_cap = degree_cap;
    basis.n_value = n_value;
    basis.seed = options.seed;
    basis.pool_size = options.pool_size ? options.pool_size
                                        : 4 * trace_monomials(Mode::Traceless, degree_cap).size();
    const auto pts = sample_pool(static_cast<int>(n_value), basis.pool_size, options.seed);
    const auto max_elements = static_cast<Eigen::Index>(basis.pool_size / 4);
    // The span starts with the constant function: Hamiltonians are taken up to
    // constants, and some brackets are constant on the variety.
    Matrix q(static_cast<Eigen::Index>(basis.pool_size), max_elements + 1);
    q.col(0).setConstant(Complex(1.0 / std::sqrt(static_cast<double>(basis.pool_size))));
    Eigen::Index rank = 1;
    std::set<std::string> seen;

    // Screens candidates in (degree, text) order; returns the indices kept.
    auto admit = [&](std::vector<ClosureElement> cands) {
        std::vector<std::pair<std::pair<int, std::string>, ClosureElement>> keyed;
        for (auto& c : cands) keyed.push_back({{c.degree, c.poly.str()}, std::move(c)});
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<TracePolynomial> polys;
        for (const auto& k : keyed) polys.push_back(k.second.poly);
        const CompiledPolynomials compiled(polys, n_value);
        const Matrix values = evaluate_pool(compiled, pts);
        const Eigen::MatrixXd sizes = magnitude_pool(compiled, pts);
        std::vector<int> kept;
        for (std::size_t c = 0; c < keyed.size(); ++c) {
            const auto col = static_cast<Eigen::Index>(c);
            const double norm = values.col(col).norm();
            if (!(norm > options.rank_tolerance * sizes.col(col).norm())) {
                ++basis.dropped_zero;
                continue;
            }
            const Eigen::VectorXcd r = project_out(q, rank, values.col(col) / norm);
            const double rn = r.norm();
            if (!(rn > options.rank_tolerance)) {
                ++basis.dropped_span;
                continue;
            }
            if (rank == max_elements + 1)
                throw PoolTooSmall("closure pool of " + std::to_string(basis.pool_size) +
                                   " points is too small for degree cap " + std::to_string(degree_cap) +
                                   ": the basis outgrew a quarter of the pool");
            q.col(rank++) = r / rn;
            kept.push_back(static_cast<int>(basis.elements.size()));
            basis.elements.push_back(std::move(keyed[c].second));
        }
        return kept;
    };

    std::vector<ClosureElement> level;
    for (std::size_t g = 0; g < generators.size(); ++g) {
        ClosureElement e;
        e.poly = cayley_hamilton_reduce(generators[g], n_value);
        e.generator = static_cast<int>(g);
        ++basis.candidates;
        if (e.poly.is_zero()) {
            ++basis.dropped_zero;
            continue;
        }
        e.degree = *degree(e.poly);
        if (e.degree > degree_cap) {
            ++basis.dropped_degree;
            continue;
        }
        if (!seen.insert(e.poly.str()).second) {
            ++basis.dropped_duplicate;
            continue;
        }
        level.push_back(std::move(e));
    }
    std::vector<int> frontier = admit(std::move(level));

    for (int depth = 1; depth <= depth_cap && !frontier.empty(); ++depth) {
        std::vector<ClosureElement> cands;
        for (std::size_t g = 0; g < generators.size(); ++g) {
            for (int idx : frontier) {
                ClosureElement e;
                e.poly = cayley_hamilton_reduce(
                    bracket_traceless(generators[g], basis.elements[static_cast<std::size_t>(idx)].poly), n_value);
                e.depth = depth;
                e.left = static_cast<int>(g);
                e.right = idx;
                ++basis.candidates;
                if (e.poly.is_zero()) {
                    ++basis.dropped_zero;
                    continue;
                }
                e.degree = *degree(e.poly);
                if (e.degree > degree_cap) {
                    ++basis.dropped_degree;
                    continue;
                }
                if (!seen.insert(e.poly.str()).second) {
                    ++basis.dropped_duplicate;
                    continue;
                }
                cands.push_back(std::move(e));
            }
        }
        frontier = admit(std::move(cands));
    }
    return basis;
}

int closure_rank(const LieClosureBasis& basis, std::size_t count, const std::vector<CMPoint>& pts, double tolerance) {
    count = std::min(count, basis.elements.size());
    if (count == 0) return 0;
    std::vector<TracePolynomial> polys;
    for (std::size_t i = 0; i < count; ++i) polys.push_back(basis.elements[i].poly);
    Matrix values = evaluate_pool(CompiledPolynomials(polys, basis.n_value), pts);
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
        const double norm = values.col(c).norm();
        if (norm > 0) values.col(c) /= norm;
    }
    const Eigen::JacobiSVD<Matrix> svd(values);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > tolerance * s(0) ? 1 : 0;
    return rank;
}

nlohmann::json to_json(const LieClosureBasis& basis) {
    nlohmann::json generators = nlohmann::json::array();
    for (const auto& g : basis.generators) generators.push_back(g.str());
    nlohmann::json elements = nlohmann::json::array();
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
        const auto& e = basis.elements[i];
        elements.push_back(
            {{"index", i}, {"depth", e.depth}, {"degree", e.degree}, {"tree", basis.tree(i)}, {"poly", e.poly.str()}});
    }
    return {{"n", basis.n_value},
            {"depth_cap", basis.depth_cap},
            {"degree_cap", basis.degree_cap},
            {"seed", basis.seed},
            {"pool_size", basis.pool_size},
            {"candidates", basis.candidates},
            {"dropped",
             {{"zero", basis.dropped_zero},
              {"degree", basis.dropped_degree},
              {"duplicate", basis.dropped_duplicate},
              {"span", basis.dropped_span}}},
            {"generators", generators},
            {"elements", elements}};
}

const char* status_name(MembershipStatus status) {
    switch (status) {
        case MembershipStatus::Valid: return "valid";
        case MembershipStatus::NotFound: return "not_found";
        case MembershipStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

/// Constant function, the basis elements, then the target (if given).
std::vector<TracePolynomial> fit_columns(const LieClosureBasis& basis, const TracePolynomial* target) {
    std::vector<TracePolynomial> polys{TracePolynomial::constant(Coefficient(1), Mode::Traceless)};
    for (const auto& e : basis.elements) polys.push_back(e.poly);
    if (target) polys.push_back(*target);
    return polys;
}

std::uint64_t membership_seed(std::uint64_t seed) { return child_seed(seed, 0x6d656d62); }

constexpr double kSnapTolerance = 1e-9;

}  // namespace

std::optional<Rational> snap_rational(double x, long max_denominator, double tolerance) {
    if (!std::isfinite(x)) return std::nullopt;
    const double bound = tolerance * std::max(1.0, std::abs(x));
    if (std::abs(x) <= bound) return Rational(0);
    // Convergents h/k of the continued fraction of |x|.
    const double a = std::abs(x);
    mpz_class h_prev = 1, h = static_cast<long>(std::floor(a)), k_prev = 0, k = 1;
    double rest = a - std::floor(a);
    while (true) {
        Rational q(h, k);
        q.canonicalize();
        if (std::abs(a - q.get_d()) <= bound) return x < 0 ? Rational(-q) : q;
        if (rest < 1e-300) return std::nullopt;
        const double inv = 1.0 / rest;
        if (inv > 1e15) return std::nullopt;
        const long digit = static_cast<long>(std::floor(inv));
        rest = inv - static_cast<double>(digit);
        mpz_class h_next = digit * h + h_prev, k_next = digit * k + k_prev;
        if (k_next > max_denominator) return std::nullopt;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
}

std::vector<MembershipCertificate> check_membership(const std::vector<TracePolynomial>& targets,
                                                    const LieClosureBasis& basis, std::size_t sample_count,
                                                    std::uint64_t seed, const MembershipOptions& options) {
    std::vector<MembershipCertificate> certs(targets.size());
    std::vector<TracePolynomial> polys = fit_columns(basis, nullptr);
    const auto cols = static_cast<Eigen::Index>(polys.size());
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const auto& target = targets[t];
        if (target.mode() != Mode::Traceless)
            throw std::invalid_argument("check_membership: target must be traceless");
        const TracePolynomial reduced = cayley_hamilton_reduce(target, basis.n_value);
        if (const auto d = degree(reduced); d && *d > basis.degree_cap)
            throw std::invalid_argument("check_membership: target degree " + std::to_string(*d) +
                                        " exceeds the cap " + std::to_string(basis.degree_cap));
        polys.push_back(reduced);
        auto& cert = certs[t];
        cert.target = target;
        cert.sample_count = sample_count;
        cert.seed = seed;
        cert.depth_cap = basis.depth_cap;
    }
    if (sample_count < static_cast<std::size_t>(2 * cols)) {
        for (auto& cert : certs)
            cert.message = "need at least " + std::to_string(2 * cols) + " samples for " + std::to_string(cols) +
                           " columns";
        return certs;
    }
    const auto pts = sample_pool(static_cast<int>(basis.n_value), sample_count, membership_seed(seed));
    const CompiledPolynomials compiled(polys, basis.n_value);
    const Matrix values = evaluate_pool(compiled, pts);
    const Eigen::MatrixXd sizes = magnitude_pool(compiled, pts);
    const Matrix columns = values.leftCols(cols);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(targets.size()); ++t) {
        auto& cert = certs[static_cast<std::size_t>(t)];
        const Eigen::Index col = cols + t;
        const LeastSquaresFit fit = least_squares_fit(columns, values.col(col), sizes.col(col));
        cert.residual = fit.residual;
        cert.condition = fit.condition;
        Eigen::VectorXcd coefficients = fit.coefficients;
        // Rounding-level coefficients on large columns dominate the error at
        // points where the target is small; exact rationals remove them.
        std::vector<Rational> exact;
        for (Eigen::Index k = 0; k < cols; ++k) {
            const Complex ck = fit.coefficients(k);
            const auto q = snap_rational(ck.real(), options.max_denominator, kSnapTolerance);
            if (!q || std::abs(ck.imag()) > kSnapTolerance * std::max(1.0, std::abs(ck))) break;
            exact.push_back(*q);
        }
        if (exact.size() == static_cast<std::size_t>(cols)) {
            Eigen::VectorXcd snapped(cols);
            for (Eigen::Index k = 0; k < cols; ++k) snapped(k) = exact[static_cast<std::size_t>(k)].get_d();
            const double r = combination_residual(columns, snapped, values.col(col), sizes.col(col));
            // Snapping must not cost accuracy; a nearby rational with the
            // wrong value would show up as a larger residual.
            if (r < options.tolerance && r <= std::max(10.0 * fit.residual, 1e-13)) {
                cert.exact = true;
                cert.exact_coefficients = std::move(exact);
                cert.residual = r;
                coefficients = snapped;
            }
        }
        for (Eigen::Index k = 0; k < cols; ++k) cert.combination.emplace_back(coefficients(k), static_cast<int>(k));
        if (!(fit.condition <= options.max_condition)) {
            cert.status = MembershipStatus::Inconclusive;
            cert.message = "value matrix is ill-conditioned";
        } else if (cert.residual < options.tolerance) {
            cert.status = MembershipStatus::Valid;
        } else {
            cert.status = MembershipStatus::NotFound;
            cert.message = "not found at depth " + std::to_string(basis.depth_cap);
        }
    }
    return certs;
}

MembershipCertificate check_membership(const TracePolynomial& target, const LieClosureBasis& basis,
                                       std::size_t sample_count, std::uint64_t seed,
                                       const MembershipOptions& options) {
    return check_membership(std::vector<TracePolynomial>{target}, basis, sample_count, seed, options).front();
}

double recheck_certificate(const MembershipCertificate& cert, const LieClosureBasis& basis, std::size_t count,
                           std::uint64_t seed) {
    const TracePolynomial reduced = cayley_hamilton_reduce(cert.target, basis.n_value);
    const auto polys = fit_columns(basis, &reduced);
    const auto cols = static_cast<Eigen::Index>(polys.size() - 1);
    if (cert.combination.size() != static_cast<std::size_t>(cols))
        throw std::invalid_argument("recheck_certificate: certificate does not match the basis");
    Eigen::VectorXcd c(cols);
    for (const auto& [coef, k] : cert.combination) c(k) = coef;
    const auto pts = sample_pool(static_cast<int>(basis.n_value), count, membership_seed(seed));
    const CompiledPolynomials compiled(polys, basis.n_value);
    const Matrix values = evaluate_pool(compiled, pts);
    const Eigen::VectorXd scale = magnitude_pool(compiled, pts).col(cols);
    return combination_residual(values.leftCols(cols), c, values.col(cols), scale);
}

nlohmann::json to_json(const MembershipCertificate& cert, const LieClosureBasis& basis) {
    nlohmann::json combination = nlohmann::json::array();
    for (const auto& [coef, k] : cert.combination) {
        nlohmann::json term;
        if (cert.exact) {
            const Rational& q = cert.exact_coefficients.at(static_cast<std::size_t>(k));
            if (q == 0) continue;
            term["coefficient"] = q.get_str();
        } else {
            if (std::abs(coef) < 1e-14) continue;
            term["coefficient"] = {coef.real(), coef.imag()};
        }
        if (k == 0) {
            term["element"] = "1";
        } else {
            term["index"] = k - 1;
            term["tree"] = basis.tree(static_cast<std::size_t>(k - 1));
        }
        combination.push_back(term);
    }
    nlohmann::json j{{"target", cert.target.str()},
                     {"status", status_name(cert.status)},
                     {"exact", cert.exact},
                     {"residual", cert.residual},
                     {"condition", cert.condition},
                     {"samples", cert.sample_count},
                     {"seed", cert.seed},
                     {"closure_seed", basis.seed},
                     {"n", basis.n_value},
                     {"depth_cap", cert.depth_cap},
                     {"combination", combination}};
    if (!cert.message.empty()) j["message"] = cert.message;
    return j;
}

std::vector<TracePolynomial> sorted_products(int max_degree) {
    // Factors tr A^p B^q with p + q >= 2, as exponent pairs in a fixed order.
    std::vector<std::pair<int, int>> factors;
    for (int d = 2; d <= max_degree; ++d)
        for (int p = d; p >= 0; --p) factors.emplace_back(p, d - p);
    std::vector<TracePolynomial> out;
    std::vector<std::size_t> chosen;
    auto word = [](int p, int q) {
        Word w;
        if (p > 0) w.append(Letter::A, p);
        if (q > 0) w.append(Letter::B, q);
        return CyclicWord(w);
    };
    // Multisets of factors, enumerated with nondecreasing indices.
    auto rec = [&](auto&& self, std::size_t start, int budget) -> void {
        if (!chosen.empty()) {
            Factors fs;
            for (auto i : chosen) fs.push_back(word(factors[i].first, factors[i].second));
            out.push_back(TracePolynomial::monomial(Coefficient(1), fs, Mode::Traceless));
        }
        for (std::size_t i = start; i < factors.size(); ++i) {
            const int d = factors[i].first + factors[i].second;
            if (d > budget) continue;
            chosen.push_back(i);
            self(self, i, budget - d);
            chosen.pop_back();
        }
    };
    rec(rec, 0, max_degree);
    std::stable_sort(out.begin(), out.end(),
                     [](const TracePolynomial& a, const TracePolynomial& b) { return *degree(a) < *degree(b); });
    return out;
}

// ---------------------------------------------------------------------------

std::vector<ChainStep> parse_chains(const nlohmann::json& doc) {
    std::vector<ChainStep> steps;
    for (const auto& rec : doc.at("steps")) {
        ChainStep s;
        s.lemma_id = rec.at("lemma_id").get<std::string>();
        s.step = rec.at("step").get<int>();
        s.lhs = rec.at("lhs").get<std::string>();
        s.rhs = rec.at("rhs").get<std::string>();
        s.expected = rec.at("expected").get<std::string>();
        const std::string kind = rec.at("kind").get<std::string>();
        if (kind == "exact") s.kind = EqualityKind::Exact;
        else if (kind == "leading") s.kind = EqualityKind::Leading;
        else throw std::invalid_argument("chain " + s.lemma_id + ": unknown kind '" + kind + "'");
        if (s.kind == EqualityKind::Leading) s.degree_bound = rec.at("degree_bound").get<int>();
        steps.push_back(std::move(s));
    }
    return steps;
}

std::vector<ChainStep> load_chains(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open chain catalog " + path);
    return parse_chains(nlohmann::json::parse(in));
}

std::string default_chains_path() { return std::string(CMPOISSON_DATA_DIR) + "/lemma_chains.json"; }

std::vector<std::string> chain_ids(const std::vector<ChainStep>& steps) {
    std::vector<std::string> ids;
    for (const auto& s : steps)
        if (std::find(ids.begin(), ids.end(), s.lemma_id) == ids.end()) ids.push_back(s.lemma_id);
    return ids;
}

ChainReport replay_lemma_chain(const std::vector<ChainStep>& steps, const std::string& lemma_id,
                               const std::vector<long>& n_values, std::size_t sample_count, std::uint64_t seed) {
    std::vector<const ChainStep*> chain;
    for (const auto& s : steps)
        if (s.lemma_id == lemma_id) chain.push_back(&s);
    if (chain.empty()) throw std::invalid_argument("unknown lemma chain '" + lemma_id + "'");
    std::stable_sort(chain.begin(), chain.end(), [](const auto* a, const auto* b) { return a->step < b->step; });

    ChainReport report;
    report.lemma_id = lemma_id;
    std::map<int, TracePolynomial> results;
    std::map<long, LeadingChecker> checkers;
    auto resolve = [&](const std::string& field) {
        if (!field.empty() && field.front() == '$') {
            const int ref = std::stoi(field.substr(1));
            const auto it = results.find(ref);
            if (it == results.end()) throw std::invalid_argument("reference " + field + " to a step not yet run");
            return it->second;
        }
        return traceless(field);
    };

    for (const auto* s : chain) {
        ChainStepResult r;
        r.step = s->step;
        try {
            const TracePolynomial value = bracket_traceless(resolve(s->lhs), resolve(s->rhs));
            const TracePolynomial expected = traceless(s->expected);
            results[s->step] = value;
            r.result = value.str();
            const TracePolynomial diff = value - expected;
            if (!diff.is_zero()) r.difference = diff.str();
            if (s->kind == EqualityKind::Exact) {
                r.passed = diff.is_zero();
                if (!r.passed) r.message = "bracket differs from expected";
            } else {
                r.passed = true;
                for (long n : n_values) {
                    auto it = checkers.find(n);
                    if (it == checkers.end())
                        it = checkers
                                 .emplace(n, LeadingChecker(n, sample_pool(static_cast<int>(n), sample_count,
                                                                           child_seed(seed, static_cast<std::uint64_t>(n)))))
                                 .first;
                    const auto res = it->second.check(value, expected, s->degree_bound);
                    r.tail_residual = std::max(r.tail_residual, res.tail_residual);
                    if (!res.passed) {
                        r.passed = false;
                        r.message = "n = " + std::to_string(n) + ": " + res.message;
                        break;
                    }
                }
            }
        } catch (const std::exception& ex) {
            r.message = ex.what();
        }
        report.steps.push_back(r);
        if (!r.passed) {
            report.failed_step = r.step;
            return report;
        }
    }
    report.passed = true;
    return report;
}

nlohmann::json to_json(const ChainReport& report) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : report.steps) {
        nlohmann::json j{{"step", s.step}, {"passed", s.passed}, {"result", s.result}};
        if (!s.difference.empty()) j["difference"] = s.difference;
        if (s.tail_residual > 0) j["tail_residual"] = s.tail_residual;
        if (!s.message.empty()) j["message"] = s.message;
        steps.push_back(j);
    }
    nlohmann::json out{{"lemma_id", report.lemma_id}, {"passed", report.passed}, {"steps", steps}};
    if (report.failed_step) out["failed_step"] = report.failed_step;
    return out;
}

}  // namespace cmpoisson
