// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cmpoisson/catalog.hpp"
#include "cmpoisson/flows.hpp"
#include "cmpoisson/generation.hpp"
#include "cmpoisson/parse.hpp"
#include "cmpoisson/poisson.hpp"
// The shared helpers pull in doctest; no test registry is needed here.
#define DOCTEST_CONFIG_DISABLE
#include "support.hpp"

using namespace cmpoisson;
using namespace testsupport;

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (passed) detail << "first failure: " << what << "; ";
            passed = false;
        }
    }
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1e", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_diff(const MatrixPair& a, const MatrixPair& b) {
    return std::max((a.X - b.X).cwiseAbs().maxCoeff(), (a.Y - b.Y).cwiseAbs().maxCoeff()) / b.scale();
}

// 1. Exact catalog identities, exponents <= 5, n symbolic.
void criterion1(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<BracketCatalogEntry> exact;
    for (auto& e : load_catalog(default_catalog_path()))
        if (e.kind == EqualityKind::Exact) exact.push_back(std::move(e));
    std::size_t families[5] = {0, 0, 0, 0, 0};
    for (const auto& e : exact) {
        const std::string& id = e.id;
        if (id.rfind("power-pair/", 0) == 0) ++families[0];
        else if (id.rfind("ab-weight/", 0) == 0) ++families[1];
        else if (id.rfind("with-b-squared/", 0) == 0) ++families[2];
        else if (id.rfind("commuting-powers/", 0) == 0) ++families[3];
        else if (id.rfind("central/", 0) == 0) ++families[4];
    }
    // Exact entries never touch the sample points; n stays symbolic.
    const auto report = verify_catalog(exact, 3, 1, 1);
    const double secs = seconds_since(t0);
    o.require(report.passed(), std::to_string(report.failures()) + " exact entries fail");
    o.require(families[0] == 25 && families[1] == 36 && families[2] == 5 && families[3] == 50 && families[4] == 72,
              "catalog does not cover every family for exponents <= 5");
    o.require(secs < 10.0, "runtime " + std::to_string(secs) + " s");
    o.detail << exact.size() << " exact identities hold symbolically (" << families[0] << " {tr A^j, tr B^q}, " << families[1]
             << " tr AB weight, " << families[2] << " {tr A^j, tr B^2}, " << families[3] << " commuting powers, " << families[4]
             << " central) in " << sci(secs) << " s";
}

// 2. Leading-term law for j+k+p+q <= 10 at n = 2, 3 on 100 points.
void criterion2(Outcome& o) {
    std::vector<BracketCatalogEntry> leading;
    for (auto& e : load_catalog(default_catalog_path()))
        if (e.kind == EqualityKind::Leading) leading.push_back(std::move(e));
    o.require(leading.size() == 1001, "expected 1001 exponent tuples with j+k+p+q <= 10");
    double worst = 0.0;
    for (long n : {2L, 3L}) {
        const auto report = verify_catalog(leading, n, 100, 2024 + n);
        o.require(report.passed(), std::to_string(report.failures()) + " leading entries fail at n=" +
                                       std::to_string(n));
        for (const auto& r : report.results) worst = std::max(worst, r.tail_residual);
    }
    o.require(worst < 1e-8, "tail residual " + sci(worst));
    o.detail << leading.size() << " tuples at n=2,3 on 100 points, worst tail residual " << sci(worst);
}

// 3. Symbolic bracket vs bracket of exact gradients at sampled points.
void criterion3(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(303);
    double worst = 0.0;
    int cases = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 3;
        const Mode mode = (trial / 3) % 2 ? Mode::Plain : Mode::Traceless;
        const auto f = random_polynomial(rng, mode, 5, 3, true);
        const auto g = random_polynomial(rng, mode, 5, 3, true);
        const CMPoint pt = sample_cm(n, mode == Mode::Traceless, 9000 + trial);
        const Complex symbolic = evaluate(bracket(f, g), pt);
        const Complex numeric = numeric_bracket(f, g, pt.pair);
        const double rel = std::abs(symbolic - numeric) / std::max(1.0, bracket_scale(f, g, pt.pair));
        worst = std::max(worst, rel);
        ++cases;
    }
    const double secs = seconds_since(t0);
    o.require(worst < 1e-9, "relative difference " + sci(worst));
    o.require(secs < 60.0, "runtime " + std::to_string(secs) + " s");
    o.detail << cases << " triples at n=2,3,4, worst relative difference " << sci(worst) << " in " << sci(secs)
             << " s";
}

// 4. Sampler.
void criterion4(Outcome& o) {
    double worst_rank = 0.0, worst_trace = 0.0;
    for (int n = 1; n <= 4; ++n)
        for (bool traceless : {false, true})
            for (const auto& pt : sample_batch(n, traceless, 4000 + n, 1000)) {
                worst_rank = std::max(worst_rank, rank_residual(pt.pair));
                if (traceless) worst_trace = std::max(worst_trace, trace_residual(pt.pair));
            }
    o.require(worst_rank < 1e-10, "rank residual " + sci(worst_rank));
    o.require(worst_trace < 1e-10, "trace residual " + sci(worst_trace));

    const MatrixPair nf = calogero_moser_normal_form({1.0, -1.0}, {0.0, 0.0});
    Matrix m = nf.X * nf.Y - nf.Y * nf.X;
    m.diagonal().array() -= Complex(0.0, 1.0);
    Matrix expected(2, 2);
    expected << 1.0, -1.0, -1.0, 1.0;
    expected *= Complex(0.0, -1.0);
    o.require(m == expected, "n=2 normal form is not reproduced exactly");
    o.detail << "8000 points (n=1..4, with and without trace), worst rank residual " << sci(worst_rank)
             << ", worst trace residual " << sci(worst_trace) << "; n=2 example exact";
}

// 5. Flow families.
void criterion5(Outcome& o) {
    const Complex times[] = {0.1, 1.0, Complex(1.0, 1.0), 10.0};
    double ws = 0, wr = 0, wt = 0, wode = 0;
    int runs = 0;
    for (int n : {2, 3}) {
        const auto pts = sample_batch(n, true, 500 + n, 6, flow_sampler_config());
        for (FamilyId id : all_families())
            for (Complex t : times) {
                const FlowFamily fam{id, t};
                const auto rep = certify_symplectic(fam, pts);
                o.require(rep.passed(), std::string(family_name(id)) + " fails certification at n=" +
                                            std::to_string(n));
                for (const auto& r : rep.records) {
                    ws = std::max(ws, r.symplectic_residual);
                    wr = std::max(wr, r.rank_residual);
                    wt = std::max(wt, r.trace_residual);
                }
                for (const auto& p : pts)
                    wode = std::max(wode, max_diff(ode_flow(family_hamiltonian(id), p.pair, t, 400),
                                                   apply_family(fam, p.pair)));
                ++runs;
            }
    }
    o.require(wr < 1e-9, "rank residual " + sci(wr));
    o.require(wt < 1e-10, "trace residual " + sci(wt));
    o.require(ws < 1e-7, "symplectic residual " + sci(ws));
    o.require(wode < 1e-8, "ODE difference " + sci(wode));
    o.detail << runs << " (family, t, n) runs on 6 points: symplectic " << sci(ws) << ", rank " << sci(wr)
             << ", trace " << sci(wt) << ", RK4(400) vs closed form " << sci(wode);
}

// 6. Generation by the four generators at desk scale.
void criterion6(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    for (long n : {2L, 3L}) {
        const int cap = n == 2 ? 6 : 8;
        const auto basis = build_closure(standard_generators(), default_depth_cap(n), cap, n);
        const auto targets = sorted_products(cap);
        const std::size_t samples = std::max<std::size_t>(200, 3 * (basis.elements.size() + 1));
        const auto certs = check_membership(targets, basis, samples, 600 + n);
        std::size_t valid = 0, exact = 0;
        double worst = 0.0, worst_recheck = 0.0;
        for (const auto& c : certs) {
            if (c.valid()) ++valid;
            if (c.exact) ++exact;
            worst = std::max(worst, c.residual);
            // Fresh points the fit never saw.
            if (c.valid()) worst_recheck = std::max(worst_recheck, recheck_certificate(c, basis, 400, 700 + n));
        }
        o.require(valid == certs.size(), std::to_string(certs.size() - valid) + " targets without a valid "
                                         "certificate at n=" + std::to_string(n));
        o.require(worst < 1e-8, "residual " + sci(worst));
        o.require(worst_recheck < 1e-7, "recheck residual " + sci(worst_recheck));
        o.detail << "n=" << n << ": " << valid << "/" << certs.size() << " products of degree <= " << cap
                 << " valid (" << exact << " with rational coefficients), closure " << basis.elements.size()
                 << " elements, worst residual " << sci(worst) << ", recheck " << sci(worst_recheck) << "; ";
    }
    const double secs = seconds_since(t0);
    o.require(secs < 600.0, "runtime " + std::to_string(secs) + " s");
    o.detail << sci(secs) << " s";
}

// 7. Lemma chains.
void criterion7(Outcome& o) {
    const auto steps = load_chains(default_chains_path());
    int chains = 0, exact_steps = 0, leading_steps = 0;
    bool has_power_a = false, has_power_b = false, has_b_to_a = false;
    for (const auto& id : chain_ids(steps)) {
        const auto rep = replay_lemma_chain(steps, id);
        o.require(rep.passed, id + " fails at step " + std::to_string(rep.failed_step));
        ++chains;
        has_power_a = has_power_a || id == "power-trace-A5";
        has_power_b = has_power_b || id == "power-trace-B5";
        has_b_to_a = has_b_to_a || id.rfind("b-to-a-", 0) == 0;
    }
    for (const auto& s : steps) (s.kind == EqualityKind::Exact ? exact_steps : leading_steps)++;
    o.require(has_power_a && has_power_b && has_b_to_a, "shipped chains miss a lemma");
    o.detail << chains << " chains, " << exact_steps << " exact and " << leading_steps
             << " leading steps, all replayed at n=2,3";
}

// 8. Model spaces and products.
void criterion8(Outcome& o) {
    using S = ModelSpace;
    std::vector<Exponent> plane, cylinder, torus;
    for (int j = 1; j <= 9; ++j) {
        plane.emplace_back(j, 0);
        plane.emplace_back(0, j);
    }
    for (int j = 1; j <= 5; ++j) cylinder.emplace_back(j, 0);
    for (int k = 1; k <= 4; ++k) {
        cylinder.emplace_back(0, k);
        cylinder.emplace_back(0, -k);
    }
    for (int j : {-2, -1, 1, 2}) {
        torus.emplace_back(j, 0);
        torus.emplace_back(0, j);
    }
    const auto rp = model_generation(S::Plane, plane, 8);
    const auto rc = model_generation(S::Cylinder, cylinder, 4);
    const auto rt = model_generation(S::Torus, torus, 4);
    o.require(rp.passed(), std::to_string(rp.missing.size()) + " plane monomials missing");
    o.require(rc.passed(), std::to_string(rc.missing.size()) + " cylinder monomials missing");
    o.require(rt.passed(), std::to_string(rt.missing.size()) + " torus monomials missing");
    o.require(!model_generation(S::Plane, {{1, 0}}, 3).passed(), "z alone should not generate");

    std::mt19937_64 rng(808);
    auto random_laurent = [&](S space) {
        std::uniform_int_distribution<int> e(-3, 3), c(-4, 4);
        LaurentPoly2 p(space);
        for (int t = 0; t < 3; ++t) {
            int j = e(rng), k = e(rng);
            if (space != S::Torus) j = std::abs(j);
            if (space == S::Plane) k = std::abs(k);
            p.add_term(Rational(c(rng)), {j, k});
        }
        return p;
    };
    int cases = 0;
    const S spaces[] = {S::Plane, S::Cylinder, S::Torus};
    for (S left : spaces)
        for (S right : spaces)
            for (int trial = 0; trial < 20; ++trial) {
                const auto f = TensorPolynomial::embed(random_laurent(left), Side::Left, right);
                const auto g = TensorPolynomial::embed(random_laurent(right), Side::Right, left);
                o.require(product_bracket(f, g).is_zero(), "cross-factor bracket is nonzero");
                o.require(f * g * Rational(2) == (f + g) * (f + g) - f * f - g * g, "polarization fails");
                ++cases;
            }
    o.detail << "plane " << rp.reached.size() << "/" << rp.reached.size() + rp.missing.size() << ", cylinder "
             << rc.reached.size() << "/" << rc.reached.size() + rc.missing.size() << ", torus " << rt.reached.size()
             << "/" << rt.reached.size() + rt.missing.size() << " monomials; " << cases
             << " product cases with zero cross brackets and exact polarization";
}

// 9. Property suites.
void criterion9(Outcome& o) {
    std::mt19937_64 rng(909);
    int algebra = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Mode mode = trial % 2 ? Mode::Plain : Mode::Traceless;
        const auto f = random_polynomial(rng, mode, 4, 2, true);
        const auto g = random_polynomial(rng, mode, 4, 2, true);
        const auto h = random_polynomial(rng, mode, 3, 2, true);
        o.require((bracket(f, g) + bracket(g, f)).is_zero(), "antisymmetry");
        o.require(bracket(f * g, h) == f * bracket(g, h) + g * bracket(f, h), "Leibniz");
        o.require(jacobi_check(f, g, h).is_zero(), "Jacobi");
        ++algebra;
    }
    double worst_ch = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const long n = 1 + trial % 4;
        const Mode mode = trial % 2 ? Mode::Plain : Mode::Traceless;
        const auto p = random_polynomial(rng, mode, 7);
        const auto r = cayley_hamilton_reduce(p, n);
        o.require(max_run_exponent(r) <= n, "CH output keeps a long run");
        const auto pair = random_pair(rng, static_cast<int>(n));
        worst_ch = std::max(worst_ch, relative_error(evaluate(p, pair, n), evaluate(r, pair, n), 0));
    }
    o.require(worst_ch < 1e-10, "CH relative error " + sci(worst_ch));
    double worst_grad = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 3;
        const auto p = random_polynomial(rng, trial % 2 ? Mode::Plain : Mode::Traceless, 5, 3, true);
        const MatrixPair q = random_pair(rng, n, 0.8);
        const Gradient exact = numeric_gradient(p, q);
        const Gradient fd = finite_difference_gradient(p, q, 1e-6);
        const double scale = std::max(1.0, std::sqrt(exact.dX.squaredNorm() + exact.dY.squaredNorm()));
        const double err = std::sqrt((exact.dX - fd.dX).squaredNorm() + (exact.dY - fd.dY).squaredNorm());
        worst_grad = std::max(worst_grad, err / scale);
    }
    o.require(worst_grad < 1e-6, "gradient relative error " + sci(worst_grad));
    o.detail << algebra << " antisymmetry/Leibniz/Jacobi cases exact, 100 CH cases (worst " << sci(worst_ch)
             << "), 100 gradient cases (worst " << sci(worst_grad) << ")";
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
        {"bracket catalog", criterion1},   {"leading-term law", criterion2},   {"symbolic vs numeric", criterion3},
        {"sampler", criterion4},           {"flows", criterion5},              {"generation", criterion6},
        {"lemma replays", criterion7},     {"model spaces", criterion8},       {"property suites", criterion9},
    };
    int failures = 0;
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        std::printf("criterion %zu (%s): %s  %s\n", i + 1, criteria[i].first, o.passed ? "PASS" : "FAIL",
                    o.detail.str().c_str());
        std::fflush(stdout);
        if (!o.passed) ++failures;
    }
    std::printf("%d of %zu criteria failed\n", failures, std::size(criteria));
    return failures ? 1 : 0;
}
