// cmpoisson: batch front-end for brackets, samplers, flows, catalogs, chains,
// closures and membership certificates.
//
// Exit codes: 0 pass, 1 assertion failure, 2 inconclusive, 3 usage or input error.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmpoisson/catalog.hpp"
#include "cmpoisson/flows.hpp"
#include "cmpoisson/generation.hpp"
#include "cmpoisson/parse.hpp"
#include "cmpoisson/poisson.hpp"

using namespace cmpoisson;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 3;

constexpr std::uint64_t kDefaultSeed = 20240601;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Tolerance {
    double value;
    double safe_low;
    double safe_high;
    const char* meaning;
};

std::map<std::string, Tolerance> default_tolerances() {
    return {
        {"rank", {1e-10, 1e-14, 1e-6, "sampler and flow rank residual"}},
        {"trace", {1e-10, 1e-14, 1e-6, "trace residual of traceless points"}},
        {"symplectic", {1e-7, 1e-11, 1e-3, "symplectic pullback residual"}},
        {"ode", {1e-8, 1e-12, 1e-4, "ODE flow vs closed form"}},
        {"tail", {1e-8, 1e-12, 1e-4, "leading-term tail fit residual"}},
        {"membership", {1e-8, 1e-12, 1e-4, "membership fit residual"}},
        {"condition", {1e12, 1e6, 1e15, "largest membership condition number"}},
        {"span", {1e-10, 1e-14, 1e-6, "closure span test"}},
    };
}

struct JobConfig {
    long n = 3;
    bool n_given = false;
    std::uint64_t seed = kDefaultSeed;
    int depth = 0;  // 0: default for n
    int degree = kDefaultDegreeCap;
    std::size_t samples = 0;  // 0: per-command default
    Mode mode = Mode::Traceless;
    std::string catalog = "default";
    std::string chains = "default";
    std::string out;
    std::map<std::string, Tolerance> tol = default_tolerances();

    double t(const std::string& name) const { return tol.at(name).value; }
    std::size_t samples_or(std::size_t fallback) const { return samples ? samples : fallback; }
    int depth_or_default() const { return depth ? depth : default_depth_cap(n); }
};

void apply_tolerance(JobConfig& cfg, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + spec + "'");
    const std::string name = spec.substr(0, eq);
    auto it = cfg.tol.find(name);
    if (it == cfg.tol.end()) {
        std::string known;
        for (const auto& [k, v] : cfg.tol) known += (known.empty() ? "" : ", ") + k;
        throw UsageError("unknown tolerance '" + name + "' (known: " + known + ")");
    }
    double value = 0.0;
    try {
        std::size_t used = 0;
        value = std::stod(spec.substr(eq + 1), &used);
        if (used != spec.size() - eq - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
        throw UsageError("--tol " + name + ": not a number: '" + spec.substr(eq + 1) + "'");
    }
    if (!(value > 0.0)) throw UsageError("--tol " + name + " must be positive");
    if (value < it->second.safe_low || value > it->second.safe_high)
        std::cerr << "warning: --tol " << name << "=" << value << " is outside the safe range ["
                  << it->second.safe_low << ", " << it->second.safe_high << "] for the " << it->second.meaning
                  << "\n";
    it->second.value = value;
}

double parse_real(const std::string& text, const std::string& whole) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("not a complex number: '" + whole + "'");
}

/// Accepts "a", "bi", "a+bi", "a-bi" with i or j as the imaginary unit.
Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw UsageError("not a complex number: '" + text + "'");
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
    s.pop_back();
    // Split before the last sign that is not a leading sign or an exponent sign.
    std::size_t split = 0;
    for (std::size_t k = 1; k < s.size(); ++k)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') split = k;
    const std::string re = s.substr(0, split), im = s.substr(split);
    auto imag = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t, text);
    };
    return {re.empty() ? 0.0 : parse_real(re, text), imag(im)};
}

std::string complex_text(Complex z) {
    std::ostringstream os;
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

/// "line L, column C: message" from a ParseError, whose what() starts with "L:C: ".
std::string describe(const ParseError& e) {
    std::string message = e.what();
    const std::string prefix = std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": ";
    if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
    return "line " + std::to_string(e.line()) + ", column " + std::to_string(e.column()) + ": " + message;
}

TracePolynomial parse_input(const std::string& text, Mode mode, const char* what) {
    try {
        return parse_polynomial(text, mode);
    } catch (const ParseError& e) {
        throw UsageError(std::string("cannot parse ") + what + " at " + describe(e));
    }
}

/// Reports go to --out when given; the human summary always goes to stdout.
void write_report(const JobConfig& cfg, const json& report) {
    if (cfg.out.empty()) return;
    std::ofstream f(cfg.out);
    if (!f) throw UsageError("cannot open '" + cfg.out + "' for writing");
    f << report.dump(2) << "\n";
    if (!f) throw UsageError("write to '" + cfg.out + "' failed");
}

std::string sci(double x) {
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << x;
    return os.str();
}

// ---------------------------------------------------------------------------

int cmd_bracket(const JobConfig& cfg, const std::string& f_text, const std::string& g_text) {
    const auto f = parse_input(f_text, cfg.mode, "first polynomial");
    const auto g = parse_input(g_text, cfg.mode, "second polynomial");
    json report = {{"command", "bracket"}, {"mode", cfg.mode == Mode::Plain ? "plain" : "traceless"},
                   {"f", f.str()}, {"g", g.str()}};
    if (cfg.mode == Mode::Plain) {
        const auto b = bracket_standard(f, g);
        std::cout << b.str() << "\n";
        report["bracket"] = b.str();
    } else {
        const auto raw = bracket_traceless_unreduced(f, g);
        const auto reduced = bracket_traceless(f, g);
        std::cout << raw.str() << "\n" << reduced.str() << "\n";
        report["bracket"] = raw.str();
        report["reduced"] = reduced.str();
    }
    if (cfg.n_given) {
        const auto b = cfg.mode == Mode::Plain ? bracket_standard(f, g) : bracket_traceless(f, g);
        const auto ch = cayley_hamilton_reduce(b, cfg.n);
        std::cout << ch.str() << "\n";
        report["n"] = cfg.n;
        report["cayley_hamilton"] = ch.str();
    }
    write_report(cfg, report);
    return kPass;
}

int cmd_reduce(const JobConfig& cfg, const std::string& text) {
    const auto p = parse_input(text, cfg.mode, "polynomial");
    const auto r = cayley_hamilton_reduce(p, cfg.n);
    std::cout << r.str() << "\n";
    write_report(cfg, {{"command", "reduce"}, {"n", cfg.n}, {"input", p.str()}, {"reduced", r.str()}});
    return kPass;
}

int cmd_sample(const JobConfig& cfg) {
    const bool traceless = cfg.mode == Mode::Traceless;
    const std::size_t count = cfg.samples_or(10);
    const auto pts = sample_batch(static_cast<int>(cfg.n), traceless, cfg.seed, count);
    double worst_rank = 0.0, worst_trace = 0.0;
    json points = json::array();
    for (const auto& p : pts) {
        worst_rank = std::max(worst_rank, p.rank_residual);
        if (traceless) worst_trace = std::max(worst_trace, trace_residual(p.pair));
        points.push_back(to_json(p));
    }
    const bool ok = worst_rank < cfg.t("rank") && worst_trace < cfg.t("trace");
    std::cout << "sampled " << count << " points at n=" << cfg.n << (traceless ? " (traceless)" : "")
              << ": max rank residual " << sci(worst_rank);
    if (traceless) std::cout << ", max trace residual " << sci(worst_trace);
    std::cout << (ok ? "  PASS" : "  FAIL") << "\n";
    write_report(cfg, {{"command", "sample"},
                       {"n", cfg.n},
                       {"seed", cfg.seed},
                       {"traceless", traceless},
                       {"max_rank_residual", worst_rank},
                       {"max_trace_residual", worst_trace},
                       {"passed", ok},
                       {"points", points}});
    return ok ? kPass : kFail;
}

int cmd_flow(const JobConfig& cfg, const std::vector<std::string>& families, const std::vector<std::string>& times,
             int ode_steps) {
    std::vector<FamilyId> ids;
    for (const auto& f : families) {
        if (f == "all") ids.insert(ids.end(), all_families().begin(), all_families().end());
        else {
            try {
                ids.push_back(family_from_name(f));
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
        }
    }
    std::vector<Complex> ts;
    for (const auto& t : times) ts.push_back(parse_complex(t));

    SymplecticTolerances tol;
    tol.symplectic = cfg.t("symplectic");
    tol.rank = cfg.t("rank") * 10;  // mapped points carry one more rounding step
    tol.trace = cfg.t("trace");
    const auto pts = sample_batch(static_cast<int>(cfg.n), true, cfg.seed, cfg.samples_or(5), flow_sampler_config());

    bool ok = true;
    json runs = json::array();
    for (FamilyId id : ids)
        for (Complex t : ts) {
            const FlowFamily fam{id, t};
            const auto rep = certify_symplectic(fam, pts, tol);
            double worst_ode = 0.0;
            if (ode_steps > 0)
                for (const auto& p : pts) {
                    const MatrixPair a = ode_flow(family_hamiltonian(id), p.pair, t, ode_steps);
                    const MatrixPair b = apply_family(fam, p.pair);
                    const double d = std::max((a.X - b.X).cwiseAbs().maxCoeff(), (a.Y - b.Y).cwiseAbs().maxCoeff()) /
                                     b.scale();
                    worst_ode = std::max(worst_ode, d);
                }
            const bool ode_ok = ode_steps <= 0 || worst_ode < cfg.t("ode");
            const bool run_ok = rep.passed() && ode_ok;
            ok = ok && run_ok;
            double ws = 0, wr = 0, wt = 0;
            for (const auto& r : rep.records) {
                ws = std::max(ws, r.symplectic_residual);
                wr = std::max(wr, r.rank_residual);
                wt = std::max(wt, r.trace_residual);
            }
            std::cout << family_name(id) << " t=" << complex_text(t) << ": symplectic " << sci(ws) << ", rank "
                      << sci(wr) << ", trace " << sci(wt);
            if (ode_steps > 0) std::cout << ", ode " << sci(worst_ode);
            std::cout << (run_ok ? "  PASS" : "  FAIL") << "\n";
            json run = {{"family", family_name(id)}, {"t", {t.real(), t.imag()}}, {"passed", run_ok},
                        {"report", to_json(rep)}};
            if (ode_steps > 0) run["ode_difference"] = worst_ode;
            runs.push_back(run);
        }
    write_report(cfg, {{"command", "flow"},
                       {"n", cfg.n},
                       {"seed", cfg.seed},
                       {"ode_steps", ode_steps},
                       {"passed", ok},
                       {"runs", runs}});
    return ok ? kPass : kFail;
}

std::vector<BracketCatalogEntry> read_catalog(const std::string& which) {
    const std::string path = which == "default" ? default_catalog_path() : which;
    try {
        return load_catalog(path);
    } catch (const ParseError& e) {
        throw UsageError("catalog '" + path + "': parse error at " + describe(e));
    } catch (const std::exception& e) {
        throw UsageError("catalog '" + path + "': " + e.what());
    }
}

int cmd_verify(const JobConfig& cfg) {
    const auto entries = read_catalog(cfg.catalog);
    CatalogOptions opts;
    opts.tail_tolerance = cfg.t("tail");
    const auto report = verify_catalog(entries, cfg.n, cfg.samples_or(100), cfg.seed, opts);
    for (const auto& r : report.results)
        if (!r.passed) std::cout << "FAIL " << r.id << ": " << r.message << "\n";
    std::cout << "catalog: " << report.results.size() - report.failures() << "/" << report.results.size()
              << " entries pass at n=" << cfg.n << (report.passed() ? "  PASS" : "  FAIL") << "\n";
    json j = to_json(report);
    j["command"] = "verify";
    write_report(cfg, j);
    return report.passed() ? kPass : kFail;
}

int cmd_replay(const JobConfig& cfg, const std::vector<std::string>& lemmas) {
    const std::string path = cfg.chains == "default" ? default_chains_path() : cfg.chains;
    std::vector<ChainStep> steps;
    try {
        steps = load_chains(path);
    } catch (const std::exception& e) {
        throw UsageError("chains '" + path + "': " + e.what());
    }
    std::vector<std::string> ids = lemmas.empty() ? chain_ids(steps) : lemmas;
    const std::vector<long> ns = cfg.n_given ? std::vector<long>{cfg.n} : std::vector<long>{2, 3};
    bool ok = true;
    json reports = json::array();
    for (const auto& id : ids) {
        ChainReport rep;
        try {
            rep = replay_lemma_chain(steps, id, ns, cfg.samples_or(120), cfg.seed);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        ok = ok && rep.passed;
        std::cout << id << ": " << rep.steps.size() << " steps";
        if (!rep.passed) std::cout << ", failed at step " << rep.failed_step << ": " << rep.steps.back().message;
        std::cout << (rep.passed ? "  PASS" : "  FAIL") << "\n";
        reports.push_back(to_json(rep));
    }
    write_report(cfg, {{"command", "replay"}, {"chains", reports}, {"passed", ok}});
    return ok ? kPass : kFail;
}

std::vector<TracePolynomial> read_generators(const std::vector<std::string>& texts) {
    if (texts.empty()) return standard_generators();
    std::vector<TracePolynomial> out;
    for (const auto& t : texts) out.push_back(parse_input(t, Mode::Traceless, "generator"));
    return out;
}

LieClosureBasis run_closure(const JobConfig& cfg, const std::vector<std::string>& gens) {
    ClosureOptions opts;
    opts.seed = cfg.seed;
    opts.rank_tolerance = cfg.t("span");
    try {
        return build_closure(read_generators(gens), cfg.depth_or_default(), cfg.degree, cfg.n, opts);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

int cmd_closure(const JobConfig& cfg, const std::vector<std::string>& gens) {
    const auto b = run_closure(cfg, gens);
    int max_depth = 0;
    for (const auto& e : b.elements) max_depth = std::max(max_depth, e.depth);
    std::cout << "closure at n=" << cfg.n << ", depth " << b.depth_cap << ", degree " << b.degree_cap << ": "
              << b.elements.size() << " elements (deepest " << max_depth << "), " << b.candidates
              << " brackets formed\n";
    json j = to_json(b);
    j["command"] = "closure";
    write_report(cfg, j);
    return kPass;
}

int cmd_membership(const JobConfig& cfg, const std::vector<std::string>& targets_text, bool products,
                   const std::vector<std::string>& gens) {
    std::vector<TracePolynomial> targets;
    for (const auto& t : targets_text) targets.push_back(parse_input(t, Mode::Traceless, "target"));
    if (products) {
        const auto p = sorted_products(cfg.degree);
        targets.insert(targets.end(), p.begin(), p.end());
    }
    if (targets.empty()) throw UsageError("membership needs --target or --products");

    const auto b = run_closure(cfg, gens);
    MembershipOptions opts;
    opts.tolerance = cfg.t("membership");
    opts.max_condition = cfg.t("condition");
    const std::size_t samples = cfg.samples_or(std::max<std::size_t>(200, 3 * (b.elements.size() + 1)));
    std::vector<MembershipCertificate> certs;
    try {
        certs = check_membership(targets, b, samples, cfg.seed, opts);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::size_t valid = 0, not_found = 0, inconclusive = 0;
    json list = json::array();
    for (const auto& c : certs) {
        switch (c.status) {
            case MembershipStatus::Valid: ++valid; break;
            case MembershipStatus::NotFound: ++not_found; break;
            case MembershipStatus::Inconclusive: ++inconclusive; break;
        }
        std::cout << status_name(c.status) << "  " << c.target.str() << "  residual " << sci(c.residual)
                  << (c.exact ? "  exact" : "");
        if (!c.valid()) std::cout << "  (" << c.message << ")";
        std::cout << "\n";
        list.push_back(to_json(c, b));
    }
    std::cout << valid << "/" << certs.size() << " valid, " << not_found << " not found, " << inconclusive
              << " inconclusive (closure " << b.elements.size() << " elements, " << samples << " points)\n";
    write_report(cfg, {{"command", "membership"},
                       {"n", cfg.n},
                       {"seed", cfg.seed},
                       {"depth_cap", b.depth_cap},
                       {"degree_cap", b.degree_cap},
                       {"closure_size", b.elements.size()},
                       {"certificates", list}});
    if (not_found) return kFail;
    if (inconclusive) return kInconclusive;
    return kPass;
}

std::vector<Exponent> parse_exponents(const std::vector<std::string>& texts) {
    static const std::regex re(R"(^\s*(-?\d+)\s*,\s*(-?\d+)\s*$)");
    std::vector<Exponent> out;
    for (const auto& t : texts) {
        std::smatch m;
        if (!std::regex_match(t, m, re)) throw UsageError("generator exponent must be 'j,k', got '" + t + "'");
        out.emplace_back(std::stoi(m[1].str()), std::stoi(m[2].str()));
    }
    return out;
}

int cmd_model(const JobConfig& cfg, const std::string& space_text, const std::vector<std::string>& gens) {
    ModelSpace space;
    try {
        space = space_from_name(space_text);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    ModelGenerationReport r;
    try {
        r = model_generation(space, parse_exponents(gens), cfg.degree);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::cout << space_name(space) << ": " << r.reached.size() << "/" << r.reached.size() + r.missing.size()
              << " monomials of the degree-" << cfg.degree << " box reached in " << r.rounds << " rounds"
              << (r.passed() ? "  PASS" : "  FAIL") << "\n";
    json j = to_json(r);
    j["command"] = "model";
    write_report(cfg, j);
    return r.passed() ? kPass : kFail;
}

std::uint64_t env_seed() {
    const char* s = std::getenv("CMPOISSON_SEED");
    if (!s || !*s) return kDefaultSeed;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used);
        if (used != std::string(s).size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("CMPOISSON_SEED is not an unsigned integer: '") + s + "'");
    }
}

int run(int argc, char** argv) {
    JobConfig cfg;
    cfg.seed = env_seed();

    CLI::App app{"Poisson brackets of trace polynomials on Calogero-Moser spaces"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string mode_text = "traceless";
    std::vector<std::string> tol_specs;
    auto* n_opt = app.add_option("--n", cfg.n, "matrix size")->check(CLI::Range(1L, 64L));
    app.add_option("--seed", cfg.seed, "seed (default: $CMPOISSON_SEED or 20240601)");
    app.add_option("--depth", cfg.depth, "closure depth cap (default 8 for n <= 2, else 10)")
        ->check(CLI::PositiveNumber);
    app.add_option("--degree", cfg.degree, "degree cap")->check(CLI::PositiveNumber);
    app.add_option("--samples", cfg.samples, "number of sample points")->check(CLI::PositiveNumber);
    app.add_option("--mode", mode_text, "polynomial grammar")->check(CLI::IsMember({"plain", "traceless"}));
    app.add_option("--catalog", cfg.catalog, "bracket catalog path, or 'default'");
    app.add_option("--chains", cfg.chains, "lemma chain file, or 'default'");
    app.add_option("--out", cfg.out, "JSON report path");
    app.add_option("--tol", tol_specs, "tolerance override name=value (repeatable)");

    std::string f_text, g_text, p_text;
    auto* bracket = app.add_subcommand("bracket", "bracket of two polynomials");
    bracket->add_option("f", f_text)->required();
    bracket->add_option("g", g_text)->required();

    auto* reduce = app.add_subcommand("reduce", "Cayley-Hamilton reduction at --n");
    reduce->add_option("p", p_text)->required();

    auto* sample = app.add_subcommand("sample", "seeded Calogero-Moser points");

    std::vector<std::string> families{"all"}, times{"0.1", "1", "1+i", "10"};
    int ode_steps = 0;
    auto* flow = app.add_subcommand("flow", "certify the flow families");
    flow->add_option("--family", families, "shearB, shearA, cubicShear, scaling or all");
    flow->add_option("--t", times, "flow times, e.g. 1+i");
    flow->add_option("--ode-steps", ode_steps, "also compare RK4 with this many steps to the closed form");

    auto* verify = app.add_subcommand("verify", "check the bracket catalog");

    std::vector<std::string> lemmas;
    auto* replay = app.add_subcommand("replay", "replay lemma chains");
    replay->add_option("--lemma", lemmas, "lemma ids (default: all)");

    std::vector<std::string> gens;
    auto* closure = app.add_subcommand("closure", "Lie closure of the generators");
    closure->add_option("--generator", gens, "generator polynomial (default: the standard four)");

    std::vector<std::string> targets;
    bool products = false;
    auto* membership = app.add_subcommand("membership", "membership certificates");
    membership->add_option("--target", targets, "target polynomial (repeatable)");
    membership->add_flag("--products", products, "every trace product of degree 2..--degree");
    membership->add_option("--generator", gens, "generator polynomial (default: the standard four)");

    std::string space_text;
    std::vector<std::string> model_gens;
    auto* model = app.add_subcommand("model", "generation on a model space");
    model->add_option("--space", space_text, "plane, cylinder or torus")->required();
    model->add_option("--gen", model_gens, "generator exponent j,k (repeatable)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    cfg.n_given = n_opt->count() > 0;
    cfg.mode = mode_text == "plain" ? Mode::Plain : Mode::Traceless;
    for (const auto& s : tol_specs) apply_tolerance(cfg, s);

    if (bracket->parsed()) return cmd_bracket(cfg, f_text, g_text);
    if (reduce->parsed()) return cmd_reduce(cfg, p_text);
    if (sample->parsed()) return cmd_sample(cfg);
    if (flow->parsed()) return cmd_flow(cfg, families, times, ode_steps);
    if (verify->parsed()) return cmd_verify(cfg);
    if (replay->parsed()) return cmd_replay(cfg, lemmas);
    if (closure->parsed()) return cmd_closure(cfg, gens);
    if (membership->parsed()) return cmd_membership(cfg, targets, products, gens);
    if (model->parsed()) return cmd_model(cfg, space_text, model_gens);
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const PoolTooSmall& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}
