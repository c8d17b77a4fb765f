#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cmpoisson/catalog.hpp"
#include "cmpoisson/pool.hpp"
#include "cmpoisson/trace_polynomial.hpp"

namespace cmpoisson {

// ---------------------------------------------------------------------------
// Lie closure of trace polynomials on the traceless space

/// One closure element. Depth-0 elements are generators (generator >= 0);
/// deeper ones are {generators[left], elements[right]}, Cayley-Hamilton
/// reduced at the closure's n.
struct ClosureElement {
    TracePolynomial poly{Mode::Traceless};
    int depth = 0;
    int degree = 0;
    int generator = -1;
    int left = -1;
    int right = -1;
};

struct LieClosureBasis {
    std::vector<TracePolynomial> generators;
    std::vector<ClosureElement> elements;
    int depth_cap = 0;
    int degree_cap = 0;
    long n_value = 0;
    std::uint64_t seed = 0;
    std::size_t pool_size = 0;
    /// Brackets formed, and how many were dropped as zero, over the degree cap,
    /// duplicates, or inside the current span.
    std::size_t candidates = 0;
    std::size_t dropped_zero = 0;
    std::size_t dropped_degree = 0;
    std::size_t dropped_duplicate = 0;
    std::size_t dropped_span = 0;

    /// Bracket expression of element i in terms of the generator texts.
    std::string tree(std::size_t i) const;
    /// Recomputes element i from its tree.
    TracePolynomial replay(std::size_t i) const;
};

class PoolTooSmall : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ClosureOptions {
    std::uint64_t seed = 20240601;
    /// Span-test pool size; 0 picks 4 x the number of trace products of
    /// degree <= degree_cap, an upper bound for the basis size.
    std::size_t pool_size = 0;
    /// A candidate enlarges the span when the part orthogonal to the current
    /// span, relative to its own size, exceeds this.
    double rank_tolerance = 1e-10;
};

int default_depth_cap(long n_value);
constexpr int kDefaultDegreeCap = 8;

/// The generating set tr A^2, tr B^2, tr A^3, (tr AB)^2.
std::vector<TracePolynomial> standard_generators();

/// Breadth-first nested brackets {g, e} of generators g with the elements e
/// found at the previous depth. Throws PoolTooSmall when the basis would
/// exceed a quarter of the pool.
LieClosureBasis build_closure(const std::vector<TracePolynomial>& generators, int depth_cap, int degree_cap,
                              long n_value, const ClosureOptions& options = {});

/// Numeric rank of the span of the first `count` elements on a pool.
int closure_rank(const LieClosureBasis& basis, std::size_t count, const std::vector<CMPoint>& pts,
                 double tolerance = 1e-10);

nlohmann::json to_json(const LieClosureBasis& basis);

// ---------------------------------------------------------------------------
// Membership certificates

enum class MembershipStatus { Valid, NotFound, Inconclusive };
const char* status_name(MembershipStatus status);

struct MembershipCertificate {
    TracePolynomial target{Mode::Traceless};
    MembershipStatus status = MembershipStatus::Inconclusive;
    /// Column 0 is the constant function; column k > 0 is element k - 1.
    std::vector<std::pair<Complex, int>> combination;
    /// Set when the fitted coefficients round to small-denominator rationals
    /// that fit at least as well; parallel to `combination`.
    bool exact = false;
    std::vector<Rational> exact_coefficients;
    double residual = 0.0;
    double condition = 0.0;
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
    int depth_cap = 0;
    std::string message;

    bool valid() const { return status == MembershipStatus::Valid; }
};

struct MembershipOptions {
    double tolerance = 1e-8;
    double max_condition = 1e12;
    /// Largest denominator tried when rounding coefficients to rationals.
    long max_denominator = 1000000;
};

/// Best rational approximation of x with denominator <= max_denominator,
/// if one lies within tolerance * max(1, |x|).
std::optional<Rational> snap_rational(double x, long max_denominator, double tolerance);

/// Fits the target against the constant and every basis element on
/// sample_count fresh points (seeded from `seed`, disjoint from the closure
/// pool).
MembershipCertificate check_membership(const TracePolynomial& target, const LieClosureBasis& basis,
                                       std::size_t sample_count, std::uint64_t seed,
                                       const MembershipOptions& options = {});

/// Several targets on one shared set of fresh points; fits run in parallel.
std::vector<MembershipCertificate> check_membership(const std::vector<TracePolynomial>& targets,
                                                    const LieClosureBasis& basis, std::size_t sample_count,
                                                    std::uint64_t seed, const MembershipOptions& options = {});

/// Residual of the certificate's combination on `count` further points.
double recheck_certificate(const MembershipCertificate& cert, const LieClosureBasis& basis, std::size_t count,
                           std::uint64_t seed);

nlohmann::json to_json(const MembershipCertificate& cert, const LieClosureBasis& basis);

/// Every product of tr A^p B^q factors of total degree in [2, max_degree],
/// Cayley-Hamilton free of tr A and tr B (which vanish).
std::vector<TracePolynomial> sorted_products(int max_degree);

// ---------------------------------------------------------------------------
// Lemma chains

/// One step: result_k = {lhs, rhs}. A field "$j" stands for result_j.
struct ChainStep {
    std::string lemma_id;
    int step = 0;
    std::string lhs;
    std::string rhs;
    std::string expected;
    EqualityKind kind = EqualityKind::Exact;
    int degree_bound = 0;
};

std::vector<ChainStep> parse_chains(const nlohmann::json& doc);
std::vector<ChainStep> load_chains(const std::string& path);
std::string default_chains_path();
/// Distinct lemma ids in file order.
std::vector<std::string> chain_ids(const std::vector<ChainStep>& steps);

struct ChainStepResult {
    int step = 0;
    bool passed = false;
    std::string result;
    std::string difference;
    double tail_residual = 0.0;
    std::string message;
};

struct ChainReport {
    std::string lemma_id;
    std::vector<ChainStepResult> steps;
    bool passed = false;
    /// First failing step, or 0.
    int failed_step = 0;
};

/// Runs the steps of one lemma in order and stops at the first failure.
/// Leading steps are checked at every n in `n_values` on sample_count points.
ChainReport replay_lemma_chain(const std::vector<ChainStep>& steps, const std::string& lemma_id,
                               const std::vector<long>& n_values = {2, 3}, std::size_t sample_count = 120,
                               std::uint64_t seed = 7);

nlohmann::json to_json(const ChainReport& report);

// ---------------------------------------------------------------------------
// Model spaces: C^2, C x C^*, (C^*)^2

enum class ModelSpace { Plane, Cylinder, Torus };
const char* space_name(ModelSpace space);
ModelSpace space_from_name(const std::string& name);

using Exponent = std::pair<int, int>;

/// Exact Laurent polynomial in z, w with the exponent range of its space.
class LaurentPoly2 {
public:
    explicit LaurentPoly2(ModelSpace space = ModelSpace::Plane) : space_(space) {}
    static LaurentPoly2 monomial(ModelSpace space, int j, int k, const Rational& c = Rational(1));

    ModelSpace space() const { return space_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Rational& c, Exponent e);

    LaurentPoly2& operator+=(const LaurentPoly2& other);
    LaurentPoly2& operator-=(const LaurentPoly2& other);
    LaurentPoly2& operator*=(const Rational& c);
    friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
    friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
    friend LaurentPoly2 operator*(LaurentPoly2 a, const Rational& c) { return a *= c; }
    friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b);
    friend bool operator==(const LaurentPoly2& a, const LaurentPoly2& b) {
        return a.space_ == b.space_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    void check_space(const LaurentPoly2& other) const;
    ModelSpace space_;
    std::map<Exponent, Rational> terms_;
};

/// Plane: {z,w} = 1; cylinder: {z,w} = w; torus: {z,w} = zw.
LaurentPoly2 model_bracket(const LaurentPoly2& f, const LaurentPoly2& g);

struct ModelGenerationReport {
    ModelSpace space = ModelSpace::Plane;
    int degree_cap = 0;
    std::vector<Exponent> generators;
    std::vector<Exponent> reached;
    std::vector<Exponent> missing;
    int rounds = 0;
    bool passed() const { return missing.empty(); }
};

/// Exponents of the box: plane j,k >= 0 with j + k <= cap; cylinder
/// 0 <= j <= cap, |k| <= cap; torus |j|, |k| <= cap. The constant is left out.
std::vector<Exponent> model_box(ModelSpace space, int degree_cap);

/// Closure of the generator monomials under brackets with generators,
/// kept inside the box. Every bracket of two monomials is a multiple of one
/// monomial, so spans are tracked exactly as sets of exponents.
ModelGenerationReport model_generation(ModelSpace space, const std::vector<Exponent>& generators, int degree_cap);

nlohmann::json to_json(const ModelGenerationReport& report);

// ---------------------------------------------------------------------------
// Direct products of two model spaces

enum class Side { Left, Right };

/// Polynomial on a product of two model spaces: a map from exponent
/// quadruples (left z, left w, right z, right w) to rationals.
class TensorPolynomial {
public:
    using Key = std::array<int, 4>;

    TensorPolynomial(ModelSpace left, ModelSpace right) : left_(left), right_(right) {}
    /// A factor polynomial pulled back along the projection to `side`.
    static TensorPolynomial embed(const LaurentPoly2& f, Side side, ModelSpace other);

    ModelSpace left() const { return left_; }
    ModelSpace right() const { return right_; }
    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Rational& c, const Key& key);

    TensorPolynomial& operator+=(const TensorPolynomial& other);
    TensorPolynomial& operator-=(const TensorPolynomial& other);
    TensorPolynomial& operator*=(const Rational& c);
    friend TensorPolynomial operator+(TensorPolynomial a, const TensorPolynomial& b) { return a += b; }
    friend TensorPolynomial operator-(TensorPolynomial a, const TensorPolynomial& b) { return a -= b; }
    friend TensorPolynomial operator*(TensorPolynomial a, const Rational& c) { return a *= c; }
    friend TensorPolynomial operator*(const TensorPolynomial& a, const TensorPolynomial& b);
    friend bool operator==(const TensorPolynomial& a, const TensorPolynomial& b) {
        return a.left_ == b.left_ && a.right_ == b.right_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    void check_spaces(const TensorPolynomial& other) const;
    ModelSpace left_;
    ModelSpace right_;
    std::map<Key, Rational> terms_;
};

/// Sum of the two factor brackets; factors from different sides commute.
TensorPolynomial product_bracket(const TensorPolynomial& f, const TensorPolynomial& g);

}  // namespace cmpoisson
