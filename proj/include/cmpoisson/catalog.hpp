#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmpoisson/cm_numeric.hpp"
#include "cmpoisson/trace_polynomial.hpp"

namespace cmpoisson {

enum class EqualityKind { Exact, Leading };

/// One pinned bracket identity {lhs, rhs} = expected. Leading entries assert
/// equality modulo functions on the variety of degree <= degree_bound.
struct BracketCatalogEntry {
    std::string id;
    TracePolynomial lhs;
    TracePolynomial rhs;
    TracePolynomial expected;
    EqualityKind kind = EqualityKind::Exact;
    int degree_bound = 0;
};

/// Reads {"entries": [{id, lhs, rhs, expected, kind, degree_bound, mode,
/// input_mode}]}. `mode` is the bracket to use; `input_mode` (default: mode)
/// is the grammar of the three polynomials, converted with to_plain or
/// to_traceless when the two differ.
std::vector<BracketCatalogEntry> parse_catalog(const nlohmann::json& doc);
std::vector<BracketCatalogEntry> load_catalog(const std::string& path);
/// Path of the shipped catalog, data/bracket_catalog.json.
std::string default_catalog_path();

struct CatalogEntryResult {
    std::string id;
    EqualityKind kind = EqualityKind::Exact;
    bool passed = false;
    /// bracket - expected, printed; empty when it is zero.
    std::string difference;
    /// Leading entries: residual of the tail fit and the basis size used.
    double tail_residual = 0.0;
    std::size_t tail_basis = 0;
    std::string message;
};

struct CatalogReport {
    long n_value = 0;
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
    std::vector<CatalogEntryResult> results;
    bool passed() const;
    std::size_t failures() const;
};

/// Equality modulo functions of degree <= degree_bound on the variety: the
/// top-degree parts agree after sorting every word to A^i B^j, and the
/// remaining difference fits the products of traces of degree <= degree_bound
/// on a fixed point pool. Tail bases are cached per bound.
class LeadingChecker {
public:
    struct Result {
        bool passed = false;
        double tail_residual = 0.0;
        std::size_t tail_basis = 0;
        std::string message;
    };

    LeadingChecker(long n_value, std::vector<CMPoint> pts, double tail_tolerance = 1e-8);

    Result check(const TracePolynomial& value, const TracePolynomial& expected, int degree_bound);

    long n_value() const { return n_value_; }
    const std::vector<CMPoint>& points() const { return pts_; }

private:
    long n_value_;
    std::vector<CMPoint> pts_;
    double tail_tolerance_;
    std::map<int, std::pair<Matrix, std::size_t>> bases_;
};

struct CatalogOptions {
    double tail_tolerance = 1e-8;
};

/// Exact entries: canonical equality of bracket(lhs, rhs) and expected.
/// Leading entries: LeadingChecker on sample_count traceless points.
CatalogReport verify_catalog(const std::vector<BracketCatalogEntry>& entries, long n_value,
                             std::size_t sample_count, std::uint64_t seed, const CatalogOptions& options = {});

nlohmann::json to_json(const CatalogReport& report);

}  // namespace cmpoisson
