#pragma once

#include "cmpoisson/trace_polynomial.hpp"

namespace cmpoisson {

/// Bracket of the form tr(dX ^ dY) on plain polynomials:
/// {tr V, tr W} = sum tr(V_x W_y) - sum tr(V_y W_x) over splice cuts, extended
/// by the Leibniz rule.
TracePolynomial bracket_standard(const TracePolynomial& f, const TracePolynomial& g);

/// Bracket on traceless polynomials, where each contraction carries the
/// correction -(1/n) tr(V_a) tr(W_b). The central factors obey
/// {tr X, tr Y} = n and commute with every A,B-word.
TracePolynomial bracket_traceless(const TracePolynomial& f, const TracePolynomial& g);

/// Same as bracket_traceless but keeps tr A and tr B factors in the result.
TracePolynomial bracket_traceless_unreduced(const TracePolynomial& f, const TracePolynomial& g);

/// Dispatches on the mode of the arguments.
TracePolynomial bracket(const TracePolynomial& f, const TracePolynomial& g);

/// {f,{g,h}} + {g,{h,f}} + {h,{f,g}}; identically zero for a Poisson bracket.
TracePolynomial jacobi_check(const TracePolynomial& f, const TracePolynomial& g, const TracePolynomial& h);

}  // namespace cmpoisson
