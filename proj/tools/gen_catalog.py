#!/usr/bin/env python3
"""Writes data/bracket_catalog.json: closed-form bracket identities for
traceless trace polynomials, spelled out term by term from the formulas.

This script does not call the C++ engine; the catalog it produces is the
independent side of the comparison made by `cmpoisson verify`.
"""

import argparse
import json
from fractions import Fraction
from pathlib import Path

MAX_EXACT = 5        # exponent range of the exact families
MAX_LEADING = 10     # j + k + p + q bound of the leading-term family


def tr(j, k, first="A", second="B"):
    """tr(A^j B^k) in the text grammar; the empty word is the symbol n."""
    parts = []
    for letter, e in ((first, j), (second, k)):
        if e == 1:
            parts.append(letter)
        elif e > 1:
            parts.append(f"{letter}^{e}")
    return f"tr({' '.join(parts)})" if parts else "n"


def poly(terms):
    """terms: list of (Fraction coefficient, n power, [factor strings])."""
    out = []
    for c, npow, factors in terms:
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        items = [str(abs(c))] if abs(c) != 1 or not (factors or npow) else []
        if npow:
            items.append("n" if npow == 1 else f"n^{npow}")
        items += factors
        out.append((sign, "*".join(items)))
    if not out:
        return "0"
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def exact(entry_id, lhs, rhs, expected, **extra):
    return {"id": entry_id, "lhs": lhs, "rhs": rhs, "expected": expected, "kind": "exact",
            "mode": "traceless", **extra}


def entries():
    out = []
    r = range(1, MAX_EXACT + 1)
    # {tr A^j, tr A^k} = {tr B^j, tr B^k} = 0
    for j in r:
        for k in r:
            out.append(exact(f"commuting-powers/A/j={j},k={k}", tr(j, 0), tr(k, 0), "0"))
            out.append(exact(f"commuting-powers/B/j={j},k={k}", tr(0, j), tr(0, k), "0"))
    # {tr A^j, tr B^q} = jq tr A^(j-1) B^(q-1) - (jq/n) tr A^(j-1) tr B^(q-1)
    for j in r:
        for q in r:
            c = Fraction(j * q)
            out.append(exact(f"power-pair/j={j},q={q}", tr(j, 0), tr(0, q),
                             poly([(c, 0, [tr(j - 1, q - 1)]), (-c, -1, [tr(j - 1, 0), tr(0, q - 1)])])))
    # {tr A^j B^k, tr AB} = (j - k) tr A^j B^k
    for j in range(0, MAX_EXACT + 1):
        for k in range(0, MAX_EXACT + 1):
            out.append(exact(f"ab-weight/j={j},k={k}", tr(j, k), tr(1, 1),
                             poly([(Fraction(j - k), 0, [tr(j, k)])])))
    # {tr A^j, tr B^2} = 2j tr A^(j-1) B
    for j in r:
        out.append(exact(f"with-b-squared/j={j}", tr(j, 0), tr(0, 2), poly([(Fraction(2 * j), 0, [tr(j - 1, 1)])])))
    # tr X and tr Y commute with every tr A^j B^k, checked with the plain bracket
    # after rewriting A = X - tr X / n, B = Y - tr Y / n.
    for j in range(0, MAX_EXACT + 1):
        for k in range(0, MAX_EXACT + 1):
            for central in ("X", "Y"):
                out.append(exact(f"central/{central}/j={j},k={k}", f"tr({central})", tr(j, k), "0",
                                 mode="plain", input_mode="traceless"))
    # Leading terms of {tr A^j B^k, tr A^p B^q}:
    # (jq - kp) tr A^(j+p-1) B^(k+q-1)
    #   - (1/n) (jq tr A^(j-1) B^k tr A^p B^(q-1) - kp tr A^j B^(k-1) tr A^(p-1) B^q)
    # modulo functions of degree <= j+k+p+q-6.
    for j in range(0, MAX_LEADING + 1):
        for k in range(0, MAX_LEADING + 1 - j):
            for p in range(0, MAX_LEADING + 1 - j - k):
                for q in range(0, MAX_LEADING + 1 - j - k - p):
                    terms = []
                    if j + p >= 1 and k + q >= 1:
                        terms.append((Fraction(j * q - k * p), 0, [tr(j + p - 1, k + q - 1)]))
                    if j >= 1 and q >= 1:
                        terms.append((Fraction(-j * q), -1, [tr(j - 1, k), tr(p, q - 1)]))
                    if k >= 1 and p >= 1:
                        terms.append((Fraction(k * p), -1, [tr(j, k - 1), tr(p - 1, q)]))
                    out.append({"id": f"leading/j={j},k={k},p={p},q={q}", "lhs": tr(j, k), "rhs": tr(p, q),
                                "expected": poly(terms), "kind": "leading", "degree_bound": j + k + p + q - 6,
                                "mode": "traceless"})
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "bracket_catalog.json"))
    args = parser.parse_args()
    doc = {"version": 1, "entries": entries()}
    Path(args.out).write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {len(doc['entries'])} entries to {args.out}")


if __name__ == "__main__":
    main()
