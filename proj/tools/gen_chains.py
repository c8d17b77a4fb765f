#!/usr/bin/env python3
"""Writes data/lemma_chains.json: bracket sequences that build power traces,
their squares, and mixed traces tr A^i B^j from the generators
tr A^2, tr B^2, tr A^3, (tr AB)^2.

Expected values come from the closed-form bracket of tr A^j B^k with
tr A^p B^q (top part (jq - kp) tr A^(j+p-1) B^(k+q-1) with the -(1/n)
correction), evaluated by hand for the cases below. A field "$k" refers to the
result of step k of the same chain.
"""
import json
import os


def tr(p, q):
    word = []
    if p:
        word.append("A" if p == 1 else f"A^{p}")
    if q:
        word.append("B" if q == 1 else f"B^{q}")
    return f"tr({' '.join(word)})"


def prod(*fs):
    return "*".join(fs)


def term(c, body):
    return body if c == 1 else (f"-{body}" if c == -1 else f"{c}*{body}")


steps = []


def chain(lemma_id, items):
    for i, (lhs, rhs, expected, kind, bound) in enumerate(items, start=1):
        rec = {"lemma_id": lemma_id, "step": i, "lhs": lhs, "rhs": rhs, "expected": expected, "kind": kind}
        if kind == "leading":
            rec["degree_bound"] = bound
        steps.append(rec)


def exact(lhs, rhs, expected):
    return (lhs, rhs, expected, "exact", None)


# tr B^3 from tr A^3 by applying {tr B^2, .} three times:
# {tr B^2, tr A^p B^q} = -2p tr A^(p-1) B^(q+1), all corrections hold tr B = 0.
chain("tr-B3", [
    exact(tr(0, 2), tr(3, 0), term(-6, tr(2, 1))),
    exact(tr(0, 2), "$1", term(24, tr(1, 2))),
    exact(tr(0, 2), "$2", term(-48, tr(0, 3))),
])

# Induction step tr A^k -> tr A^(k+1), and the mirror for B.
for k in (3, 4):
    chain(f"power-trace-A{k + 1}", [
        exact(tr(k, 0), tr(0, 2), term(2 * k, tr(k - 1, 1))),
        exact(tr(2, 0), prod(tr(1, 1), tr(1, 1)), term(4, prod(tr(1, 1), tr(2, 0)))),
        exact(tr(2, 0), "$2", term(8, prod(tr(2, 0), tr(2, 0)))),
        # {(tr A^2)^2, tr A^m B} = 2 tr A^2 {tr A^2, tr A^m B} = 4 tr A^2 tr A^(m+1)
        exact(prod(tr(2, 0), tr(2, 0)), tr(k - 2, 1), term(4, prod(tr(2, 0), tr(k - 1, 0)))),
        exact(tr(3, 0), tr(k - 1, 1),
              f"{term(3, tr(k + 1, 0))} - 3*n^-1*{prod(tr(2, 0), tr(k - 1, 0))}"),
    ])
    chain(f"power-trace-B{k + 1}", [
        exact(tr(0, k), tr(2, 0), term(-2 * k, tr(1, k - 1))),
        exact(tr(0, 2), prod(tr(1, 1), tr(1, 1)), term(-4, prod(tr(1, 1), tr(0, 2)))),
        exact(tr(0, 2), "$2", term(8, prod(tr(0, 2), tr(0, 2)))),
        exact(prod(tr(0, 2), tr(0, 2)), tr(1, k - 2), term(-4, prod(tr(0, 2), tr(0, k - 1)))),
        exact(tr(0, 3), tr(1, k - 1),
              f"{term(-3, tr(0, k + 1))} + 3*n^-1*{prod(tr(0, 2), tr(0, k - 1))}"),
    ])

# Squares of power traces: {tr A^j, tr AB} = j tr A^j, {tr B^k, tr AB} = -k tr B^k.
for j in range(2, 6):
    chain(f"power-square-A{j}", [
        exact(tr(j, 0), prod(tr(1, 1), tr(1, 1)), term(2 * j, prod(tr(1, 1), tr(j, 0)))),
        exact(tr(j, 0), prod(tr(j, 0), tr(1, 1)), term(j, prod(tr(j, 0), tr(j, 0)))),
    ])
    chain(f"power-square-B{j}", [
        exact(tr(0, j), prod(tr(1, 1), tr(1, 1)), term(-2 * j, prod(tr(1, 1), tr(0, j)))),
        exact(tr(0, j), prod(tr(0, j), tr(1, 1)), term(-j, prod(tr(0, j), tr(0, j)))),
    ])

# Products of power traces scaled by the tr AB weight:
# {tr A^j tr AB, prod tr A^i} = -(sum i) tr A^j prod tr A^i.
for j, factors in ((2, [3]), (3, [2, 2]), (2, [2, 3, 4])):
    rhs = prod(*(tr(i, 0) for i in factors))
    chain(f"ab-weight-{j}-" + "-".join(map(str, factors)), [
        exact(tr(j, 0), prod(tr(1, 1), tr(1, 1)), term(2 * j, prod(tr(1, 1), tr(j, 0)))),
        exact(prod(tr(j, 0), tr(1, 1)), rhs, term(-sum(factors), prod(tr(j, 0), rhs))),
    ])

# Trading B for A: starting from tr B^m, each {tr A^2, .} turns one B
# into an A. {tr A^2, tr A^j B^(m-j)} has top part 2(m-j) tr A^(j+1) B^(m-j-1)
# after sorting words; the rest has degree <= m - 4 on the variety. While a
# bidegree holds a single cyclic word the step is an exact identity.
for m in range(3, 9):
    items = [exact(tr(2, 0), tr(0, m), term(2 * m, tr(1, m - 1)))]
    c = 2 * m
    all_exact = True
    for j in range(1, m):
        c *= 2 * (m - j)
        p, q = j + 1, m - j - 1
        all_exact = all_exact and min(p, q) <= 1
        expected = term(c, tr(p, q))
        if all_exact:
            items.append(exact(tr(2, 0), f"${j}", expected))
        else:
            items.append((tr(2, 0), f"${j}", expected, "leading", m - 4))
    chain(f"b-to-a-{m}", items)

out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data", "lemma_chains.json")
with open(out, "w") as f:
    json.dump({"steps": steps}, f, indent=1)
    f.write("\n")
print(f"wrote {len(steps)} steps to {os.path.normpath(out)}")
