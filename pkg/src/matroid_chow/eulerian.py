"""Hilbert series of Chow rings of Boolean matroids and their recurrences.

Polynomials are integer coefficient lists, lowest degree first.
"""
from __future__ import annotations

from math import comb

from .chow import Variant, chow_ring
from .matroid import boolean, uniform


def eulerian_numbers(d: int) -> list[int]:
    """Row d of the Eulerian triangle (permutations of d by descents)."""
    row = [1]
    for n in range(1, d + 1):
        row = [(k + 1) * (row[k] if k < len(row) else 0)
               + (n - k) * (row[k - 1] if 0 < k <= len(row) else 0)
               for k in range(n)]
    return row


def boolean_hilbert(d: int) -> list[int]:
    """Graded dimensions of the plain Chow ring of B_d (B_0 gives [1])."""
    if d == 0:
        return [1]
    return list(chow_ring(boolean(d), Variant.PLAIN).dims)


def _trim(p: list[int]) -> list[int]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _add(p: list[int], q: list[int]) -> list[int]:
    n = max(len(p), len(q))
    return _trim([(p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(n)])


def _mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _scale(c: int, p: list[int]) -> list[int]:
    return _trim([c * a for a in p])


def quadratic_recurrence_rhs(s: list[list[int]], d: int) -> list[int]:
    """s_{d-1} + t * sum_k C(d-1, k) s_k s_{d-k-1}."""
    acc = [0]
    for k in range(d - 1):
        acc = _add(acc, _scale(comb(d - 1, k), _mul(s[k], s[d - k - 1])))
    return _add(s[d - 1], _mul([0, 1], acc))


def _geometric_factor(m: int) -> list[int]:
    """(t - t^m)/(1 - t) as a polynomial."""
    if m == 0:
        return [-1]
    return [0] + [1] * (m - 1) if m >= 2 else [0]


def linear_recurrence_value(s: list[list[int]], d: int) -> list[int]:
    """1 + sum_k C(d,k) (t - t^{d-k})/(1 - t) s_k; zero when the recurrence holds."""
    acc = [1]
    for k in range(d + 1):
        acc = _add(acc, _scale(comb(d, k), _mul(_geometric_factor(d - k), s[k])))
    return acc


def recurrence_report(max_d: int = 6) -> dict:
    s = [boolean_hilbert(d) for d in range(max_d + 1)]
    rows = []
    for d in range(1, max_d + 1):
        rows.append({
            "d": d,
            "hilbert": s[d],
            "eulerian": s[d] == eulerian_numbers(d),
            "quadratic": s[d] == quadratic_recurrence_rhs(s, d),
            "linear": linear_recurrence_value(s, d) == [0],
        })
    return {"rows": rows, "ok": all(r["eulerian"] and r["quadratic"] and r["linear"] for r in rows)}


def uniform_hilbert(n: int, d: int, variant: Variant | str = Variant.PLAIN) -> list[int]:
    return list(chow_ring(uniform(n, d), variant).dims)
