"""Exact linear algebra over rationals: elimination, rank, nullspace."""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def scaled(u, c):
    return tuple(a * c for a in u)


def subtract(u, v):
    return tuple(a - b for a, b in zip(u, v))


def rref(rows):
    """Reduced row echelon form.

    Returns (nonzero reduced rows, pivot columns); pivots are scanned left to
    right, so the result is the canonical basis of the row space.
    """
    work = [[Fraction(x) for x in r] for r in rows]
    ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    lead = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(lead, len(work)) if work[i][col] != 0), None)
        if pivot_row is None:
            continue
        work[lead], work[pivot_row] = work[pivot_row], work[lead]
        pv = work[lead][col]
        work[lead] = [a / pv for a in work[lead]]
        for i in range(len(work)):
            if i != lead and work[i][col] != 0:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[lead])]
        pivots.append(col)
        lead += 1
        if lead == len(work):
            break
    return [tuple(r) for r in work[:lead]], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def nullspace(rows, ncols: int):
    """Basis of {x : rows @ x = 0}, one vector per free column."""
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in zip(reduced, pivots):
            vec[pc] = -r[fc]
        basis.append(tuple(vec))
    return basis


def primitive(vec) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, preserving direction."""
    fracs = [Fraction(x) for x in vec]
    lcm = 1
    for f in fracs:
        d = f.denominator
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(f * lcm) for f in fracs]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    if g > 1:
        ints = [a // g for a in ints]
    return tuple(ints)
