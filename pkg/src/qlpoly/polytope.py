"""Correlation polytopes: exact V/H representations and the hull problem.

Vertices are valuation vectors (event probabilities plus optional conjunction
coordinates).  The hull problem V -> H is solved by an incremental double
description computation on the dual cone over arbitrary-precision rationals,
so equalities and facets come out exact, with no tolerances anywhere.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import dot, primitive, rank, rref, scaled, subtract
from .states import StateSet


@dataclass(frozen=True)
class TermList:
    """Coordinate terms: singletons are event probabilities, larger sets are
    conjunctions.  Term order is the coordinate order."""

    terms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        for t in self.terms:
            if not t:
                raise ValueError("empty term")
            if len(set(t)) != len(t):
                raise ValueError(f"repeated index in term {t}")
            if tuple(sorted(t)) != t:
                raise ValueError(f"term {t} must be sorted")
            if t in seen:
                raise ValueError(f"duplicate term {t}")
            seen.add(t)

    @staticmethod
    def of(*terms: Iterable[int]) -> "TermList":
        return TermList(tuple(tuple(sorted(t)) for t in terms))

    @staticmethod
    def singletons(n: int) -> "TermList":
        return TermList(tuple((i,) for i in range(n)))

    def check_bounds(self, n: int) -> None:
        for t in self.terms:
            for i in t:
                if i < 0 or i >= n:
                    raise ValueError(f"term index {i} out of range for {n} atoms")

    def labels(self, names: Sequence[str]) -> tuple[str, ...]:
        return tuple("&".join(names[i] for i in t) for t in self.terms)


@dataclass(frozen=True)
class VRep:
    """Vertex list with exact rational coordinates."""

    dim: int
    vertices: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] | None = None


@dataclass(frozen=True)
class HRep:
    """Equalities c0 + sum(ci*xi) = 0 and facets c0 + sum(ci*xi) >= 0,
    rows as coprime integer vectors."""

    dim: int
    equalities: tuple[tuple[int, ...], ...]
    inequalities: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None


def parse_terms(text: str, names: Sequence[str]) -> TermList:
    """Parse 'a1;a2;a1&a13' against a list of atom names."""
    index = {a: i for i, a in enumerate(names)}
    terms = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        atoms = [a.strip() for a in chunk.split("&")]
        for a in atoms:
            if a not in index:
                raise ValueError(f"unknown atom {a!r} in terms")
        terms.append(tuple(sorted(index[a] for a in atoms)))
    if not terms:
        raise ValueError("empty term list")
    return TermList(tuple(terms))


def build_vertices(s: StateSet, t: TermList) -> VRep:
    """One vertex per state; a term's coordinate is 1 iff all its atoms are 1."""
    if not s.states:
        raise ValueError("empty state set")
    t.check_bounds(len(s.logic.atoms))
    rows = set()
    for st in s.states:
        rows.add(tuple(Fraction(int(all(st[i] for i in term))) for term in t.terms))
    verts = tuple(sorted(rows, reverse=True))
    return VRep(dim=len(t.terms), vertices=verts, labels=t.labels(s.logic.atoms))


def classical_polytope(n: int, t: TermList, names: Sequence[str] | None = None) -> VRep:
    """Vertices from all 2**n valuations of n independent events."""
    if n < 1:
        raise ValueError("need at least one event")
    if n > 20:
        raise ValueError("classical polytope limited to 20 events")
    t.check_bounds(n)
    if names is None:
        names = [f"x{i + 1}" for i in range(n)]
    rows = set()
    for bits in itertools.product((1, 0), repeat=n):
        rows.add(tuple(Fraction(int(all(bits[i] for i in term))) for term in t.terms))
    verts = tuple(sorted(rows, reverse=True))
    return VRep(dim=len(t.terms), vertices=verts, labels=t.labels(names))


def _reduce_mod(vec, eq_rows, eq_pivots):
    out = [Fraction(x) for x in vec]
    for row, pc in zip(eq_rows, eq_pivots):
        f = out[pc]
        if f != 0:
            out = [a - f * b for a, b in zip(out, row)]
    return tuple(out)


def double_description(v: VRep) -> HRep:
    """Exact H-representation of conv(v).

    The homogenized vertices (1, x) are the constraints of the dual cone; its
    lineality space yields the equalities and its extreme rays the facets.
    Rays are reduced modulo the equality space and scaled to coprime integers,
    then sorted, so the output is canonical and insertion-order independent.
    """
    if not v.vertices:
        raise ValueError("empty vertex set")
    d = v.dim + 1
    constraints = [(Fraction(1),) + tuple(Fraction(x) for x in vert) for vert in v.vertices]

    lineality: list[tuple[Fraction, ...]] = [
        tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)
    ]
    rays: list[tuple[tuple[int, ...], int]] = []  # (primitive vector, tight bitmask)

    for k, a in enumerate(constraints):
        piv = next((i for i, l in enumerate(lineality) if dot(a, l) != 0), None)
        if piv is not None:
            l0 = lineality.pop(piv)
            s0 = dot(a, l0)
            if s0 < 0:
                l0, s0 = scaled(l0, Fraction(-1)), -s0
            lineality = [subtract(l, scaled(l0, dot(a, l) / s0)) for l in lineality]
            new_rays = []
            for vec, tight in rays:
                sv = dot(a, vec)
                nv = subtract(vec, scaled(l0, Fraction(sv) / s0)) if sv != 0 else vec
                new_rays.append((primitive(nv), tight | (1 << k)))
            # the pivot leaves the lineality and becomes a ray, tight at all
            # earlier constraints but strictly feasible for this one
            new_rays.append((primitive(l0), (1 << k) - 1))
            rays = new_rays
            continue

        pos, zero, neg = [], [], []
        for vec, tight in rays:
            s = dot(a, vec)
            if s > 0:
                pos.append((vec, tight, s))
            elif s == 0:
                zero.append((vec, tight | (1 << k)))
            else:
                neg.append((vec, tight, s))
        if not neg:
            rays = [(vec, tight) for vec, tight, _ in pos] + zero
            continue

        all_masks = [t for _, t, _ in pos] + [t for _, t in zero] + [t for _, t, _ in neg]

        def adjacent(tp: int, tn: int) -> bool:
            z = tp & tn
            for other in all_masks:
                if other != tp and other != tn and (z & other) == z:
                    return False
            return True

        combos = []
        for pvec, ptight, sp in pos:
            for nvec, ntight, sn in neg:
                if adjacent(ptight, ntight):
                    w = tuple(sp * bn - sn * bp for bp, bn in zip(pvec, nvec))
                    combos.append((primitive(w), (ptight & ntight) | (1 << k)))
        rays = [(vec, tight) for vec, tight, _ in pos] + zero + combos

    eq_rows, eq_pivots = rref(lineality)

    equalities = []
    for row in eq_rows:
        prim = list(primitive(row))
        first_var = next((c for c in prim[1:] if c != 0), None)
        if first_var is None:
            raise AssertionError("equality with empty variable part")
        if first_var < 0:
            prim = [-c for c in prim]
        equalities.append(tuple(prim))
    equalities.sort(reverse=True)

    seen = set()
    inequalities = []
    for vec, _ in rays:
        red = primitive(_reduce_mod(vec, eq_rows, eq_pivots))
        if all(c == 0 for c in red[1:]):
            continue  # constant >= 0, implied by the equalities
        if not any(dot(red, hv) == 0 for hv in constraints):
            continue  # tight nowhere: only arises when conv(v) is a point
        if red not in seen:
            seen.add(red)
            inequalities.append(red)
    inequalities.sort(reverse=True)

    return HRep(
        dim=v.dim,
        equalities=tuple(equalities),
        inequalities=tuple(inequalities),
        labels=v.labels,
    )


def check_relation(v: VRep, row: Sequence, kind: str) -> bool:
    """Whether every vertex satisfies c0 + sum(ci*xi) (= 0 | >= 0) exactly."""
    if kind not in ("equality", "inequality"):
        raise ValueError(f"kind must be 'equality' or 'inequality', got {kind!r}")
    if len(row) != v.dim + 1:
        raise ValueError(f"relation has {len(row)} entries, expected {v.dim + 1}")
    coeffs = [Fraction(x) for x in row]
    for vert in v.vertices:
        val = coeffs[0] + dot(coeffs[1:], vert)
        if kind == "equality":
            if val != 0:
                return False
        elif val < 0:
            return False
    return True


def affine_hull_dim(v: VRep) -> int:
    """Dimension of the affine hull, by exact rank of the homogenized vertices."""
    if not v.vertices:
        raise ValueError("empty vertex set")
    return rank([(Fraction(1),) + vert for vert in v.vertices]) - 1


def membership(h: HRep, point: Sequence) -> bool:
    """Whether a rational point satisfies all equalities and inequalities."""
    if len(point) != h.dim:
        raise ValueError(f"point has {len(point)} coordinates, expected {h.dim}")
    p = [Fraction(x) for x in point]
    for row in h.equalities:
        if row[0] + dot(row[1:], p) != 0:
            return False
    for row in h.inequalities:
        if row[0] + dot(row[1:], p) < 0:
            return False
    return True


def certify(v: VRep, h: HRep) -> None:
    """Soundness and facet-tightness certificates, exact, zero tolerance.

    Raises AssertionError when a relation fails on a vertex or an inequality
    is not tight on an affinely independent vertex set of full facet rank.
    """
    homog = [(Fraction(1),) + vert for vert in v.vertices]
    aff_dim = rank(homog) - 1
    for row in h.equalities:
        if not check_relation(v, row, "equality"):
            raise AssertionError(f"equality {row} violated by a vertex")
    corank = (v.dim + 1) - rank(homog)
    eq_rank = rank(list(h.equalities)) if h.equalities else 0
    if len(h.equalities) != corank or eq_rank != corank:
        raise AssertionError("equality system rank does not match vertex corank")
    for row in h.inequalities:
        if not check_relation(v, row, "inequality"):
            raise AssertionError(f"inequality {row} violated by a vertex")
        tight = [hv for hv in homog if dot(row, hv) == 0]
        if rank(tight) != aff_dim:
            raise AssertionError(f"inequality {row} is not a facet (tight rank {rank(tight)})")


# ---------------------------------------------------------------------------
# formatting


def _fmt_fraction(x: Fraction) -> str:
    return str(x)


def vrep_to_json(v: VRep, indent: int | None = 2) -> str:
    doc: dict = {"dim": v.dim, "vertices": [[_fmt_fraction(x) for x in vert] for vert in v.vertices]}
    if v.labels is not None:
        doc["labels"] = list(v.labels)
    return json.dumps(doc, indent=indent)


def vrep_from_json(text: str) -> VRep:
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("V-representation must be an object")
    unknown = set(doc) - {"dim", "vertices", "labels"}
    if unknown:
        raise ValueError(f"unknown keys: {sorted(unknown)}")
    dim = doc["dim"]
    verts = tuple(
        tuple(Fraction(x) for x in vert) for vert in doc["vertices"]
    )
    for vert in verts:
        if len(vert) != dim:
            raise ValueError("vertex length does not match dim")
    labels = tuple(doc["labels"]) if "labels" in doc else None
    return VRep(dim=dim, vertices=verts, labels=labels)


def _coordinate_names(h: HRep) -> tuple[str, ...]:
    if h.labels is not None:
        return h.labels
    return tuple(str(i + 1) for i in range(h.dim))


def relation_text(row: Sequence[int], names: Sequence[str], kind: str) -> str:
    parts = []
    if row[0] != 0:
        parts.append(f"{row[0]:+d}")
    for c, name in zip(row[1:], names):
        if c != 0:
            parts.append(f"{c:+d}*P[{name}]")
    if not parts:
        parts.append("+0")
    op = "= 0" if kind == "equality" else ">= 0"
    return " ".join(parts) + " " + op


def hrep_text(h: HRep) -> str:
    names = _coordinate_names(h)
    lines = [relation_text(row, names, "equality") for row in h.equalities]
    lines += [relation_text(row, names, "inequality") for row in h.inequalities]
    return "\n".join(lines)


def hrep_to_json(h: HRep, indent: int | None = 2) -> str:
    doc: dict = {
        "dim": h.dim,
        "equalities": [[str(c) for c in row] for row in h.equalities],
        "inequalities": [[str(c) for c in row] for row in h.inequalities],
    }
    if h.labels is not None:
        doc["labels"] = list(h.labels)
    return json.dumps(doc, indent=indent)


_TERM_RE = re.compile(r"^([+-]?\d+)(?:\*P\[([^\]]+)\])?$")


def parse_relation(line: str, names: Sequence[str]) -> tuple[tuple[int, ...], str]:
    """Parse one relation in the emitted text format back to a row."""
    line = line.strip()
    if line.endswith(">= 0"):
        kind, body = "inequality", line[: -len(">= 0")]
    elif line.endswith("= 0"):
        kind, body = "equality", line[: -len("= 0")]
    else:
        raise ValueError(f"relation must end with '= 0' or '>= 0': {line!r}")
    index = {name: i for i, name in enumerate(names)}
    row = [0] * (len(names) + 1)
    for token in body.split():
        m = _TERM_RE.match(token)
        if m is None:
            raise ValueError(f"bad token {token!r} in relation {line!r}")
        coeff = int(m.group(1))
        label = m.group(2)
        if label is None:
            row[0] += coeff
        else:
            if label not in index:
                raise ValueError(f"unknown coordinate {label!r} in relation")
            row[index[label] + 1] += coeff
    return tuple(row), kind
