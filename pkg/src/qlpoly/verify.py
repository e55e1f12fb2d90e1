"""Built-in verification suites: one-command reproduction of the reference
numbers behind each structure (mo3, ks14, ch, eq2, cheats)."""

from __future__ import annotations

import math

import numpy as np

from . import cheats
from .cheats import (
    ch_value,
    cheated,
    classical,
    law_eval,
    quantum,
    quantum_cheat,
    scan_ch,
    stq,
    transform_forward,
)
from .logics import validate_logic
from .polytope import (
    TermList,
    affine_hull_dim,
    build_vertices,
    certify,
    check_relation,
    classical_polytope,
    double_description,
    membership,
)
from .quantum import cartesian, is_normal, polar, sup_norm
from .states import boolean_embedding, builtin_states, is_separating, is_unital

Check = tuple[str, bool, str]

# Reference truth table of the 13-atom logic: row k is the valuation induced
# by ground state k (columns a1..a13).
KS14_TABLE: tuple[tuple[int, ...], ...] = (
    (1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1),
    (1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0),
    (1, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0),
    (0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1),
    (0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1),
    (0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0),
    (0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0),
    (0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 0),
    (0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0),
    (0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1),
    (0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1),
    (0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 1),
    (0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0),
    (0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0),
)

# Equality relations of the 13-atom polytope as printed, rows (c0, c1..c13);
# the second chained relation of the second line sums to 0 on every state of
# the table above, so it is encoded homogeneously here.
KS14_EQUALITIES: tuple[tuple[int, ...], ...] = (
    (-1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (-1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1),
    (-1, 1, 1, 0, -1, 0, 1, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, -1, 0, 1, 0, -1, 0, 1, 0, -1, 0, 1, 0),
    (-1, 1, 1, 0, -1, 0, 1, 0, -1, 0, 1, 1, 0, 0),
    (0, 1, 1, 0, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, -1, -1, 0, 1, 0, -1, 0, 1, 1, 0, 0, 0, 0),
)

# Exactly-one-per-context conditions, one row per block.
KS14_CONTEXT_CONDITIONS: tuple[tuple[int, ...], ...] = (
    (-1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (-1, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    (-1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0),
    (-1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0),
    (-1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0),
    (-1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0),
    (-1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1),
)

KS14_GROUND_LABELS: dict[str, frozenset[int]] = {
    "a1": frozenset({1, 2, 3}),
    "a2": frozenset({4, 5, 6, 7, 8, 9}),
    "a3": frozenset({10, 11, 12, 13, 14}),
    "a4": frozenset({2, 6, 7, 8}),
    "a5": frozenset({1, 3, 4, 5, 9}),
    "a6": frozenset({2, 6, 8, 11, 12, 14}),
    "a7": frozenset({7, 10, 13}),
    "a8": frozenset({3, 5, 8, 9, 11, 14}),
    "a9": frozenset({1, 2, 4, 6, 12}),
    "a10": frozenset({3, 9, 13, 14}),
    "a11": frozenset({5, 7, 8, 10, 11}),
    "a12": frozenset({4, 6, 9, 12, 13, 14}),
    "a13": frozenset({1, 4, 5, 10, 11, 12}),
}

# CH facet rows over coordinates (A1, A2, B1, B2, A1B1, A1B2, A2B1, A2B2).
CH_UPPER_FACET = (0, 1, 0, 0, 1, -1, -1, 1, -1)
CH_LOWER_FACET = (1, -1, 0, 0, -1, 1, 1, -1, 1)

CH_TERMS = TermList.of((0,), (1,), (2,), (3,), (0, 2), (0, 3), (1, 2), (1, 3))
CH_EVENT_NAMES = ("A1", "A2", "B1", "B2")

# Half-convention CH value at the reference angles (0, pi/4, pi/2, 3*pi/4):
# sin^2(pi/16) + sin^2(3*pi/16) - 1.
CH_HALF_REFERENCE = math.sin(math.pi / 16) ** 2 + math.sin(3 * math.pi / 16) ** 2 - 1.0

# Stationary maximum of sin^2(x/2) + sin^2(3x/2) - 1 (at sin^2 x = 5/6).
SCAN_MAX_REFERENCE = 2.0 / (3.0 * math.sqrt(6.0))
SCAN_ARGMAX_REFERENCE = math.asin(math.sqrt(5.0 / 6.0))


def _check(name: str, ok: bool, detail: str = "") -> Check:
    return (name, bool(ok), detail)


def suite_mo3() -> list[Check]:
    checks = []
    states = builtin_states("mo3")
    logic = states.logic
    checks.append(_check("mo3: logic valid", validate_logic(logic).ok))
    checks.append(_check("mo3: 3 dispersion-free states", len(states) == 3, f"got {len(states)}"))
    idx = [logic.atom_index(a) for a in ("a1", "a2", "a3")]
    restriction = {tuple(st[i] for i in idx) for st in states.states}
    checks.append(
        _check(
            "mo3: restriction to singleton atoms is the standard basis",
            restriction == {(1, 0, 0), (0, 1, 0), (0, 0, 1)},
        )
    )
    terms = TermList(tuple((i,) for i in idx))
    hull = double_description(build_vertices(states, terms))
    checks.append(
        _check(
            "mo3: hull equality P1+P2+P3 = 1",
            hull.equalities == ((-1, 1, 1, 1),),
            str(hull.equalities),
        )
    )
    checks.append(
        _check(
            "mo3: hull facets are the three positivities",
            set(hull.inequalities) == {(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)},
            str(hull.inequalities),
        )
    )
    return checks


def suite_ks14() -> list[Check]:
    checks = []
    states = builtin_states("ks14")
    logic = states.logic
    checks.append(_check("ks14: logic valid", validate_logic(logic).ok))
    checks.append(_check("ks14: 14 dispersion-free states", len(states) == 14, f"got {len(states)}"))
    checks.append(
        _check(
            "ks14: states equal the reference truth table",
            set(states.states) == set(KS14_TABLE),
        )
    )
    sep, wit = is_separating(states)
    checks.append(_check("ks14: state set is separating", sep, str(wit)))
    uni, wit_u = is_unital(states)
    checks.append(_check("ks14: state set is unital", uni, str(wit_u)))

    embedding = boolean_embedding(states)
    order = {}
    for row_index, row in enumerate(KS14_TABLE, start=1):
        k = states.states.index(row) + 1
        order[k] = row_index
    relabeled = {a: frozenset(order[k] for k in v) for a, v in embedding.items()}
    checks.append(
        _check(
            "ks14: Boolean embedding reproduces the ground-state labels",
            relabeled == KS14_GROUND_LABELS,
        )
    )

    vrep = build_vertices(states, TermList.singletons(13))
    for i, row in enumerate(KS14_EQUALITIES, start=1):
        checks.append(
            _check(f"ks14: printed equality {i} holds", check_relation(vrep, row, "equality"))
        )
    for i, row in enumerate(KS14_CONTEXT_CONDITIONS, start=1):
        checks.append(
            _check(f"ks14: context condition {i} holds", check_relation(vrep, row, "equality"))
        )

    hull = double_description(vrep)
    try:
        certify(vrep, hull)
        cert_ok = True
    except AssertionError:
        cert_ok = False
    checks.append(_check("ks14: hull certificates pass", cert_ok))

    from .linalg import rank

    r_dd = rank([list(r) for r in hull.equalities]) if hull.equalities else 0
    r_ctx = rank([list(r) for r in KS14_CONTEXT_CONDITIONS])
    r_eq18 = rank([list(r) for r in KS14_EQUALITIES])
    checks.append(
        _check(
            "ks14: affine hull matches the context equations",
            r_dd == r_ctx == r_eq18 and affine_hull_dim(vrep) == 13 - r_dd,
            f"ranks dd={r_dd} ctx={r_ctx} printed={r_eq18}",
        )
    )
    return checks


def suite_ch() -> list[Check]:
    checks = []
    vrep = classical_polytope(4, CH_TERMS, names=CH_EVENT_NAMES)
    checks.append(_check("ch: 16 vertices in dimension 8", len(vrep.vertices) == 16 and vrep.dim == 8))
    hull = double_description(vrep)
    try:
        certify(vrep, hull)
        cert_ok = True
    except AssertionError:
        cert_ok = False
    checks.append(_check("ch: hull certificates pass", cert_ok))
    facets = set(hull.inequalities)
    checks.append(_check("ch: upper CH facet present", CH_UPPER_FACET in facets))
    checks.append(_check("ch: lower CH facet present", CH_LOWER_FACET in facets))
    from fractions import Fraction

    center = [
        sum(col) / Fraction(len(vrep.vertices))
        for col in zip(*vrep.vertices)
    ]
    checks.append(_check("ch: uniform vertex mixture is a member", membership(hull, center)))
    return checks


def suite_eq2() -> list[Check]:
    checks = []
    a = np.diag([2.0, 1.0j])
    checks.append(_check("eq2: diag(2, i) is normal", is_normal(a)))
    b, c = cartesian(a)
    checks.append(
        _check(
            "eq2: Cartesian parts are diag(2,0) and diag(0,1)",
            sup_norm(b - np.diag([2.0, 0.0])) <= 1e-12
            and sup_norm(c - np.diag([0.0, 1.0])) <= 1e-12,
        )
    )
    d, e = polar(a)
    checks.append(
        _check(
            "eq2: polar parts are diag(1,i) and diag(2,1)",
            sup_norm(d - np.diag([1.0, 1.0j])) <= 1e-12
            and sup_norm(e - np.diag([2.0, 1.0])) <= 1e-12,
        )
    )
    checks.append(_check("eq2: reassembly A = B + iC", sup_norm(a - (b + 1j * c)) <= 1e-12))
    checks.append(_check("eq2: reassembly A = DE", sup_norm(a - d @ e) <= 1e-12))
    return checks


def suite_cheats() -> list[Check]:
    checks = []
    qc = quantum_cheat()
    faked_quantum = cheated(classical(), qc)
    grid = [math.pi * i / 400 for i in range(401)]
    err1 = max(abs(law_eval(faked_quantum, t) - math.sin(t / 2) ** 2) for t in grid)
    checks.append(_check("cheats: classical law in the cheat scale is sin^2(delta/2)", err1 <= 1e-12, f"{err1:.2e}"))
    from .cheats import classical_cheat

    faked_classical = cheated(quantum(), classical_cheat())
    err2 = max(abs(law_eval(faked_classical, t) - t / math.pi) for t in grid)
    checks.append(_check("cheats: quantum law in the cheat scale is linear", err2 <= 1e-12, f"{err2:.2e}"))
    checks.append(
        _check(
            "cheats: delta(pi/4) = pi/3",
            abs(transform_forward(qc, math.pi / 4) - math.pi / 3) <= 1e-12,
        )
    )
    nonadd = abs(2 * transform_forward(qc, math.pi / 4) - transform_forward(qc, math.pi / 2))
    checks.append(_check("cheats: cheat parameter is nonadditive", nonadd > 0.5, f"gap {nonadd:.6f}"))

    paper_angles = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4)
    s_half = ch_value(faked_quantum, paper_angles, "half").value
    checks.append(
        _check(
            "cheats: reference angles, half convention",
            abs(s_half - CH_HALF_REFERENCE) <= 1e-12,
            f"S = {s_half:.6f}",
        )
    )
    s_full = ch_value(faked_quantum, paper_angles, "full").value
    checks.append(_check("cheats: reference angles, full convention sit on the bound", abs(s_full) <= 1e-12, f"S = {s_full:.2e}"))

    scan = scan_ch(faked_quantum, "full", step=1e-3)
    checks.append(
        _check(
            "cheats: scanned maximum violates the upper CH bound",
            abs(scan.max_s - SCAN_MAX_REFERENCE) <= 1e-3
            and abs(scan.x - SCAN_ARGMAX_REFERENCE) <= 2e-3,
            f"maxS = {scan.max_s:.6f} at x = {scan.x:.4f}",
        )
    )
    for order in (0, 1, 11, 50):
        checks.append(
            _check(
                f"cheats: stq({order}) takes value 1/2 at pi/2 exactly",
                law_eval(stq(order), math.pi / 2) == 0.5,
            )
        )
    diag = cheats.stq_diagnostics(11)
    checks.append(
        _check(
            "cheats: stq(11) overshoots [0,1] (Gibbs) and is reported raw",
            diag["max"] > 1.0 and diag["min"] < 0.0,
            f"range [{diag['min']:.3f}, {diag['max']:.3f}]",
        )
    )
    return checks


SUITES = {
    "mo3": suite_mo3,
    "ks14": suite_ks14,
    "ch": suite_ch,
    "eq2": suite_eq2,
    "cheats": suite_cheats,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        out: list[Check] = []
        for key in SUITES:
            out.extend(SUITES[key]())
        return out
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
