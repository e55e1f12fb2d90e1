"""Finite-dimensional complex operators: generalized probabilities,
Cartesian and polar decompositions, and context-operator synthesis.

All matrix inputs are square numpy arrays of complex numbers.  The Hermitian
eigenproblem is solved by cyclic complex Jacobi rotations, which keeps the
module free of LAPACK-level dependencies and is plenty for desk-scale
dimensions (n up to ~50).
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-10


class InvalidDensityOperatorError(ValueError):
    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = tuple(violations)


class NotInvertibleError(ValueError):
    pass


class NotSelfAdjointError(ValueError):
    pass


class NotCommutingError(ValueError):
    def __init__(self, message, pair=None, norm=None):
        super().__init__(message)
        self.pair = pair
        self.norm = norm


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix entries must be finite")
    return m


def sup_norm(a) -> float:
    a = np.asarray(a)
    return float(np.abs(a).max()) if a.size else 0.0


def adjoint(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def eigh_jacobi(h, tol: float = 1e-13, max_sweeps: int = 100):
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
    rotations.  Returns (eigenvalues ascending, unitary eigenvector columns).
    """
    a = as_matrix(h).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    if n == 1:
        return np.array([a[0, 0].real]), v
    scale = max(sup_norm(a), 1.0)
    threshold = tol * scale
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            row_off = np.abs(a[p, p + 1 :]).max()
            off = max(off, float(row_off))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                r = abs(g)
                if r <= threshold:
                    continue
                phase = g / r
                alpha = a[p, p].real
                beta = a[q, q].real
                t = 0.5 * math.atan2(2.0 * r, alpha - beta)
                c, s = math.cos(t), math.sin(t)
                half = cmath.sqrt(phase)
                u = np.array(
                    [[c * half, -s * half], [s * half.conjugate(), c * half.conjugate()]],
                    dtype=complex,
                )
                a[:, [p, q]] = a[:, [p, q]] @ u
                a[[p, q], :] = u.conj().T @ a[[p, q], :]
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, [p, q]] = v[:, [p, q]] @ u
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def is_normal(a, tol: float = DEFAULT_TOL) -> bool:
    """Whether A commutes with its adjoint, relative to the squared scale."""
    m = as_matrix(a)
    comm = m @ adjoint(m) - adjoint(m) @ m
    return sup_norm(comm) <= tol * sup_norm(m) ** 2


def cartesian(a):
    """Split A = B + iC into self-adjoint real and imaginary parts."""
    m = as_matrix(a)
    b = (m + adjoint(m)) / 2.0
    c = (m - adjoint(m)) / 2.0j
    return b, c


def polar(a, tol: float = DEFAULT_TOL):
    """Factor an invertible A = DE with D unitary and E = sqrt(A†A) positive.

    Raises NotInvertibleError when the smallest singular value is below
    tol times the largest.
    """
    m = as_matrix(a)
    gram = adjoint(m) @ m
    w, u = eigh_jacobi(gram)
    w = np.where((w < 0) & (w >= -1e-12), 0.0, w)
    if np.any(w < 0):
        w = np.clip(w, 0.0, None)
    sigma = np.sqrt(w)
    smax = float(sigma.max())
    if smax == 0.0 or float(sigma.min()) <= tol * smax:
        raise NotInvertibleError(
            f"matrix is numerically singular (sigma_min={float(sigma.min()):.3e})"
        )
    e = u @ np.diag(sigma) @ adjoint(u)
    e = (e + adjoint(e)) / 2.0
    e_inv = u @ np.diag(1.0 / sigma) @ adjoint(u)
    d = m @ e_inv
    return d, e


@dataclass(frozen=True)
class DensityOperator:
    """Self-adjoint, positive, trace-one operator (checked on construction)."""

    matrix: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        violations = []
        if sup_norm(m - adjoint(m)) > self.tol:
            violations.append("not self-adjoint")
        else:
            w, _ = eigh_jacobi((m + adjoint(m)) / 2.0)
            if float(w.min()) < -self.tol:
                violations.append(f"not positive (min eigenvalue {float(w.min()):.3e})")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > self.tol:
            violations.append(f"trace is {tr:.6g}, not 1")
        if violations:
            raise InvalidDensityOperatorError(violations)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def gen_prob(a: DensityOperator, b: DensityOperator) -> float:
    """Generalized transition probability Re Tr(ab), clamped to [0, 1].

    Symmetric in its arguments; reduces to the Born value when one argument
    is a rank-one projection.
    """
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    value = float(np.trace(a.matrix @ b.matrix).real)
    return min(1.0, max(0.0, value))


@dataclass(frozen=True)
class ContextOperatorResult:
    """A self-adjoint operator whose functions recover a commuting family.

    ``context`` takes value j on the j-th joint eigenspace (0-based);
    ``tables`` maps those values to each input operator's eigenvalue there.
    """

    context: np.ndarray
    eigenvalues: tuple[int, ...]
    tables: tuple[dict[int, float], ...]
    projectors: tuple[np.ndarray, ...]
    residuals: tuple[float, ...]


def _cluster(values: np.ndarray, gap: float) -> list[tuple[int, int]]:
    ranges = []
    start = 0
    for i in range(1, len(values)):
        scale = max(1.0, abs(values[i - 1]), abs(values[i]))
        if values[i] - values[i - 1] > gap * scale:
            ranges.append((start, i))
            start = i
    ranges.append((start, len(values)))
    return ranges


def context_operator(
    ops,
    sa_tol: float = DEFAULT_TOL,
    comm_tol: float = 1e-8,
    gap: float = 1e-8,
) -> ContextOperatorResult:
    """Synthesize a context operator for a commuting self-adjoint family.

    Joint eigenspaces are found by successively refining each operator's
    eigenspaces; the context operator takes the value j-1 on the j-th joint
    eigenspace, so it separates them maximally.  Any injective relabeling of
    its spectrum is an equally valid context operator.
    """
    mats = [as_matrix(op) for op in ops]
    if not mats:
        raise ValueError("need at least one operator")
    n = mats[0].shape[0]
    for i, m in enumerate(mats):
        if m.shape[0] != n:
            raise ValueError("operators must share one dimension")
        scale = max(1.0, sup_norm(m))
        if sup_norm(m - adjoint(m)) > sa_tol * scale:
            raise NotSelfAdjointError(f"operator {i} is not self-adjoint")
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            bound = comm_tol * max(1.0, sup_norm(mats[i])) * max(1.0, sup_norm(mats[j]))
            if sup_norm(comm) > bound:
                raise NotCommutingError(
                    f"operators {i} and {j} do not commute "
                    f"(commutator norm {sup_norm(comm):.3e})",
                    pair=(i, j),
                    norm=sup_norm(comm),
                )

    subspaces = [np.eye(n, dtype=complex)]
    for m in mats:
        refined = []
        for q in subspaces:
            small = adjoint(q) @ m @ q
            small = (small + adjoint(small)) / 2.0
            w, u = eigh_jacobi(small)
            for lo, hi in _cluster(w, gap):
                refined.append(q @ u[:, lo:hi])
        subspaces = refined

    k = len(subspaces)
    projectors = tuple(q @ adjoint(q) for q in subspaces)
    context = np.zeros((n, n), dtype=complex)
    for j, proj in enumerate(projectors):
        context = context + j * proj
    context = (context + adjoint(context)) / 2.0

    tables = []
    residuals = []
    for m in mats:
        table = {}
        rebuilt = np.zeros((n, n), dtype=complex)
        for j, q in enumerate(subspaces):
            small = adjoint(q) @ m @ q
            val = float(np.trace(small).real / q.shape[1])
            table[j] = val
            rebuilt = rebuilt + val * projectors[j]
        tables.append(table)
        residuals.append(sup_norm(m - rebuilt))
    return ContextOperatorResult(
        context=context,
        eigenvalues=tuple(range(k)),
        tables=tuple(tables),
        projectors=projectors,
        residuals=tuple(residuals),
    )


def apply_table(table: dict[int, float], result: ContextOperatorResult) -> np.ndarray:
    """Evaluate a value table as a function of the context operator."""
    n = result.context.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for j, proj in zip(result.eigenvalues, result.projectors):
        out = out + table[j] * proj
    return out


def interpolating_polynomial(table: dict[int, float]) -> np.ndarray:
    """Coefficients (low to high) of the polynomial through the value table."""
    xs = np.array(sorted(table), dtype=float)
    ys = np.array([table[int(x)] for x in xs], dtype=float)
    vander = np.vander(xs, increasing=True)
    return np.linalg.solve(vander, ys)


def matrix_to_json(m, indent: int | None = 2) -> str:
    a = as_matrix(m)
    doc = {
        "dim": a.shape[0],
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in a],
    }
    return json.dumps(doc, indent=indent)


def matrix_from_json(text: str) -> np.ndarray:
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("matrix document must be an object")
    unknown = set(doc) - {"dim", "entries"}
    if unknown:
        raise ValueError(f"unknown keys: {sorted(unknown)}")
    n = doc["dim"]
    entries = doc["entries"]
    if len(entries) != n or any(len(row) != n for row in entries):
        raise ValueError("entries do not form a dim x dim matrix")
    return np.array(
        [[complex(re, im) for re, im in row] for row in entries], dtype=complex
    )
