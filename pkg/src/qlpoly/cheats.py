"""Joint-probability laws on [0, pi], bijective parameter-cheat transforms,
and a Clauser-Horne evaluator with a one-parameter scanner.

The three base laws give the probability that two measurements an angle theta
apart agree: classical theta/pi, quantum sin^2(theta/2), and the
stronger-than-quantum square-wave partial sum of order n (which converges to
the step H(2*theta/pi - 1) and is deliberately not clamped to [0, 1], so the
Gibbs overshoot stays visible).  A cheat transform reparameterizes the angle
so one law masquerades as another.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

PI = math.pi
_DOMAIN_SLACK = 1e-9


class DomainError(ValueError):
    pass


class NonMonotoneError(ValueError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


def _check_domain(x: float, what: str = "angle") -> float:
    if not math.isfinite(x):
        raise DomainError(f"{what} must be finite")
    if x < -_DOMAIN_SLACK or x > PI + _DOMAIN_SLACK:
        raise DomainError(f"{what} {x!r} outside [0, pi]")
    return min(max(x, 0.0), PI)


def _square_wave_sum(x: float, order: int) -> float:
    total = 0.0
    for k in range(order + 1):
        m = 2 * k + 1
        total += math.sin(m * x) / m
    return total


@dataclass(frozen=True)
class CheatTransform:
    """Bijective reparameterization between the proper angle and a cheat
    parameter, both ranging over [0, pi].

    kind 'quantum-cheat' makes the classical law look quantum: forward is
    delta(theta) = 2*asin(sqrt(theta/pi)), inverse theta(delta) =
    pi*sin^2(delta/2).  kind 'classical-cheat' is the mirror image.  kind
    'stq-cheat' is series-defined: its forward map sends the cheat parameter
    to the proper angle theta(Delta) = pi/2 + 2*sum sin((2k+1)(2*Delta/pi-1))
    /(2k+1), which can leave [0, pi] for finite order and is only piecewise
    monotone, so its inverse works on certified monotone subintervals.
    """

    kind: str
    order: int | None = None

    def __post_init__(self):
        if self.kind not in ("quantum-cheat", "classical-cheat", "stq-cheat"):
            raise ValueError(f"unknown transform kind {self.kind!r}")
        if self.kind == "stq-cheat":
            if self.order is None or self.order < 0:
                raise ValueError("stq-cheat needs a series order >= 0")
        elif self.order is not None:
            raise ValueError(f"{self.kind} takes no order")

    @property
    def label(self) -> str:
        if self.kind == "stq-cheat":
            return f"stq-cheat:{self.order}"
        return self.kind

    def to_proper(self, x: float) -> float:
        """Map a cheat-parameter value to the proper angle."""
        if self.kind == "quantum-cheat":
            x = _check_domain(x, "cheat parameter")
            return PI * math.sin(x / 2.0) ** 2
        if self.kind == "classical-cheat":
            x = _check_domain(x, "cheat parameter")
            return 2.0 * math.asin(math.sqrt(x / PI))
        x = _check_domain(x, "cheat parameter")
        return PI / 2.0 + 2.0 * _square_wave_sum(2.0 * x / PI - 1.0, self.order)

    def to_cheat(self, theta: float, lo: float = 0.0, hi: float = PI) -> float:
        """Map a proper angle to the cheat parameter."""
        if self.kind == "quantum-cheat":
            theta = _check_domain(theta)
            return 2.0 * math.asin(math.sqrt(theta / PI))
        if self.kind == "classical-cheat":
            theta = _check_domain(theta)
            return PI * math.sin(theta / 2.0) ** 2
        return self._invert_series(theta, lo, hi)

    def _invert_series(self, target: float, lo: float, hi: float) -> float:
        if not (0.0 <= lo < hi <= PI):
            raise DomainError("inversion interval must lie inside [0, pi]")
        grid = 10_000
        prev_x = lo
        prev_v = self.to_proper(lo)
        direction = 0
        for i in range(1, grid + 1):
            x = lo + (hi - lo) * i / grid
            v = self.to_proper(x)
            step = v - prev_v
            if step == 0.0:
                raise NonMonotoneError(
                    f"forward map is flat near {prev_x:.6g}", pair=(prev_x, x)
                )
            d = 1 if step > 0 else -1
            if direction == 0:
                direction = d
            elif d != direction:
                raise NonMonotoneError(
                    f"forward map changes direction between {prev_x:.6g} and {x:.6g}",
                    pair=(prev_x, x),
                )
            prev_x, prev_v = x, v
        f_lo = self.to_proper(lo)
        f_hi = self.to_proper(hi)
        low_v, high_v = (f_lo, f_hi) if direction > 0 else (f_hi, f_lo)
        if target < low_v - 1e-12 or target > high_v + 1e-12:
            raise DomainError(f"value {target!r} outside the forward image")
        a, b = lo, hi
        for _ in range(200):
            mid = 0.5 * (a + b)
            if (self.to_proper(mid) - target) * direction < 0:
                a = mid
            else:
                b = mid
            if b - a <= 1e-15:
                break
        return 0.5 * (a + b)


def quantum_cheat() -> CheatTransform:
    return CheatTransform("quantum-cheat")


def classical_cheat() -> CheatTransform:
    return CheatTransform("classical-cheat")


def stq_cheat(order: int) -> CheatTransform:
    return CheatTransform("stq-cheat", order=order)


def transform_forward(t: CheatTransform, x: float) -> float:
    """The transform's defining closed-form direction.

    For the quantum and classical cheats this maps the proper angle to the
    cheat parameter; for the series cheat it is the closed-form map from the
    cheat parameter to the proper angle.
    """
    if t.kind == "quantum-cheat":
        return t.to_cheat(x)
    if t.kind == "classical-cheat":
        return t.to_cheat(x)
    return t.to_proper(x)


def transform_inverse(t: CheatTransform, x: float, lo: float = 0.0, hi: float = PI) -> float:
    """Inverse of transform_forward; the series cheat inverts by bisection
    after a monotonicity check on [lo, hi]."""
    if t.kind == "quantum-cheat":
        return t.to_proper(x)
    if t.kind == "classical-cheat":
        return t.to_proper(x)
    return t.to_cheat(x, lo=lo, hi=hi)


@dataclass(frozen=True)
class ProbabilityLaw:
    """Agreement probability as a function of the angle in [0, pi]."""

    kind: str
    order: int | None = None
    base: "ProbabilityLaw | None" = None
    transform: CheatTransform | None = None

    def __post_init__(self):
        if self.kind not in ("classical", "quantum", "stq", "step", "cheated"):
            raise ValueError(f"unknown law kind {self.kind!r}")
        if self.kind == "stq" and (self.order is None or self.order < 0):
            raise ValueError("stq law needs a series order >= 0")
        if self.kind == "cheated" and (self.base is None or self.transform is None):
            raise ValueError("cheated law needs a base law and a transform")

    @property
    def label(self) -> str:
        if self.kind == "stq":
            return f"stq:{self.order}"
        if self.kind == "cheated":
            return f"{self.base.label}<{self.transform.label}>"
        return self.kind

    def __call__(self, theta: float) -> float:
        return law_eval(self, theta)


def classical() -> ProbabilityLaw:
    return ProbabilityLaw("classical")


def quantum() -> ProbabilityLaw:
    return ProbabilityLaw("quantum")


def stq(order: int) -> ProbabilityLaw:
    return ProbabilityLaw("stq", order=order)


def step() -> ProbabilityLaw:
    """The order -> infinity limit of the stq series: H(2*theta/pi - 1)."""
    return ProbabilityLaw("step")


def cheated(base: ProbabilityLaw, transform: CheatTransform) -> ProbabilityLaw:
    return ProbabilityLaw("cheated", base=base, transform=transform)


def _eval_raw(law: ProbabilityLaw, theta: float) -> float:
    # no domain enforcement: cheats may hand the base law an angle slightly
    # outside [0, pi] (finite-order series), and the composed value is the
    # quantity of interest
    if law.kind == "classical":
        return theta / PI
    if law.kind == "quantum":
        return math.sin(theta / 2.0) ** 2
    if law.kind == "stq":
        x = 2.0 * theta / PI - 1.0
        return 0.5 + (2.0 / PI) * _square_wave_sum(x, law.order)
    if law.kind == "step":
        x = 2.0 * theta / PI - 1.0
        if x > 0:
            return 1.0
        if x < 0:
            return 0.0
        return 0.5
    return _eval_raw(law.base, law.transform.to_proper(theta))


def law_eval(law: ProbabilityLaw, theta: float) -> float:
    """Evaluate a law at an angle in [0, pi].

    stq values are reported raw: near the jump they overshoot [0, 1] for
    finite order and are not clamped.
    """
    theta = _check_domain(theta)
    return _eval_raw(law, theta)


def fold_angle(d: float) -> float:
    """Geometric angle between two directions: |d| reduced mod 2*pi, then
    reflected into [0, pi]."""
    if not math.isfinite(d):
        raise DomainError("angle difference must be finite")
    d = math.fmod(abs(d), 2.0 * PI)
    if d > PI:
        d = 2.0 * PI - d
    return d


@dataclass(frozen=True)
class CHResult:
    """Clauser-Horne combination S = p11 + p12 + p22 - p21 - P(A1) - P(B2)."""

    value: float
    lower_violated: bool
    upper_violated: bool
    terms: dict[str, float]
    convention: str

    def to_json(self, indent: int | None = 2) -> str:
        import json

        doc = {
            "S": self.value,
            "violated_upper": self.upper_violated,
            "violated_lower": self.lower_violated,
            "terms": self.terms,
            "convention": self.convention,
        }
        return json.dumps(doc, indent=indent)


_STRICT = 1e-12


def ch_value(
    law: ProbabilityLaw,
    angles: Sequence[float],
    convention: str = "full",
) -> CHResult:
    """Evaluate the CH combination at detector angles (a1, b1, a2, b2).

    Joints are law(folded difference * c) with c = 1 for the 'full'
    convention and c = 1/2 for 'half' (the two readings of evaluating at the
    half-difference); marginals are pinned to 1/2.  Differences beyond pi are
    folded geometrically rather than rejected, which keeps the sin^2 law
    consistent on the circle.
    """
    if convention not in ("full", "half"):
        raise ValueError(f"convention must be 'full' or 'half', got {convention!r}")
    if len(angles) != 4:
        raise ValueError("need exactly four angles (a1, b1, a2, b2)")
    a1, b1, a2, b2 = (float(x) for x in angles)
    c = 1.0 if convention == "full" else 0.5
    p11 = _eval_raw(law, fold_angle(a1 - b1) * c)
    p12 = _eval_raw(law, fold_angle(a1 - b2) * c)
    p22 = _eval_raw(law, fold_angle(a2 - b2) * c)
    p21 = _eval_raw(law, fold_angle(a2 - b1) * c)
    m_a1 = 0.5
    m_b2 = 0.5
    s = p11 + p12 + p22 - p21 - m_a1 - m_b2
    return CHResult(
        value=s,
        lower_violated=s < -1.0 - _STRICT,
        upper_violated=s > 0.0 + _STRICT,
        terms={
            "A1B1": p11,
            "A1B2": p12,
            "A2B2": p22,
            "A2B1": p21,
            "A1": m_a1,
            "B2": m_b2,
        },
        convention=convention,
    )


@dataclass(frozen=True)
class ScanResult:
    max_s: float
    x: float
    angles: tuple[float, float, float, float]
    convention: str
    step: float

    def to_json(self, indent: int | None = 2) -> str:
        import json

        doc = {
            "maxS": self.max_s,
            "x": self.x,
            "angles": list(self.angles),
            "convention": self.convention,
            "step": self.step,
        }
        return json.dumps(doc, indent=indent)


SCAN_X_MAX = 2.0 * PI / 3.0


def scan_ch(law: ProbabilityLaw, convention: str = "full", step: float = 1e-3) -> ScanResult:
    """Grid-search the one-parameter angle family (0, x, 2x, 3x).

    x ranges over (0, 2*pi/3], the largest interval on which all folded
    differences stay within one turn; ties break to the smallest x.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    best_s = -math.inf
    best_x = None
    k = 1
    while True:
        x = k * step
        if x > SCAN_X_MAX + 1e-12:
            break
        angles = (0.0, x, 2.0 * x, 3.0 * x)
        s = ch_value(law, angles, convention).value
        if s > best_s:
            best_s, best_x = s, x
        k += 1
    if best_x is None:
        raise ValueError("step larger than the scan interval")
    return ScanResult(
        max_s=best_s,
        x=best_x,
        angles=(0.0, best_x, 2.0 * best_x, 3.0 * best_x),
        convention=convention,
        step=step,
    )


@dataclass(frozen=True)
class CurveTable:
    """Sampled curves on a uniform angle grid, CSV-ready."""

    header: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def to_csv(self) -> str:
        lines = [",".join(self.header)]
        for row in self.rows:
            lines.append(",".join(format(x, ".15g") for x in row))
        return "\n".join(lines) + "\n"


def sample_curves(
    curves: Sequence[tuple[str, Callable[[float], float]]],
    lo: float = 0.0,
    hi: float = PI,
    samples: int = 201,
) -> CurveTable:
    """Sample named curves on a uniform grid including both endpoints."""
    if samples < 2:
        raise ValueError("need at least two samples")
    header = ("theta",) + tuple(name for name, _ in curves)
    rows = []
    for i in range(samples):
        theta = lo + (hi - lo) * i / (samples - 1)
        rows.append((theta,) + tuple(func(theta) for _, func in curves))
    return CurveTable(header=header, rows=tuple(rows))


def stq_diagnostics(order: int, samples: int = 2001) -> dict[str, float]:
    """Range diagnostics of the stq partial sum: extremes and step distance."""
    law = stq(order)
    limit = step()
    max_v = -math.inf
    min_v = math.inf
    sup_dist = 0.0
    for i in range(samples):
        theta = PI * i / (samples - 1)
        v = law_eval(law, theta)
        max_v = max(max_v, v)
        min_v = min(min_v, v)
        sup_dist = max(sup_dist, abs(v - law_eval(limit, theta)))
    return {
        "order": float(order),
        "min": min_v,
        "max": max_v,
        "overshoot": max(max_v - 1.0, 0.0 - min_v, 0.0),
        "sup_distance_to_step": sup_dist,
    }


def parse_law(spec: str) -> ProbabilityLaw:
    """Law names used by the command line.

    classical | quantum | step | stq:N | cheat-quantum | cheat-classical |
    cheat-stq:N.  'cheat-quantum' is the quantum-cheated classical law (a
    classical system faking quantum behavior), and vice versa.
    """
    if spec == "classical":
        return classical()
    if spec == "quantum":
        return quantum()
    if spec == "step":
        return step()
    if spec.startswith("stq:"):
        return stq(_parse_order(spec))
    if spec == "cheat-quantum":
        return cheated(classical(), quantum_cheat())
    if spec == "cheat-classical":
        return cheated(quantum(), classical_cheat())
    if spec.startswith("cheat-stq:"):
        return cheated(classical(), stq_cheat(_parse_order(spec)))
    raise ValueError(f"unknown law {spec!r}")


def parse_transform(spec: str) -> CheatTransform:
    if spec == "quantum-cheat":
        return quantum_cheat()
    if spec == "classical-cheat":
        return classical_cheat()
    if spec.startswith("stq-cheat:"):
        return stq_cheat(_parse_order(spec))
    raise ValueError(f"unknown transform {spec!r}")


def _parse_order(spec: str) -> int:
    try:
        order = int(spec.rsplit(":", 1)[1])
    except (IndexError, ValueError):
        raise ValueError(f"bad series order in {spec!r}") from None
    if order < 0:
        raise ValueError("series order must be >= 0")
    return order
