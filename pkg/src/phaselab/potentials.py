"""Scattering potentials on the half line.

Admitted potentials are non-negative, have finite moments m0, m1, m2, and
are compactly supported (the tabulated kind is truncated by construction).
A Dirac delta is carried symbolically and handled downstream through jump
conditions, never by mollification, so it has no pointwise values.

Instances are immutable and hashable after validation; they are safe to
share across threads and are used directly as cache keys.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, PotentialError

ZERO = "zero"
SQUARE_WELL = "square_well"
DIRAC_DELTA = "dirac_delta"
TABULATED = "tabulated"

_KINDS = (ZERO, SQUARE_WELL, DIRAC_DELTA, TABULATED)


@dataclass(frozen=True)
class Potential:
    """A validated non-negative potential V on (0, infinity).

    Attributes
    ----------
    kind : str
        One of ``zero``, ``square_well``, ``dirac_delta``, ``tabulated``.
    height, width : float
        Square-well barrier height v >= 0 and width b > 0.
    strength, position : float
        Dirac-delta weight c >= 0 and location p > 0.
    grid, values : tuple of float
        Sample points and values of a tabulated potential; the function is
        the linear interpolant on [grid[0], grid[-1]] and zero outside.
    support_radius : float
        Smallest x0 with V identically zero on (x0, infinity).
    m0, m1, m2 : float
        Moments of V against 1, x and x^2.
    """

    kind: str
    height: float = 0.0
    width: float = 0.0
    strength: float = 0.0
    position: float = 0.0
    grid: tuple = ()
    values: tuple = ()
    support_radius: float = 0.0
    m0: float = 0.0
    m1: float = 0.0
    m2: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise PotentialError(f"unknown potential kind {self.kind!r}")

    @property
    def pointwise(self) -> bool:
        """Whether the potential has pointwise values (Dirac delta does not)."""
        return self.kind != DIRAC_DELTA


def zero() -> Potential:
    """The free case, V identically zero."""
    return validate(Potential(kind=ZERO))


def square_well(height: float, width: float) -> Potential:
    """Repulsive barrier of the given height on [0, width)."""
    return validate(Potential(kind=SQUARE_WELL, height=float(height), width=float(width)))


def dirac_delta(strength: float, position: float) -> Potential:
    """Point interaction of weight ``strength`` at ``position`` > 0."""
    return validate(
        Potential(kind=DIRAC_DELTA, strength=float(strength), position=float(position))
    )


def tabulated(grid, values) -> Potential:
    """Piecewise-linear potential through the given samples, zero outside."""
    g = tuple(float(x) for x in grid)
    v = tuple(float(x) for x in values)
    return validate(Potential(kind=TABULATED, grid=g, values=v))


def validate(pot: Potential) -> Potential:
    """Admission check; returns the potential with cached moments and support.

    Rejects negative samples, heights or strengths (attractive potentials
    would admit bound states or zero-energy resonances and are excluded),
    malformed tabulated grids, and non-finite moments. Idempotent.
    """
    if pot.kind == ZERO:
        return replace(pot, support_radius=0.0, m0=0.0, m1=0.0, m2=0.0)

    if pot.kind == SQUARE_WELL:
        v, b = pot.height, pot.width
        if not (math.isfinite(v) and math.isfinite(b)):
            raise PotentialError("square_well: height and width must be finite")
        if v < 0.0:
            raise PotentialError(
                "potential must be non-negative (attractive wells admit bound states)"
            )
        if b <= 0.0:
            raise PotentialError("square_well: width must be positive")
        return replace(
            pot,
            support_radius=b,
            m0=v * b,
            m1=v * b * b / 2.0,
            m2=v * b * b * b / 3.0,
        )

    if pot.kind == DIRAC_DELTA:
        c, p = pot.strength, pot.position
        if not (math.isfinite(c) and math.isfinite(p)):
            raise PotentialError("dirac_delta: strength and position must be finite")
        if c < 0.0:
            raise PotentialError(
                "potential must be non-negative (attractive wells admit bound states)"
            )
        if p <= 0.0:
            raise PotentialError("dirac_delta: position must be positive")
        return replace(pot, support_radius=p, m0=c, m1=c * p, m2=c * p * p)

    # tabulated
    g = np.asarray(pot.grid, dtype=float)
    v = np.asarray(pot.values, dtype=float)
    if g.ndim != 1 or g.size < 2:
        raise PotentialError("tabulated: grid must hold at least two points")
    if v.shape != g.shape:
        raise PotentialError("tabulated: grid and values must have equal length")
    if not (np.all(np.isfinite(g)) and np.all(np.isfinite(v))):
        raise PotentialError("tabulated: grid and values must be finite")
    if g[0] < 0.0:
        raise PotentialError("tabulated: grid must start at x >= 0")
    if not np.all(np.diff(g) > 0.0):
        raise PotentialError("tabulated: grid must be strictly increasing")
    if np.any(v < 0.0):
        raise PotentialError(
            "potential must be non-negative (attractive wells admit bound states)"
        )
    m0 = float(np.trapezoid(v, g))
    m1 = float(np.trapezoid(v * g, g))
    m2 = float(np.trapezoid(v * g * g, g))
    if not all(math.isfinite(m) for m in (m0, m1, m2)):
        raise PotentialError("tabulated: moments are not finite")
    return replace(pot, support_radius=float(g[-1]), m0=m0, m1=m1, m2=m2)


def evaluate(pot: Potential, x: float) -> float:
    """Pointwise value V(x); zero beyond the support radius.

    The Dirac-delta kind is rejected because a distributional potential has
    no pointwise values; it only acts through jump conditions.
    """
    if x < 0.0:
        raise DomainError(f"evaluate: x must be >= 0, got {x}")
    if pot.kind == DIRAC_DELTA:
        raise PotentialError("distributional potential has no pointwise values")
    if pot.kind == ZERO:
        return 0.0
    if pot.kind == SQUARE_WELL:
        return pot.height if x < pot.width else 0.0
    g = pot.grid
    if x < g[0] or x >= g[-1]:
        return 0.0
    i = int(np.searchsorted(np.asarray(g), x, side="right")) - 1
    x0, x1 = g[i], g[i + 1]
    v0, v1 = pot.values[i], pot.values[i + 1]
    return v0 + (v1 - v0) * (x - x0) / (x1 - x0)


def moments(pot: Potential) -> tuple[float, float, float]:
    """Moments (m0, m1, m2) of V against 1, x, x^2."""
    return pot.m0, pot.m1, pot.m2


def tail_mass(pot: Potential, x: float) -> float:
    """Tail mass T(x), the integral of V over (x, infinity); 0 past the support."""
    if x < 0.0:
        raise DomainError(f"tail_mass: x must be >= 0, got {x}")
    if x >= pot.support_radius:
        return 0.0
    if pot.kind == ZERO:
        return 0.0
    if pot.kind == SQUARE_WELL:
        return pot.height * (pot.width - x)
    if pot.kind == DIRAC_DELTA:
        return pot.strength
    g = np.asarray(pot.grid)
    v = np.asarray(pot.values)
    lo = max(x, float(g[0]))
    if lo >= g[-1]:
        return 0.0
    # exact integral of the linear interpolant from lo to the grid end
    total = 0.0
    for i in range(len(g) - 1):
        a, b = float(g[i]), float(g[i + 1])
        if b <= lo:
            continue
        va, vb = float(v[i]), float(v[i + 1])
        a_eff = max(a, lo)
        v_eff = va + (vb - va) * (a_eff - a) / (b - a)
        total += 0.5 * (v_eff + vb) * (b - a_eff)
    return total


def from_descriptor(desc: dict) -> Potential:
    """Build a potential from its JSON-style descriptor dictionary."""
    if not isinstance(desc, dict):
        raise PotentialError("potential descriptor must be a JSON object")
    kind = desc.get("kind")
    if kind is None:
        raise PotentialError("potential descriptor: missing field 'kind'")
    if kind == ZERO:
        return zero()
    if kind == SQUARE_WELL:
        return square_well(_num_field(desc, "height"), _num_field(desc, "width"))
    if kind == DIRAC_DELTA:
        return dirac_delta(_num_field(desc, "strength"), _num_field(desc, "position"))
    if kind == TABULATED:
        return tabulated(_list_field(desc, "grid"), _list_field(desc, "values"))
    raise PotentialError(f"potential descriptor: unknown kind {kind!r}")


def to_descriptor(pot: Potential) -> dict:
    """Inverse of :func:`from_descriptor`."""
    if pot.kind == ZERO:
        return {"kind": ZERO}
    if pot.kind == SQUARE_WELL:
        return {"kind": SQUARE_WELL, "height": pot.height, "width": pot.width}
    if pot.kind == DIRAC_DELTA:
        return {"kind": DIRAC_DELTA, "strength": pot.strength, "position": pot.position}
    return {"kind": TABULATED, "grid": list(pot.grid), "values": list(pot.values)}


def parse_potential(text: str) -> Potential:
    """Parse an inline JSON descriptor or ``@file`` reference."""
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        desc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PotentialError(f"potential descriptor is not valid JSON: {exc}") from exc
    return from_descriptor(desc)


def _num_field(desc: dict, name: str) -> float:
    kind = desc.get("kind", "?")
    if name not in desc:
        raise PotentialError(f"{kind} potential: missing field {name!r}")
    val = desc[name]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise PotentialError(f"{kind} potential: field {name!r} must be a number")
    return float(val)


def _list_field(desc: dict, name: str) -> list:
    kind = desc.get("kind", "?")
    if name not in desc:
        raise PotentialError(f"{kind} potential: missing field {name!r}")
    val = desc[name]
    if not isinstance(val, (list, tuple)):
        raise PotentialError(f"{kind} potential: field {name!r} must be an array")
    for entry in val:
        if isinstance(entry, bool) or not isinstance(entry, (int, float)):
            raise PotentialError(f"{kind} potential: field {name!r} must hold numbers")
    return list(val)
