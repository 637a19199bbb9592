"""The doubling map on the circle and the solenoid over it.

Two unrelated pieces live here:

* piecewise-linear weight functions for z -> z^2, with an exact analysis of
  their zero sets (which decides faithfulness and finiteness of the index),
  and the numeric transfer operator they define;
* the conditional expectation of the solenoid dilation on the monomials
  b_m(z) = prod_k z(k)^m(k), computed by brute-force root sums and by the
  closed form that the sum collapses to.

Angles in the exact part are rational multiples of pi, stored as the
multiplier.  The numeric part uses numpy complex128 with tolerance 1e-9.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Sequence, Tuple, Union

import numpy as np

TOL = 1e-9
UNIT_TOL = 1e-12

INDEX_FINITE = "index_finite"
FAITHFUL_NOT_INDEX_FINITE = "faithful_not_index_finite"
NOT_FAITHFUL = "not_faithful"


class InvalidCocycle(ValueError):
    pass


@dataclass(frozen=True)
class PiecewiseLinearCocycle:
    """omega' on [0, pi] through the points (breakpoints[j] * pi, values[j]).

    On (pi, 2pi] the weight is 1 - omega'(t - pi), so antipodal points
    always carry weights summing to one.
    """

    breakpoints: Tuple[Fraction, ...]
    values: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        bps = tuple(Fraction(b) for b in self.breakpoints)
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        if len(bps) != len(vals) or len(bps) < 2:
            raise InvalidCocycle("need matching breakpoint and value lists of length >= 2")
        if bps[0] != 0 or bps[-1] != 1:
            raise InvalidCocycle("breakpoints must run from 0 to pi")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise InvalidCocycle("breakpoints must be strictly increasing")
        if any(not 0 <= v <= 1 for v in vals):
            raise InvalidCocycle("values must lie in [0, 1]")
        if vals[-1] != 1 - vals[0]:
            raise InvalidCocycle("continuity on the circle needs omega'(pi) = 1 - omega'(0)")

    def exact(self, t: Fraction) -> Fraction:
        """omega at angle t * pi, t rational."""
        t = Fraction(t) % 2
        if t <= 1:
            return self._half(t)
        return 1 - self._half(t - 1)

    def _half(self, t: Fraction) -> Fraction:
        bps, vals = self.breakpoints, self.values
        for (a, va), (b, vb) in zip(zip(bps, vals), zip(bps[1:], vals[1:])):
            if a <= t <= b:
                return va + (vb - va) * (t - a) / (b - a)
        raise AssertionError("unreachable")

    def __call__(self, angle):
        """omega at a float angle in radians (array friendly)."""
        theta = np.mod(np.asarray(angle, dtype=float), 2 * np.pi)
        xs = np.array([float(b) * np.pi for b in self.breakpoints])
        ys = np.array([float(v) for v in self.values])
        upper = theta > np.pi
        out = np.interp(np.where(upper, theta - np.pi, theta), xs, ys)
        return np.where(upper, 1 - out, out)

    def zero_set(self) -> Tuple[List[Fraction], List[Tuple[Fraction, Fraction]]]:
        """Exact zeros of omega on the circle as (points, intervals), in multiples of pi."""
        points, intervals = set(), []
        segs = list(zip(zip(self.breakpoints, self.values), zip(self.breakpoints[1:], self.values[1:])))
        for target, shift in ((0, 0), (1, 1)):
            # omega = 0 on [0, pi] where omega' = 0, and on (pi, 2pi] where omega' = 1
            for (a, va), (b, vb) in segs:
                if va == target and vb == target:
                    intervals.append((a + shift, b + shift))
                else:
                    if va == target:
                        points.add((a + shift) % 2)
                    if vb == target:
                        points.add((b + shift) % 2)
        inside = [p for p in points if not any(lo <= p <= hi or lo <= p + 2 <= hi for lo, hi in intervals)]
        return sorted(inside), intervals

    def to_json(self) -> dict:
        return {"breakpoints": [str(b) for b in self.breakpoints], "values": [str(v) for v in self.values]}


PRESETS: Dict[str, PiecewiseLinearCocycle] = {
    "w1": PiecewiseLinearCocycle((0, 1), (Fraction(1, 2), Fraction(1, 2))),
    "w2": PiecewiseLinearCocycle((0, 1), (0, 1)),
    "w3": PiecewiseLinearCocycle((0, Fraction(1, 2), 1), (0, 0, 1)),
}


def parse_cocycle(text: str) -> PiecewiseLinearCocycle:
    """A preset name, or "t0:v0,t1:v1,..." with t in multiples of pi."""
    if text in PRESETS:
        return PRESETS[text]
    pairs = [item.split(":") for item in text.split(",") if item.strip()]
    try:
        return PiecewiseLinearCocycle(tuple(Fraction(t) for t, _ in pairs), tuple(Fraction(v) for _, v in pairs))
    except ValueError as exc:
        raise InvalidCocycle(f"cannot read cocycle {text!r}: {exc}") from exc


def classify(w: PiecewiseLinearCocycle) -> str:
    """Empty zero set: index finite.  Finite zero set: faithful only.  An interval of zeros: not faithful."""
    points, intervals = w.zero_set()
    if intervals:
        return NOT_FAITHFUL
    if points:
        return FAITHFUL_NOT_INDEX_FINITE
    return INDEX_FINITE


def _unit(x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if np.any(np.abs(np.abs(x) - 1) > UNIT_TOL):
        raise ValueError("points must lie on the unit circle")
    return x


def transfer_numeric(w: PiecewiseLinearCocycle, b: Callable[[np.ndarray], np.ndarray], x) -> np.ndarray:
    """L(b)(x) = omega(y) b(y) + omega(-y) b(-y) with y^2 = x."""
    x = _unit(x)
    y = np.sqrt(x)
    return w(np.angle(y)) * b(y) + w(np.angle(-y)) * b(-y)


# -- solenoid --------------------------------------------------------------


@dataclass(frozen=True)
class MonomialIndex:
    """Finitely supported m : N -> Z, naming the monomial b_m(z) = prod_k z(k)^m(k)."""

    m: Tuple[Tuple[int, int], ...]

    @classmethod
    def of(cls, m: Union[Mapping[int, int], Sequence[int]]) -> "MonomialIndex":
        items = m.items() if isinstance(m, Mapping) else enumerate(m)
        return cls(tuple(sorted((int(k), int(v)) for k, v in items if v != 0)))

    @classmethod
    def parse(cls, text: str) -> "MonomialIndex":
        """ "k:v,k:v" -> m; an empty string is m = 0. """
        out: Dict[int, int] = {}
        for item in text.split(","):
            if item.strip():
                k, v = item.split(":")
                if int(k) < 0:
                    raise ValueError("monomial positions are natural numbers")
                out[int(k)] = out.get(int(k), 0) + int(v)
        return cls.of(out)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.m)

    @property
    def mbar(self) -> int:
        return max((k for k, _ in self.m), default=0)

    def exponent(self, d: int = 2) -> int:
        """c with b_m(z) = z(mbar)^c."""
        top = self.mbar
        return sum(v * d ** (top - k) for k, v in self.m)

    def __add__(self, other: "MonomialIndex") -> "MonomialIndex":
        out = self.as_dict()
        for k, v in other.m:
            out[k] = out.get(k, 0) + v
        return MonomialIndex.of(out)

    def __neg__(self) -> "MonomialIndex":
        return MonomialIndex.of({k: -v for k, v in self.m})

    def __str__(self) -> str:
        return ",".join(f"{k}:{v}" for k, v in self.m)


def solenoid_expectation(m: MonomialIndex, x, mode: str = "sum", d: int = 2, root_offset: int = 0) -> np.ndarray:
    """F(b_m)(x) for the fair weights 1/d^n on the solenoid over z -> z^d.

    ``sum``: average of y^c over the d^mbar roots of y^(d^mbar) = x, starting
    the labelling of the roots at ``root_offset``.  ``closed_form``: x^(c / d^mbar)
    when d^mbar divides c and 0 otherwise.
    """
    x = _unit(x)
    n = d ** m.mbar
    c = m.exponent(d)
    if mode == "closed_form":
        if c % n == 0:
            return x ** (c // n)
        return np.zeros_like(x)
    if mode != "sum":
        raise ValueError(f"unknown mode {mode!r}")
    base = np.exp(1j * np.angle(x) / n)
    j = (np.arange(n) + root_offset) % n
    roots = base[..., None] * np.exp(2j * np.pi * j / n)
    return np.mean(roots**c, axis=-1)


def fiber_points(x, n: int, d: int = 2) -> np.ndarray:
    """The d^n points of the level-n fiber over x, each of mass 1/d^n."""
    x = _unit(x)
    size = d**n
    return np.exp(1j * np.angle(x) / size)[..., None] * np.exp(2j * np.pi * np.arange(size) / size)


def circle_samples(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)
