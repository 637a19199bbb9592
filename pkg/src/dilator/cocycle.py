"""Normalized cocycles for the shift action, given by one weight table per generator.

The table for factor i is the weight function y -> omega(e_i, y).  Weights
for a general semigroup element t are built with the multiplicative rule

    omega(r + s, y) = omega(r, y) * omega(s, sigma^r y),

applied one generator at a time (factor 1 first, then factor 2, ...).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import lattice
from .cylinder import CylinderFunction, ShiftSystem, drop, prepend
from .lattice import ElementLike, LatticeElement, as_element
from .report import VerificationReport

STRICT = "strict"
RELAXED = "relaxed"


class InconsistentCocycle(ValueError):
    """Two generator orderings give different weights for the same semigroup element."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


@dataclass(eq=False)
class Cocycle:
    system: ShiftSystem
    generators: tuple
    mode: str = STRICT
    _levels: Dict[LatticeElement, CylinderFunction] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self.generators = tuple(self.generators)
        if len(self.generators) != self.system.k:
            raise ValueError(f"need {self.system.k} generator table(s), got {len(self.generators)}")
        if any(g.system != self.system for g in self.generators):
            raise ValueError("generator table built on a different shift system")
        if self.mode not in (STRICT, RELAXED):
            raise ValueError(f"mode must be 'strict' or 'relaxed', not {self.mode!r}")

    @property
    def k(self) -> int:
        return self.system.k

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cocycle):
            return NotImplemented
        return (self.system, self.generators, self.mode) == (other.system, other.generators, other.mode)

    def __hash__(self) -> int:
        return hash((self.system, self.generators, self.mode))

    def extend(self, t: ElementLike) -> CylinderFunction:
        return extend(self, t)

    def to_json(self) -> dict:
        return {
            "factors": self.system.to_json(),
            "mode": self.mode,
            "generators": [g.to_json() for g in self.generators],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Cocycle":
        system = ShiftSystem(tuple(int(f["alphabet"]) for f in data["factors"]))
        gens = [CylinderFunction.from_mapping(system, g["depth"], g["table"]) for g in data["generators"]]
        return cls(system, tuple(gens), data.get("mode", STRICT))


# -- presets ---------------------------------------------------------------


def fair(alphabets: Sequence[int] = (2,), depth: int = 1, mode: str = STRICT) -> Cocycle:
    """Uniform weights 1/d_i on every factor."""
    system = ShiftSystem(tuple(alphabets))
    gens = []
    for i, d in enumerate(system.alphabets):
        gdepth = tuple(depth if j == i else 0 for j in range(system.k))
        gens.append(CylinderFunction.from_function(system, gdepth, lambda w, d=d: Fraction(1, d)))
    return Cocycle(system, tuple(gens), mode)


def first_symbol(weights: Sequence[Sequence], mode: str = STRICT) -> Cocycle:
    """Factor i weights y by ``weights[i][y_1]`` where y_1 is y's first symbol on factor i."""
    system = ShiftSystem(tuple(len(w) for w in weights))
    gens = []
    for i, w in enumerate(weights):
        gdepth = tuple(1 if j == i else 0 for j in range(system.k))
        gens.append(CylinderFunction.from_function(system, gdepth, lambda word, i=i, w=w: Fraction(w[word[i][0]])))
    return Cocycle(system, tuple(gens), mode)


def biased(p: Fraction = Fraction(1, 3)) -> Cocycle:
    """d = 2 with weight p on a leading 0 and 1 - p on a leading 1."""
    p = Fraction(p)
    return first_symbol([(p, 1 - p)])


def planted_relaxed() -> Cocycle:
    """d = 2 with zero weight on a leading 0: normalized but not faithful."""
    return first_symbol([(0, 1)], mode=RELAXED)


def with_entry(c: Cocycle, factor: int, index: int, value) -> Cocycle:
    """Copy of ``c`` with one generator-table entry replaced."""
    g = c.generators[factor]
    table = list(g.table)
    table[index] = Fraction(value)
    gens = list(c.generators)
    gens[factor] = CylinderFunction(c.system, g.depth, table)
    return Cocycle(c.system, tuple(gens), c.mode)


# -- extension -------------------------------------------------------------


def _product(c: Cocycle, letters: Sequence[int]) -> CylinderFunction:
    out = CylinderFunction.constant(c.system, 1)
    done = lattice.zero(c.k)
    for i in letters:
        out = out * c.generators[i].pullback(done)
        done = done + lattice.generator(i, c.k)
    return out


def _check_commuting(c: Cocycle, i: int, j: int) -> None:
    ei, ej = lattice.generator(i, c.k), lattice.generator(j, c.k)
    lhs = c.generators[i] * c.generators[j].pullback(ei)
    rhs = c.generators[j] * c.generators[i].pullback(ej)
    if lhs != rhs:
        depth = tuple(max(a, b) for a, b in zip(lhs.depth, rhs.depth))
        for w in c.system.words(depth):
            if lhs(w) != rhs(w):
                raise InconsistentCocycle(
                    f"generator orders ({i},{j}) and ({j},{i}) disagree",
                    {"order": [i, j], "word": c.system.format_word(w), "lhs": str(lhs(w)), "rhs": str(rhs(w))},
                )


def extend(c: Cocycle, t: ElementLike) -> CylinderFunction:
    """Weight function y -> omega(t, y) for a semigroup element t."""
    t = as_element(t, c.k)
    if not t.is_positive():
        raise ValueError(f"cocycle levels are semigroup elements, got {t}")
    if t in c._levels:
        return c._levels[t]
    support = [i for i in range(c.k) if t[i] > 0]
    for a in range(len(support)):
        for b in range(a + 1, len(support)):
            _check_commuting(c, support[a], support[b])
    if t.is_zero():
        out = CylinderFunction.constant(c.system, 1)
    else:
        # peel the last generator of the canonical order
        last = max(support)
        prev = t - lattice.generator(last, c.k)
        out = extend(c, prev) * c.generators[last].pullback(prev)
    c._levels[t] = out
    return out


def fiber_sums(system: ShiftSystem, weight: CylinderFunction, t: ElementLike):
    """Yield (x, sum of weight over the level-t preimages of x) for every word x."""
    t = as_element(t, system.k)
    depth = tuple(max(n - c, 0) for n, c in zip(weight.depth, t))
    for x in system.words(depth):
        yield x, sum((weight(prepend(p, x)) for p in system.prefixes(t)), Fraction(0))


# -- checks ----------------------------------------------------------------


def validate(c: Cocycle) -> VerificationReport:
    """Normalization per factor and per word, value range, and positivity per mode."""
    rep = VerificationReport()
    fmt = c.system.format_word
    for i, g in enumerate(c.generators):
        bad = [(x, s) for x, s in fiber_sums(c.system, g, lattice.generator(i, c.k)) if s != 1]
        rep.add(
            "cocycle.normalization",
            not bad,
            witness={"word": fmt(bad[0][0]), "sum": str(bad[0][1])} if bad else None,
            factor=i,
        )
        out_of_range = [(w, v) for w, v in g.items() if not 0 <= v <= 1]
        rep.add(
            "cocycle.range",
            not out_of_range,
            witness={"word": fmt(out_of_range[0][0]), "value": str(out_of_range[0][1])} if out_of_range else None,
            factor=i,
        )
        if c.mode == STRICT:
            zeros = [w for w, v in g.items() if v <= 0]
            rep.add(
                "cocycle.strict_positivity",
                not zeros,
                witness={"word": fmt(zeros[0])} if zeros else None,
                factor=i,
            )
    for i in range(c.k):
        for j in range(i + 1, c.k):
            try:
                _check_commuting(c, i, j)
                rep.add("cocycle.generator_orders", True, factors=[i, j])
            except InconsistentCocycle as exc:
                rep.add("cocycle.generator_orders", False, witness=exc.witness, factors=[i, j])
    return rep


def is_valid(c: Cocycle) -> bool:
    return validate(c).ok


def check_factorizations(c: Cocycle, W: int) -> VerificationReport:
    """Every ordering of the generators of t gives the same weights, for t <= W."""
    rep = VerificationReport()
    for t in lattice.semigroup_ball(W, c.k):
        words = list(lattice.generator_words(t))
        base = _product(c, words[0])
        bad = next((wd for wd in words[1:] if _product(c, wd) != base), None)
        rep.add("cocycle.factorization", bad is None,
                witness={"orders": [list(words[0]), list(bad)]} if bad else None, t=t.to_json())
    return rep


def check_extension(c: Cocycle, W: int) -> VerificationReport:
    """omega(t+u) = omega(t) * omega(u) o sigma^t and normalization at every level t+u."""
    rep = VerificationReport()
    levels = lattice.semigroup_ball(W, c.k)
    for t in levels:
        for u in levels:
            lhs = extend(c, t + u)
            rhs = extend(c, t) * extend(c, u).pullback(t)
            rep.add("cocycle.composition", lhs == rhs, witness={"lhs": repr(lhs), "rhs": repr(rhs)},
                    t=t.to_json(), u=u.to_json())
    for t in lattice.semigroup_ball(2 * W, c.k):
        bad = [(x, s) for x, s in fiber_sums(c.system, extend(c, t), t) if s != 1]
        rep.add("cocycle.level_normalization", not bad,
                witness={"word": c.system.format_word(bad[0][0]), "sum": str(bad[0][1])} if bad else None,
                t=t.to_json())
        if c.mode == STRICT:
            rep.add("cocycle.level_positivity", extend(c, t).minimum() > 0, t=t.to_json())
    return rep


def _fiber(system: ShiftSystem, x, s: LatticeElement) -> set:
    """Words agreeing with x except possibly in the first s_i symbols of each factor."""
    tail = drop(x, s)
    return {prepend(p, tail) for p in system.prefixes(s)}


def check_coherence(c: Cocycle, W: int) -> VerificationReport:
    """omega(s,x) W_r(C_x^s & C_y^r) == omega(r,x) W_s(C_x^r & C_y^s) for r, s <= W.

    Words x, y range over every word at a depth long enough for both weight
    functions and both prefix replacements; the sets C are finite enumerations
    of prefix replacements.
    """
    rep = VerificationReport()
    levels = lattice.semigroup_ball(W, c.k)
    for r in levels:
        wr = extend(c, r)
        for s in levels:
            ws = extend(c, s)
            depth = tuple(max(a, b, p, q) for a, b, p, q in zip(wr.depth, ws.depth, r, s))
            words = list(c.system.words(depth))
            cache = {}

            def fib(w, lvl):
                key = (w, lvl)
                if key not in cache:
                    cache[key] = _fiber(c.system, w, lvl)
                return cache[key]

            witness = None
            for x in words:
                for y in words:
                    lhs = ws(x) * sum((wr(z) for z in fib(x, s) & fib(y, r)), Fraction(0))
                    rhs = wr(x) * sum((ws(z) for z in fib(x, r) & fib(y, s)), Fraction(0))
                    if lhs != rhs:
                        witness = {"x": c.system.format_word(x), "y": c.system.format_word(y),
                                   "lhs": str(lhs), "rhs": str(rhs)}
                        break
                if witness:
                    break
            rep.add("cocycle.coherence", witness is None, witness=witness, r=r.to_json(), s=s.to_json())
    return rep


def random_cocycle(alphabets: Sequence[int] = (2,), seed: int = 0, depth: int = 1, denominator: int = 12) -> Cocycle:
    """Strict product cocycle with random positive rational weights, reproducible from ``seed``.

    Factor i's weight depends on its first ``depth`` symbols only, so the
    generator orders always agree.
    """
    rng = random.Random(seed)
    system = ShiftSystem(tuple(alphabets))
    gens = []
    for i, d in enumerate(system.alphabets):
        gdepth = tuple(depth if j == i else 0 for j in range(system.k))
        # one probability vector over the leading symbol for each continuation
        rows = {}
        if d > denominator:
            raise ValueError("denominator must be at least the alphabet size")
        for tail in ShiftSystem((d,)).words(max(depth - 1, 0)):
            cuts = sorted(rng.sample(range(1, denominator), d - 1))
            bounds = [0, *cuts, denominator]
            rows[tail[0]] = [Fraction(b - a, denominator) for a, b in zip(bounds, bounds[1:])]

        def weight(w, i=i, rows=rows):
            part = w[i]
            if not part:
                return Fraction(1, system.alphabets[i])
            return rows[part[1:]][part[0]]

        gens.append(CylinderFunction.from_function(system, gdepth, weight))
    return Cocycle(system, tuple(gens), STRICT)
