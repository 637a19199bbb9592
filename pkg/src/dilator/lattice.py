"""The semigroup N^k sitting inside its enveloping group Z^k.

Only the abelian lattice instance is shipped.  Code elsewhere in the package
talks to it through the small surface described by :class:`OreSemigroup`, so a
different Ore semigroup could be slotted in later without touching the
operator code.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Protocol, Sequence, Tuple, Union


class RankMismatch(ValueError):
    pass


@dataclass(frozen=True)
class LatticeElement:
    """An element of Z^k.  It is a semigroup element when every coordinate is >= 0."""

    coords: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coords:
            raise ValueError("rank must be positive")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @property
    def k(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def _check(self, other: "LatticeElement") -> None:
        if self.k != other.k:
            raise RankMismatch(f"rank {self.k} vs rank {other.k}")

    def __add__(self, other: "LatticeElement") -> "LatticeElement":
        self._check(other)
        return LatticeElement(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "LatticeElement") -> "LatticeElement":
        self._check(other)
        return LatticeElement(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self) -> "LatticeElement":
        return LatticeElement(tuple(-a for a in self))

    def __le__(self, other: "LatticeElement") -> bool:
        # r <= s iff s - r lies in the semigroup
        return (other - self).is_positive()

    def __ge__(self, other: "LatticeElement") -> bool:
        return other <= self

    def is_positive(self) -> bool:
        """True for semigroup elements (all coordinates non-negative)."""
        return all(c >= 0 for c in self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def norm(self) -> int:
        """Max-norm, the size used by every bounded quantifier in the package."""
        return max(abs(c) for c in self.coords)

    def total(self) -> int:
        return sum(self.coords)

    def to_json(self) -> list:
        return list(self.coords)

    def __repr__(self) -> str:
        if self.k == 1:
            return f"<{self.coords[0]}>"
        return "<" + ",".join(str(c) for c in self.coords) + ">"


ElementLike = Union[LatticeElement, int, Sequence[int]]


def as_element(t: ElementLike, k: int | None = None) -> LatticeElement:
    """Coerce an int or an integer sequence to a :class:`LatticeElement`."""
    if isinstance(t, LatticeElement):
        out = t
    elif isinstance(t, int):
        out = LatticeElement((t,))
    else:
        out = LatticeElement(tuple(t))
    if k is not None and out.k != k:
        raise RankMismatch(f"expected rank {k}, got rank {out.k}")
    return out


def zero(k: int) -> LatticeElement:
    return LatticeElement((0,) * k)


def generator(i: int, k: int) -> LatticeElement:
    return LatticeElement(tuple(1 if j == i else 0 for j in range(k)))


def constant(n: int, k: int) -> LatticeElement:
    return LatticeElement((n,) * k)


def join(r: ElementLike, s: ElementLike) -> LatticeElement:
    """Least upper bound of two semigroup elements (componentwise max)."""
    r, s = as_element(r), as_element(s)
    r._check(s)
    if not (r.is_positive() and s.is_positive()):
        raise ValueError(f"join is defined on semigroup elements, got {r} and {s}")
    return LatticeElement(tuple(max(a, b) for a, b in zip(r, s)))


def decompose(t: ElementLike) -> Tuple[LatticeElement, LatticeElement]:
    """Split a group element as ``t = s - r`` with r, s in the semigroup.

    The returned pair is the coordinatewise-minimal one: ``r`` is the negative
    part and ``s`` the positive part of ``t``.
    """
    t = as_element(t)
    r = LatticeElement(tuple(max(-c, 0) for c in t))
    s = LatticeElement(tuple(max(c, 0) for c in t))
    return r, s


def decompositions(t: ElementLike, bound: int) -> Iterator[Tuple[LatticeElement, LatticeElement]]:
    """All decompositions ``(r + w, s + w)`` of ``t`` with ``|w| <= bound``."""
    r, s = decompose(t)
    for w in semigroup_ball(bound, r.k):
        yield r + w, s + w


def ball(W: int, k: int) -> list[LatticeElement]:
    """Group elements of max-norm at most W, lexicographically ordered."""
    return [LatticeElement(c) for c in itertools.product(range(-W, W + 1), repeat=k)]


def semigroup_ball(W: int, k: int) -> list[LatticeElement]:
    """Semigroup elements with every coordinate at most W, lexicographically ordered."""
    return [LatticeElement(c) for c in itertools.product(range(W + 1), repeat=k)]


def below(n: ElementLike) -> list[LatticeElement]:
    """Semigroup elements r with 0 <= r <= n."""
    n = as_element(n)
    return [LatticeElement(c) for c in itertools.product(*(range(m + 1) for m in n))]


def generator_words(t: ElementLike) -> Iterable[Tuple[int, ...]]:
    """Every ordering of the generators whose sum is ``t`` (distinct sequences only)."""
    t = as_element(t)
    if not t.is_positive():
        raise ValueError(f"{t} is not a semigroup element")
    letters = [i for i, c in enumerate(t) for _ in range(c)]
    seen = set()
    for perm in itertools.permutations(letters):
        if perm not in seen:
            seen.add(perm)
            yield perm


class OreSemigroup(Protocol):
    """What the operator code needs from an Ore semigroup P inside G = P^{-1}P."""

    k: int

    def identity(self) -> LatticeElement: ...

    def compose(self, r: LatticeElement, s: LatticeElement) -> LatticeElement: ...

    def le(self, r: LatticeElement, s: LatticeElement) -> bool: ...

    def join(self, r: LatticeElement, s: LatticeElement) -> LatticeElement: ...

    def decompose(self, t: LatticeElement) -> Tuple[LatticeElement, LatticeElement]: ...


@dataclass(frozen=True)
class NaturalLattice:
    """P = N^k with G = Z^k."""

    k: int

    def identity(self) -> LatticeElement:
        return zero(self.k)

    def compose(self, r: LatticeElement, s: LatticeElement) -> LatticeElement:
        return r + s

    def le(self, r: LatticeElement, s: LatticeElement) -> bool:
        return r <= s

    def join(self, r: LatticeElement, s: LatticeElement) -> LatticeElement:
        return join(r, s)

    def decompose(self, t: LatticeElement) -> Tuple[LatticeElement, LatticeElement]:
        return decompose(t)
