"""Locally constant rational functions on a product of one-sided full shifts.

A point of X = prod_i {0..d_i-1}^N is never stored.  A :class:`Word` (one
finite string per factor) stands in for every point sharing that prefix, and
a :class:`CylinderFunction` of depth ``n`` is a table indexed by the words
whose i-th string has length exactly ``n[i]``.  Since every function handled
by the package is of this form, quantifying over all words at the largest
depth in play is exhaustive.

The i-th covering map is the shift on the i-th factor; prepending a symbol
to a factor walks to a preimage.
"""
from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, Mapping, Sequence, Tuple, Union

from .lattice import ElementLike, LatticeElement, as_element

Word = Tuple[Tuple[int, ...], ...]
Depth = Tuple[int, ...]
Scalar = Union[int, Fraction]

_SYMBOLS = string.digits + string.ascii_lowercase


class SystemMismatch(ValueError):
    pass


class WordTooShort(ValueError):
    pass


def parse_rational(s: Union[str, int, Fraction]) -> Fraction:
    return Fraction(s)


def format_rational(q: Fraction) -> str:
    """Canonical "p/q" text (integers print without a denominator)."""
    return str(Fraction(q))


@dataclass(frozen=True)
class ShiftSystem:
    """k one-sided full shifts with alphabet sizes d_1..d_k (each d_i >= 2)."""

    alphabets: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabets", tuple(int(d) for d in self.alphabets))
        if not self.alphabets:
            raise ValueError("need at least one factor")
        if any(d < 2 for d in self.alphabets):
            raise ValueError(f"alphabet sizes must be >= 2, got {self.alphabets}")
        if any(d > len(_SYMBOLS) for d in self.alphabets):
            raise ValueError(f"alphabet sizes above {len(_SYMBOLS)} are not supported")

    @property
    def k(self) -> int:
        return len(self.alphabets)

    def depth(self, n: Union[int, Sequence[int], LatticeElement]) -> Depth:
        if isinstance(n, int):
            out = (n,) * self.k
        else:
            out = tuple(int(c) for c in n)
        if len(out) != self.k:
            raise SystemMismatch(f"depth {out} has wrong rank for {self}")
        if any(c < 0 for c in out):
            raise ValueError(f"negative depth {out}")
        return out

    def size(self, depth: Depth) -> int:
        out = 1
        for d, n in zip(self.alphabets, depth):
            out *= d**n
        return out

    def words(self, depth: Union[int, Sequence[int]]) -> Iterator[Word]:
        """All words of the given depth, in table order."""
        depth = self.depth(depth)
        ranges = [range(d) for d, n in zip(self.alphabets, depth) for _ in range(n)]
        for flat in itertools.product(*ranges):
            yield self._split(flat, depth)

    @staticmethod
    def _split(flat: Sequence[int], depth: Depth) -> Word:
        out, pos = [], 0
        for n in depth:
            out.append(tuple(flat[pos:pos + n]))
            pos += n
        return tuple(out)

    def index(self, word: Word) -> int:
        idx = 0
        for d, part in zip(self.alphabets, word):
            for c in part:
                idx = idx * d + c
        return idx

    def prefixes(self, t: ElementLike) -> Iterator[Word]:
        """The d^t prefix blocks that prepend to a word to give its level-t preimages."""
        return self.words(tuple(as_element(t, self.k)))

    def parse_word(self, text: str) -> Word:
        parts = text.split("|")
        if len(parts) != self.k:
            raise ValueError(f"word {text!r} needs {self.k} factor(s)")
        word = tuple(tuple(_SYMBOLS.index(ch) for ch in p) for p in parts)
        for d, part in zip(self.alphabets, word):
            if any(c >= d for c in part):
                raise ValueError(f"word {text!r} uses a symbol outside the alphabet")
        return word

    def format_word(self, word: Word) -> str:
        return "|".join("".join(_SYMBOLS[c] for c in part) for part in word)

    def to_json(self) -> list:
        return [{"alphabet": d} for d in self.alphabets]


def word_lengths(word: Word) -> Depth:
    return tuple(len(p) for p in word)


def truncate(word: Word, depth: Depth) -> Word:
    return tuple(p[:n] for p, n in zip(word, depth))


def drop(word: Word, t: Sequence[int]) -> Word:
    """Apply the shift t times per factor: forget the first t_i symbols of factor i."""
    return tuple(p[n:] for p, n in zip(word, t))


def prepend(prefix: Word, word: Word) -> Word:
    return tuple(a + b for a, b in zip(prefix, word))


class CylinderFunction:
    """Exact rational function on X depending on the first ``depth[i]`` symbols of factor i.

    Equality is decided by raising both sides to the join depth; no reduced
    form is needed for correctness.  ``normalized()`` exists for display and
    hashing.
    """

    __slots__ = ("system", "depth", "table")

    def __init__(self, system: ShiftSystem, depth: Sequence[int], table: Sequence[Scalar]):
        self.system = system
        self.depth = system.depth(depth)
        self.table = tuple(Fraction(v) for v in table)
        if len(self.table) != system.size(self.depth):
            raise ValueError(
                f"table has {len(self.table)} entries, depth {self.depth} needs {system.size(self.depth)}"
            )

    # -- construction ---------------------------------------------------

    @classmethod
    def from_function(cls, system: ShiftSystem, depth, fn: Callable[[Word], Scalar]) -> "CylinderFunction":
        depth = system.depth(depth)
        return cls(system, depth, [fn(w) for w in system.words(depth)])

    @classmethod
    def from_mapping(cls, system: ShiftSystem, depth, table: Mapping[str, Union[str, Scalar]]) -> "CylinderFunction":
        depth = system.depth(depth)
        values: Dict[Word, Fraction] = {}
        for key, val in table.items():
            w = system.parse_word(key)
            if word_lengths(w) != depth:
                raise ValueError(f"table key {key!r} does not have depth {depth}")
            values[w] = parse_rational(val)
        missing = [system.format_word(w) for w in system.words(depth) if w not in values]
        if missing:
            raise ValueError(f"table is missing words {missing[:4]}")
        return cls(system, depth, [values[w] for w in system.words(depth)])

    @classmethod
    def constant(cls, system: ShiftSystem, c: Scalar) -> "CylinderFunction":
        return cls(system, (0,) * system.k, [c])

    @classmethod
    def indicator(cls, system: ShiftSystem, word: Word) -> "CylinderFunction":
        """1 on the cylinder of points that start with ``word``."""
        depth = word_lengths(word)
        return cls.from_function(system, depth, lambda w: int(w == word))

    # -- evaluation and refinement ---------------------------------------

    def __call__(self, word: Word) -> Fraction:
        return self.evaluate(word)

    def evaluate(self, word: Word) -> Fraction:
        lens = word_lengths(word)
        if len(lens) != self.system.k:
            raise SystemMismatch(f"word {word} has wrong number of factors")
        if any(l < n for l, n in zip(lens, self.depth)):
            raise WordTooShort(f"word of lengths {lens} is shorter than depth {self.depth}")
        return self.table[self.system.index(truncate(word, self.depth))]

    def raise_depth(self, depth: Sequence[int]) -> "CylinderFunction":
        depth = self.system.depth(depth)
        if depth == self.depth:
            return self
        if any(a < b for a, b in zip(depth, self.depth)):
            raise ValueError(f"cannot lower depth {self.depth} to {depth}")
        return CylinderFunction.from_function(self.system, depth, self.evaluate)

    def items(self) -> Iterator[Tuple[Word, Fraction]]:
        return zip(self.system.words(self.depth), self.table)

    def vector(self, depth: Sequence[int]) -> list[Fraction]:
        """Table at ``depth`` as a plain list (for linear algebra)."""
        return list(self.raise_depth(depth).table)

    # -- *-algebra ---------------------------------------------------------

    def _align(self, other: "CylinderFunction") -> Tuple["CylinderFunction", "CylinderFunction"]:
        if other.system != self.system:
            raise SystemMismatch(f"{self.system} vs {other.system}")
        depth = tuple(max(a, b) for a, b in zip(self.depth, other.depth))
        return self.raise_depth(depth), other.raise_depth(depth)

    def _lift(self, other) -> "CylinderFunction":
        if isinstance(other, CylinderFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return CylinderFunction.constant(self.system, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        return CylinderFunction(self.system, a.depth, [x + y for x, y in zip(a.table, b.table)])

    __radd__ = __add__

    def __neg__(self) -> "CylinderFunction":
        return CylinderFunction(self.system, self.depth, [-x for x in self.table])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, CylinderFunction):
            return NotImplemented
        a, b = self._align(other)
        return CylinderFunction(self.system, a.depth, [x * y for x, y in zip(a.table, b.table)])

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Scalar) -> "CylinderFunction":
        c = Fraction(c)
        return CylinderFunction(self.system, self.depth, [c * x for x in self.table])

    def conjugate(self) -> "CylinderFunction":
        # real scalars: the involution is the identity
        return self

    def reciprocal(self) -> "CylinderFunction":
        if any(x == 0 for x in self.table):
            raise ZeroDivisionError("reciprocal of a function with a zero entry")
        return CylinderFunction(self.system, self.depth, [1 / x for x in self.table])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return all(x == other for x in self.table)
        if not isinstance(other, CylinderFunction):
            return NotImplemented
        if other.system != self.system:
            return False
        a, b = self._align(other)
        return a.table == b.table

    def __hash__(self) -> int:
        n = self.normalized()
        return hash((n.system, n.depth, n.table))

    # -- predicates -------------------------------------------------------

    def is_positive(self) -> bool:
        return all(x >= 0 for x in self.table)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.table)

    def minimum(self) -> Fraction:
        return min(self.table)

    # -- shifts ------------------------------------------------------------

    def pullback(self, t: ElementLike) -> "CylinderFunction":
        """Compose with the shift: x -> f(sigma^t x).  Depth grows by t."""
        t = as_element(t, self.system.k)
        if not t.is_positive():
            raise ValueError(f"shift pullback needs a semigroup element, got {t}")
        depth = tuple(n + c for n, c in zip(self.depth, t))
        return CylinderFunction.from_function(self.system, depth, lambda w: self.evaluate(drop(w, t)))

    def in_shift_range(self, t: ElementLike) -> bool:
        """True iff f ignores the first t_i symbols of every factor, i.e. f = g o sigma^t."""
        try:
            self.shift_quotient(t)
        except ValueError:
            return False
        return True

    def shift_quotient(self, t: ElementLike) -> "CylinderFunction":
        """The g with g o sigma^t == f; raises ValueError when there is none."""
        t = as_element(t, self.system.k)
        f = self.raise_depth(tuple(max(n, c) for n, c in zip(self.depth, t)))
        qdepth = tuple(n - c for n, c in zip(f.depth, t))
        values: Dict[Word, Fraction] = {}
        for w, v in f.items():
            key = drop(w, t)
            if values.setdefault(key, v) != v:
                raise ValueError(f"function depends on the first {tuple(t)} symbols")
        return CylinderFunction(self.system, qdepth, [values[w] for w in self.system.words(qdepth)])

    def normalized(self) -> "CylinderFunction":
        """Same function at the smallest depth that still determines it."""
        f = self
        for i in range(self.system.k):
            while f.depth[i] > 0:
                smaller = tuple(n - (j == i) for j, n in enumerate(f.depth))
                try:
                    values = {}
                    for w, v in f.items():
                        if values.setdefault(truncate(w, smaller), v) != v:
                            raise ValueError
                except ValueError:
                    break
                f = CylinderFunction(self.system, smaller, [values[w] for w in self.system.words(smaller)])
        return f

    # -- text --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "depth": list(self.depth),
            "table": {self.system.format_word(w): format_rational(v) for w, v in self.items()},
        }

    def __repr__(self) -> str:
        n = self.normalized()
        if all(d == 0 for d in n.depth):
            return f"CylinderFunction(const {format_rational(n.table[0])})"
        body = ", ".join(f"{n.system.format_word(w)}:{format_rational(v)}" for w, v in n.items())
        return f"CylinderFunction(depth={n.depth}, {{{body}}})"


def indicator_basis(system: ShiftSystem, depth) -> list[CylinderFunction]:
    """Indicators of all depth-``depth`` cylinders, in table order."""
    return [CylinderFunction.indicator(system, w) for w in system.words(depth)]


def shift_pullback(t: ElementLike, f: CylinderFunction) -> CylinderFunction:
    """The endomorphism a -> a o theta_t."""
    return f.pullback(t)
