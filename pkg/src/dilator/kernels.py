"""Positive unital maps C(Z) -> C(X) on finite sets, as stochastic kernels.

A row mu_x is a probability vector on Z and the map is F(b)(x) = sum_z mu_x(z) b(z).
On finite discrete spaces the topological side conditions collapse: every
map is w*-continuous, and a subset is nowhere dense only when it is empty.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .cylinder import format_rational
from .report import VerificationReport

Function = Dict[str, Fraction]

FINITE_NOTE = (
    "finite discrete spaces: maps are automatically w*-continuous and a zero set is "
    "nowhere dense only if it is empty"
)


class InvalidKernel(ValueError):
    pass


@dataclass(frozen=True)
class FiniteKernel:
    Z: Tuple[str, ...]
    X: Tuple[str, ...]
    pi: Tuple[Tuple[str, str], ...]
    rows: Tuple[Tuple[str, Tuple[Fraction, ...]], ...]

    @classmethod
    def build(cls, Z: Sequence[str], X: Sequence[str], pi: Mapping[str, str],
              rows: Mapping[str, Sequence]) -> "FiniteKernel":
        Z, X = tuple(Z), tuple(X)
        if set(pi) != set(Z):
            raise InvalidKernel("pi must be defined on every point of Z")
        if set(pi.values()) - set(X):
            raise InvalidKernel("pi maps outside X")
        if set(X) - set(pi.values()):
            raise InvalidKernel("pi is not surjective")
        if set(rows) != set(X):
            raise InvalidKernel("need exactly one row per point of X")
        out = []
        for x in X:
            row = tuple(Fraction(v) for v in rows[x])
            if len(row) != len(Z):
                raise InvalidKernel(f"row {x} has {len(row)} entries, Z has {len(Z)}")
            out.append((x, row))
        return cls(Z, X, tuple((z, pi[z]) for z in Z), tuple(out))

    @classmethod
    def from_json(cls, data: dict) -> "FiniteKernel":
        return cls.build(data["Z"], data["X"], data["pi"], data["rows"])

    def to_json(self) -> dict:
        return {
            "Z": list(self.Z),
            "X": list(self.X),
            "pi": dict(self.pi),
            "rows": {x: [format_rational(v) for v in row] for x, row in self.rows},
        }

    @property
    def projection(self) -> Dict[str, str]:
        return dict(self.pi)

    def row(self, x: str) -> Tuple[Fraction, ...]:
        return dict(self.rows)[x]

    def fiber(self, x: str) -> List[str]:
        return [z for z, image in self.pi if image == x]

    def check_rows(self) -> None:
        for x, row in self.rows:
            if any(v < 0 or v > 1 for v in row) or sum(row) != 1:
                raise InvalidKernel(f"row {x} is not a probability vector")

    def weight(self) -> Dict[str, Fraction]:
        """omega(z) = mu_{pi(z)}({z})."""
        pi = self.projection
        return {z: self.row(pi[z])[j] for j, z in enumerate(self.Z)}


def map_from_kernel(k: FiniteKernel, b: Mapping[str, Fraction]) -> Function:
    """F(b)(x) = sum_z mu_x(z) b(z)."""
    k.check_rows()
    return {x: sum((m * Fraction(b[z]) for m, z in zip(row, k.Z)), Fraction(0)) for x, row in k.rows}


def kernel_from_map(Z: Sequence[str], X: Sequence[str], pi: Mapping[str, str],
                    F: Callable[[Mapping[str, Fraction]], Mapping[str, Fraction]]) -> FiniteKernel:
    """Recover mu_x(z) = F(delta_z)(x); inverse of :func:`map_from_kernel`."""
    cols = {z: F({w: Fraction(int(w == z)) for w in Z}) for z in Z}
    rows = {x: [Fraction(cols[z][x]) for z in Z] for x in X}
    return FiniteKernel.build(Z, X, pi, rows)


def indicator(points: Sequence[str], p: str) -> Function:
    return {q: Fraction(int(q == p)) for q in points}


def is_conditional_expectation(k: FiniteKernel) -> VerificationReport:
    """Support of every mu_x inside the fiber over x; then idempotence and the module law."""
    rep = VerificationReport([], [FINITE_NOTE])
    try:
        k.check_rows()
        rep.add("kernel.probability_rows", True)
    except InvalidKernel as exc:
        rep.add("kernel.probability_rows", False, witness={"error": str(exc)})
        return rep
    pi = k.projection
    for x, row in k.rows:
        off = [z for z, m in zip(k.Z, row) if m != 0 and pi[z] != x]
        rep.add("kernel.support_in_fiber", not off,
                witness={"x": x, "z": off[0], "mass": format_rational(row[k.Z.index(off[0])])} if off else None,
                x=x)
    if not rep.ok:
        return rep

    def lift(a: Mapping[str, Fraction]) -> Function:
        return {z: Fraction(a[pi[z]]) for z in k.Z}

    bad = None
    for z in k.Z:
        b = indicator(k.Z, z)
        once = map_from_kernel(k, b)
        twice = map_from_kernel(k, lift(once))
        if once != twice:
            bad = {"b": z, "F(b)": _fmt(once), "F(F(b))": _fmt(twice)}
            break
    rep.add("kernel.idempotent", bad is None, witness=bad)
    bad = None
    for x in k.X:
        a = indicator(k.X, x)
        for z in k.Z:
            b = indicator(k.Z, z)
            la = lift(a)
            lhs = map_from_kernel(k, {w: la[w] * b[w] for w in k.Z})
            fb = map_from_kernel(k, b)
            rhs = {y: a[y] * fb[y] for y in k.X}
            if lhs != rhs:
                bad = {"a": x, "b": z, "lhs": _fmt(lhs), "rhs": _fmt(rhs)}
                break
        if bad:
            break
    rep.add("kernel.bimodule", bad is None, witness=bad)
    return rep


def faithfulness_and_index(k: FiniteKernel) -> Tuple[bool, Union[Dict[str, Fraction], str], Optional[Function]]:
    """(faithful, index, witness) for a conditional-expectation kernel.

    The index is z -> 1 / omega(z) when every weight is positive and the
    string "infinite" otherwise; the witness is then the indicator of a
    zero-weight point, a nonzero positive b with F(b* b) = 0.
    """
    omega = k.weight()
    zeros = [z for z in k.Z if omega[z] == 0]
    if zeros:
        b = indicator(k.Z, zeros[0])
        return False, "infinite", b
    return True, {z: 1 / omega[z] for z in k.Z}, None


def faithfulness_report(k: FiniteKernel) -> VerificationReport:
    rep = is_conditional_expectation(k)
    if not rep.ok:
        return rep
    faithful, index, witness = faithfulness_and_index(k)
    if faithful:
        rep.record("kernel.faithful", "certificate", {"index": _fmt(index)})
    else:
        bb = {z: witness[z] * witness[z] for z in k.Z}
        value = map_from_kernel(k, bb)
        verified = any(v != 0 for v in witness.values()) and all(v == 0 for v in value.values())
        rep.record("kernel.faithful", "witness" if verified else "fail",
                   {"b": _fmt(witness), "F(b*b)": _fmt(value)})
    return rep


def _fmt(f: Mapping[str, Fraction]) -> Dict[str, str]:
    return {key: format_rational(v) for key, v in f.items()}
