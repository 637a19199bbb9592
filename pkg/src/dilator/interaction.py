"""Transfer operators and the interaction group V extending the shift endomorphisms.

For t = s - r with r, s in N^k,

    V_t(a)(x) = sum over level-r preimages y of x of  omega(r, y) * a(sigma^s y),

so V_t is the shift pullback on the semigroup and the weighted transfer
operator on its inverse.  Everything is exact; the suites below quantify over
the full indicator basis at a fixed depth and a max-norm ball of group elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import lattice
from .cocycle import RELAXED, Cocycle, check_coherence, extend, validate
from .cylinder import CylinderFunction, ShiftSystem, indicator_basis, prepend
from .lattice import ElementLike, LatticeElement, as_element
from .linalg import Subspace, nullspace, rank
from .report import VerificationReport


@dataclass(eq=False)
class InteractionSystem:
    cocycle: Cocycle
    coherence_bound: int = 2

    @property
    def system(self) -> ShiftSystem:
        return self.cocycle.system

    @property
    def k(self) -> int:
        return self.cocycle.k

    @cached_property
    def validation(self) -> VerificationReport:
        return validate(self.cocycle)

    @cached_property
    def coherence(self) -> VerificationReport:
        return check_coherence(self.cocycle, self.coherence_bound)

    def element(self, t: ElementLike) -> LatticeElement:
        return as_element(t, self.k)

    def weight(self, t: ElementLike) -> CylinderFunction:
        return extend(self.cocycle, t)

    # -- operators ---------------------------------------------------------

    def alpha(self, t: ElementLike, a: CylinderFunction) -> CylinderFunction:
        return a.pullback(self.element(t))

    def transfer(self, t: ElementLike, b: CylinderFunction) -> CylinderFunction:
        return transfer(self, t, b)

    def v(self, t: ElementLike, a: CylinderFunction) -> CylinderFunction:
        return v_apply(self, t, a)

    def expectation(self, t: ElementLike, a: CylinderFunction) -> CylinderFunction:
        return expectation(self, t, a)

    def index(self, t: ElementLike) -> CylinderFunction:
        """Watatani index of E_t: the pointwise reciprocal of omega(t, .)."""
        if self.cocycle.mode == RELAXED:
            raise ValueError("index needs a strict cocycle")
        return self.weight(t).reciprocal()


def transfer(sys: InteractionSystem, t: ElementLike, b: CylinderFunction) -> CylinderFunction:
    """L_t(b)(x) = sum over the d^t prepended prefixes p of omega(t, p.x) * b(p.x)."""
    t = sys.element(t)
    if not t.is_positive():
        raise ValueError(f"transfer operators are indexed by semigroup elements, got {t}")
    if t.is_zero():
        return b
    w = sys.weight(t)
    depth = tuple(max(max(a, c) - n, 0) for a, c, n in zip(w.depth, b.depth, t))
    prefixes = list(sys.system.prefixes(t))

    def value(x):
        total = Fraction(0)
        for p in prefixes:
            y = prepend(p, x)
            total += w(y) * b(y)
        return total

    return CylinderFunction.from_function(sys.system, depth, value)


def v_apply(
    sys: InteractionSystem,
    t: ElementLike,
    a: CylinderFunction,
    decomposition: Optional[Tuple[LatticeElement, LatticeElement]] = None,
) -> CylinderFunction:
    """V_t(a) = L_r(alpha_s(a)) for t = s - r (minimal decomposition unless one is given)."""
    t = sys.element(t)
    r, s = decomposition if decomposition is not None else lattice.decompose(t)
    if s - r != t:
        raise ValueError(f"{s} - {r} is not {t}")
    return transfer(sys, r, a.pullback(s))


def expectation(sys: InteractionSystem, t: ElementLike, a: CylinderFunction) -> CylinderFunction:
    """E_t = alpha_t L_t: weighted average over the first t symbols."""
    t = sys.element(t)
    if not t.is_positive():
        raise ValueError(f"E_t is defined here for semigroup elements, got {t}")
    return transfer(sys, t, a).pullback(t)


def operator_matrix(sys: InteractionSystem, t: ElementLike, depth) -> Tuple[tuple, List[List[Fraction]]]:
    """Matrix of V_t on the depth-``depth`` indicator basis.

    Rows are output words (at a common output depth), columns input basis
    words, so ``V_t(a)(x) = sum_w M[x][w] a(w)``.
    """
    basis = indicator_basis(sys.system, depth)
    images = [v_apply(sys, t, e) for e in basis]
    out_depth = tuple(max(col) for col in zip(*(f.depth for f in images)))
    cols = [f.vector(out_depth) for f in images]
    return out_depth, [list(row) for row in zip(*cols)]


# -- suites ----------------------------------------------------------------


class _Ops:
    """Memoized V_t on basis elements and their images, for the suites."""

    def __init__(self, sys: InteractionSystem):
        self.sys = sys
        self.memo: Dict[tuple, CylinderFunction] = {}

    def v(self, t: LatticeElement, a: CylinderFunction) -> CylinderFunction:
        key = (t, a.depth, a.table)
        if key not in self.memo:
            self.memo[key] = v_apply(self.sys, t, a)
        return self.memo[key]


def _fmt(f: CylinderFunction) -> str:
    return repr(f)


def _first_mismatch(pairs: Iterable[Tuple[CylinderFunction, CylinderFunction, CylinderFunction]]):
    for a, lhs, rhs in pairs:
        if lhs != rhs:
            return {"element": _fmt(a), "lhs": _fmt(lhs), "rhs": _fmt(rhs)}
    return None


def axiom_suite(sys: InteractionSystem, D: int = 3, W: int = 2) -> VerificationReport:
    """Interaction-group axioms, checked exactly on the depth-D indicator basis and ball(W)."""
    rep = VerificationReport()
    ops = _Ops(sys)
    V = ops.v
    k = sys.k
    basis = indicator_basis(sys.system, D)
    one = CylinderFunction.constant(sys.system, 1)
    ball = lattice.ball(W, k)
    e = lattice.zero(k)

    w = _first_mismatch((a, V(e, a), a) for a in basis)
    rep.add("axiom.identity", w is None, witness=w)

    for s in ball:
        for t in ball:
            w = _first_mismatch((a, V(-s, V(s, V(t, a))), V(-s, V(s + t, a))) for a in basis)
            rep.add("axiom.partial_rep_left", w is None, witness=w, s=s.to_json(), t=t.to_json())
            w = _first_mismatch((a, V(s, V(t, V(-t, a))), V(s + t, V(-t, a))) for a in basis)
            rep.add("axiom.partial_rep_right", w is None, witness=w, s=s.to_json(), t=t.to_json())

    for t in ball:
        img = V(t, one)
        rep.add("axiom.unital", img == 1, witness={"lhs": _fmt(img), "rhs": "1"}, t=t.to_json())
        neg = next((a for a in basis if not V(t, a).is_positive()), None)
        rep.add("axiom.positive", neg is None,
                witness={"element": _fmt(neg), "image": _fmt(V(t, neg))} if neg is not None else None,
                t=t.to_json())

    for t in ball:
        ranged = [V(-t, x) for x in basis]
        w = None
        for a in ranged:
            for b in basis:
                for order, (p, q) in (("a*b", (a, b)), ("b*a", (b, a))):
                    lhs = v_apply(sys, t, p * q)
                    rhs = V(t, a) * V(t, b) if order == "a*b" else V(t, b) * V(t, a)
                    if lhs != rhs:
                        w = {"a": _fmt(a), "b": _fmt(b), "order": order, "lhs": _fmt(lhs), "rhs": _fmt(rhs)}
                        break
                if w:
                    break
            if w:
                break
        rep.add("axiom.multiplicative_on_range", w is None, witness=w, t=t.to_json())

    for t in ball:
        w = None
        for r, s in lattice.decompositions(t, W):
            w = _first_mismatch((a, v_apply(sys, t, a, (r, s)), V(t, a)) for a in basis)
            if w:
                w["decomposition"] = [r.to_json(), s.to_json()]
                break
        rep.add("axiom.decomposition_independent", w is None, witness=w, t=t.to_json())

    # transfer-operator identities on the semigroup part of the ball
    for t in lattice.semigroup_ball(W, k):
        w = _first_mismatch((a, transfer(sys, t, a.pullback(t)), a) for a in basis)
        rep.add("transfer.left_inverse", w is None, witness=w, t=t.to_json())
        w = None
        for a in basis:
            w = _first_mismatch((b, transfer(sys, t, a.pullback(t) * b), a * transfer(sys, t, b)) for b in basis)
            if w:
                w["a"] = _fmt(a)
                break
        rep.add("transfer.module_identity", w is None, witness=w, t=t.to_json())

    for t in ball:
        _, m = operator_matrix(sys, t, D)
        bad = next((i for i, row in enumerate(m) if sum(row) != 1 or min(row) < 0), None)
        rep.add("operator.stochastic_matrix", bad is None,
                witness={"row": bad, "entries": [str(x) for x in m[bad]]} if bad is not None else None,
                t=t.to_json(), depth=D)
    return rep


def _span(fs: Sequence[CylinderFunction], depth) -> Subspace:
    return Subspace([f.vector(depth) for f in fs], len(fs[0].vector(depth)) if fs else 0)


def _join_depth(fs: Iterable[CylinderFunction]) -> tuple:
    return tuple(max(col) for col in zip(*(f.depth for f in fs)))


def range_slice(sys: InteractionSystem, t: ElementLike, D: int) -> List[CylinderFunction]:
    """V_t applied to the depth-D indicator basis: a spanning set for a slice of A_t."""
    return [v_apply(sys, t, a) for a in indicator_basis(sys.system, D)]


def partial_action_suite(sys: InteractionSystem, D: int = 3, W: int = 2) -> VerificationReport:
    """The partial action t -> (gamma_t : A_{-t} -> A_t) and the commuting expectations E_t."""
    rep = VerificationReport()
    ops = _Ops(sys)
    V = ops.v
    k = sys.k
    basis = indicator_basis(sys.system, D)
    ball = lattice.ball(W, k)
    positive = [t for t in ball if t.is_positive()]

    for t in positive:
        img = [V(t, a) for a in basis]
        shifted = [a.pullback(t) for a in basis]
        depth = _join_depth(img + shifted)
        same = _span(img, depth) == _span(shifted, depth)
        outside = next((f for f in img if not f.in_shift_range(t)), None)
        rep.add("partial.range_is_shift_range", same and outside is None,
                witness={"element": _fmt(outside)} if outside is not None else {"span": "differs"},
                t=t.to_json())

    for t in ball:
        dom = [V(-t, a) for a in basis]
        w = _first_mismatch((g, V(-t, V(t, g)), g) for g in dom)
        rep.add("partial.inverse_on_domain", w is None, witness=w, t=t.to_json())
        cod = [V(t, a) for a in basis]
        w = _first_mismatch((h, V(t, V(-t, h)), h) for h in cod)
        rep.add("partial.inverse_on_range", w is None, witness=w, t=t.to_json())
        moved = [V(t, g) for g in dom]
        rd = rank([g.vector(_join_depth(dom)) for g in dom])
        rm = rank([h.vector(_join_depth(moved)) for h in moved])
        rep.add("partial.injective_on_slice", rd == rm, witness={"rank_domain": rd, "rank_image": rm},
                t=t.to_json())

    for s in ball:
        for t in ball:
            gens = [V(-t, a) for a in basis]
            moved = [V(t, g) for g in gens]
            # gamma_t(g) lies in A_{-s} iff E_{-s} := V_{-s} V_s fixes it
            resid = [h - V(-s, V(s, h)) for h in moved]
            depth = _join_depth(resid)
            cols = [f.vector(depth) for f in resid]
            rows = [list(row) for row in zip(*cols)]
            kernel = nullspace(rows, len(gens))
            w = None
            for c in kernel:
                a = CylinderFunction.constant(sys.system, 0)
                for cj, g in zip(c, gens):
                    if cj:
                        a = a + g.scale(cj)
                lhs, rhs = V(s + t, a), V(s, V(t, a))
                if lhs != rhs:
                    w = {"element": _fmt(a), "lhs": _fmt(lhs), "rhs": _fmt(rhs)}
                    break
            rep.add("partial.composition_extends", w is None, witness=w, s=s.to_json(), t=t.to_json(),
                    domain_dimension=len(kernel))

    for r in positive:
        for s in positive:
            w = _first_mismatch(
                (a, expectation(sys, r, expectation(sys, s, a)), expectation(sys, s, expectation(sys, r, a)))
                for a in basis
            )
            rep.add("partial.expectations_commute", w is None, witness=w, r=r.to_json(), s=s.to_json())

    for t in ball:
        def E(a, t=t):
            return V(t, V(-t, a))

        w = _first_mismatch((a, E(E(a)), E(a)) for a in basis)
        rep.add("partial.expectation_idempotent", w is None, witness=w, t=t.to_json())
        w = _first_mismatch((a, E(V(t, a)), V(t, a)) for a in basis)
        rep.add("partial.expectation_fixes_range", w is None, witness=w, t=t.to_json())
        if t.is_positive():
            w = _first_mismatch((a, expectation(sys, t, a), E(a)) for a in basis)
            rep.add("partial.expectation_formula", w is None, witness=w, t=t.to_json())
    return rep


def compare(sys: InteractionSystem, other: InteractionSystem, t: ElementLike, a: CylinderFunction):
    """Both sides of V_t(a) = V'_{-r}((Index E'_r / Index E_r) * alpha_s(a))."""
    if sys.system != other.system:
        raise ValueError("systems act on different shift spaces")
    t = sys.element(t)
    r, s = lattice.decompose(t)
    ratio = other.index(r) * sys.index(r).reciprocal()
    lhs = v_apply(sys, t, a)
    rhs = transfer(other, r, ratio * a.pullback(s))
    return lhs, rhs


def compare_suite(sys: InteractionSystem, other: InteractionSystem, D: int = 2, W: int = 2) -> VerificationReport:
    rep = VerificationReport()
    basis = indicator_basis(sys.system, D)
    for t in lattice.ball(W, sys.k):
        w = None
        for a in basis:
            lhs, rhs = compare(sys, other, t, a)
            if lhs != rhs:
                w = {"element": _fmt(a), "lhs": _fmt(lhs), "rhs": _fmt(rhs)}
                break
        rep.add("compare.index_ratio", w is None, witness=w, t=t.to_json())
    return rep
