"""Brute-force reference computations on plain strings, independent of the package.

Only single-factor binary shifts with weights that depend on the first
symbol are covered; that is enough to pin the frozen values in the tests.
"""
from fractions import Fraction
from itertools import product


def words(n, d=2):
    return ["".join(map(str, w)) for w in product(range(d), repeat=n)]


def weight(gen, t, y):
    """omega(t, y) = prod_{j < t} gen[y_j] for a first-symbol weight table ``gen``."""
    out = Fraction(1)
    for j in range(t):
        out *= Fraction(gen[int(y[j])])
    return out


def transfer(gen, t, f, n_out, d=2):
    """{x: sum over prefixes p of length t of omega(t, px) f(px)} for words x of length n_out."""
    return {x: sum((weight(gen, t, p + x) * f(p + x) for p in words(t, d)), Fraction(0)) for x in words(n_out, d)}
