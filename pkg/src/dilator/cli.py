"""dilator: command-line front end.

Every subcommand prints one JSON report on stdout.  Exit status is 0 when
every check passed or certified, 1 when some check failed or produced a
counterexample, 2 for unreadable input, 3 for an internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from . import circle, cocycle, dilation, interaction, kernels
from .report import VerificationReport, digest, dumps

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class MalformedInput(Exception):
    pass


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise MalformedInput(f"{path}: {exc.strerror}") from exc


def load_system(path: str, seed: int = 0, alphabets: Sequence[int] = (2,)) -> tuple[cocycle.Cocycle, bytes]:
    """A cocycle file, or the word ``random`` for a seeded random strict cocycle."""
    if path == "random":
        c = cocycle.random_cocycle(alphabets, seed=seed)
        raw = json.dumps(c.to_json(), sort_keys=True).encode()
        return c, raw
    raw = _read(path)
    try:
        return cocycle.Cocycle.from_json(json.loads(raw)), raw
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise MalformedInput(f"{path}: {exc}") from exc


def load_kernel(path: str) -> tuple[kernels.FiniteKernel, bytes]:
    raw = _read(path)
    try:
        return kernels.FiniteKernel.from_json(json.loads(raw)), raw
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise MalformedInput(f"{path}: {exc}") from exc


def _envelope(command: str, raw: bytes, params: dict, rep: VerificationReport, verbose: bool, **extra) -> dict:
    out = {"tool": "dilator", "version": __version__, "command": command,
           "input_digest": digest(raw), "parameters": params}
    out.update(extra)
    out.update(rep.to_json(verbose=verbose))
    return out


# -- subcommands -----------------------------------------------------------


def cmd_validate(args) -> tuple[dict, bool]:
    c, raw = load_system(args.system, args.seed, args.alphabet)
    rep = cocycle.validate(c)
    if rep.ok:
        rep.extend(cocycle.check_extension(c, args.word_bound))
        rep.extend(cocycle.check_factorizations(c, args.word_bound))
        rep.extend(cocycle.check_coherence(c, args.word_bound))
    return _envelope("validate", raw, {"word_bound": args.word_bound}, rep, args.verbose), rep.ok


def cmd_axioms(args) -> tuple[dict, bool]:
    c, raw = load_system(args.system, args.seed, args.alphabet)
    sys_ = interaction.InteractionSystem(c, coherence_bound=args.word_bound)
    rep = VerificationReport().extend(sys_.validation)
    rep.extend(sys_.coherence)
    rep.extend(interaction.axiom_suite(sys_, args.depth, args.word_bound))
    rep.extend(interaction.partial_action_suite(sys_, args.depth, args.word_bound))
    params = {"depth": args.depth, "word_bound": args.word_bound}
    return _envelope("axioms", raw, params, rep, args.verbose), rep.ok


def cmd_dilate(args) -> tuple[dict, bool]:
    c, raw = load_system(args.system, args.seed, args.alphabet)
    sys_ = interaction.InteractionSystem(c, coherence_bound=args.word_bound)
    rep = VerificationReport().extend(sys_.validation)
    rep.extend(dilation.dilation_suite(sys_, args.depth, args.word_bound))
    rep.extend(dilation.faithfulness(sys_, args.level, args.depth))
    rep.extend(dilation.expectation_forcing(sys_, args.depth, args.word_bound))
    rep.extend(dilation.fiber_suite(sys_, args.level))
    params = {"depth": args.depth, "word_bound": args.word_bound, "level": args.level}
    return _envelope("dilate", raw, params, rep, args.verbose), rep.ok


def cmd_kernel(args) -> tuple[dict, bool]:
    k, raw = load_kernel(args.kernel)
    rep = kernels.faithfulness_report(k)
    extra = {}
    if rep.ok or rep.named("kernel.faithful"):
        faithful, index, _ = kernels.faithfulness_and_index(k)
        extra = {"faithful": faithful,
                 "index": index if isinstance(index, str) else {z: str(v) for z, v in index.items()}}
        # kernel -> map -> kernel
        back = kernels.kernel_from_map(k.Z, k.X, k.projection, lambda b: kernels.map_from_kernel(k, b))
        rep.add("kernel.round_trip", back == k)
    return _envelope("kernel", raw, {}, rep, args.verbose, **extra), rep.ok


def cmd_solenoid(args) -> tuple[dict, bool]:
    w = circle.parse_cocycle(args.omega)
    m = circle.MonomialIndex.parse(args.m)
    xs = circle.circle_samples(args.samples)
    by_sum = circle.solenoid_expectation(m, xs, "sum", d=args.d)
    closed = circle.solenoid_expectation(m, xs, "closed_form", d=args.d)
    rep = VerificationReport()
    gap = float(np.max(np.abs(by_sum - closed))) if len(xs) else 0.0
    rep.add("solenoid.modes_agree", gap <= args.tol, witness={"max_gap": gap}, tol=args.tol)
    unit = circle.transfer_numeric(w, np.ones_like, xs)
    ugap = float(np.max(np.abs(unit - 1))) if len(xs) else 0.0
    rep.add("circle.transfer_unital", ugap <= args.tol, witness={"max_gap": ugap}, tol=args.tol)
    samples = [
        {"x": {"re": float(x.real), "im": float(x.imag)},
         "sum": {"re": float(a.real), "im": float(a.imag)},
         "closed_form": {"re": float(b.real), "im": float(b.imag)}}
        for x, a, b in zip(xs, by_sum, closed)
    ]
    raw = json.dumps({"omega": w.to_json(), "m": str(m), "samples": args.samples, "d": args.d},
                     sort_keys=True).encode()
    params = {"omega": args.omega, "m": str(m), "samples": args.samples, "tol": args.tol, "d": args.d}
    extra = {"classification": circle.classify(w), "mbar": m.mbar, "exponent": m.exponent(args.d),
             "values": samples}
    return _envelope("solenoid", raw, params, rep, args.verbose, **extra), rep.ok


def cmd_compare(args) -> tuple[dict, bool]:
    c1, raw1 = load_system(args.system)
    c2, raw2 = load_system(args.other)
    if c1.mode == cocycle.RELAXED or c2.mode == cocycle.RELAXED:
        raise MalformedInput("compare needs strict cocycles (the index of a relaxed one can be infinite)")
    rep = interaction.compare_suite(interaction.InteractionSystem(c1), interaction.InteractionSystem(c2),
                                    args.depth, args.word_bound)
    params = {"depth": args.depth, "word_bound": args.word_bound}
    return _envelope("compare", raw1 + b"\0" + raw2, params, rep, args.verbose), rep.ok


# -- parser ----------------------------------------------------------------


def _alphabets(text: str) -> List[int]:
    return [int(x) for x in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dilator", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"dilator {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def system_cmd(name, help_, func, depth=3, level=False):
        s = sub.add_parser(name, help=help_)
        s.add_argument("system", help="cocycle JSON file, or 'random'")
        if depth is not None:
            s.add_argument("--depth", "-D", type=int, default=depth)
        s.add_argument("--word-bound", "-W", type=int, default=2)
        if level:
            s.add_argument("--level", "-N", type=int, default=4)
        s.add_argument("--seed", type=int, default=0, help="seed for 'random' (default 0)")
        s.add_argument("--alphabet", type=_alphabets, default=[2], help="alphabet sizes for 'random', e.g. 2,3")
        s.add_argument("--verbose", "-v", action="store_true", help="list passing checks too")
        s.set_defaults(func=func)
        return s

    system_cmd("validate", "check normalization, extension, generator orders and coherence", cmd_validate,
               depth=None)
    system_cmd("axioms", "interaction-group axioms and the partial action", cmd_axioms)
    system_cmd("dilate", "dilation law, admissibility, faithfulness, fiber measures", cmd_dilate, level=True)

    s = sub.add_parser("kernel", help="finite stochastic kernel: expectation, faithfulness, index")
    s.add_argument("kernel")
    s.add_argument("--verbose", "-v", action="store_true")
    s.set_defaults(func=cmd_kernel)

    s = sub.add_parser("solenoid", help="solenoid conditional expectation on a monomial")
    s.add_argument("--omega", default="w1", help="w1, w2, w3 or 't:v,...' breakpoints (t in units of pi)")
    s.add_argument("--m", default="0:1", help="monomial exponents as 'k:v,...'")
    s.add_argument("--samples", type=int, default=8)
    s.add_argument("--tol", type=float, default=circle.TOL)
    s.add_argument("--d", type=int, default=2, help="degree of the covering map z -> z^d")
    s.add_argument("--verbose", "-v", action="store_true")
    s.set_defaults(func=cmd_solenoid)

    s = sub.add_parser("compare", help="relate two interaction groups through their index ratio")
    s.add_argument("system")
    s.add_argument("other")
    s.add_argument("--depth", "-D", type=int, default=2)
    s.add_argument("--word-bound", "-W", type=int, default=2)
    s.add_argument("--verbose", "-v", action="store_true")
    s.set_defaults(func=cmd_compare)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, ok = args.func(args)
    except (MalformedInput, circle.InvalidCocycle, ValueError) as exc:
        if isinstance(exc, cocycle.InconsistentCocycle):
            sys.stdout.write(dumps({"tool": "dilator", "error": "inconsistent", "detail": str(exc),
                                    "witness": exc.witness}))
            return EXIT_INTERNAL
        sys.stderr.write(f"dilator: {exc}\n")
        return EXIT_INPUT
    sys.stdout.write(dumps(report))
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
