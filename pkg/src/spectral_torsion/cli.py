"""Command-line entry point.

Exit codes: 0 when every check matches, 2 when a reference closed form
disagrees with the engine (reproducible discrepancy), 1 on engine faults.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional

from . import __version__
from .errors import EngineError, UnknownFunctional
from .report import ReportDocument
from .sampling import DEFAULT_SEED
from .scalar_ring import SYMBOLIC, ParamScalar, Params
from .verification_oracle import FUNCTIONALS, resolve_tags, summarize


def _params_from(args) -> Params:
    if args.symbolic or (args.a0 in (None, "symbolic") and args.b0 in (None, "symbolic")):
        return SYMBOLIC
    if args.a0 in (None, "symbolic") or args.b0 in (None, "symbolic"):
        raise SystemExit("give both --a0 and --b0, or neither")
    a, b = ParamScalar.parse(args.a0), ParamScalar.parse(args.b0)
    if not (a.is_const() and b.is_const()):
        raise SystemExit("--a0/--b0 must be numbers")
    return Params.numeric(a.const_value(), b.const_value())


def derive_report(functional: str, params: Params, trials: int, seed: int):
    from . import boundary_residue, interior_residue

    if functional == "torsion":
        return interior_residue.spectral_torsion(params, trials, seed)[1]
    if functional == "one-form":
        return interior_residue.spectral_one_form(params, trials, seed)[1]
    if functional == "boundary":
        return boundary_residue.boundary_torsion(params, trials, seed)[1]
    if functional == "sanity":
        return interior_residue.wres_laplacian_sanity(params)
    raise UnknownFunctional(functional)


def run_lemmas(doc: ReportDocument, only, trials: int, seed: int, fit_trials: int) -> None:
    timing = {}
    for tag in resolve_tags(only):
        t0 = time.perf_counter()
        doc.lemmas.append(summarize(tag, trials, seed, fit_trials))
        timing[tag] = time.perf_counter() - t0
    if doc.timing is not None:
        doc.timing.update(timing)


def run_derive(doc: ReportDocument, functionals, params: Params, trials: int, seed: int) -> None:
    for f in functionals:
        t0 = time.perf_counter()
        doc.residues.append(derive_report(f, params, trials, seed))
        if doc.timing is not None:
            doc.timing[f] = time.perf_counter() - t0


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spectral-torsion", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, trials_default):
        sp.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="RNG seed (default 0x5EED)")
        sp.add_argument("--trials", type=int, default=trials_default)
        sp.add_argument("--format", choices=("json", "md"), default="md")
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")
        sp.add_argument("--timing", action="store_true", help="include wall-clock timings (breaks byte-identity)")

    v = sub.add_parser("verify-lemmas", help="check every trace identity against brute force")
    common(v, 100)
    v.add_argument("--only", action="append", metavar="TAG",
                   help="restrict to a tag or tag family, e.g. Lemma3.7 (repeatable)")
    v.add_argument("--fit-trials", type=int, default=40, help="samples for the invariant fit on mismatches")

    d = sub.add_parser("derive", help="derive one functional and compare it with the printed value")
    common(d, 10)
    d.add_argument("functional", choices=FUNCTIONALS)
    d.add_argument("--a0", help="rational value, or 'symbolic'")
    d.add_argument("--b0", help="rational value, or 'symbolic'")
    d.add_argument("--symbolic", action="store_true", help="keep a0, b0 symbolic (default)")

    r = sub.add_parser("report", help="all trace identities plus every functional, symbolically")
    common(r, 100)
    r.add_argument("--fit-trials", type=int, default=40)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    doc = ReportDocument(command=args.command, seed=args.seed, trials=args.trials,
                         timing={} if args.timing else None)
    try:
        if args.command == "verify-lemmas":
            run_lemmas(doc, args.only, args.trials, args.seed, args.fit_trials)
        elif args.command == "derive":
            run_derive(doc, [args.functional], _params_from(args), args.trials, args.seed)
        else:
            run_lemmas(doc, None, args.trials, args.seed, args.fit_trials)
            run_derive(doc, FUNCTIONALS, SYMBOLIC, 10, args.seed)
    except (EngineError, ArithmeticError, ValueError) as exc:
        doc.errors.append(f"{type(exc).__name__}: {exc}")
    text = doc.render(args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if doc.errors:
        print(doc.errors[-1], file=sys.stderr)
    return doc.exit_code


if __name__ == "__main__":
    sys.exit(main())
