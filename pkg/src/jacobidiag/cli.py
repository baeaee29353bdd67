"""Command-line front end.

Every subcommand writes a plain-text report with a fixed field order to stdout (or
``--output``). Wall-clock timings go to stderr so reports stay byte-identical.
Exit status: 0 success, 1 mathematical failure, 2 input error.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from .blanchfield import (
    BlanchfieldModule,
    ModuleError,
    annihilator,
    integral_automorphism_scan,
    parse_module,
)
from .canon import FormalSum
from .diagram import (
    Diagram,
    DiagramError,
    is_prime,
    isolated,
    parse_diagram,
    parse_diagram_list,
    serialize_diagram,
    serialize_diagram_list,
    validate,
)
from .kernel import BACKEND
from .laurent import ParseError, format_poly
from .maps import (
    DiagramSeries,
    MapError,
    augment_series,
    distribute,
    iota,
    is_distributed,
    phi,
    psi,
    psi_terms,
    roundtrip_check,
)
from .relations import RelationError, Window, parse_relations
from .span import in_span, quotient_dimension

OK, MATH_FAIL, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _module(path: str | None) -> BlanchfieldModule | None:
    return parse_module(_read(path)) if path else None


def _diagram(path: str, module: BlanchfieldModule | None, check: bool = True) -> Diagram:
    return parse_diagram(_read(path), module, check=check)


def _diagram_sum(path: str, module) -> FormalSum:
    _, items = parse_diagram_list(_read(path), module)
    fs = FormalSum()
    for c, D in items:
        fs.add_diagram(D, c)
    return fs


def _window(args) -> Window:
    return Window(W=args.window, cap=args.cap, max_univalent=getattr(args, "max_univalent", None))


def _sum_text(fs: FormalSum) -> str:
    items = list(fs.items())
    module = next((D.module for _, D in items if D.module is not None), None)
    return serialize_diagram_list(items, module)


def _threads() -> int:
    raw = os.environ.get("JACOBI_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise InputError(f"JACOBI_THREADS must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise InputError("JACOBI_THREADS must be a positive integer")
    return n


# ---------------------------------------------------------------------------

def cmd_validate(args) -> tuple[int, str]:
    D = _diagram(args.diagram, _module(args.module), check=False)
    delta = annihilator(D.module) if D.module is not None and not D.uni else None
    bad = validate(D, delta)
    lines = ["command: validate", f"degree: {D.degree}", f"univalent: {len(D.uni)}",
             f"valid: {str(not bad).lower()}"]
    lines += [f"violation: {b}" for b in bad]
    return (INPUT_ERROR if bad else OK), "\n".join(lines) + "\n"


def cmd_psi(args) -> tuple[int, str]:
    D = _diagram(args.diagram, _module(args.module))
    terms = psi_terms(D)
    S = psi(D)
    lines = ["command: psi", f"univalent: {len(D.uni)}", f"pairings: {len(terms)}", f"terms: {len(S)}"]
    return OK, "\n".join(lines) + "\n" + _sum_text(S)


def _need_module(args) -> BlanchfieldModule:
    M = _module(args.module)
    if M is None:
        raise InputError("--module is required")
    if args.copies is None or args.copies < 1:
        raise InputError("--copies must be a positive integer")
    return M


def cmd_phi(args) -> tuple[int, str]:
    M = _need_module(args)
    D = _diagram(args.diagram, None)
    out = phi(D, M, args.copies)
    lines = ["command: phi", f"copies: {args.copies}", f"opened: {len(out.uni) // 2}",
             f"distributed: {str(is_distributed(out)).lower()}"]
    return OK, "\n".join(lines) + "\n" + serialize_diagram(out)


def cmd_roundtrip(args) -> tuple[int, str]:
    M = _need_module(args)
    D = _diagram(args.diagram, None)
    ok = roundtrip_check(D, M, args.copies)
    fractional = sum(1 for *_, L in D.edges.values() if not L.is_polynomial())
    lines = ["command: roundtrip", f"copies: {args.copies}", f"fractional_edges: {fractional}",
             f"identity: {str(ok).lower()}"]
    return (OK if ok else MATH_FAIL), "\n".join(lines) + "\n"


def cmd_inspan(args) -> tuple[int, str]:
    rels = parse_relations(args.relations)
    target = _diagram_sum(args.target, _module(args.module))
    t0 = time.perf_counter()
    res = in_span(target, rels, _window(args))
    print(f"time: {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return (OK if res.certified else MATH_FAIL), res.report(timing=False)


def cmd_dim(args) -> tuple[int, str]:
    rels = parse_relations(args.relations)
    module, items = parse_diagram_list(_read(args.generators), _module(args.module))
    gens = [D for _, D in items]
    primes = _primes(args.primes)
    have = {tuple(sorted(D.iso.values())) for D in gens if not D.tri and not D.uni}
    for p in primes:
        if (p,) not in have:
            gens.append(isolated(p, module=module))
    t0 = time.perf_counter()
    res = quotient_dimension(gens, rels, _window(args), args.max_univalent)
    print(f"time: {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return OK, res.report(timing=False)


def cmd_distribute(args) -> tuple[int, str]:
    D = _diagram(args.diagram, _module(args.module))
    if args.copies is None or args.copies < 1:
        raise InputError("--copies must be a positive integer")
    base = iota(D, args.copies) if D.module is not None and len(D.module.copies) == 1 else D
    S = distribute(base)
    s = len(D.uni) // 2
    lines = ["command: distribute", f"copies: {args.copies}", f"pairs: {s}", f"terms: {len(S)}"]
    return OK, "\n".join(lines) + "\n" + _sum_text(S)


def cmd_augment(args) -> tuple[int, str]:
    if args.h1 is None or args.h1 < 1:
        raise InputError("--h1 must be a positive integer")
    if args.bound < 0:
        raise InputError("--bound must be non-negative")
    S = augment_series(DiagramSeries.one(args.bound), args.h1, args.bound)
    lines = ["command: augment", f"h1: {args.h1}", f"bound: {args.bound}"] + S.lines()
    return OK, "\n".join(lines) + "\n"


def cmd_autscan(args) -> tuple[int, str]:
    M = _module(args.module)
    delta = annihilator(M) if M is not None else None
    if delta is None:
        raise InputError("--module is required")
    scan = integral_automorphism_scan(delta, args.bound)
    lines = ["command: autscan", f"delta: {format_poly(scan.delta)}", f"degree_bound: {scan.degree_bound}",
             f"complete: {str(scan.complete).lower()}", f"units: {len(scan.units)}",
             f"automorphisms: {len(scan.automorphisms)}",
             f"preserves_decomposition: {str(scan.preserves_decomposition()).lower()}"]
    for P, Q, R, S in scan.automorphisms:
        lines.append(f"  [[{format_poly(P)}, {format_poly(Q)}], [{format_poly(R)}, {format_poly(S)}]]")
    return (OK if scan.preserves_decomposition() else MATH_FAIL), "\n".join(lines) + "\n"


def _primes(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        ps = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InputError(f"--primes expects a comma-separated list of primes, got {text!r}") from exc
    bad = [p for p in ps if not is_prime(p)]
    if bad:
        raise InputError(f"not prime: {', '.join(map(str, bad))}")
    return sorted(set(ps))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jacobidiag", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({BACKEND} kernel)")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, module=True):
        if module:
            p.add_argument("--module", help="module file (.bm)")
        p.add_argument("--output", help="write the report here instead of stdout")

    def window(p, relations="all"):
        p.add_argument("--relations", default=relations, help="comma-separated relation names or 'all'")
        p.add_argument("--window", type=int, default=3, help="label exponent bound W")
        p.add_argument("--cap", type=int, default=5000, help="working-set cap")

    p = sub.add_parser("validate", help="check diagram invariants")
    p.add_argument("diagram")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("psi", help="sum over pairings of univalent vertices")
    p.add_argument("diagram")
    common(p)
    p.set_defaults(func=cmd_psi)

    for name, fn, text in (("phi", cmd_phi, "open fractional edges"), ("roundtrip", cmd_roundtrip, "check psi(phi(D)) = D")):
        p = sub.add_parser(name, help=text)
        p.add_argument("diagram")
        common(p)
        p.add_argument("--copies", type=int, required=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("inspan", help="certify that a sum of diagrams vanishes")
    p.add_argument("target")
    common(p)
    window(p)
    p.set_defaults(func=cmd_inspan)

    p = sub.add_parser("dim", help="truncated quotient dimension of a generator list")
    p.add_argument("generators")
    common(p)
    window(p)
    p.add_argument("--max-univalent", type=int, default=None, dest="max_univalent")
    p.add_argument("--primes", default=None, help="comma-separated primes; adds isolated-vertex generators")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("distribute", help="spread univalent pairs over copies")
    p.add_argument("diagram")
    common(p)
    p.add_argument("--copies", type=int, required=True)
    p.set_defaults(func=cmd_distribute)

    p = sub.add_parser("augment", help="series Z times exp of the rho terms")
    common(p, module=False)
    p.add_argument("--h1", type=int, required=True)
    p.add_argument("--bound", type=int, default=2)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("autscan", help="integral automorphisms of two equal cyclic summands")
    common(p)
    p.add_argument("--bound", type=int, default=1)
    p.set_defaults(func=cmd_autscan)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        _threads()
        if getattr(args, "window", 1) is not None and getattr(args, "window", 1) < 0:
            raise InputError("--window must be non-negative")
        if getattr(args, "cap", 1) <= 0:
            raise InputError("--cap must be positive")
        code, report = args.func(args)
    except (InputError, DiagramError, ModuleError, ParseError, MapError, RelationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    if args.output:
        Path(args.output).write_text(report)
    else:
        sys.stdout.write(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
