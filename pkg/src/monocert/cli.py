"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 parse or usage error,
3 an enumeration cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import psl2
from .catalog import ACCEPTANCE_CATALOG, UnknownGroup, named_group
from .certificate import MalformedCertificate, dumps, verify
from .fpgrp import PresentationError, coset_action, hyperbolicity_class, parse_presentation, todd_coxeter
from .monodromy import (
    ConstructionError,
    SignatureError,
    free_construction,
    subgroup_signature,
    triangle_construction,
    triangle_images,
)
from .perm import DEFAULT_CAP, CapacityError, CycleParseError, PermError, PermGroup, coset_orbit, generate, parse_cycles
from .words import WordParseError

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
PRESENTATION_MAX_COSETS = 10**4

USAGE_ERRORS = (CycleParseError, WordParseError, PresentationError, psl2.MatrixError,
                UnknownGroup, MalformedCertificate, PermError, json.JSONDecodeError, OSError)


class UsageError(ValueError):
    pass


def resolve_group(spec: str, max_cosets: int = PRESENTATION_MAX_COSETS,
                  cap: int = DEFAULT_CAP) -> tuple[str, PermGroup]:
    """Turn ``S4``, ``perm:4:(1 2),(1 2 3 4)`` or ``pres:a|a^3`` into a permutation group."""
    if spec.startswith("perm:"):
        try:
            _, n_text, cycles = spec.split(":", 2)
            n = int(n_text)
        except ValueError:
            raise UsageError(f"expected perm:<n>:<cycles>[,<cycles>...], got {spec!r}") from None
        if n < 1:
            raise UsageError("degree must be positive")
        gens = [parse_cycles(c, n) for c in cycles.split(",")]
        return spec, generate(gens, cap)
    if spec.startswith("pres:"):
        table = todd_coxeter(parse_presentation(spec[5:]), max_cosets=max_cosets)
        return spec, generate(coset_action(table), cap)
    _, gens = named_group(spec)
    return spec, generate(gens, cap)


def _realize_one(label: str, group: PermGroup, construction: str, cap: int):
    if construction == "triangle":
        return triangle_construction(group, label, cap)
    return free_construction(list(group.generators), label, cap)


def cmd_realize(args) -> int:
    constructions = [args.construction] if args.construction else ["triangle", "free"]
    if args.all_catalog:
        jobs = [(name, c) for name in ACCEPTANCE_CATALOG for c in constructions]
        outdir = Path(args.out or "certificates")
        outdir.mkdir(parents=True, exist_ok=True)
    else:
        if not args.group:
            raise UsageError("realize needs --group or --all-catalog")
        if len(constructions) != 1:
            raise UsageError("choose --construction triangle or free")
        jobs = [(args.group, constructions[0])]
        outdir = None

    status = EXIT_OK
    for spec, construction in jobs:
        label, group = resolve_group(spec, args.max_cosets, args.cap)
        cert = _realize_one(label, group, construction, args.cap)
        text = dumps(cert)
        if outdir is not None:
            path = outdir / f"{spec}-{construction}.json"
            path.write_text(text)
            print(f"{spec} {construction}: cover degree {cert.cover_degree} -> {path}")
        elif args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        failed = [name for name, ok in cert.checks.items() if not ok]
        if failed:
            print(f"check failed: {failed[0]} ({spec}, {construction})", file=sys.stderr)
            status = EXIT_CHECK
    return status


def cmd_verify(args) -> int:
    doc = json.loads(Path(args.certificate).read_text())
    failures = verify(doc)
    if failures:
        print(f"verification failed: {', '.join(failures)}")
        return EXIT_CHECK
    print("ok")
    return EXIT_OK


def cmd_order(args) -> int:
    table = todd_coxeter(parse_presentation(args.presentation), max_cosets=args.max_cosets)
    print(len(table))
    return EXIT_OK


def cmd_signature(args) -> int:
    n = args.n
    ambient = (2, n, n - 1)
    if n < 2 or hyperbolicity_class(*ambient) != "hyperbolic":
        raise UsageError(f"Delta{ambient} is not hyperbolic; signatures need n >= 5")
    images = triangle_images(n)
    spec = args.subgroup.strip()
    if spec in ("full", "trivial"):
        sub = generate([], degree=n)
    elif spec == "delta":
        sub = generate(images, args.cap)
    else:
        sub = generate([parse_cycles(c, n) for c in spec.split(",")], args.cap)
    _, action = coset_orbit(images, sub, args.cap)
    print(subgroup_signature(ambient, action))
    return EXIT_OK


def cmd_decompose(args) -> int:
    print(psl2.matrix_to_word(psl2.parse_matrix(args.matrix)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monocert",
        description="Realize finite groups as monodromy groups and check the certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("realize", help="build a monodromy certificate")
    p.add_argument("--group", help="S<n>|A<n>|C<n>|D<n>|Q8|V4, perm:<n>:<cycles>,..., or pres:<text>")
    p.add_argument("--construction", choices=["triangle", "free"])
    p.add_argument("--out", help="output file (or directory with --all-catalog)")
    p.add_argument("--max-cosets", type=int, default=PRESENTATION_MAX_COSETS,
                   help="coset cap for pres: groups")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="element/coset cap for closures")
    p.add_argument("--all-catalog", action="store_true",
                   help="realize every catalog group: " + " ".join(ACCEPTANCE_CATALOG))
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", help="re-derive every claim in a certificate")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("order", help="coset count of the trivial subgroup of a presentation")
    p.add_argument("presentation", help='e.g. "g0,g1,gi|g0^2,g1^4,gi^3,g0*g1*gi"')
    p.add_argument("--max-cosets", type=int, default=10**6)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("signature", help="signature of phi^-1(G) in Delta(2, n, n-1)")
    p.add_argument("n", type=int)
    p.add_argument("--subgroup", default="full",
                   help="full (ker phi), delta (the whole triangle group), or generating cycles of G")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("decompose", help="write a Gamma(2) matrix as a word in x0=A, x1=B")
    p.add_argument("matrix", help="[[a,b],[c,d]]")
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, *USAGE_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConstructionError, SignatureError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
