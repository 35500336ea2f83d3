"""Command line front end: ``ydn <verb> --n N --d D ...``."""
from __future__ import annotations

import argparse
import logging
from pathlib import Path
import sys
from typing import Callable, Sequence

from .betti import METHODS, betti_table, four_way_agreement, normalize_method
from .config import Settings, load_settings
from .errors import GuardExceeded, InvalidInput, MatchingError, NotAComplex, StructureError
from .export import FORMATS, complex_json, dump_json, format_table, matching_json, write_output
from .homology import verify_supports_resolution
from .ideals import Graph, edge_ideal_gens, power_gens, verify_dilation, verify_lattice_generators
from .morse import assemble_matching, cov_path_faces, cov_path_matching, minimality_violations, morse_boundary
from .staircase import enumerate_cells, euler_characteristic, f_vector, label_collisions

_log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

CHECKS = ("lattice", "supports", "acyclic", "minimal", "agree")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ydn",
        description="Cellular resolutions of powers of path edge ideals",
        allow_abbrev=False,
    )
    parser.add_argument("verb", choices=("gens", "complex", "cov", "betti", "verify"))
    parser.add_argument("--n", type=int, required=True, help="number of path vertices")
    parser.add_argument("--d", type=int, default=None, help="power of the edge ideal")
    parser.add_argument("--method", default=None, help=f"one of {', '.join(METHODS)}")
    parser.add_argument("--format", default="text", help=f"one of {', '.join(FORMATS)}")
    parser.add_argument("--out", type=Path, default=None, help="write results to this file")
    parser.add_argument("--checks", default="all", help=f"comma list of {', '.join(CHECKS)} or all")
    parser.add_argument("--prime", type=int, default=None, help="field modulus (default 32003)")
    return parser


def _require_d(args: argparse.Namespace) -> int:
    if args.d is None:
        raise InvalidInput(f"{args.verb} needs --d")
    if args.n < 2 or args.d < 1:
        raise InvalidInput(f"need n >= 2 and d >= 1, got n={args.n}, d={args.d}")
    return args.d


def _check_format(fmt: str, allowed: Sequence[str]) -> None:
    if fmt not in allowed:
        raise InvalidInput(f"format {fmt!r} not available here; use one of {', '.join(allowed)}")


def _check_method(args: argparse.Namespace, allowed: Sequence[str]) -> str | None:
    if args.method is None:
        return None
    method = normalize_method(args.method)
    if method not in allowed:
        raise InvalidInput(f"--method {method} does not apply to {args.verb}")
    return method


def _gens(args: argparse.Namespace, settings: Settings) -> tuple[str, int]:
    d = _require_d(args)
    _check_method(args, ())
    _check_format(args.format, ("text", "json"))
    gens = power_gens(edge_ideal_gens(Graph.path(args.n)), d, settings=settings)
    if args.format == "json":
        payload = {"n": args.n, "d": d, "generators": [list(e) for e in gens.exponents()]}
        return dump_json(payload), EXIT_OK
    return "".join(f"{g}\n" for g in gens), EXIT_OK


def _complex(args: argparse.Namespace, settings: Settings) -> tuple[str, int]:
    d = _require_d(args)
    morse = _check_method(args, ("morse",)) == "morse"
    _check_format(args.format, ("text", "json"))
    X = enumerate_cells(args.n, d, settings=settings)
    if morse:
        M = assemble_matching(X)
        if args.format == "json":
            return matching_json(M), EXIT_OK
        lines = [
            f"matched pairs: {len(M.pairs)}",
            f"critical cells: {len(M.critical)}",
        ]
        by_dim: dict[int, int] = {}
        for cell_id in M.critical:
            by_dim[X.dim(cell_id)] = by_dim.get(X.dim(cell_id), 0) + 1
        lines += [f"critical in dimension {k}: {by_dim[k]}" for k in sorted(by_dim)]
        return "\n".join(lines) + "\n", EXIT_OK
    if args.format == "json":
        return complex_json(X), EXIT_OK
    lines = [
        f"cells: {len(X)}",
        f"f-vector: {' '.join(map(str, f_vector(X)))}",
        f"euler characteristic: {euler_characteristic(X)}",
        f"label collisions: {len(label_collisions(X))}",
    ]
    return "\n".join(lines) + "\n", EXIT_OK


def _edge_set(face: frozenset[int]) -> str:
    return "{" + ", ".join(f"{k}{k + 1}" for k in sorted(face)) + "}"


def _cov(args: argparse.Namespace, settings: Settings) -> tuple[str, int]:
    _check_method(args, ())
    if args.n < 2:
        raise InvalidInput(f"cov needs n >= 2, got {args.n}")
    _check_format(args.format, ("text", "json"))
    family = cov_path_faces(args.n)
    M = cov_path_matching(args.n)
    faces = sorted(family.faces, key=lambda face: (len(face), sorted(face)))
    critical = sorted(M.critical, key=sorted)
    if args.format == "json":
        payload = {
            "n": args.n,
            "faces": [sorted(face) for face in faces],
            "pairs": [[sorted(a), sorted(b)] for a, b in M.pairs],
            "critical": [sorted(face) for face in critical],
        }
        return dump_json(payload), EXIT_OK
    lines = [f"face {_edge_set(face)}" for face in faces]
    lines.append(f"matched pairs: {len(M.pairs)}")
    lines += [f"critical {_edge_set(face)}" for face in critical] or ["critical: none"]
    return "\n".join(lines) + "\n", EXIT_OK


def _betti(args: argparse.Namespace, settings: Settings) -> tuple[str, int]:
    d = _require_d(args)
    table = betti_table(args.n, d, args.method or "closed-form", settings=settings)
    return format_table(table, args.format), EXIT_OK


def _run_check(name: str, n: int, d: int, settings: Settings) -> tuple[bool, list[str]]:
    if name == "lattice":
        g = Graph.path(n)
        lattice = verify_lattice_generators(g, d, settings=settings)
        dilation = verify_dilation(g, d, settings=settings)
        detail = f"{lattice.lattice_points} lattice points, {lattice.generators} generators"
        return lattice.holds and dilation.holds, [detail]

    X = enumerate_cells(n, d, settings=settings)
    if name == "supports":
        report = verify_supports_resolution(X, settings=settings)
        notes = [f"{report.checked} subcomplexes"] + [f"not acyclic at {a}" for a in report.failures]
        return report.holds, notes
    try:
        M = assemble_matching(X)
    except MatchingError as exc:
        return False, [f"{exc} {exc.cycle}"]
    if name == "acyclic":
        return True, [f"{len(M.pairs)} pairs, {len(M.critical)} critical cells"]
    if name == "minimal":
        violations = minimality_violations(X, morse_boundary(X, M, settings=settings))
        notes = [f"{X.cells[t]} -> {X.cells[s]}: {c}" for t, s, c in violations]
        return not violations, notes or ["labels strictly drop along the Morse boundary"]

    agreement = four_way_agreement(n, d, settings=settings)
    notes = [f"{', '.join(agreement.methods)}"]
    notes += [f"{a} vs {b} at {key}: {x} != {y}" for a, b, key, x, y in agreement.mismatches]
    notes += [f"finding: {text}" for text in agreement.findings]
    return agreement.holds, notes


def _verify(args: argparse.Namespace, settings: Settings) -> tuple[str, int]:
    d = _require_d(args)
    _check_method(args, ())
    _check_format(args.format, ("text",))
    requested = [name.strip() for name in args.checks.split(",") if name.strip()]
    if "all" in requested:
        requested = list(CHECKS)
    unknown = [name for name in requested if name not in CHECKS]
    if unknown or not requested:
        raise InvalidInput(f"unknown checks {unknown}; choose from {', '.join(CHECKS)} or all")

    lines = []
    code = EXIT_OK
    for name in requested:
        passed, notes = _run_check(name, args.n, d, settings)
        lines.append(f"{name}: {'pass' if passed else 'FAIL'}")
        lines += [f"  {note}" for note in notes]
        if not passed:
            code = EXIT_FAILED
    return "\n".join(lines) + "\n", code


VERBS: dict[str, Callable[[argparse.Namespace, Settings], tuple[str, int]]] = {
    "gens": _gens,
    "complex": _complex,
    "cov": _cov,
    "betti": _betti,
    "verify": _verify,
}


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    try:
        settings = load_settings(prime=args.prime)
        text, code = VERBS[args.verb](args, settings)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatchingError, NotAComplex, StructureError) as exc:
        _log.error("construction check failed: %s", exc)
        return EXIT_FAILED
    try:
        write_output(text, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


def main(argv: Sequence[str] | None = None) -> None:
    logging.basicConfig(level=logging.INFO)
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
