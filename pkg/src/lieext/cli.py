"""Command-line front end.

Every subcommand is a thin adapter over the library: it parses its inputs,
calls the corresponding library operation, and prints one JSON report on
standard output (diagnostics go to standard error).  Reports carry the tool
version and a content hash of the input for reproducibility.

Exit codes: 0 success; 1 the checked property fails (not extremal, failed
assertion, broken hypothesis); 2 usage, file or capability errors;
3 contradiction (the input data is provably corrupt).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .algebra import (
    builtin,
    format_vector,
    from_json,
    parse_coords,
    to_json,
)
from .certscript import run_script
from .classify import classify_theorem_main
from .errors import (
    ContradictionError,
    DomainError,
    HypothesisError,
    LieextError,
)
from .extremal import EXTREMAL, classify_element, exhaustive_scan, scan_basis
from .sl2 import find_witness, h_grading, make_triple, complete_sl2

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_USAGE = 2
EXIT_CONTRADICTION = 3


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _load_algebra(path: str):
    data = _read_input(path)
    return from_json(data.decode("utf-8")), hashlib.sha256(data).hexdigest()


def _emit(doc: dict, digest: str) -> None:
    doc["tool_version"] = __version__
    doc["input_sha256"] = digest
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lieext",
        description="exact toolkit for extremal elements in structure-constant Lie algebras",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate an algebra file (Jacobi identity)")
    c.add_argument("file", help="algebra file, or - for standard input")

    b = sub.add_parser("builtin", help="write a builtin algebra file to standard output")
    b.add_argument("name", help="sl2, sl3, sl4, witt5, wittext5 or heisenberg")
    b.add_argument("-p", type=int, required=True, metavar="CHAR",
                   help="characteristic (0 for the rationals)")

    e = sub.add_parser("extremal", help="extremality tests")
    e.add_argument("file")
    mode = e.add_mutually_exclusive_group(required=True)
    mode.add_argument("--vector", help="comma-separated canonical coordinates")
    mode.add_argument("--scan-basis", action="store_true")
    mode.add_argument("--exhaustive", action="store_true")
    e.add_argument("--representatives", action="store_true",
                   help="report one vector per scalar class in exhaustive mode")
    e.add_argument("--threads", type=int, default=1, metavar="N",
                   help="scan partitioning hint; the output never depends on it")

    s = sub.add_parser("sl2", help="build a verified sl2-triple from an extremal element")
    s.add_argument("file")
    s.add_argument("--x", required=True, help="comma-separated canonical coordinates")

    g = sub.add_parser("grade", help="grading by the bracket of an sl2 pair")
    g.add_argument("file")
    g.add_argument("--x", required=True)
    g.add_argument("--y", required=True)

    k = sub.add_parser("classify", help="run the full classification pipeline")
    k.add_argument("file")
    k.add_argument("--x", required=True)
    k.add_argument("--assume-simple", action="store_true",
                   help="skip the simplicity check and stamp the report accordingly")

    t = sub.add_parser("cert", help="run a certificate script")
    t.add_argument("script", help="script path; bare names resolve to the shipped scripts")
    t.add_argument("-p", type=int, default=None, metavar="CHAR",
                   help="characteristic to verify under (default: chosen from the guards)")
    return p


def run(argv) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return _dispatch(args)
    except ContradictionError as e:
        print(f"contradiction: {e}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except HypothesisError as e:
        print(f"hypothesis failure: {e}", file=sys.stderr)
        return EXIT_PROPERTY
    except LieextError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    if args.command == "check":
        return _cmd_check(args)
    if args.command == "builtin":
        return _cmd_builtin(args)
    if args.command == "extremal":
        return _cmd_extremal(args)
    if args.command == "sl2":
        return _cmd_sl2(args)
    if args.command == "grade":
        return _cmd_grade(args)
    if args.command == "classify":
        return _cmd_classify(args)
    if args.command == "cert":
        return _cmd_cert(args)
    raise AssertionError(f"unhandled command {args.command}")


def _cmd_check(args) -> int:
    l, digest = _load_algebra(args.file)
    report = l.validate()
    _emit({
        "command": "check",
        "characteristic": l.field.p,
        "dim": l.dim,
        "valid": report.ok,
        "violations": [list(t) for t in report.violations],
    }, digest)
    return EXIT_OK if report.ok else EXIT_PROPERTY


def _cmd_builtin(args) -> int:
    l = builtin(args.name, args.p)
    if args.name in ("sl3", "sl4") and args.p != 0:
        n = 3 if args.name == "sl3" else 4
        if n % args.p == 0:
            print(f"note: sl{n} is not simple when the characteristic divides {n}",
                  file=sys.stderr)
    sys.stdout.write(to_json(l))
    return EXIT_OK


def _status_dict(l, status) -> dict:
    return {
        "vector": format_vector(l.field, status.vector),
        "kind": status.kind,
        "functional": format_vector(l.field, status.functional)
        if status.functional is not None else None,
    }


def _cmd_extremal(args) -> int:
    if args.threads < 1:
        raise DomainError("--threads must be at least 1")
    l, digest = _load_algebra(args.file)
    if args.vector is not None:
        x = parse_coords(l.field, args.vector, l.dim)
        status = classify_element(l, x)
        doc = {"command": "extremal", "mode": "vector"}
        doc.update(_status_dict(l, status))
        _emit(doc, digest)
        return EXIT_OK if status.kind == EXTREMAL else EXIT_PROPERTY
    if args.scan_basis:
        results = scan_basis(l)
        _emit({
            "command": "extremal",
            "mode": "scan_basis",
            "results": [
                dict(index=i, name=l.names[i], **_status_dict(l, st))
                for i, st in enumerate(results)
            ],
        }, digest)
        return EXIT_OK
    scan = exhaustive_scan(l, representatives_only=args.representatives)
    _emit({
        "command": "extremal",
        "mode": "exhaustive",
        "representatives_only": scan.representatives_only,
        "counts": dict(scan.counts),
        "extremal_nonsandwich": [format_vector(l.field, v) for v in scan.extremal],
        "sandwich": [format_vector(l.field, v) for v in scan.sandwich],
    }, digest)
    return EXIT_OK


def _cmd_sl2(args) -> int:
    l, digest = _load_algebra(args.file)
    x = parse_coords(l.field, args.x, l.dim)
    status = classify_element(l, x)
    if status.kind != EXTREMAL:
        raise HypothesisError(f"x must be extremal and not a sandwich (got {status.kind})")
    w = find_witness(l, x, status.functional)
    triple, cert = complete_sl2(l, x, w)
    fmt = lambda v: format_vector(l.field, v)
    _emit({
        "command": "sl2",
        "x": fmt(x),
        "kind": status.kind,
        "witness": fmt(w),
        "triple": {"x": fmt(triple.x), "y": fmt(triple.y), "h": fmt(triple.h)},
        "completion": {"w": fmt(cert.w), "x1": fmt(cert.x1), "w1": fmt(cert.w1)},
    }, digest)
    return EXIT_OK


def _cmd_grade(args) -> int:
    l, digest = _load_algebra(args.file)
    x = parse_coords(l.field, args.x, l.dim)
    y = parse_coords(l.field, args.y, l.dim)
    triple = make_triple(l, x, y)
    grading = h_grading(l, triple)
    fmt = lambda v: format_vector(l.field, v)
    _emit({
        "command": "grade",
        "triple": {"x": fmt(triple.x), "y": fmt(triple.y), "h": fmt(triple.h)},
        "grading_dims": {str(i): grading.components[i].dim for i in (-2, -1, 0, 1, 2)},
        "integer_graded": grading.z_graded,
        "components": {
            str(i): [fmt(row) for row in grading.components[i].basis]
            for i in (-2, -1, 0, 1, 2)
        },
    }, digest)
    return EXIT_OK


def _cmd_classify(args) -> int:
    l, digest = _load_algebra(args.file)
    x = parse_coords(l.field, args.x, l.dim)
    report = classify_theorem_main(l, x, assume_simple=args.assume_simple)
    _emit(report.to_dict(), digest)
    return EXIT_OK


def _cmd_cert(args) -> int:
    path = args.script
    try:
        data = _read_input(path)
    except OSError:
        shipped = _shipped_cert(path)
        if shipped is None:
            raise
        data = shipped
    result = run_script(data.decode("utf-8"), characteristic=args.p)
    doc = {"command": "cert", "script": path}
    doc.update(result.to_dict())
    _emit(doc, hashlib.sha256(data).hexdigest())
    return EXIT_OK if result.passed else EXIT_PROPERTY


def _shipped_cert(name: str):
    if "/" in name or "\\" in name:
        return None
    from importlib import resources

    ref = resources.files("lieext").joinpath("certs").joinpath(name)
    if ref.is_file():
        return ref.read_bytes()
    return None


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
