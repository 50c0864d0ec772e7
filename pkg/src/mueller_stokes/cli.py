"""Command-line front end.

Documents are read from standard input (one JSON object per line) and
written to standard output in the same format. Exit codes: 0 success,
1 usage error, 2 unreadable input, 3 domain error. Errors are reported as a
JSON object on standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

import numpy as np

from . import bases
from .algebra import hermitian_eigensystem
from .decomposition import check_trace_preserving, cloude_decompose, kraus_from_decomposition
from .documents import DocumentError, MatrixDocument, parse_document, parse_documents
from .errors import MuellerError, NonphysicalMatrix
from .mueller import (
    c_from_mueller,
    h_from_mueller,
    is_mueller_jones,
    is_physical,
    mueller_from_jones,
)
from .polarization import StokesConvention, StokesVector, convert_mueller_convention, convert_stokes
from .quantum import mems_target, reconstruct_mueller, werner_target


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _num(x: float) -> str:
    return repr(float(x) + 0.0)


def _read_inputs(stdin, kinds: Sequence[str]) -> list[MatrixDocument]:
    docs = parse_documents(stdin.read())
    if not docs:
        raise DocumentError("no input document")
    for d in docs:
        if d.kind not in kinds:
            raise DocumentError(f"expected a document of kind {' or '.join(kinds)}, got {d.kind!r}")
    return docs


def _read_file(path: str) -> MatrixDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    if len(lines) != 1:
        raise DocumentError(f"{path} must contain exactly one document")
    return parse_document(lines[0])


def _internal_mueller(doc: MatrixDocument, default: StokesConvention) -> np.ndarray:
    conv = doc.convention or default
    return convert_mueller_convention(doc.data, conv, StokesConvention.INTERNAL)


def _cmd_convert(args, stdin) -> list[MatrixDocument]:
    target = StokesConvention.parse(args.to)
    out = []
    for doc in _read_inputs(stdin, ("stokes", "mueller")):
        source = StokesConvention.parse(args.source) if args.source else (doc.convention or args.convention)
        if doc.kind == "stokes":
            data = convert_stokes(StokesVector(doc.data, source), target).s
        else:
            data = convert_mueller_convention(doc.data, source, target)
        out.append(MatrixDocument(doc.kind, data, target, doc.meta))
    return out


def _cmd_from_jones(args, stdin) -> list[MatrixDocument]:
    out = []
    for doc in _read_inputs(stdin, ("jones",)):
        m = mueller_from_jones(doc.data)
        out += [
            MatrixDocument("mueller", m, StokesConvention.INTERNAL, {"source": "jones"}),
            MatrixDocument("h", h_from_mueller(m), None, {"source": "jones"}),
            MatrixDocument("c", c_from_mueller(m), None, {"source": "jones"}),
        ]
    return out


def _cmd_decompose(args, stdin) -> list[MatrixDocument]:
    out = []
    for doc in _read_inputs(stdin, ("mueller",)):
        m = _internal_mueller(doc, args.convention)
        d = cloude_decompose(m)
        kraus = None
        try:
            kraus = kraus_from_decomposition(d, tol=args.tol if args.tol is not None else 1e-9)
        except NonphysicalMatrix:
            if not args.allow_nonphysical:
                raise
        for a in range(4):
            meta = {"role": "factor", "index": str(a), "lambda": _num(d.lambdas[a])}
            out.append(MatrixDocument("jones", d.jones_factors[a], None, meta))
            out.append(MatrixDocument("mueller", d.mj_factors[a], StokesConvention.INTERNAL, meta))
        if kraus is not None:
            for a, (op, p) in enumerate(zip(kraus.ops, kraus.probabilities)):
                out.append(
                    MatrixDocument("jones", op, None, {"role": "kraus", "index": str(a), "probability": _num(p)})
                )
    return out


def _cmd_check(args, stdin) -> list[MatrixDocument]:
    out = []
    cp_tol = args.tol if args.tol is not None else 1e-9
    mj_tol = args.tol if args.tol is not None else 1e-10
    for doc in _read_inputs(stdin, ("mueller",)):
        m = _internal_mueller(doc, args.convention)
        phys = is_physical(m, cp_tol)
        meta = {
            "is_mueller_jones": json.dumps(is_mueller_jones(m, mj_tol)),
            "cp": json.dumps(phys.cp),
            "eigenvalues": json.dumps([float(x) + 0.0 for x in phys.eigenvalues]),
        }
        if phys.cp and m[0, 0] > 0:
            tc = check_trace_preserving(kraus_from_decomposition(cloude_decompose(m), tol=cp_tol))
            meta["trace_preserving"] = json.dumps(tc.preserving)
            meta["trace_defect"] = _num(np.max(np.abs(tc.defect)))
        else:
            meta["trace_preserving"] = "null"
            meta["trace_defect"] = "null"
        out.append(MatrixDocument("h", h_from_mueller(m), None, meta))
    return out


def _cmd_probe(args, stdin) -> list[MatrixDocument]:
    rho_in = _read_file(args.input)
    rho_out = _read_file(args.output)
    for d in (rho_in, rho_out):
        if d.kind != "density4":
            raise DocumentError(f"probe states must be density4 documents, got {d.kind!r}")
    kwargs = {} if args.tol is None else {"det_tol": args.tol}
    m = reconstruct_mueller(rho_in.data, rho_out.data, **kwargs)
    return [MatrixDocument("mueller", m, StokesConvention.INTERNAL, {"source": "probe"})]


def _cmd_targets(args, stdin) -> list[MatrixDocument]:
    if args.target == "mems":
        return [MatrixDocument("density4", mems_target(args.gamma), None, {"target": "mems", "gamma": _num(args.gamma)})]
    return [MatrixDocument("density4", werner_target(args.p), None, {"target": "werner", "p": _num(args.p)})]


def _selftest_lines(tol: float | None) -> tuple[list[str], bool]:
    checks = bases.selftest() if tol is None else bases.selftest(tol)
    h = np.diag([3.0, 1.0, 2.0, 0.0])
    lam, _ = hermitian_eigensystem(h)
    checks.append(("eigensolver_order", bool(np.array_equal(lam, [3.0, 2.0, 1.0, 0.0])), 0.0))
    lines = [f"{'PASS' if ok else 'FAIL'} {name} max_error={err:.3e}" for name, ok, err in checks]
    return lines, all(ok for _, ok, _ in checks)


def build_parser() -> argparse.ArgumentParser:
    conventions = [c.value for c in StokesConvention]
    p = _Parser(prog="mueller-stokes", description="Mueller-Stokes calculus tools.")
    p.add_argument("--tol", type=float, default=None, help="override the default tolerance of the command")
    p.add_argument(
        "--convention",
        default=StokesConvention.INTERNAL.value,
        choices=conventions,
        help="Stokes convention assumed for input documents without one (default: internal)",
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("convert", help="change the Stokes convention of a Stokes vector or Mueller matrix")
    c.add_argument("--from", dest="source", choices=conventions, default=None)
    c.add_argument("--to", required=True, choices=conventions)
    c.set_defaults(func=_cmd_convert)

    sub.add_parser("from-jones", help="Mueller, H and C matrices of a Jones matrix").set_defaults(func=_cmd_from_jones)

    d = sub.add_parser("decompose", help="spectral decomposition and Kraus operators")
    d.add_argument("--allow-nonphysical", action="store_true", help="emit the decomposition even without a Kraus form")
    d.set_defaults(func=_cmd_decompose)

    sub.add_parser("check", help="physical-realizability report").set_defaults(func=_cmd_check)

    pr = sub.add_parser("probe", help="reconstruct a Mueller matrix from probe and scattered states")
    pr.add_argument("--in", dest="input", required=True, help="file with the input density4 document")
    pr.add_argument("--out", dest="output", required=True, help="file with the output density4 document")
    pr.set_defaults(func=_cmd_probe)

    t = sub.add_parser("targets", help="emit reference two-photon states")
    tsub = t.add_subparsers(dest="target", required=True, parser_class=_Parser)
    tm = tsub.add_parser("mems")
    tm.add_argument("--gamma", type=float, required=True)
    tw = tsub.add_parser("werner")
    tw.add_argument("--p", type=float, required=True)
    t.set_defaults(func=_cmd_targets)

    sub.add_parser("selftest", help="verify the constant tables").set_defaults(func=None)
    return p


def _fail(stderr, code: int, kind: str, message: str) -> int:
    stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv: Sequence[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(parser.format_usage())
        return _fail(stderr, 1, "UsageError", str(exc))
    args.convention = StokesConvention.parse(args.convention)

    if args.command == "selftest":
        lines, ok = _selftest_lines(args.tol)
        stdout.write("\n".join(lines) + "\n")
        return 0 if ok else 3

    func: Callable = args.func
    try:
        docs = func(args, stdin)
    except DocumentError as exc:
        return _fail(stderr, 2, "ParseError", str(exc))
    except (MuellerError, ValueError) as exc:
        return _fail(stderr, 3, type(exc).__name__, str(exc))
    for doc in docs:
        stdout.write(doc.to_json() + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
