"""Command-line front end: ``weylcheck {verify,states,matrix,explore}``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import matrixrep, verifier
from .models import UnknownModel, UnknownOperatorName, build_model
from .opdsl import DslSyntaxError, DuplicateName, NegativeOperatorPower, UnboundName, bundled_suite_path, load_suite
from .states import apply, make_phi

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_N = {"E8": "1..10", "E10": "1..12"}


class UsageError(Exception):
    pass


def parse_spec(text: str):
    """``"s=2,a3=3"`` -> (Fraction(2), Fraction(3)); both must be nonzero."""
    vals = {"s": Fraction(2), "a3": Fraction(3)}
    for item in filter(None, (p.strip() for p in text.split(","))):
        key, eq, value = item.partition("=")
        key = key.strip()
        if not eq or key not in vals:
            raise UsageError(f"bad --spec entry {item!r}; expected s=Q,a3=Q")
        try:
            vals[key] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad rational {value!r} in --spec") from None
    if not vals["s"] or not vals["a3"]:
        raise UsageError("specialization values must be nonzero")
    return vals["s"], vals["a3"]


def parse_pair(text: str):
    try:
        m, n = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad --phi {text!r}; expected M,N") from None
    if m < 0 or n < 0:
        raise UsageError("--phi indices must be non-negative")
    return m, n


def parse_n(text: str) -> range:
    try:
        rng = verifier.parse_range(text)
    except ValueError:
        raise UsageError(f"bad --n {text!r}; expected N or LO..HI") from None
    if not rng or rng.start < 1:
        raise UsageError("--n range must be non-empty and start at 1 or above")
    return rng


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weylcheck", description="Exact checks of ladder and symmetry algebras for the E8/E10 systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--model", type=str.upper, choices=["E8", "E10"], default="E8")
        sp.add_argument("--format", choices=["text", "json"], default="text")
        sp.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    v = sub.add_parser("verify", help="run a relation and state-check suite")
    common(v)
    v.add_argument("--suite", metavar="PATH", help="suite file (default: bundled suite of --model)")
    v.add_argument("--timing", action="store_true", help="include wall-clock timings (output is then not reproducible)")

    s = sub.add_parser("states", help="print the prefactor of a two-index state")
    common(s)
    which = s.add_mutually_exclusive_group(required=True)
    which.add_argument("--phi", metavar="M,N")
    which.add_argument("--table", metavar="D", type=int, help="all phi(m,n) with m + 2n <= D")
    s.add_argument("--op", metavar="NAME", help="apply this catalog operator first")

    m = sub.add_parser("matrix", help="matrix of an operator on the E10 phi basis")
    common(m)
    m.add_argument("--op", metavar="NAME", default="H")
    m.add_argument("--cutoff", metavar="D", type=int, default=6)
    m.add_argument("--spec", metavar="s=Q,a3=Q", default="s=2,a3=3")
    m.add_argument("--route", choices=["closed", "states"], default="closed")

    e = sub.add_parser("explore", help="minimal annihilators of generalized states")
    common(e)
    e.add_argument("--family", choices=["R", "L1", "H"], default="R")
    e.add_argument("--n", metavar="RANGE")
    e.add_argument("--cap", type=int)
    return p


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verify(args) -> int:
    path = args.suite or bundled_suite_path(args.model)
    suite = load_suite(path)
    report = verifier.run_suite(suite)
    if args.format == "json":
        text = verifier.report_json(report, timing=args.timing)
    else:
        text = report.to_text(timing=args.timing)
    _emit(text, args.out)
    return EXIT_OK if report.ok else EXIT_FAIL


def _phi_table(args) -> int:
    if args.table < 0:
        raise UsageError("--table must be non-negative")
    cat = build_model(args.model)
    rows = []
    for n in range(args.table // 2 + 1):
        for m in range(args.table - 2 * n + 1):
            st = make_phi(cat, m, n)
            if args.op:
                st = apply(cat[args.op], st, cat)
            rows.append({"m": m, "n": n, "prefactor": st.prefactor_text()})
    if args.format == "json":
        doc = {"model": cat.model, "operator": args.op, "gauge_exponent": cat.zero_mode_exponent, "states": rows}
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = "".join(f"phi({r['m']},{r['n']}): {r['prefactor']}\n" for r in rows)
    _emit(text, args.out)
    return EXIT_OK


def _states(args) -> int:
    if args.table is not None:
        return _phi_table(args)
    cat = build_model(args.model)
    m, n = parse_pair(args.phi)
    st = make_phi(cat, m, n)
    if args.op:
        st = apply(cat[args.op], st, cat)
    if args.format == "json":
        doc = {
            "model": cat.model,
            "phi": [m, n],
            "operator": args.op,
            "prefactor": st.prefactor_text(),
            "gauge_exponent": cat.zero_mode_exponent,
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        head = f"{args.op} phi({m},{n})" if args.op else f"phi({m},{n})"
        text = f"{head} = ({st.prefactor_text()}) * exp({cat.zero_mode_exponent})\n"
    _emit(text, args.out)
    return EXIT_OK


def _matrix(args) -> int:
    if args.model != "E10":
        raise UsageError("matrix representations are available for --model e10 only")
    if args.cutoff < 0:
        raise UsageError("--cutoff must be non-negative")
    s_val, a3_val = parse_spec(args.spec)
    cat = build_model("E10")
    mat = matrixrep.build_matrix(cat, args.op, args.cutoff, route=args.route)
    try:
        jordan = matrixrep.jordan_report(mat, s_val, a3_val)
    except matrixrep.NonRationalSpectrum as exc:
        jordan = {"error": str(exc)}
    if args.format == "json":
        text = json.dumps({"matrix": mat.to_json(), "jordan": jordan}, indent=2) + "\n"
    else:
        lines = [f"{mat.op_name} on phi basis, cutoff {mat.basis.cutoff} (dimension {mat.size})"]
        lines.append("basis: " + " ".join(f"({m},{n})" for m, n in mat.basis.pairs))
        for pair, row in zip(mat.basis.pairs, mat.entries):
            lines.append(f"({pair[0]},{pair[1]}): " + " | ".join(str(c) for c in row))
        lines.append(f"at s={s_val}, a3={a3_val}:")
        if "error" in jordan:
            lines.append("  " + jordan["error"])
        else:
            for ev in jordan["eigenvalues"]:
                lines.append(f"  eigenvalue {ev['eigenvalue']}: Jordan blocks {ev['blocks']}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _explore(args) -> int:
    cat = build_model(args.model)
    rng = parse_n(args.n or DEFAULT_N[cat.model])
    if args.cap is not None and args.cap < 1:
        raise UsageError("--cap must be at least 1")
    findings = []
    for n in rng:
        try:
            findings.append(verifier.find_minimal_annihilator(cat, args.family, n, args.cap))
        except verifier.CapExceeded as exc:
            cap = args.cap if args.cap is not None else verifier.default_cap(args.family, n)
            findings.append(verifier.AnnihilatorFinding(cat.model, n, args.family, cap=cap, note=str(exc)))
    if args.format == "json":
        text = json.dumps({"findings": [f.to_json() for f in findings]}, indent=2) + "\n"
    else:
        text = "".join(f.to_text() + "\n" for f in findings)
    _emit(text, args.out)
    return EXIT_OK


COMMANDS = {"verify": _verify, "states": _states, "matrix": _matrix, "explore": _explore}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, UnknownModel, UnknownOperatorName, DslSyntaxError, UnboundName, DuplicateName, NegativeOperatorPower) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"weylcheck: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except (matrixrep.NotFiltrationInvariant, ValueError) as exc:
        print(f"weylcheck: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"weylcheck: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
