"""``tautknot`` command line.

Exit codes: 0 success, 2 input error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from . import io
from .contfrac import cf_eval, even_expand, format_cf, format_rational, palindrome_check, parse_int_list, parse_rational
from .errors import ComputationError, InputError, TautKnotError
from .paramcode import ParamSequence, extract, reconstruct_full, validate
from .render import RenderStyle, render_svg
from .satellite import (
    SatelliteSpec, alpha_beta, associated_sequence, format_even_seq, satellite_chain, schubert_equivalent,
)
from .tauten import realize, simplify

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE = 0, 2, 3


# -- input helpers ---------------------------------------------------------------

def _read(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    p = Path(arg)
    if p.is_file():
        return p.read_text()
    return arg


def _load(arg: str):
    """A polyline, sequence, taut path or satellite spec from a file, stdin or literal."""
    text = _read(arg).strip()
    if text.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from None
        return io.from_json(io.sniff(doc), doc)
    return ParamSequence.parse(text)


def _load_sequence(arg: str) -> ParamSequence:
    obj = _load(arg)
    if not isinstance(obj, ParamSequence):
        raise InputError("expected a parameterization")
    return obj


def _int_list(tokens: list[str]) -> list[int]:
    try:
        return [v for t in tokens for v in parse_int_list(t)]
    except ValueError as exc:
        raise InputError(f"cannot parse integers: {exc}") from None


def _path_of(obj, eps: float):
    """Simplified taut path of a polyline or sequence (or a stored path as-is)."""
    from .geometry import Polyline, TautPath

    if isinstance(obj, TautPath):
        return obj, None
    if isinstance(obj, ParamSequence):
        obj = reconstruct_full(obj, eps).polyline
    if isinstance(obj, Polyline):
        simple = simplify(obj, eps)
        return simple.path, extract(simple)
    raise InputError("expected a polyline, sequence or taut path")


# -- batch jobs ------------------------------------------------------------------

def _job_taut(arg: str, eps: float) -> tuple[str, str]:
    path, seq = _path_of(_load(arg), eps)
    return str(seq), io.dumps(path)


def _job_render(arg: str, eps: float) -> tuple[str, str]:
    obj = _load(arg)
    if isinstance(obj, ParamSequence):
        # draw the sequence at the requested radius, not the simplified one
        rec = reconstruct_full(obj, eps)
        path = realize(rec.word, rec.eps_used)
    else:
        path, _ = _path_of(obj, eps)
    return "", render_svg(path, RenderStyle())


def _job_reconstruct(arg: str, eps: float) -> tuple[str, str]:
    rec = reconstruct_full(_load_sequence(arg), eps)
    return f"eps used: {rec.eps_used:g}", io.dumps(rec.polyline)


def _run_batch(job: Callable, inputs: list[str], args, suffix: str) -> int:
    """Run ``job`` over every input; one output file each when several are given."""
    if args.jobs > 1 and len(inputs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            futures = [pool.submit(_guarded, job, a, args.eps) for a in inputs]
            results = [f.result() for f in futures]
    else:
        results = [_guarded(job, a, args.eps) for a in inputs]
    worst = EXIT_OK
    for arg, (code, text, payload) in zip(inputs, results):
        if code:
            print(f"error: {text}", file=sys.stderr)
            worst = max(worst, code)
            continue
        if len(inputs) == 1:
            if text:
                print(text, file=sys.stdout if job is _job_taut else sys.stderr)
            if args.out:
                Path(args.out).write_text(payload)
            elif job is not _job_taut or args.format == "json":
                sys.stdout.write(payload if payload.endswith("\n") else payload + "\n")
        else:
            stem = Path(arg).stem if Path(arg).is_file() else f"job{inputs.index(arg)}"
            outdir = Path(args.out or ".")
            outdir.mkdir(parents=True, exist_ok=True)
            (outdir / f"{stem}{suffix}").write_text(payload)
            if text:
                print(f"{arg}: {text}")
    return worst


def _guarded(job, arg, eps):
    try:
        text, payload = job(arg, eps)
        return EXIT_OK, text, payload
    except InputError as exc:
        return EXIT_INPUT, f"{type(exc).__name__}: {exc}", ""
    except ComputationError as exc:
        return EXIT_COMPUTE, f"{type(exc).__name__}: {exc}", ""


# -- commands --------------------------------------------------------------------

def cmd_taut(args) -> int:
    return _run_batch(_job_taut, args.input, args, ".json")


def cmd_reconstruct(args) -> int:
    return _run_batch(_job_reconstruct, args.input, args, ".json")


def cmd_render(args) -> int:
    return _run_batch(_job_render, args.input, args, ".svg")


def cmd_validate(args) -> int:
    seq = _load_sequence(args.sequence)
    bad = validate(seq)
    if args.format == "json":
        print(json.dumps({"sequence": str(seq), "violations": bad}))
    else:
        print("valid" if not bad else "\n".join(bad))
    return EXIT_OK if not bad else EXIT_INPUT


def cmd_cf_eval(args) -> int:
    value = cf_eval(_int_list(args.terms))
    print(json.dumps({"value": format_rational(value)}) if args.format == "json" else format_rational(value))
    return EXIT_OK


def cmd_cf_expand(args) -> int:
    try:
        r = parse_rational(args.rational) if args.beta is None else Fraction(int(args.rational), int(args.beta))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse rational: {exc}") from None
    terms = even_expand(r)
    print(json.dumps({"terms": list(terms)}) if args.format == "json" else format_cf(terms))
    return EXIT_OK


def cmd_palindrome(args) -> int:
    terms = _int_list(args.terms)
    ks = [args.k] if args.k else range(2, len(terms) + 1)
    ok_all = True
    rows = []
    for k in ks:
        try:
            value, ok = palindrome_check(terms, k)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        ok_all &= ok
        rows.append({"k": k, "reversed": format_rational(value), "holds": ok})
    if args.format == "json":
        print(json.dumps(rows))
    else:
        for r in rows:
            print(f"k={r['k']} reversed={r['reversed']} {'holds' if r['holds'] else 'FAILS'}")
    return EXIT_OK if ok_all else EXIT_COMPUTE


def cmd_assoc(args) -> int:
    seq = associated_sequence(_int_list(args.sequence))
    print(json.dumps({"sequence": list(seq)}) if args.format == "json" else format_even_seq(seq))
    return EXIT_OK


def cmd_satellite(args) -> int:
    if args.symbolic or args.p is None:
        spec = SatelliteSpec(args.alpha, args.beta)
    elif args.q is None:
        raise InputError("give both p and q, or neither")
    else:
        spec = SatelliteSpec(args.alpha, args.beta, args.p, args.q)
    chain = satellite_chain(spec)
    if spec.symbolic:
        first, second = chain.first.text(), chain.second.text()
    else:
        s1, s2 = chain.first.bind(spec.p, spec.q), chain.second.bind(spec.p, spec.q)
        for s in (s1, s2):
            bad = validate(s)
            if bad:
                raise ComputationError(f"tight parameterization {s} is invalid: " + "; ".join(bad))
        first, second = str(s1), str(s2)
    a_val, b_val = chain.value, chain.assoc_value
    same = schubert_equivalent(alpha_beta(a_val), alpha_beta(b_val))
    if not same:
        raise ComputationError("associated sequence gives a different two-bridge link")
    if args.format == "json":
        print(json.dumps({
            "A": list(chain.a), "A_e": list(chain.a_expanded), "f(A_e)": list(chain.f_expanded),
            "A'": list(chain.a_assoc), "value": format_rational(a_val), "assoc_value": format_rational(b_val),
            "tight": [first, second],
        }))
    else:
        print(f"A      = {format_even_seq(chain.a)}")
        print(f"A_e    = {format_even_seq(chain.a_expanded)}")
        print(f"f(A_e) = {format_even_seq(chain.f_expanded)}")
        print(f"A'     = {format_even_seq(chain.a_assoc)}")
        print(f"[A]    = {format_rational(a_val)}")
        print(f"[A']   = {format_rational(b_val)}")
        print(first)
        print(second)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=float, default=0.1, help="puncture radius (default 0.1)")
    common.add_argument("--out", help="output file (a directory when several inputs are given)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for several inputs")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="tautknot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("taut", parents=[common], help="simplify a polyline and print its parameterization")
    p.add_argument("input", nargs="+", help="polyline JSON (file, '-' or literal) or a sequence")
    p.set_defaults(func=cmd_taut)

    p = sub.add_parser("reconstruct", parents=[common], help="polyline realizing a parameterization")
    p.add_argument("input", nargs="+")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("render", parents=[common], help="SVG of a taut path, polyline or sequence")
    p.add_argument("input", nargs="+")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("validate", parents=[common], help="check the validity predicate")
    p.add_argument("sequence")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cf-eval", parents=[common], help="evaluate a continued fraction")
    p.add_argument("terms", nargs="+")
    p.set_defaults(func=cmd_cf_eval)

    p = sub.add_parser("cf-expand", parents=[common], help="even continued fraction of alpha/beta")
    p.add_argument("rational", help="alpha/beta, or alpha with beta as the next argument")
    p.add_argument("beta", nargs="?")
    p.set_defaults(func=cmd_cf_expand)

    p = sub.add_parser("palindrome", parents=[common], help="check the reversed-prefix identities")
    p.add_argument("terms", nargs="+")
    p.add_argument("-k", type=int, help="prefix length (default: all)")
    p.set_defaults(func=cmd_palindrome)

    p = sub.add_parser("satellite", parents=[common], help="tight parameterizations of K(alpha, beta; p, q)")
    p.add_argument("alpha", type=int)
    p.add_argument("beta", type=int)
    p.add_argument("p", type=int, nargs="?")
    p.add_argument("q", type=int, nargs="?")
    p.add_argument("--symbolic", action="store_true", help="keep p and q as symbols")
    p.set_defaults(func=cmd_satellite)

    p = sub.add_parser("assoc", parents=[common], help="associated even sequence")
    p.add_argument("sequence", nargs="+")
    p.set_defaults(func=cmd_assoc)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ComputationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except TautKnotError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
