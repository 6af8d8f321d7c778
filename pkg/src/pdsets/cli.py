"""Command line: ``pdsets construct | verify | stats``.

Exit codes: 0 success or check holds, 1 check failed, 2 usage or parse
error, 3 a builder broke one of its own invariants.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .core import (
    IntegerSet,
    InvalidArgumentError,
    InvariantViolation,
    NonUniqueError,
    VerificationReport,
    counting_function,
    coverage,
    is_perfect_diff_prefix,
    is_sidon,
    t_value,
)
from .documents import (
    DocumentError,
    content_hash,
    load_theorem1_trace,
    parse_json,
    parse_set,
    serialize_set,
    serialize_trace,
    theorem1_trace_body,
)
from .finite_sidon import PRUNING_RULES, ruzsa_sidon
from .greedy import build_greedy
from .kruckeberg import DEFAULT_MAX_ELEMENT, build_kruckeberg, union_lemma_check
from .primes import primitive_root
from .theorem1 import GrowthFunction, build_a, build_b0, check_u_properties, removal_bound_check

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fixed6(num: int, den: int) -> str:
    """Exact fraction rounded half-up to 6 decimals, no float involved."""
    sign = "-" if num * den < 0 else ""
    num, den = abs(num), abs(den)
    scaled = (num * 10**6 * 2 + den) // (2 * den)
    return f"{sign}{scaled // 10**6}.{scaled % 10**6:06d}"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load_set(path: str) -> IntegerSet:
    return parse_set(_read(path))[0]


def _positive(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {raw!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {raw}")
    return value


def parse_values(spec: str) -> list[int]:
    """``46,102`` or an inclusive range ``start:stop[:step]``."""
    spec = spec.strip()
    try:
        if ":" in spec:
            parts = [int(p) for p in spec.split(":")]
            if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] < 1):
                raise ValueError
            step = parts[2] if len(parts) == 3 else 1
            return list(range(parts[0], parts[1] + 1, step))
        return [int(p) for p in spec.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"malformed range {spec!r}") from None


def _emit(set_text: str, trace_text: str | None, out: str | None) -> None:
    if out is None:
        sys.stdout.write(set_text)
        return
    Path(out).write_text(set_text, encoding="utf-8")
    if trace_text is not None:
        Path(trace_path(out)).write_text(trace_text, encoding="utf-8")


def trace_path(out: str) -> str:
    p = Path(out)
    name = p.name[: -len(".json")] if p.name.endswith(".json") else p.name
    return str(p.with_name(name + ".trace.json"))


def _report(rep: VerificationReport) -> int:
    print(f"{rep.check}: {'holds' if rep.holds else 'FAILS'}")
    for w in rep.witnesses:
        print("witness: " + " ".join(str(v) for v in w))
    return EXIT_OK if rep.holds else EXIT_FAILED


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    what = args.builder
    if what == "ruzsa":
        S = ruzsa_sidon(args.p)
        set_text = serialize_set(S, {"construction": "ruzsa", "p": str(args.p)})
        trace = {"p": str(args.p), "primitive_root": str(primitive_root(args.p)), "size": len(S)}
    elif what == "greedy":
        gt = build_greedy(args.upto)
        S = gt.final_set
        set_text = serialize_set(S, {"construction": "greedy", "upto": str(args.upto)})
        trace = {
            "upto": str(args.upto),
            "t_values": {str(n): str(t) for n, t in gt.t_values.items()},
            "pair_origin": {str(n): [str(a), str(b)] for n, (a, b) in gt.pair_origin.items()},
        }
    elif what == "kruckeberg":
        kt = build_kruckeberg(args.steps, audit=args.audit, max_element=args.max_element, pruning=args.pruning)
        S = kt.final_set
        meta = {"construction": "kruckeberg", "steps": str(args.steps), "pruning": args.pruning}
        set_text = serialize_set(S, meta)
        trace = {
            "truncated": kt.truncated,
            "pruning": kt.pruning,
            "steps": [
                {
                    "k": s.k,
                    "l": str(s.l),
                    "p": str(s.p),
                    "shift": str(s.shift),
                    "block_size": len(s.block),
                    "pair": None if s.pair is None else [str(v) for v in s.pair],
                }
                for s in kt.steps
            ],
            "density": [
                {"k": d.k, "x": str(d.x), "A(x)": str(d.count), "bound_holds": d.bound_holds,
                 "ratio_squared": f"{d.ratio.numerator}/{d.ratio.denominator}"}
                for d in kt.density_samples
            ],
        }
    else:  # theorem1
        if (args.p is None) == (args.source is None):
            raise UsageError("theorem1 needs exactly one of --p or --source")
        B = ruzsa_sidon(args.p) if args.p is not None else _load_set(args.source)
        g = GrowthFunction.from_spec(args.g)
        t = build_a(build_b0(B, g, args.horizon), args.steps, audit=args.audit)
        S = t.final_set
        meta = {"construction": "theorem1", "g": args.g, "steps": str(args.steps), "horizon": str(t.horizon)}
        set_text = serialize_set(S, meta)
        trace = theorem1_trace_body(t)
    _emit(set_text, serialize_trace(f"{what}-trace", set_text, trace), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    check = args.check
    if check == "u-properties":
        return _report(check_u_properties(GrowthFunction.from_spec(args.g), args.kmax))
    if check == "union-lemma":
        if len(args.files) != 2:
            raise UsageError("union-lemma takes two set documents")
        return _report(union_lemma_check(_load_set(args.files[0]), _load_set(args.files[1])))
    if check == "removal-bounds":
        if len(args.files) != 2:
            raise UsageError("removal-bounds takes a set document and its theorem1 trace")
        set_text = _read(args.files[0])
        final, _ = parse_set(set_text)
        doc = parse_json(_read(args.files[1]))
        if doc.get("set_sha256") != content_hash(set_text):
            raise UsageError("trace does not belong to this set document")
        trace = load_theorem1_trace(doc, final)
        xs = parse_values(args.x) if args.x else [trace.horizon // 4, trace.horizon // 2, trace.horizon]
        code = EXIT_OK
        for x in xs:
            rep = removal_bound_check(trace, x)
            print(f"x={x} " + " ".join(f"{k}={v}" for k, v in rep.detail.items()))
            code = max(code, _report(rep))
        return code
    if len(args.files) != 1:
        raise UsageError(f"{check} takes one set document")
    S = _load_set(args.files[0])
    if check == "sidon":
        return _report(is_sidon(S))
    if args.upto is None:
        raise UsageError(f"{check} needs --upto")
    if check == "pds-prefix":
        return _report(is_perfect_diff_prefix(S, args.upto))
    return _report(coverage(S, args.upto))


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------


def cmd_stats(args) -> int:
    text = _read(args.file)
    doc = parse_json(text)
    out = sys.stdout
    if args.what == "counting":
        S, _ = parse_set(text)
        xs = parse_values(args.x) if args.x is not None else []
        out.write("x,A(x)\n")
        for x in xs:
            out.write(f"{x},{counting_function(S, x)}\n")
        return EXIT_OK

    if args.x is not None:
        ns = parse_values(args.x)
    elif args.upto is not None:
        ns = list(range(1, args.upto + 1))
    else:
        ns = None
    if doc.get("kind") == "greedy-trace":
        tvals = {int(n): int(t) for n, t in doc["t_values"].items()}
        ns = sorted(tvals) if ns is None else ns
    else:
        S, _ = parse_set(text)
        if ns is None:
            raise UsageError("tseq on a set document needs --x or --upto")
        tvals = {}
        for n in ns:
            if n < 1:
                raise UsageError("t_n is defined for n >= 1")
            t = t_value(S, n)
            if t is not None:
                tvals[n] = t
    out.write("n,t_n,ratio,approx\n")
    for n in ns:
        if n in tvals:
            t = tvals[n]
            out.write(f"{n},{t},{t}/{n ** 3},{fixed6(t, n ** 3)}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdsets", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="build a set and write it with its trace")
    con.add_argument("builder", choices=["theorem1", "kruckeberg", "greedy", "ruzsa"])
    con.add_argument("--p", type=_positive, help="odd prime (ruzsa, or theorem1 source R_p)")
    con.add_argument("--source", help="theorem1: source Sidon set document")
    con.add_argument("--steps", type=_positive, default=2, help="number of steps K")
    con.add_argument("--upto", type=_positive, default=2, help="greedy: cover differences 1..N")
    con.add_argument("--g", default="linear", help="growth function: linear | affine:c | scaled:c")
    con.add_argument("--horizon", type=_positive, help="theorem1: bound X for b0 (default 3*max(B))")
    con.add_argument("--audit", action="store_true", help="run the per-step lemma checks")
    con.add_argument("--max-element", type=_positive, default=DEFAULT_MAX_ELEMENT)
    con.add_argument("--pruning", choices=PRUNING_RULES, default="cover")
    con.add_argument("--out", help="set document path; the trace goes to <out>.trace.json")
    con.set_defaults(func=cmd_construct)

    ver = sub.add_parser("verify", help="check a predicate; exit 1 when it fails")
    ver.add_argument(
        "check", choices=["sidon", "pds-prefix", "coverage", "union-lemma", "u-properties", "removal-bounds"]
    )
    ver.add_argument("files", nargs="*")
    ver.add_argument("--upto", type=_positive)
    ver.add_argument("--g", default="linear")
    ver.add_argument("--kmax", type=_positive, default=10)
    ver.add_argument("--x", help="removal-bounds: x values, e.g. 100,200 or 10:100:10")
    ver.set_defaults(func=cmd_verify)

    st = sub.add_parser("stats", help="CSV of A(x) or of t_n")
    st.add_argument("what", choices=["counting", "tseq"])
    st.add_argument("file")
    st.add_argument("--x", help="values: 46,102 or start:stop[:step] (inclusive)")
    st.add_argument("--upto", type=_positive, help="tseq: n = 1..N")
    st.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        if exc.report is not None:
            for w in exc.report.witnesses:
                print("witness: " + " ".join(str(v) for v in w), file=sys.stderr)
        return EXIT_INVARIANT
    except NonUniqueError as exc:
        print(f"not a perfect difference prefix: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (UsageError, DocumentError, InvalidArgumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
