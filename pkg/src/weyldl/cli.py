"""Command-line interface: enumerate, certify, check, verify-paper, shift-graph.

Exit codes: 0 on full pass, 1 on any failure or falsification, 2 on
usage errors (argparse's own convention).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .casetables import verify_all
from .conjugacy import (
    ClosureBudgetError,
    FalsificationError,
    partition_memo,
    pi_of,
    save_class_cache,
    shift_closure,
)
from .criterion import (
    Certificate,
    CertificateError,
    certify_min_element,
    check_certificate,
    minimal_q,
    parse_q_literal,
)
from .exactnum import QuadExt
from .rootdata import build_root_system, build_twist
from .weyl import EnumerationBudgetError, WeylGroup


def _group_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=list("ABCDEFG"))
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--twist", type=int, default=1, choices=(1, 2, 3))


def _build(args) -> tuple[WeylGroup, "object"]:
    system = build_root_system(args.family, args.rank)
    return WeylGroup(system), build_twist(args.family, args.rank, args.twist)


def _q_of(args, family: str, twist: int) -> QuadExt:
    if getattr(args, "q", None):
        return parse_q_literal(args.q)
    return minimal_q(family, twist)


def _parse_rep(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad word {text!r}") from exc


def cmd_enumerate(args) -> int:
    W, twist = _build(args)
    pi = pi_of(twist, "delta")
    classes = partition_memo(W, pi, direction="delta", budget=args.budget)
    for cls in classes:
        word = ",".join(map(str, cls.representative.word)) or "e"
        print(
            f"rep=[{word}] min_length={cls.min_length} "
            f"cuspidal={str(cls.cuspidal).lower()} size={cls.size}"
        )
    path = save_class_cache(args.family, args.rank, args.twist, "delta", classes)
    print(f"# {len(classes)} classes; cache written to {path}", file=sys.stderr)
    return 0


def cmd_certify(args) -> int:
    W, twist = _build(args)
    q = _q_of(args, args.family, args.twist)
    pi = pi_of(twist, "delta")
    rep = W.from_word(_parse_rep(args.class_rep))
    classes = partition_memo(W, pi, direction="delta", budget=args.budget)
    target = None
    for cls in classes:
        if cls.contains(rep):
            target = cls
            break
    if target is None:
        print("class representative not found", file=sys.stderr)
        return 1
    cert = certify_min_element(W, twist, target, q)
    text = cert.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_check(args) -> int:
    try:
        with open(args.certificate, encoding="utf-8") as fh:
            cert = Certificate.from_json(fh.read())
    except (OSError, CertificateError) as exc:
        print(f"reject: {exc}", file=sys.stderr)
        return 1
    result = check_certificate(cert)
    if result:
        print(f"accept ({result.rows_checked} rows)")
        return 0
    print(f"reject: {result.reason}", file=sys.stderr)
    return 1


def cmd_verify_paper(args) -> int:
    q: Optional[QuadExt] = parse_q_literal(args.q) if args.q else None
    report = verify_all(type_filter=args.filter, q=q, slow=args.slow)
    for line in report.summary_lines():
        print(line)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    return 0 if report.all_passed else 1


def cmd_shift_graph(args) -> int:
    W, twist = _build(args)
    pi = pi_of(twist, "delta")
    start = W.from_word(_parse_rep(args.class_rep))
    closure = shift_closure(W, pi, start, budget=args.budget)
    nodes = sorted(closure, key=lambda w: w.sort_key())
    name = {w: ",".join(map(str, w.word)) or "e" for w in nodes}
    edges: dict[tuple[str, str], list[int]] = {}
    for w in nodes:
        for j in sorted(pi):
            u = W.multiply(W.multiply(W.simple(j), w), W.simple(pi[j]))
            if u.length <= w.length and u in closure and u != w:
                edges.setdefault((name[w], name[u]), []).append(j)
    lines = ["digraph shifts {"]
    for w in nodes:
        lines.append(f'  "{name[w]}" [label="{name[w]} ({w.length})"];')
    for (src, dst), js in sorted(edges.items()):
        lab = ",".join(map(str, sorted(set(js))))
        lines.append(f'  "{src}" -> "{dst}" [label="{lab}"];')
    lines.append("}")
    text = "\n".join(lines)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(f"# {len(nodes)} nodes, {len(edges)} edges", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="weyldl",
        description=(
            "Exact affineness certificates for twisted Weyl-group conjugacy classes"
        ),
    )
    sub = top.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("enumerate", help="list the twisted classes of a group")
    _group_args(p)
    p.add_argument("--budget", type=int, default=10 ** 6)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("certify", help="produce a certificate for one class")
    _group_args(p)
    p.add_argument("--class-rep", required=True, help="comma-separated word, e.g. 1,2")
    p.add_argument("--q", help="exact literal: 2, 3/2, sqrt2, 2*sqrt2")
    p.add_argument("--out", help="write certificate JSON here")
    p.add_argument("--budget", type=int, default=10 ** 6)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("check", help="re-validate a certificate file")
    p.add_argument("certificate", help="path to certificate JSON")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify-paper", help="replay the bundled case catalog")
    p.add_argument("--filter", help="label prefix, e.g. F4 or 2B2")
    p.add_argument("--q", help="override the per-type minimal q")
    p.add_argument("--slow", action="store_true", help="include E7/E8 minimality sweeps")
    p.add_argument("--out", help="write the aggregate JSON report here")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("shift-graph", help="emit the cyclic-shift closure as DOT")
    _group_args(p)
    p.add_argument("--class-rep", required=True)
    p.add_argument("--dot", help="write DOT here instead of stdout")
    p.add_argument("--budget", type=int, default=10 ** 6)
    p.set_defaults(func=cmd_shift_graph)
    return top


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EnumerationBudgetError, ClosureBudgetError) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 1
    except FalsificationError as exc:
        print(f"FALSIFICATION: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
