"""Command line front end.

Exit status: 0 success, 1 verification mismatch, 2 bad input, 3 cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass

from .cobordism import independence_matrix, matrix_to_csv
from .exceptions import CapExceeded, InputError, ValidationError
from .lattice_walk import laufer_sequence
from .monotone import leaf_pairs, monotone_subroot
from .pipeline import (MAX_N0, analyze_any, family_invariants, full_root, verify_tables,
                       window_root)
from .plumbing import build_brieskorn_graph
from .semigroup import FAMILIES, family_triple

log = logging.getLogger("brieskorn")

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
MAX_STEPS = 10 ** 8


@dataclass(frozen=True)
class RunConfig:
    command: str
    mode: str
    fmt: str
    out: str | None
    strict: bool
    max_n0: int
    max_steps: int


def _config(args) -> RunConfig:
    return RunConfig(args.command, getattr(args, "mode", "brute"), args.format, args.out,
                     args.strict, args.max_n0, args.max_steps)


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_text(rep) -> str:
    d = rep.to_dict()
    lines = [f"Sigma({rep.p},{rep.q},{rep.r})  N0={rep.N0}",
             f"d = {rep.d}", f"mu_bar = {rep.mu_bar}",
             "monotone = M(" + "; ".join(f"{h},{r}" for h, r in rep.monotone) + ")"]
    hf = " + ".join(f"F_({t['grading']})({t['length']})" + (f"^{t['mult']}" if t["mult"] > 1 else "")
                    for t in d["hf_conn"]) or "0"
    lines.append(f"HF_conn = {hf}")
    lines.append("phi = " + (", ".join(f"phi_{k}={v}" for k, v in d["phi"].items()) or "0"))
    return "\n".join(lines) + "\n"


def _render_report(rep, cfg: RunConfig) -> str:
    if cfg.fmt == "json":
        return rep.to_json() + "\n"
    if cfg.fmt == "text":
        return _report_text(rep)
    if cfg.fmt == "csv":
        d = rep.to_dict()
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "q", "r", "N0", "d", "mu_bar", "monotone", "hf_conn", "phi"])
        w.writerow([d["p"], d["q"], d["r"], d["N0"], d["d"], d["mu_bar"],
                    json.dumps(d["monotone"]), json.dumps(d["hf_conn"]), json.dumps(d["phi"])])
        return buf.getvalue()
    raise InputError(f"format {cfg.fmt!r} is not available for reports")


def cmd_analyze(args, cfg: RunConfig) -> int:
    an = analyze_any(args.p, args.q, args.r, cfg.mode, cfg.max_n0)
    _emit(_render_report(an.report, cfg), cfg)
    return EXIT_OK


def cmd_family(args, cfg: RunConfig) -> int:
    an = family_invariants(args.family, args.n, cfg.mode, cfg.max_n0)
    _emit(_render_report(an.report, cfg), cfg)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    cells = verify_tables(args.family, args.max_n, cfg.mode)
    fails = [c for c in cells if c.status == "fail"]
    devs = [c for c in cells if c.status == "deviation"]
    for c in devs:
        log.warning("documented deviation at %s_%d %s: expected %s, computed %s",
                    c.family, c.n, c.name, c.expected, c.computed)
    if cfg.fmt == "json":
        text = json.dumps([c.to_dict() for c in cells], sort_keys=True) + "\n"
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "n", "cell", "expected", "computed", "status"])
        for c in cells:
            d = c.to_dict()
            w.writerow([d["family"], d["n"], d["cell"], json.dumps(d["expected"]),
                        json.dumps(d["computed"]), d["status"]])
        text = buf.getvalue()
    else:
        text = "".join(f"{c.status.upper():9s} {c.family}_{c.n} {c.name}: expected {c.expected}, "
                       f"computed {c.computed}\n" for c in cells)
        text += f"{len(cells)} cells, {len(fails)} failed, {len(devs)} documented deviations\n"
    _emit(text, cfg)
    if fails or (cfg.strict and devs):
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_laufer(args, cfg: RunConfig) -> int:
    graph = build_brieskorn_graph(args.p, args.q, args.r)
    if args.steps > cfg.max_steps:
        raise CapExceeded(f"{args.steps} steps exceeds the cap {cfg.max_steps}")
    states = list(laufer_sequence(graph, args.steps))
    if cfg.fmt == "json":
        text = json.dumps([{"index": s.index, "chi0": s.chi0, "tau": s.tau_partial,
                            "k": list(s.k.pairings)} for s in states]) + "\n"
    elif cfg.fmt == "csv":
        text = "index,chi0,tau\n" + "".join(f"{s.index},{s.chi0},{s.tau_partial}\n" for s in states)
    else:
        text = "".join(f"{s.index}\t{s.chi0:+d}\t{s.tau_partial}\n" for s in states)
    _emit(text, cfg)
    return EXIT_OK


def cmd_independence(args, cfg: RunConfig) -> int:
    complexes = {n: family_invariants(args.family, n, cfg.mode, cfg.max_n0).complex
                 for n in range(1, args.max_n + 1)}
    mat, rank = independence_matrix(args.family, args.max_n, complexes)
    if cfg.fmt == "json":
        text = json.dumps({"family": args.family, "N": args.max_n, "rank": rank,
                           "matrix": mat}, sort_keys=True) + "\n"
    elif cfg.fmt == "csv":
        text = matrix_to_csv(mat)
    else:
        width = max(len(str(v)) for row in mat for v in row)
        text = "".join(" ".join(str(v).rjust(width) for v in row) + "\n" for row in mat)
        text += f"rank {rank} of {args.max_n}\n"
    _emit(text, cfg)
    return EXIT_OK


def _printed_label(level: int) -> int:
    return -2 * level


def cmd_export(args, cfg: RunConfig) -> int:
    if args.family:
        if args.n is None:
            raise InputError("--family needs --n")
        p, q, r = family_triple(args.family, args.n)
    elif args.triple and len(args.triple) == 3:
        p, q, r = args.triple
    else:
        raise InputError("give either P Q R or --family F --n N")
    kind = args.kind
    if kind == "window":
        if not args.family:
            raise InputError("window roots exist only for family members")
        root = window_root(args.family, args.n)[2]
    else:
        root = full_root(p, q, r, cfg.max_n0)[2]
    mono = monotone_subroot(root)
    if kind == "monotone":
        root = mono.root()
    if cfg.fmt == "json":
        data = root.to_dict()
        if kind == "monotone":
            data["pairs"] = [list(x) for x in mono.pairs]
            data["printed"] = [list(x) for x in mono.printed]
        text = json.dumps(data, sort_keys=True) + "\n"
    elif cfg.fmt == "dot":
        marked = None
        if kind in ("full", "window") and len(root.word) > 1:
            keep = set(mono.pairs)
            pairs = leaf_pairs(root)
            L = len(root.word)
            marked = set()
            for idx, pair in zip(range(0, L, 2), pairs):
                if pair in keep:
                    marked |= {idx, L - 1 - idx}
        name = f"{kind}_{p}_{q}_{r}"
        text = root.to_dot(name, _printed_label, marked)
    else:
        raise InputError("export-root writes dot or json")
    _emit(text, cfg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", default="text", choices=["json", "dot", "csv", "text"])
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--strict", action="store_true",
                        help="treat documented deviations as failures")
    common.add_argument("--max-n0", type=int, default=MAX_N0, dest="max_n0")
    common.add_argument("--max-steps", type=int, default=MAX_STEPS, dest="max_steps")
    common.add_argument("-v", "--verbose", action="store_true")
    modes = ["brute", "closed-form", "both"]

    ap = argparse.ArgumentParser(prog="brieskorn",
                                 description="Graded roots and cobordism invariants of Brieskorn spheres")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", parents=[common], help="invariants of Sigma(p,q,r)")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("r", type=int)
    s.add_argument("--mode", default="brute", choices=modes)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("family", parents=[common], help="invariants of X_n, Y_n or Z_n")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("n", type=int)
    s.add_argument("--mode", default="closed-form", choices=modes)
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("verify-tables", parents=[common], help="check the reference tables")
    s.add_argument("--family", required=True, choices=FAMILIES)
    s.add_argument("--max-n", type=int, required=True, dest="max_n")
    s.add_argument("--mode", default="closed-form", choices=modes)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("laufer", parents=[common], help="print the Laufer sequence")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("r", type=int)
    s.add_argument("--steps", type=int, required=True)
    s.set_defaults(func=cmd_laufer)

    s = sub.add_parser("independence", parents=[common], help="phi_k matrix and its rank")
    s.add_argument("--family", required=True, choices=FAMILIES)
    s.add_argument("--max-n", type=int, required=True, dest="max_n")
    s.add_argument("--mode", default="closed-form", choices=modes)
    s.set_defaults(func=cmd_independence)

    s = sub.add_parser("export-root", parents=[common], help="write a root as DOT or JSON")
    s.add_argument("triple", type=int, nargs="*", metavar="P Q R")
    s.add_argument("--family", choices=FAMILIES)
    s.add_argument("--n", type=int)
    s.add_argument("--kind", default="full", choices=["full", "window", "monotone"])
    s.set_defaults(func=cmd_export)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    cfg = _config(args)
    try:
        return args.func(args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValidationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
