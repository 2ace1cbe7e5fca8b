"""Command line entry point.

Results go to stdout as JSON, progress and traces to stderr.  Exit codes:
0 success, 1 usage or I/O error, 2 mathematical refutation, 3 when the
factorization neither certifies nor finds a negative minor.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .core import DenseMatrix, LoopMatrix, rational_str, window
from .factor import FactorizationStuck, NotTotallyNonnegative, factor
from .generate import random_planar_network, random_rational_matrix
from .interlace import RatPoly, hurwitz, interlaces_routh, interlaces_sturm
from .network import CylNetwork, folded_weight_matrix, glv_check
from .tncheck import is_tn_window
from .tl import verify_rs

EXIT_OK, EXIT_USAGE, EXIT_REFUTED, EXIT_STUCK = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _load(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _write(path: str, obj) -> None:
    try:
        Path(path).write_text(json.dumps(obj, sort_keys=True, indent=1) + "\n", encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _index_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise UsageError(f"bad index list {text!r}") from exc


def _poly(text: str) -> RatPoly:
    try:
        return RatPoly.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad coefficient list {text!r}") from exc


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


# -- commands --------------------------------------------------------------------------

def cmd_factor(args) -> int:
    M = LoopMatrix.from_json(_load(args.input))
    try:
        result = factor(M, trace=_log if args.trace else None)
    except NotTotallyNonnegative as exc:
        _emit({"certified": False, "witness": exc.witness.to_json()})
        return EXIT_REFUTED
    except FactorizationStuck as exc:
        _log(f"factorization stuck: {exc}")
        _emit({"certified": False, "witness": None, "stuck": str(exc)})
        return EXIT_STUCK
    net = result.network.to_json()
    out = {"certified": result.certified, "steps": len(result.steps),
           "edges": len(result.network.edges)}
    if args.output:
        _write(args.output, net)
    else:
        out["network"] = net
    _emit(out)
    return EXIT_OK


def cmd_check_tn(args) -> int:
    M = LoopMatrix.from_json(_load(args.input))
    w = is_tn_window(M, row_span=args.span, max_order=args.order)
    _emit({"witness": None if w is None else w.to_json()})
    return EXIT_OK if w is None else EXIT_REFUTED


def cmd_weight_matrix(args) -> int:
    N = CylNetwork.from_json(_load(args.input))
    W = folded_weight_matrix(N)
    if args.window:
        r, c = args.window
        _emit(window(W, range(1, r + 1), range(1, c + 1)).to_json())
    else:
        _emit(W.to_json())
    return EXIT_OK


def cmd_glv_verify(args) -> int:
    if args.input:
        nets = [CylNetwork.from_json(_load(args.input))]
    else:
        rng = random.Random(args.seed)
        nets = [random_planar_network(rng, rng.randint(1, 3), rng.randint(1, 3))
                for _ in range(args.trials)]
    checked, failures = 0, []
    for idx, N in enumerate(nets):
        count, bad = glv_check(N, max_order=args.order, periods=args.periods)
        checked += count
        _log(f"network {idx}: {count} minors, {len(bad)} mismatches")
        failures += [{"network": idx, "rows": list(I), "cols": list(J),
                      "paths": rational_str(g), "det": rational_str(d)} for I, J, g, d in bad]
    _emit({"networks": len(nets), "minors": checked, "failures": failures})
    return EXIT_OK if not failures else EXIT_REFUTED


def cmd_tl_verify(args) -> int:
    cases = []
    if args.matrix:
        M = DenseMatrix.from_json(_load(args.matrix))
        if args.rows is None or args.cols is None:
            raise UsageError("--matrix needs --rows and --cols")
        cases.append((M, _index_list(args.rows), _index_list(args.cols)))
    else:
        rng = random.Random(args.seed)
        for _ in range(args.trials):
            M = random_rational_matrix(rng, args.n)
            k = rng.randint(0, args.n)
            I = sorted(rng.sample(range(1, args.n + 1), k))
            J = sorted(rng.sample(range(1, args.n + 1), k))
            cases.append((M, I, J))
    fails = 0
    for M, I, J in cases:
        ok = verify_rs(M, I, J)
        fails += not ok
        _log(f"C[{I},{J}] = sum over Theta of TL immanants: {'PASS' if ok else 'FAIL'}")
    _emit({"checked": len(cases), "failures": fails})
    return EXIT_OK if fails == 0 else EXIT_REFUTED


def cmd_interlace(args) -> int:
    p0, p1 = _poly(args.p0), _poly(args.p1)
    out = {}
    if args.method in ("sturm", "both"):
        out["sturm"] = interlaces_sturm(p0, p1)
    if args.method in ("routh", "both"):
        try:
            out["routh"] = interlaces_routh(p0, p1)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    values = list(out.values())
    result = {"interlaces": values[0]}
    if args.method == "both":
        result["agree"] = values[0] == values[1]
        if not result["agree"]:
            _log(f"oracles disagree: {out}")
    _emit(result)
    return EXIT_OK if all(values) else EXIT_REFUTED


def cmd_hurwitz(args) -> int:
    H = hurwitz(_poly(args.p0), _poly(args.p1)).to_json()
    if args.out:
        _write(args.out, H)
    else:
        _emit(H)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cyltn", description="Totally nonnegative periodic matrices and "
                                          "cylindrical networks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("factor", help="factor a loop matrix into a network")
    f.add_argument("--input", required=True)
    f.add_argument("--output")
    f.add_argument("--trace", action="store_true")
    f.set_defaults(func=cmd_factor)

    c = sub.add_parser("check-tn", help="scan a finite window for a negative minor")
    c.add_argument("--input", required=True)
    c.add_argument("--span", type=int, default=3)
    c.add_argument("--order", type=int, default=3)
    c.set_defaults(func=cmd_check_tn)

    w = sub.add_parser("weight-matrix", help="weight matrix of a network")
    w.add_argument("--input", required=True)
    g = w.add_mutually_exclusive_group()
    g.add_argument("--folded", action="store_true", help="folded form (default)")
    g.add_argument("--window", type=int, nargs=2, metavar=("R", "C"))
    w.set_defaults(func=cmd_weight_matrix)

    v = sub.add_parser("glv-verify", help="path families against determinants")
    v.add_argument("--input")
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--order", type=int, default=3)
    v.add_argument("--periods", type=int, default=2)
    v.set_defaults(func=cmd_glv_verify)

    t = sub.add_parser("tl-verify", help="complementary minors as sums of TL immanants")
    t.add_argument("--n", type=int, default=4)
    t.add_argument("--trials", type=int, default=20)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--matrix")
    t.add_argument("--rows")
    t.add_argument("--cols")
    t.set_defaults(func=cmd_tl_verify)

    i = sub.add_parser("interlace", help="test whether p0 interlaces p1")
    i.add_argument("--p0", required=True)
    i.add_argument("--p1", required=True)
    i.add_argument("--method", choices=["sturm", "routh", "both"], default="both")
    i.set_defaults(func=cmd_interlace)

    h = sub.add_parser("hurwitz", help="Hurwitz loop matrix of two polynomials")
    h.add_argument("--p0", required=True)
    h.add_argument("--p1", required=True)
    h.add_argument("--out")
    h.set_defaults(func=cmd_hurwitz)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        _log(str(exc))
        return EXIT_USAGE
    except (KeyError, TypeError, ValueError) as exc:
        _log(f"invalid input: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
