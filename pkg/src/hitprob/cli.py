"""Command line front end: hitprob <subcommand> ...

Exit codes: 0 success, 1 a verified claim failed, 2 bad input, fixture or
environment error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from . import cache as _cache
from .algebra import monomial_text, parse_polynomial, poly_text, poly_to_json
from .fixtures import FixtureError
from .invariants import invariants
from .kameko import kameko_down, stability_report
from .solver import admissible_basis, split_zero_plus, weight_quotient
from .steenrod import sq
from .verify import SCOPES, verify_paper
from .weights import WeightVector, parse_weight


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _quotient(args):
    if args.weight:
        w = parse_weight(args.weight)
        if w.degree != args.n:
            raise UsageError(f"weight {w} has degree {w.degree}, not {args.n}")
        return weight_quotient(args.k, w, jobs=args.jobs)
    return admissible_basis(args.k, args.n, jobs=args.jobs)


def _infer_k(text: str) -> int:
    idx = [int(i) for i in re.findall(r"x_?\{?(\d+)", text)]
    return max(idx, default=1)


def cmd_dim(args) -> int:
    q = _quotient(args)
    payload = {"k": args.k, "n": args.n, "dim": q.dim}
    if q.weight is not None:
        payload["weight"] = str(q.weight)
    _emit(args, payload, str(q.dim))
    return 0


def cmd_basis(args) -> int:
    q = _quotient(args)
    mons = q.admissible
    if args.plus or args.zero:
        zero, plus = split_zero_plus(q)
        mons = plus if args.plus else zero
    payload = {"k": args.k, "n": args.n, "size": len(mons),
               "monomials": [{"exponents": list(m)} for m in mons]}
    if q.weight is not None:
        payload["weight"] = str(q.weight)
    _emit(args, payload, "\n".join(monomial_text(m) for m in mons))
    return 0


def cmd_sq(args) -> int:
    k = args.k or _infer_k(args.poly)
    f = parse_polynomial(args.poly, k)
    g = sq(args.i, f)
    _emit(args, {"i": args.i, "input": poly_to_json(f), "image": poly_to_json(g)}, poly_text(g))
    return 0


def cmd_hit_test(args) -> int:
    f = parse_polynomial(args.poly, args.k, args.n)
    if not f.is_zero() and f.degree != args.n:
        raise UsageError(f"polynomial has degree {f.degree}, not {args.n}")
    q = admissible_basis(args.k, args.n, jobs=args.jobs)
    coords = q.coordinates(f)
    rem = [q.admissible[i] for i in coords.nonzero()[0]]
    hit = not rem
    payload = {"k": args.k, "n": args.n, "hit": hit,
               "class": [{"exponents": list(m)} for m in rem]}
    text = "hit" if hit else "not hit; class = " + " + ".join(monomial_text(m) for m in rem)
    _emit(args, payload, text)
    return 0


def cmd_kameko(args) -> int:
    km = kameko_down(args.k, args.d, jobs=args.jobs)
    rep = stability_report(args.k, args.d)
    payload = {"k": args.k, "d": args.d, "upper_degree": 2 * args.d + args.k,
               "upper_dim": km.upper.dim, "lower_dim": km.lower.dim, "rank": km.rank,
               "kernel_dim": km.kernel_dim, "surjective": km.is_surjective,
               "stability": rep.to_json()}
    lines = [f"(QP_{args.k})_{2 * args.d + args.k} -> (QP_{args.k})_{args.d}: "
             f"dim {km.upper.dim} -> {km.lower.dim}, rank {km.rank}, kernel {km.kernel_dim}",
             f"surjective: {km.is_surjective}; mu = {rep.mu_upper}, iso forced: {rep.iso_forced}, t = {rep.t}"]
    if args.kernel_basis:
        K = km.kernel().dense_rows()
        vecs = [km.upper.polynomial(r) for r in K]
        payload["kernel_basis"] = [poly_to_json(v) for v in vecs]
        lines += [poly_text(v) for v in vecs]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_invariants(args) -> int:
    q = _quotient(args)
    inv = invariants(q, args.group)
    payload = {"k": args.k, "n": args.n, "group": args.group, "dim": inv.rank}
    if q.weight is not None:
        payload["weight"] = str(q.weight)
    lines = [str(inv.rank)]
    if args.basis:
        vecs = [q.polynomial(r) for r in inv.dense_rows()]
        payload["basis"] = [poly_to_json(v) for v in vecs]
        lines += [poly_text(v) for v in vecs]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    rep = verify_paper(args.scope, jobs=args.jobs)
    if args.json:
        print(rep.dumps())
    else:
        print(rep.text())
    return 0 if rep.passed else 1


def cmd_cache(args) -> int:
    d = _cache.cache_dir()
    if d is None:
        raise UsageError(f"set {_cache.ENV_VAR} to a directory to use the cache")
    if args.action == "clear":
        n = _cache.clear()
        _emit(args, {"removed": n}, f"removed {n} entries")
        return 0
    if args.action == "warm":
        t = time.perf_counter()
        for k, n in ((4, 9), (4, 10), (4, 23), (5, 2), (5, 9), (5, 10), (5, 23)):
            admissible_basis(k, n, jobs=args.jobs)
        _emit(args, {"seconds": round(time.perf_counter() - t, 3)}, f"warmed in {time.perf_counter() - t:.1f}s")
        return 0
    entries = _cache.list_entries()
    text = "\n".join(f"{e['file']}  {e.get('bytes')} bytes" for e in entries) or f"(empty) {d}"
    _emit(args, {"directory": str(d), "entries": entries}, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, metavar="N",
                        help="worker processes for generator production")

    p = argparse.ArgumentParser(prog="hitprob", description="Hit problem computations over F2[x1..xk].",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=func)
        return sp

    sp = add("dim", cmd_dim, "dimension of (QP_k)_n or QP_k(w)")
    sp.add_argument("k", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("--weight", help='weight vector, e.g. "(3,2,2,1)"')

    sp = add("basis", cmd_basis, "admissible monomials")
    sp.add_argument("k", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("--weight")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--plus", action="store_true", help="only monomials with all exponents positive")
    g.add_argument("--zero", action="store_true", help="only monomials with some zero exponent")

    sp = add("sq", cmd_sq, "apply Sq^i to a polynomial")
    sp.add_argument("i", type=int)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--k", type=int, help="variable count (default: largest index in --poly)")

    sp = add("hit-test", cmd_hit_test, "decide whether a polynomial is hit")
    sp.add_argument("k", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("--poly", required=True)

    sp = add("kameko", cmd_kameko, "Kameko down map (QP_k)_(2d+k) -> (QP_k)_d")
    sp.add_argument("k", type=int)
    sp.add_argument("d", type=int)
    sp.add_argument("--kernel-basis", action="store_true")

    sp = add("invariants", cmd_invariants, "Sigma_k or GL_k invariants")
    sp.add_argument("k", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("--group", choices=["sigma", "gl"], required=True)
    sp.add_argument("--weight")
    sp.add_argument("--basis", action="store_true")

    sp = add("verify-paper", cmd_verify, "reproduce the published claims")
    sp.add_argument("--scope", choices=SCOPES, default="all")

    sp = add("cache", cmd_cache, "inspect or clear the on-disk cache")
    sp.add_argument("action", nargs="?", choices=["list", "clear", "warm"], default="list")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.jobs = max(1, getattr(args, "jobs", 1))
    try:
        return args.func(args)
    except (UsageError, FixtureError, ValueError, OverflowError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
