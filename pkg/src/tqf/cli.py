"""Command-line front end: ``tqf info|verify|sweep|functional``."""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import corpus
from .functionals import (
    Options,
    c_psi,
    capacity,
    det_bound,
    lower_local,
    m_theta,
    moment_map,
    upper_level,
)
from .lab import CLAIMS, run_claim
from .tensor import (
    Bipartition,
    BipartitionDistribution,
    Tensor,
    all_bipartitions,
    bipartition_entropy,
    flattening_rank,
    require_nonzero,
    weighted_entropy,
)

QUANTITIES = ("H_theta", "m_theta", "upper_n", "lower", "detbound", "c_psi", "capacity")
KINDS = ("upper", "lower", "mtheta", "capacity", "detbound")


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument errors become a single ``error:`` line instead of usage text."""

    def error(self, message):
        raise CliError(message)


def fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return f"{x:.12g}"
    return str(x)


def load_tensor(source: str) -> Tensor:
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
        try:
            t = Tensor.from_json(text)
        except json.JSONDecodeError as exc:
            raise CliError(f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        except ValueError as exc:
            raise CliError(f"{source}: {exc}") from None
    else:
        try:
            t = corpus.from_name(source)
        except ValueError as exc:
            raise CliError(f"cannot resolve tensor {source!r}: {exc}") from None
    require_nonzero(t)
    return t


def _options(args) -> Options:
    opts = Options()
    for name in ("tol", "seed", "restarts"):
        val = getattr(args, name, None)
        if val is not None:
            setattr(opts, name, val)
    if getattr(args, "n", None) is not None:
        opts.level_n = args.n
    if getattr(args, "order", None):
        opts.order = [s.strip() for s in args.order.split(",") if s.strip()]
    return opts


def _theta(spec: str, k: int) -> BipartitionDistribution:
    try:
        return BipartitionDistribution.parse(spec, k)
    except ValueError as exc:
        raise CliError(f"bad distribution {spec!r}: {exc}") from None


def _bipartition(spec: str, k: int) -> Bipartition:
    try:
        return Bipartition.parse(spec, k)
    except ValueError as exc:
        raise CliError(f"bad bipartition {spec!r}: {exc}") from None


# ------------------------------------------------------------------ commands

def cmd_info(args) -> int:
    t = load_tensor(args.source)
    print(f"shape: {list(t.shape)}")
    print(f"norm: {fmt(t.norm())}")
    print(f"{'bipartition':<16}{'rank':>6}  entropy_bits")
    for b in all_bipartitions(t.k):
        rank = flattening_rank(t, b, args.tol or 1e-9)
        print(f"{str(b):<16}{rank:>6}  {fmt(bipartition_entropy(t, b))}")
    _, resid = moment_map(t)
    print(f"moment_residual: {fmt(resid)}")
    return 0


def cmd_verify(args) -> int:
    ids = list(CLAIMS) if args.claim == "all" else [args.claim]
    for cid in ids:
        if cid not in CLAIMS:
            raise CliError(f"unknown claim {cid!r}; available: {', '.join(CLAIMS)}, all")
    opts = _options(args)
    verdicts = []
    ok = True
    for cid in ids:
        v = run_claim(cid, opts)
        verdicts.append(v.to_dict())
        print(v.to_json())
        if not v.probabilistic and not v.passed:
            ok = False
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(verdicts, fh, indent=2)
    return 0 if ok else 1


def parse_family(spec: str):
    """``"sp:p"`` or ``"unit:n,k=4"``: exactly one bare name is the swept symbol."""
    name, _, body = spec.partition(":")
    if name not in corpus.FAMILIES:
        raise CliError(f"unknown tensor family {name!r}; known: {', '.join(corpus.FAMILIES)}")
    fixed, symbols = {}, []
    for item in filter(None, (s.strip() for s in body.split(","))):
        if "=" in item:
            key, val = item.split("=", 1)
            fixed[key.strip()] = val.strip()
        else:
            symbols.append(item)
    if len(symbols) != 1:
        raise CliError(f"sweep family {spec!r} needs exactly one symbolic parameter, found {len(symbols)}")
    sym = symbols[0]
    if sym not in corpus.FAMILIES[name][1]:
        raise CliError(f"{name} has no parameter {sym!r}")

    def build(value: float) -> Tensor:
        params = dict(fixed)
        params[sym] = repr(value) if sym not in ("n", "k") else str(int(round(value)))
        body = ",".join(f"{k}={v}" for k, v in params.items())
        return corpus.from_name(f"{name}:{body}")

    return sym, build


def _quantity(q, t, theta, b, opts, cache):
    if q == "H_theta":
        return weighted_entropy(t, theta)
    if q == "m_theta":
        return m_theta(t, theta)
    if q == "upper_n":
        order = opts.order
        return upper_level(t, theta, opts.level_n, order=order).best_value
    if q == "lower":
        return lower_local(t, theta, opts).achieved_entropy
    if "cap" not in cache:
        cache["cap"] = capacity(t, opts)
    cap = cache["cap"]
    if q == "capacity":
        return cap.capacity
    if not cap.semistable:
        return float("nan")
    if q == "c_psi":
        return c_psi(t, b, cap)
    if q == "detbound":
        return det_bound(t, b, cap)
    raise CliError(f"unknown quantity {q!r}")


def cmd_sweep(args) -> int:
    quantities = [q.strip() for q in (args.quantities or "").split(",") if q.strip()]
    if not quantities:
        raise CliError(f"empty quantity list; choose from {', '.join(QUANTITIES)}")
    bad = [q for q in quantities if q not in QUANTITIES]
    if bad:
        raise CliError(f"unknown quantities {bad}; choose from {', '.join(QUANTITIES)}")
    if args.steps < 2:
        raise CliError(f"steps must be at least 2, got {args.steps}")
    sym, build = parse_family(args.family)
    opts = _options(args)
    values = np.linspace(args.start, args.stop, args.steps)
    rows = []
    for x in values:
        try:
            t = build(float(x))
        except ValueError as exc:
            raise CliError(f"{sym}={fmt(float(x))}: {exc}") from None
        theta = _theta(args.theta, t.k)
        b = _bipartition(args.bipartition, t.k)
        cache: dict = {}
        row = [fmt(float(x))]
        for q in quantities:
            row.append(fmt(float(_quantity(q, t, theta, b, opts, cache))))
        rows.append(row)
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow([sym] + quantities)
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    return 0


def cmd_functional(args) -> int:
    t = load_tensor(args.source)
    opts = _options(args)
    kind = args.kind
    if kind == "capacity":
        rep = capacity(t, opts)
        value, report = rep.capacity, rep.to_dict()
    elif kind == "detbound":
        b = _bipartition(args.theta or args.bipartition, t.k)
        try:
            cap = capacity(t, opts)
            value = det_bound(t, b, cap)
            report = {"bipartition": str(b), "c_psi": c_psi(t, b, cap), "capacity": cap.capacity}
        except ValueError as exc:
            raise CliError(str(exc)) from None
    else:
        if not args.theta:
            raise CliError(f"{kind} needs a distribution, e.g. AB:0.5,A:0.5")
        theta = _theta(args.theta, t.k)
        if kind == "mtheta":
            value = m_theta(t, theta)
            report = {"m_theta": value}
        elif kind == "lower":
            rep = lower_local(t, theta, opts)
            value, report = rep.achieved_entropy, rep.to_dict()
        else:
            try:
                rep = upper_level(t, theta, opts.level_n, order=opts.order)
            except ValueError as exc:
                raise CliError(str(exc)) from None
            value, report = rep.best_value, rep.to_dict()
    print(fmt(float(value)))
    print(json.dumps(report))
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tqf", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, level=True):
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--restarts", type=int, default=None)
        if level:
            sp.add_argument("--n", type=int, default=None, help="upper-functional level")
            sp.add_argument("--order", default=None, help="comma-separated bipartitions, written-product order")
        sp.add_argument("--out", default=None)

    sp = sub.add_parser("info", help="shape, ranks, entropies and moment residual")
    sp.add_argument("source", help="tensor spec (e.g. sp:p=0.5) or JSON file")
    sp.add_argument("--tol", type=float, default=None)
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("verify", help="run claim checks")
    sp.add_argument("claim", help=f"one of {', '.join(CLAIMS)}, or all")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="sweep one family parameter to CSV")
    sp.add_argument("family", help="family with one bare symbol, e.g. sp:p or unit:n,k=4")
    sp.add_argument("--start", type=float, required=True)
    sp.add_argument("--stop", type=float, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--theta", default="AB")
    sp.add_argument("--bipartition", default="AB")
    sp.add_argument("--quantities", default="")
    common(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("functional", help="evaluate one functional")
    sp.add_argument("kind", choices=KINDS)
    sp.add_argument("source")
    sp.add_argument("theta", nargs="?", default=None,
                    help="distribution spec; for detbound, the bipartition")
    sp.add_argument("--bipartition", default="AB")
    common(sp)
    sp.set_defaults(func=cmd_functional)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (CliError, ValueError, KeyError, OSError) as exc:
        msg = str(exc).replace("\n", " ")
        if isinstance(exc, KeyError):
            msg = msg.strip("'\"")
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
