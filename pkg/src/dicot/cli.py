"""Command-line front end.

Exit codes: 0 success, 1 a checked property failed, 2 bad input,
3 the hypotheses of a theorem are not met.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from fractions import Fraction

from .core import DicotError, validate_dicot, validate_graph
from .enumeration import TooLarge, brute_force_partition_function, enumerate_configs
from .families import FAMILIES, EvenOrder, FamilySpec
from .freeenergy import QuadratureNonConvergence, free_energy
from .linalg import NonRealDeterminant, partition_function
from .planar import NoKasteleynOrientation, NotPlanarDicot, kasteleyn_orient, validate_planar, verify_kasteleyn
from .quotient import HypothesisViolated, load_involution, verify_squareness
from .sampling import random_subdicot

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 1, 2, 3


class InputError(Exception):
    pass


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return format(value, ".15g")
    return str(value)


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump([{k: _fmt(v) for k, v in r.items()} for r in rows], out, indent=1)
        out.write("\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _fmt(v) for k, v in r.items()})
        out.write(buf.getvalue())
    else:
        for r in rows:
            out.write("  ".join(f"{k}={_fmt(v)}" for k, v in r.items()) + "\n")


def cmd_partition(args, out) -> int:
    d = validate_dicot(_read_json(args.input))
    t0 = time.perf_counter()
    z = partition_function(d)
    elapsed = time.perf_counter() - t0
    out.write(f"{z}\n")
    if args.timing:
        out.write(f"# det time {elapsed:.6f} s\n")
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    d = validate_dicot(_read_json(args.input))
    for c in enumerate_configs(d, args.max_vertices):
        out.write(json.dumps(c.to_json(d)) + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.random:
        rng = random.Random(args.seed)
        bad = 0
        for i in range(args.random):
            d = random_subdicot(rng, rng.randint(1, args.max_half))
            z, zb = partition_function(d), brute_force_partition_function(d, args.max_vertices)
            if z != zb:
                bad += 1
                out.write(f"MISMATCH #{i}: det={z} brute={zb} dicot={json.dumps(d.to_json())}\n")
        out.write(f"{args.random - bad}/{args.random} MATCH (seed {args.seed})\n")
        return EXIT_PROPERTY if bad else EXIT_OK
    if not args.input:
        raise InputError("verify needs --input FILE or --random K")
    d = validate_dicot(_read_json(args.input))
    zb = brute_force_partition_function(d, args.max_vertices)
    z = partition_function(d)
    status = "MATCH" if z == zb else "MISMATCH"
    out.write(f"det={z} brute={zb} {status}\n")
    return EXIT_OK if z == zb else EXIT_PROPERTY


def cmd_square(args, out) -> int:
    g = validate_graph(_read_json(args.input))
    pi = load_involution(_read_json(args.pi), g)
    report = verify_squareness(g, pi)
    rel = "=" if report.holds else "!="
    out.write(f"Z(G)={report.z_graph} Z(G/pi)={report.z_quotient} {report.z_graph} {rel} {report.z_quotient}^2\n")
    out.write(f"P1={list(report.partition.p1)} P2={list(report.partition.p2)}\n")
    return EXIT_OK if report.holds else EXIT_PROPERTY


def cmd_kasteleyn(args, out) -> int:
    pd = validate_planar(_read_json(args.input))
    pairs = kasteleyn_orient(pd)
    oriented = pd.with_dicot(pd.dicot.reoriented(pairs))
    ok = verify_kasteleyn(oriented)
    json.dump(oriented.to_json(), out)
    out.write("\n")
    return EXIT_OK if ok else EXIT_PROPERTY


def _spec(args) -> FamilySpec:
    return FamilySpec(
        family=args.family,
        n=args.n,
        m=args.m,
        x=Fraction(args.x),
        a=Fraction(args.a),
        b=Fraction(args.b) if args.b is not None else Fraction(args.a) if args.family == "cycle" else Fraction(1),
        b1=Fraction(args.b1),
        b2=Fraction(args.b2),
    )


def cmd_family(args, out) -> int:
    spec = _spec(args)
    d = spec.dicot()
    z = partition_function(d)
    closed = spec.formula()
    row = {"family": spec.family, "m": spec.m, "n": spec.n, "vertices": d.n, "Z": z}
    if closed is not None:
        row["closed_form"] = closed
        match = closed == z if isinstance(closed, Fraction) else abs(closed - float(z)) <= 1e-9 * abs(float(z))
        row["agree"] = "yes" if match else "no"
    if args.oracle:
        row["brute_force"] = brute_force_partition_function(d, args.max_vertices)
    _emit([row], args.emit, out)
    if closed is not None and row["agree"] == "no":
        return EXIT_PROPERTY
    if args.oracle and row["brute_force"] != z:
        return EXIT_PROPERTY
    return EXIT_OK


def cmd_free_energy(args, out) -> int:
    params = {"x": float(Fraction(args.x)), "a": float(Fraction(args.a))}
    if args.family == "wheel":
        if args.alpha is not None:
            params = {"alpha": float(Fraction(args.alpha))}
        else:
            params["b"] = float(Fraction(args.b if args.b is not None else 1))
    elif args.family == "grid_vert":
        params.update(b1=float(Fraction(args.b1)), b2=float(Fraction(args.b2)))
    value = free_energy(args.family, **params)
    _emit([{"family": args.family, **params, "free_energy": value}] if args.emit != "text" else [{"free_energy": value}],
          args.emit, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dicot", description="Monopole-dimer partition functions on dicots.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_input(sp, required=True):
        sp.add_argument("--input", "-i", required=required, help="dicot JSON file")

    sp = sub.add_parser("partition", help="print det K as an exact fraction")
    add_input(sp)
    sp.add_argument("--timing", action="store_true")
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("enumerate", help="dump configurations as JSON lines")
    add_input(sp)
    sp.add_argument("--max-vertices", type=int, default=None)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", help="compare det K with brute-force enumeration")
    add_input(sp, required=False)
    sp.add_argument("--max-vertices", type=int, default=None)
    sp.add_argument("--random", type=int, default=0, metavar="K", help="check K random sub-dicots instead")
    sp.add_argument("--max-half", type=int, default=4, help="random dicots have up to 2*MAX_HALF vertices")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--oracle", action="store_true", help="accepted for symmetry; brute force always runs")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("square", help="check Z(G) = Z(G/pi)^2")
    add_input(sp)
    sp.add_argument("--pi", required=True, help='involution JSON {"pi": {"1": 4, ...}}')
    sp.set_defaults(func=cmd_square)

    sp = sub.add_parser("kasteleyn", help="orient a planar dicot (JSON with coords)")
    add_input(sp)
    sp.set_defaults(func=cmd_kasteleyn)

    for name, func, choices in (
        ("family", cmd_family, FAMILIES),
        ("free-energy", cmd_free_energy, ("cycle", "wheel", "grid_vert")),
    ):
        sp = sub.add_parser(name)
        sp.add_argument("--family", required=True, choices=choices)
        sp.add_argument("--x", default="1")
        sp.add_argument("--a", default="1")
        sp.add_argument("--b", default=None)
        sp.add_argument("--b1", default="1")
        sp.add_argument("--b2", default="1")
        sp.add_argument("--emit", choices=("text", "csv", "json"), default="text")
        if name == "family":
            sp.add_argument("--n", type=int, default=1)
            sp.add_argument("--m", type=int, default=1)
            sp.add_argument("--oracle", action="store_true", help="also run brute-force enumeration")
            sp.add_argument("--max-vertices", type=int, default=None)
        else:
            sp.add_argument("--alpha", default=None, help="wheel only: 4a^2 / (x^2 + b^2)")
        sp.set_defaults(func=func)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except HypothesisViolated as exc:
        print(exc, file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (NotPlanarDicot, NoKasteleynOrientation) as exc:
        print(f"hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except NonRealDeterminant as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except (InputError, DicotError, EvenOrder, TooLarge, ValueError, ZeroDivisionError,
            QuadratureNonConvergence) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
