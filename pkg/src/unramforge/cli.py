"""The ``forge`` command line tool.

Exit codes: 0 success (or a passing certificate), 2 failing certificate,
3 skip-dominated certificate, 64 usage error, 70 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .exactalg.poly import Poly

EXIT_USAGE = 64
EXIT_BREACH = 70
VERDICT_EXIT = {"pass": 0, "fail": 2, "skip": 3}
BUILTIN_ORBITS = ("sqrt-47", "sqrt-235", "quartic-roots")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(args) -> int:
    env = os.environ.get("FORGE_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"FORGE_SEED must be an integer, got {env!r}") from None
    return args.seed


def _emit(args, data, text: str | None = None) -> None:
    out = json.dumps(data, sort_keys=True, indent=1) if args.json or text is None else text
    if getattr(args, "out", None):
        Path(args.out).write_text(json.dumps(data, sort_keys=True, indent=1) + "\n")
        if not args.json and text is not None:
            print(text)
        return
    print(out)


def _poly_arg(text: str) -> Poly:
    """A polynomial given inline, as a JSON coefficient list, or as a file."""
    src = text
    if os.path.exists(text):
        src = Path(text).read_text().strip()
    if src.startswith("["):
        return Poly.from_json(json.loads(src))
    return Poly.parse(src)


def _load_orbit_doc(name: str) -> dict:
    if name in BUILTIN_ORBITS:
        ref = resources.files("unramforge") / "data" / "orbits" / f"{name}.json"
        return json.loads(ref.read_text())
    try:
        return json.loads(Path(name).read_text())
    except FileNotFoundError:
        raise UsageError(f"no orbit file {name!r}; built-in orbits: {', '.join(BUILTIN_ORBITS)}")


# -- commands -----------------------------------------------------------------------

def cmd_construct_pn(args) -> int:
    from .resolvent import ResolventConfig, construct_Pn, orbit_from_json

    doc = _load_orbit_doc(args.orbit)
    orbit, target = orbit_from_json(doc)
    if args.target:
        target = _poly_arg(args.target)
    n = args.n or orbit.n
    res = construct_Pn(ResolventConfig(n), orbit, search=args.search_branches,
                       target=target if args.search_branches else None, bits=args.bits)
    data = {"n": n, "poly": res.poly.to_json(), "text": res.poly.format(),
            "branch": list(res.branch), "bits": res.bits, "tried": res.tried}
    lines = [res.poly.format()]
    if target is not None:
        match = res.poly == target
        data["target"] = target.to_json()
        data["target_match"] = match
        lines.append("target: " + ("match" if match else "discrepancy with " + target.format()))
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_dual_orbit(args) -> int:
    from .resolvent import _quad_from_json, dual_orbit

    doc = _load_orbit_doc(args.orbit)
    if doc.get("kind") != "quadratic_dual":
        raise UsageError("dual-orbit needs an orbit file of kind 'quadratic_dual'")
    a = {int(k): _quad_from_json(v) for k, v in doc["a"].items()}
    d = dual_orbit(int(doc["n"]), a, int(doc.get("generator", 2)))
    data = {"n": d.orbit.n, "charpoly": d.poly.to_json(), "text": d.poly.format(),
            "order": list(d.order), "degenerate": d.degenerate,
            "b": {str(k): (v.to_json() if hasattr(v, "to_json") else str(v))
                  for k, v in sorted(d.orbit.values.items())}}
    _emit(args, data, f"{d.poly.format()}\norder {' '.join(map(str, d.order))}"
          + ("\ndegenerate orbit" if d.degenerate else ""))
    return 0


def cmd_cheb(args) -> int:
    from .cheblucas import cheb_monic

    f = cheb_monic(args.n)
    _emit(args, {"n": args.n, "poly": f.to_json(), "text": f.format()}, f.format())
    return 0


def cmd_lucas(args) -> int:
    from .cheblucas import lucas_number, lucas_poly

    if args.poly is not None:
        f = lucas_poly(args.poly)
        _emit(args, {"n": args.poly, "poly": f.to_json(), "text": f.format()}, f.format())
        return 0
    if args.i is None:
        raise UsageError("lucas needs --i or --poly")
    v = lucas_number(args.i)
    _emit(args, {"i": args.i, "value": str(v)}, str(v))
    return 0


def cmd_admissible(args) -> int:
    from .cheblucas import admissible_thm2, admissible_thm3

    fn = admissible_thm2 if args.theorem == 2 else admissible_thm3
    res = fn(args.j, args.p, args.k)
    data = {"theorem": args.theorem, "j": args.j, "p": args.p, "k": args.k, **res.to_json()}
    _emit(args, data, f"{'admissible' if res else 'not admissible'}: {res.reason}")
    return 0


def cmd_family(args) -> int:
    from .families import (
        catalog,
        enumerate_admissible,
        get_family,
        lucas_specializations,
        parse_t_range,
        specialize,
    )

    if args.family_cmd == "list":
        fams = catalog(args.kind)
        rows = [f"{f.id:<12} {f.kind:<8} p={f.p if f.p is not None else '-':<3} {f.description}"
                for f in fams]
        _emit(args, [{"id": f.id, "kind": f.kind, "p": f.p, "description": f.description}
                     for f in fams], "\n".join(rows))
    elif args.family_cmd == "show":
        spec = get_family(args.id)
        d = spec.to_json()
        lines = [f"{spec.id}: {spec.description}", f"main: {spec.raw.get('main')}"]
        if spec.subfield is not None:
            lines.append(f"subfield: {spec.raw.get('subfield')}")
        if spec.classes:
            lines.append("classes: " + ", ".join(f"{r} mod {m}" for r, m in spec.classes))
        if spec.p is not None:
            lines.append(f"p = {spec.p}")
        _emit(args, d, "\n".join(lines))
    elif args.family_cmd == "specialize":
        inst = specialize(args.id, args.t)
        lines = [f"main: {inst.main.format()}"]
        if inst.subfield is not None:
            lines.append(f"subfield: {inst.subfield.format('y')}")
        lines.append(f"admissible: {inst.admissible}")
        _emit(args, inst.to_json(), "\n".join(lines))
    elif args.family_cmd == "enumerate":
        ts = enumerate_admissible(args.id, args.lo, args.hi)
        _emit(args, {"family": args.id, "from": args.lo, "to": args.hi,
                     "t": [str(t) for t in ts]}, " ".join(map(str, ts)))
    elif args.family_cmd == "lucas":
        rows = lucas_specializations(args.id, parse_t_range(args.i))
        data = [{"i": i, "t": str(t), "admissible": inst.admissible,
                 "rule": f"{rule.mult}*L({rule.step}i{rule.offset:+d})"}
                for i, t, inst, rule in rows]
        text = "\n".join(f"i={d['i']:>3}  t={d['t']}  admissible={d['admissible']}"
                         for d in data)
        _emit(args, data, text)
    return 0


def cmd_certify(args) -> int:
    from .certify import certify_family

    cert = certify_family(args.id, args.t, seed=_seed(args), scan=args.scan,
                          scan_bound=args.bound, tau=args.tau, workers=args.workers)
    text = "\n".join([f"{c.name:<22} {c.status}" for c in cert.checks]
                     + [f"verdict: {cert.verdict}"])
    if args.out:
        Path(args.out).write_text(cert.dumps() + "\n")
    print(cert.dumps() if args.json else text)
    return VERDICT_EXIT[cert.verdict]


def cmd_scan(args) -> int:
    from .certify import galois_scan
    from .families import specialize

    if args.poly:
        f = _poly_arg(args.poly)
    elif args.family:
        if args.t is None:
            raise UsageError("scan --family needs --t")
        f = specialize(args.family, args.t).main
    else:
        raise UsageError("scan needs --poly or --family")
    res = galois_scan(f, args.bound, args.expected, tau=args.tau, seed=_seed(args),
                      workers=args.workers)
    text = [f"{k:<12} {v}" for k, v in res.to_json()["histogram"].items()]
    text.append(f"distance {res.distance:.4f} (tau {res.tau}); "
                + ("consistent" if res.consistent else "inconsistent") + f" with {res.group}")
    _emit(args, res.to_json(), "\n".join(text))
    return 0 if res.consistent else 1


def cmd_pgl_pair(args) -> int:
    from .certify import pgl_pair_checks

    ts = tuple(int(x) for x in args.t.split(",")) if args.t else (-3, 0, 1, 10)
    rep = pgl_pair_checks(ts)
    keys = ["disc_identity", "deg7_mod2_constant", "deg7_mod2_irreducible",
            "deg8_mod2_parity_split", "deg8_mod2_factors_irreducible", "Q_odd",
            "deg7_three_real", "deg8_four_real"]
    text = "\n".join(f"{k:<32} {'ok' if rep[k] else 'FAIL'}" for k in keys)
    _emit(args, rep, text)
    return 0 if rep["ok"] else 1


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    rows = run_selftest(seed=_seed(args))
    if args.json:
        print(json.dumps(rows, sort_keys=True, indent=1))
    else:
        width = max(len(r["name"]) for r in rows)
        for r in rows:
            print(f"{r['name']:<{width}}  {r['status']:<11}  {r['detail']}")
    return 1 if any(r["status"] == "fail" for r in rows) else 0


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized subroutines (env FORGE_SEED overrides)")

    p = _Parser(prog="forge", description="Unramified extensions from unit-generating polynomials")
    p.add_argument("--version", action="version", version=f"forge {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("construct-pn", parents=[common], help="build P_n from an orbit of values")
    s.add_argument("--orbit", required=True,
                   help=f"orbit JSON file or one of: {', '.join(BUILTIN_ORBITS)}")
    s.add_argument("--n", type=int)
    s.add_argument("--search-branches", action="store_true")
    s.add_argument("--target", help="polynomial to compare against")
    s.add_argument("--bits", type=int, default=256)
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct_pn)

    s = sub.add_parser("dual-orbit", parents=[common], help="dual b-orbit of a quadratic a-orbit")
    s.add_argument("--orbit", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_dual_orbit)

    s = sub.add_parser("cheb", parents=[common], help="Chebyshev power x^(.n)")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_cheb)

    s = sub.add_parser("lucas", parents=[common], help="Lucas numbers and polynomials")
    s.add_argument("--i", type=int)
    s.add_argument("--poly", type=int, metavar="N")
    s.set_defaults(func=cmd_lucas)

    s = sub.add_parser("admissible", parents=[common], help="Chebyshev/Lucas congruence test")
    s.add_argument("--theorem", type=int, choices=(2, 3), required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--j", type=int, required=True)
    s.set_defaults(func=cmd_admissible)

    fam = sub.add_parser("family", help="parametric family catalog")
    fsub = fam.add_subparsers(dest="family_cmd", required=True, parser_class=_Parser)
    f = fsub.add_parser("list", parents=[common])
    f.add_argument("--kind", choices=("theorem", "source", "example"))
    f = fsub.add_parser("show", parents=[common])
    f.add_argument("id")
    f = fsub.add_parser("specialize", parents=[common])
    f.add_argument("id")
    f.add_argument("--t", type=int, required=True)
    f.add_argument("--out")
    f = fsub.add_parser("enumerate", parents=[common], help="admissible t in [from, to)")
    f.add_argument("id")
    f.add_argument("--from", dest="lo", type=int, required=True)
    f.add_argument("--to", dest="hi", type=int, required=True)
    f = fsub.add_parser("lucas", parents=[common])
    f.add_argument("id")
    f.add_argument("--i", required=True, help="index range a..b (inclusive)")
    fam.set_defaults(func=cmd_family)

    s = sub.add_parser("certify", parents=[common], help="unramifiedness certificate")
    s.add_argument("id")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--scan", action="store_true")
    s.add_argument("--bound", type=int, default=10 ** 4)
    s.add_argument("--tau", type=float, default=0.05)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("scan", parents=[common], help="Frobenius cycle-type scan")
    s.add_argument("--poly")
    s.add_argument("--family")
    s.add_argument("--t", type=int)
    s.add_argument("--expected", required=True)
    s.add_argument("--bound", type=int, default=10 ** 4)
    s.add_argument("--tau", type=float, default=0.05)
    s.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("pgl-pair", parents=[common], help="checks on the degree 7/8 pair")
    s.add_argument("--t", help="comma-separated sample t for real-root counts")
    s.set_defaults(func=cmd_pgl_pair)

    s = sub.add_parser("selftest", parents=[common], help="run the worked-example suite")
    s.set_defaults(func=cmd_selftest)
    return p


def _glue_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-2..3" as an option; attach such values to their flag
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and re.match(r"-\d", tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    from .families import FixtureError, InvariantBreach

    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else argv))
    try:
        return args.func(args)
    except (InvariantBreach, FixtureError) as exc:
        print(f"forge: invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except (UsageError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"forge: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
