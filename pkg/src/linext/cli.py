"""Command line interface: ``linext <verb> ...``.

Exit status is 0 for a true/decided-yes answer or plain output, 1 for a
decided-no answer, and 2 for any error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import config, contfrac, corpus, decide, gadgets, jsonio, polytope, selftest, volume
from .counting import (
    CountInstance,
    N,
    count,
    count_fixed,
    distribution,
    flat_check,
    rho,
    stanley_counts,
    stanley_defect,
)
from .errors import LinextError
from .poset import Poset

log = logging.getLogger("linext")

ENV_PREFIX = "LINEXT_"


@dataclass
class RunConfig:
    seed: int = 0
    caps: dict = field(default_factory=dict)
    format: str = "plain"
    verbosity: int = 0

    def __post_init__(self):
        for name, value in self.caps.items():
            if value is not None and value <= 0:
                raise ValueError(f"cap {name} must be positive")

    def rng(self):
        return random.Random(self.seed)


class UsageError(ValueError):
    """Bad or missing command-line input; exits with status 2."""


class Result:
    """What a verb hands back: a printable payload and an optional verdict."""

    def __init__(self, payload, verdict=None, plain=None):
        self.payload = payload
        self.verdict = verdict
        self.plain = plain


# -- input helpers ---------------------------------------------------------------------


def _parse_pairs(text, sep=":"):
    """"0:3,2:5" -> [(0, 3), (2, 5)]."""
    if not text:
        return []
    out = []
    for item in text.split(","):
        u, v = item.split(sep)
        out.append((int(u), int(v)))
    return out


def _parse_ints(text):
    return [int(t) for t in text.replace(" ", "").split(",") if t] if text else []


def _doc(args):
    if getattr(args, "input", None):
        return jsonio.load(args.input)
    return None


def _poset(args, doc=None, key=None):
    doc = _doc(args) if doc is None else doc
    if doc is not None:
        data = doc[key] if key else doc.get("poset", doc)
        return jsonio.poset_from_json(data)
    if args.n is None:
        raise UsageError("give a poset with --input FILE or --n N --rel 'u<v,...'")
    rels = _parse_pairs(args.rel, "<") if args.rel else []
    return Poset.from_relations(args.n, rels)


def _instance(args):
    doc = _doc(args)
    if doc is not None and "poset" in doc:
        P = jsonio.poset_from_json(doc["poset"])
        fixed = [tuple(p) for p in doc.get("fixed", [])]
        x = doc.get("x", args.x)
        a = doc.get("a", args.a)
    else:
        P = _poset(args, doc)
        fixed, x, a = _parse_pairs(args.fixed), args.x, args.a
    if x is None:
        raise UsageError("--x is required")
    return CountInstance(P, fixed, int(x), int(a if a is not None else 1))


def _fraction(text):
    return Fraction(text)


def _frac(q):
    return jsonio.fraction_str(q)


# -- counting verbs ----------------------------------------------------------------------


def cmd_count(args, cfg):
    P = _poset(args)
    e = count(P)
    return Result({"e": e}, plain=str(e))


def cmd_count_fixed(args, cfg):
    inst = _instance(args)
    val = count_fixed(inst, drop_x=args.no_x)
    payload = {"N": val}
    if args.all:
        payload["distribution"] = distribution(inst)
    return Result(payload, plain=str(val))


def cmd_rho(args, cfg):
    P = _poset(args)
    r = rho(P, args.x)
    return Result({"rho": _frac(r)}, plain=_frac(r))


def cmd_defect(args, cfg):
    inst = _instance(args)
    lo, mid, hi = stanley_counts(inst)
    phi = stanley_defect(inst)
    return Result({"counts": [lo, mid, hi], "defect": phi}, verdict=phi == 0,
                  plain=f"{phi}  (N(a-1), N(a), N(a+1)) = ({lo}, {mid}, {hi})")


def cmd_flat(args, cfg):
    inst = _instance(args)
    flat = flat_check(inst)
    return Result({"flat": flat, "N(a)": N(inst), "N(a+1)": N(inst, inst.a + 1)},
                  verdict=flat, plain="flat" if flat else "not flat")


# -- gadgets -------------------------------------------------------------------------------


def _gadget_result(out):
    payload = out.record()
    payload["poset"] = jsonio.poset_to_json(out.P)
    if out.instance is not None:
        payload["instance"] = jsonio.instance_to_json(out.instance)
    return Result(payload)


def _two_pointed(args):
    doc = _doc(args)
    if doc is None:
        raise UsageError("this gadget reads {'P':..., 'x':..., 'Q':..., 'y':...} from --input")
    return (jsonio.poset_from_json(doc["P"]), int(doc["x"]),
            jsonio.poset_from_json(doc["Q"]), int(doc["y"]))


def cmd_gadget(args, cfg):
    kind = args.kind
    if kind == "pad":
        inst = gadgets.pad_fixed(_instance(args), args.k)
        return Result(jsonio.instance_to_json(inst))
    if kind == "bound":
        return Result(jsonio.instance_to_json(gadgets.ensure_bounded(_instance(args))))
    if kind == "flat2sta":
        inst = gadgets.ensure_bounded(_instance(args))
        return _gadget_result(gadgets.flat_to_stanley(inst))
    if kind == "crle2flat":
        return _gadget_result(gadgets.crle_to_flat(*_two_pointed(args)))
    if kind == "mediant":
        return _gadget_result(gadgets.mediant_gadget(*_two_pointed(args)))
    if kind == "recip":
        return _gadget_result(gadgets.reciprocal_plus_one(_poset(args), args.x))
    if kind == "plus1":
        return _gadget_result(gadgets.plus_one(_poset(args), args.x))
    if kind == "quad2crle":
        q = _quad(args)
        left, right = gadgets.quad_to_crle(*[v for pair in q.pairs for v in pair])
        return Result({"P": _gadget_result(left).payload, "Q": _gadget_result(right).payload})
    if kind == "cfposet":
        return _gadget_result(gadgets.cf_poset(_parse_ints(args.quotients)))
    raise UsageError(f"unknown gadget {kind}")


# -- continued fractions -------------------------------------------------------------------


def cmd_cf(args, cfg):
    op = args.op
    if op == "expand":
        e = contfrac.cf_expand(args.p, args.q)
        return Result({"quotients": list(e.quotients), "value": _frac(e.value)}, plain=str(e))
    if op == "value":
        v = contfrac.cf_value(_parse_ints(args.quotients))
        return Result({"value": _frac(v)}, plain=_frac(v))
    if op == "qsum":
        s = contfrac.quotient_sum(args.p, args.q)
        return Result({"S": s}, plain=str(s))
    if op == "yaoknuth":
        mean = contfrac.yao_knuth_mean(args.p)
        lead = contfrac.yao_knuth_leading(args.p)
        tail = contfrac.tail_fraction(args.p)
        return Result({"n": args.p, "mean": _frac(mean), "mean_float": float(mean),
                       "leading": lead, "tail_fraction": tail},
                      plain=f"mean={float(mean):.4f} leading={lead:.4f} tail={tail:.4f}")
    if op == "findm":
        good = contfrac.find_good_m(args.p, args.q, seed=cfg.seed)
        return Result(good.as_dict(), plain=str(good.m))
    raise UsageError(f"unknown cf operation {op}")


# -- geometry ---------------------------------------------------------------------------------


def _system(args):
    doc = _doc(args)
    if doc is not None and "A" in doc:
        return polytope.ConstraintSystem.from_json(doc)
    P = _poset(args, doc)
    return polytope.chain_polytope(P) if args.chain else polytope.order_polytope(P)


def _bodies(doc):
    """[{"poset":..., "fixed_chain": [...], "slice": i} | {"vertices":...} | {"A":...}, "mult": m]."""
    out = []
    for item in doc["bodies"]:
        if "vertices" in item:
            K = polytope.VertexPolytope.from_json(item)
        elif "A" in item:
            K = polytope.vertices(polytope.ConstraintSystem.from_json(item))
        else:
            P = jsonio.poset_from_json(item["poset"])
            S = polytope.slices(P, item.get("fixed_chain", []))[item.get("slice", 0)]
            K = polytope.vertices(S)
        out.append((K, int(item.get("mult", 1))))
    return out


def cmd_poly(args, cfg):
    op = args.op
    if op in ("order", "chain"):
        P = _poset(args)
        C = polytope.order_polytope(P) if op == "order" else polytope.chain_polytope(P)
        return Result(C.to_json())
    if op == "slices":
        P = _poset(args)
        return Result([S.to_json() for S in polytope.slices(P, _parse_ints(args.z))])
    if op == "tu":
        doc = _doc(args)
        A = doc["A"] if doc is not None and "A" in doc else _system(args).A
        ok = polytope.is_totally_unimodular(A)
        return Result({"totally_unimodular": ok}, verdict=ok, plain=str(ok).lower())
    if op == "volume":
        V = polytope.vertices(_system(args))
        vol = volume.volume(V, dim=args.dim, strict=args.strict)
        return Result({"volume": _frac(vol)}, plain=_frac(vol))
    if op == "mixed":
        mv = volume.mixed_volume(_bodies(_doc(args)))
        return Result({"mixed_volume": _frac(mv)}, plain=_frac(mv))
    if op == "stapol":
        P = _poset(args)
        lhs, rhs, eq = volume.verify_sta_pol(P, _parse_ints(args.z), _parse_ints(args.c))
        return Result({"lhs": _frac(lhs), "rhs": _frac(rhs), "equal": eq}, verdict=eq,
                      plain=f"{_frac(lhs)} {'=' if eq else '!='} {_frac(rhs)}")
    if op == "afdefect":
        doc = _doc(args)
        if doc is not None and "bodies" in doc:
            bodies = _bodies(doc)
            (K, _), (L, _) = bodies[:2]
            delta = volume.af_defect(K, L, bodies[2:])
        else:
            delta = volume.stanley_af_defect(_instance(args))
        return Result({"delta": _frac(delta)}, verdict=delta == 0, plain=_frac(delta))
    raise UsageError(f"unknown poly operation {op}")


# -- deciders -------------------------------------------------------------------------------


def _quad(args):
    doc = _doc(args)
    if doc is None:
        raise UsageError("quad instances are read from --input as {'pairs': [[poset, x], ...]}")
    return decide.QuadInstance(tuple((jsonio.poset_from_json(P), int(x)) for P, x in doc["pairs"]))


def _ver(args):
    P = _poset(args)
    t = _fraction(args.target)
    return decide.VerInstance(P, args.x, t.numerator, t.denominator)


def cmd_decide(args, cfg):
    what = args.what
    if what == "sta":
        inst = _instance(args)
        if args.k == "brute":
            v = decide.esta_bruteforce(inst)
        elif args.k == "0":
            if inst.k:
                raise UsageError("--k 0 takes no fixed elements")
            v = decide.esta0_decide(inst.P, inst.x, inst.a)
        else:
            if inst.k != 1:
                raise UsageError("--k 1 needs exactly one fixed element")
            (z, c), = inst.zfixed
            v = decide.esta1_decide(inst.P, z, c, inst.x, inst.a)
        return Result(v.as_dict(), verdict=v.equal, plain="equal" if v.equal else "not equal")
    if what == "quad":
        ok = decide.evaluate_quad(_quad(args))
        return Result({"holds": ok}, verdict=ok, plain=str(ok).lower())
    if what == "verrle":
        inst = _ver(args)
        ok = decide.verrle_decide(inst, seed=cfg.seed, strategy=args.strategy)
        return Result({"holds": ok, "rho": _frac(rho(inst.P, inst.x))}, verdict=ok,
                      plain=str(ok).lower())
    if what == "witness":
        w = decide.hardness_witness(_ver(args), seed=cfg.seed, strategy=args.strategy)
        payload = {"instance": jsonio.instance_to_json(w.instance),
                   "transcript": w.transcript, "size": w.instance.n}
        if args.evaluate:
            v = decide.esta_bruteforce(w.instance)
            payload["verdict"] = v.as_dict()
            return Result(payload, verdict=v.equal)
        return Result(payload)
    raise UsageError(f"unknown decide target {what}")


# -- corpus and selftest ---------------------------------------------------------------------


def cmd_random_poset(args, cfg):
    P = corpus.random_poset(args.n, args.density, seed=cfg.seed)
    return Result(jsonio.poset_to_json(P))


def cmd_selftest(args, cfg):
    results = selftest.run(args.level, seed=cfg.seed)
    lines = [r.line() for r in results]
    ok = all(r.ok for r in results)
    lines.append(f"{sum(r.ok for r in results)}/{len(results)} identities hold")
    payload = [{"identity": r.name, "checked": r.checked, "ok": r.ok,
                "seconds": round(r.seconds, 3), "failures": r.failures[:3],
                "error": r.error} for r in results]
    return Result(payload, verdict=ok, plain="\n".join(lines))


# -- parser -------------------------------------------------------------------------------------


def _add_poset_args(p, instance=False):
    p.add_argument("--input", help="JSON file, or - for standard input")
    p.add_argument("--n", type=int, help="number of elements (with --rel)")
    p.add_argument("--rel", help="relations as 'u<v,u<v'")
    p.add_argument("--x", type=int)
    if instance:
        p.add_argument("--a", type=int)
        p.add_argument("--fixed", help="pins as 'z:c,z:c'")


CAP_NAMES = ("n", "dim", "minor", "enum", "ideals", "free-vars", "mixed-dim")


def _add_global_args(p, defaults):
    def dflt(value):
        return value if defaults else argparse.SUPPRESS

    p.add_argument("--seed", type=int, default=dflt(int(os.environ.get(ENV_PREFIX + "SEED", 0))))
    p.add_argument("--format", choices=("plain", "json"),
                   default=dflt(os.environ.get(ENV_PREFIX + "FORMAT", "plain")))
    p.add_argument("-v", "--verbose", action="count", default=dflt(0))
    for cap in CAP_NAMES:
        p.add_argument(f"--cap-{cap}", type=int, default=dflt(None))


def build_parser():
    parser = argparse.ArgumentParser(prog="linext", description=__doc__.splitlines()[0],
                                     allow_abbrev=False)
    _add_global_args(parser, defaults=True)
    # the same flags are accepted after the verb as well
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    _add_global_args(common, defaults=False)
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], allow_abbrev=False, **kw)

    p = add("count", help="number of linear extensions e(P)")
    _add_poset_args(p)
    p.set_defaults(func=cmd_count)

    p = add("count-fixed", help="N_{z,c}(P, x, a)")
    _add_poset_args(p, True)
    p.add_argument("--no-x", action="store_true", help="count N_{z,c}(P) without x")
    p.add_argument("--all", action="store_true", help="also print N for every a")
    p.set_defaults(func=cmd_count_fixed)

    p = add("rho", help="e(P) / e(P - x)")
    _add_poset_args(p)
    p.set_defaults(func=cmd_rho)

    p = add("defect", help="N(a)^2 - N(a-1) N(a+1)")
    _add_poset_args(p, True)
    p.set_defaults(func=cmd_defect)

    p = add("flat", help="whether N(a) = N(a+1)")
    _add_poset_args(p, True)
    p.set_defaults(func=cmd_flat)

    p = add("gadget", help="apply a poset construction")
    p.add_argument("kind", choices=("pad", "bound", "flat2sta", "crle2flat", "mediant",
                                    "recip", "plus1", "quad2crle", "cfposet"))
    _add_poset_args(p, True)
    p.add_argument("--k", type=int, default=0, help="target number of pins for pad")
    p.add_argument("--quotients", help="comma separated quotients for cfposet")
    p.set_defaults(func=cmd_gadget)

    p = add("cf", help="continued fractions")
    p.add_argument("op", choices=("expand", "value", "qsum", "yaoknuth", "findm"))
    p.add_argument("p", type=int, nargs="?", help="numerator, m, n or A")
    p.add_argument("q", type=int, nargs="?", help="denominator, A or B")
    p.add_argument("--quotients")
    p.set_defaults(func=cmd_cf)

    p = add("poly", help="polytopes, volumes and mixed volumes")
    p.add_argument("op", choices=("order", "chain", "slices", "tu", "volume", "mixed",
                                  "stapol", "afdefect"))
    _add_poset_args(p, True)
    p.add_argument("--z", help="fixed chain z_1,...,z_k")
    p.add_argument("--c", help="values c_1,...,c_k")
    p.add_argument("--chain", action="store_true", help="use the chain polytope")
    p.add_argument("--dim", type=int)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_poly)

    p = add("decide", help="equality deciders")
    p.add_argument("what", choices=("sta", "quad", "verrle", "witness"))
    _add_poset_args(p, True)
    p.add_argument("--k", choices=("0", "1", "brute"), default="brute")
    p.add_argument("--target", help="A/B")
    p.add_argument("--strategy", choices=("compact", "ntd"), default="compact")
    p.add_argument("--evaluate", action="store_true", help="decide the witness by brute force")
    p.set_defaults(func=cmd_decide)

    p = add("random-poset", help="seeded random poset")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=float, default=0.3)
    p.set_defaults(func=cmd_random_poset)

    p = add("selftest", help="run the identity suites")
    p.add_argument("level", choices=("quick", "full"), nargs="?", default="quick")
    p.set_defaults(func=cmd_selftest)
    return parser


def _emit(result, cfg):
    if cfg.format == "json" or result.plain is None:
        print(jsonio.dumps(result.payload, indent=None if cfg.format == "json" else 2))
    else:
        print(result.plain)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    caps = {name: getattr(args, "cap_" + name.replace("-", "_")) for name in CAP_NAMES}
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig(args.seed, caps, args.format, args.verbose)
        config.set_caps(**{k.replace("-", "_"): v for k, v in caps.items() if v is not None})
        result = args.func(args, cfg)
    except (LinextError, ValueError, KeyError, IndexError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    _emit(result, cfg)
    if result.verdict is None:
        return 0
    return 0 if result.verdict else 1


if __name__ == "__main__":
    sys.exit(main())
