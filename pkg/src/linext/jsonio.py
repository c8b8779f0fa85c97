"""JSON encodings of posets, counting instances and polytopes."""
from __future__ import annotations

import json
import sys
from fractions import Fraction

from .counting import CountInstance
from .poset import Poset


def poset_to_json(P):
    data = {"n": P.n, "relations": [list(r) for r in P.covers()]}
    if P.names:
        data["names"] = list(P.names)
    return data


def poset_from_json(data):
    if isinstance(data, Poset):
        return data
    rels = data.get("relations", data.get("covers", []))
    names = data.get("names")
    return Poset.from_relations(int(data["n"]), [(int(u), int(v)) for u, v in rels],
                                names=tuple(names) if names else None)


def instance_to_json(inst):
    return {"poset": poset_to_json(inst.P), "fixed": [list(p) for p in inst.zfixed],
            "x": inst.x, "a": inst.a}


def instance_from_json(data):
    P = poset_from_json(data["poset"])
    return CountInstance(P, [tuple(p) for p in data.get("fixed", [])],
                         int(data["x"]), int(data["a"]))


def default(obj):
    """Fractions print as "A/B" and sets as sorted lists."""
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, Poset):
        return poset_to_json(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot encode {type(obj).__name__}")


def fraction_str(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dumps(obj, **kw):
    return json.dumps(obj, default=default, **kw)


def load(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)
