"""JSON formats for every value the CLI reads or writes.

Rationals are decimal-free "p/q" strings, the point at infinity is the
string "inf", and Laurent polynomials are lists of [exponent, "p/q"]
terms.  Serialization is canonical: keys are sorted and vertex ids are
the preorder ids of the validated objects, so equal values produce
byte-identical documents.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import WitchModuliError
from .laurent import Laurent
from .limits import GromovLimit, ReparamFamily1, ReparamFamily2, SmoothFamily
from .moduli import DiskTree, Reparam1, Reparam2, WitchCurve
from .treepair import TreePair, TreePairSurjection, tree_pair_from_vertices
from .trees import RRT, rrt_from_paren
from .metric import MuWitness


class FormatError(WitchModuliError):
    pass


def q_str(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)


def q_parse(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if not isinstance(s, str):
        raise FormatError(f"expected a rational string, got {s!r}")
    return Fraction(s)


def laurent_dump(f: Laurent) -> list:
    return [[e, q_str(c)] for e, c in Laurent.of(f).terms]


def laurent_parse(data) -> Laurent:
    if isinstance(data, (int, str)):
        return Laurent.of(q_parse(data))
    return Laurent.of([(int(e), q_parse(c)) for e, c in data])


def rrt_dump(t: RRT) -> dict:
    return {
        "paren": t.paren,
        "in": [list(kids) for kids in t.in_lists],
        "leaves": list(t.leaves),
    }


def rrt_parse(data) -> RRT:
    if isinstance(data, str):
        return rrt_from_paren(data)
    if "paren" in data:
        return rrt_from_paren(data["paren"])
    from .trees import validate_rrt

    return validate_rrt(
        {v: kids for v, kids in enumerate(data["in"])}, data.get("root", 0)
    )


def tree_pair_dump(tp: TreePair) -> dict:
    return {
        "type_vector": list(tp.type_vector),
        "seam": rrt_dump(tp.seam),
        "bubble": {
            "root": 0,
            "kinds": list(tp.kinds),
            "in": [list(kids) for kids in tp.bubble_in],
            "pi": {str(c): tp.pi[c] for c in tp.components},
            "marks": {str(m): list(tp.mark_label[m]) for m in tp.marks},
        },
    }


def tree_pair_parse(data) -> TreePair:
    seam = rrt_parse(data["seam"])
    bub = data["bubble"]
    return tree_pair_from_vertices(
        seam,
        list(bub["kinds"]),
        [list(k) for k in bub["in"]],
        int(bub.get("root", 0)),
        tuple(data["type_vector"]),
    )


def disk_tree_dump(d: DiskTree) -> dict:
    return {
        "tree": rrt_dump(d.tree),
        "x": {str(v): [q_str(c) for c in tup] for v, tup in sorted(d.x.items())},
    }


def disk_tree_parse(data) -> DiskTree:
    tree = rrt_parse(data["tree"])
    x = {int(v): tuple(q_parse(c) for c in tup) for v, tup in data["x"].items()}
    return DiskTree(tree, x)


def curve_dump(w: WitchCurve) -> dict:
    return {
        "pair": tree_pair_dump(w.pair),
        "x": {str(v): [q_str(c) for c in tup] for v, tup in sorted(w.x.items())},
        "z": {
            str(a): {
                "x": [q_str(c) for c in w.cx[a]],
                "y": [[q_str(c) for c in line] for line in w.cy[a]],
            }
            for a in sorted(w.cx)
        },
    }


def curve_parse(data) -> WitchCurve:
    pair = tree_pair_parse(data["pair"])
    x = {int(v): tuple(q_parse(c) for c in tup) for v, tup in data["x"].items()}
    cx = {}
    cy = {}
    for a, blob in data["z"].items():
        cx[int(a)] = tuple(q_parse(c) for c in blob["x"])
        cy[int(a)] = tuple(tuple(q_parse(c) for c in line) for line in blob["y"])
    return WitchCurve(pair, x, cx, cy)


def family_dump(f: SmoothFamily) -> dict:
    return {
        "type_vector": list(f.n),
        "x": [laurent_dump(v) for v in f.x],
        "z": [
            [[laurent_dump(zx), laurent_dump(zy)] for zx, zy in seam] for seam in f.z
        ],
    }


def family_parse(data) -> SmoothFamily:
    return SmoothFamily(
        tuple(data["type_vector"]),
        tuple(laurent_parse(v) for v in data["x"]),
        tuple(
            tuple((laurent_parse(zx), laurent_parse(zy)) for zx, zy in seam)
            for seam in data["z"]
        ),
    )


def limit_dump(l: GromovLimit) -> dict:
    return {
        "family": family_dump(l.family),
        "curve": curve_dump(l.curve),
        "phi": {
            str(v): {"a": laurent_dump(f.a), "b": laurent_dump(f.b)}
            for v, f in sorted(l.phi.items())
        },
        "psi": {
            str(a): {
                "a": laurent_dump(f.a),
                "b": [laurent_dump(f.b[0]), laurent_dump(f.b[1])],
            }
            for a, f in sorted(l.psi.items())
        },
    }


def limit_parse(data) -> GromovLimit:
    fam = family_parse(data["family"])
    curve = curve_parse(data["curve"])
    phi = {
        int(v): ReparamFamily1(laurent_parse(f["a"]), laurent_parse(f["b"]))
        for v, f in data["phi"].items()
    }
    psi = {
        int(a): ReparamFamily2(
            laurent_parse(f["a"]),
            (laurent_parse(f["b"][0]), laurent_parse(f["b"][1])),
        )
        for a, f in data["psi"].items()
    }
    return GromovLimit(fam, curve, phi, psi)


def witness_dump(w: MuWitness) -> dict:
    surj = w.surjection
    return {
        "source": tree_pair_dump(surj.source),
        "target": tree_pair_dump(surj.target),
        "seam_map": list(surj.seam_map),
        "bubble_map": {str(k): v for k, v in sorted(surj.bubble_map.items())},
        "phi": {
            str(v): {"a": q_str(g.a), "b": q_str(g.b)} for v, g in sorted(w.phi.items())
        },
        "psi": {
            str(a): {"a": q_str(g.a), "b": [q_str(g.b[0]), q_str(g.b[1])]}
            for a, g in sorted(w.psi.items())
        },
    }


def witness_parse(data) -> MuWitness:
    source = tree_pair_parse(data["source"])
    target = tree_pair_parse(data["target"])
    surj = TreePairSurjection(
        source,
        target,
        tuple(data["seam_map"]),
        {int(k): v for k, v in data["bubble_map"].items()},
    )
    phi = {
        int(v): Reparam1(q_parse(g["a"]), q_parse(g["b"]))
        for v, g in data["phi"].items()
    }
    psi = {
        int(a): Reparam2(q_parse(g["a"]), (q_parse(g["b"][0]), q_parse(g["b"][1])))
        for a, g in data["psi"].items()
    }
    return MuWitness(surj, phi, psi)


def detect_and_parse(data):
    """Parse any of the known document shapes (used by validate/canon/iso)."""
    if "pair" in data:
        return curve_parse(data)
    if "bubble" in data:
        return tree_pair_parse(data)
    if "tree" in data:
        return disk_tree_parse(data)
    if "z" in data and "type_vector" in data:
        return family_parse(data)
    if "paren" in data or "in" in data:
        return rrt_parse(data)
    raise FormatError("unrecognized document shape")


def dump_any(obj) -> dict:
    if isinstance(obj, WitchCurve):
        return curve_dump(obj)
    if isinstance(obj, TreePair):
        return tree_pair_dump(obj)
    if isinstance(obj, DiskTree):
        return disk_tree_dump(obj)
    if isinstance(obj, SmoothFamily):
        return family_dump(obj)
    if isinstance(obj, RRT):
        return rrt_dump(obj)
    if isinstance(obj, GromovLimit):
        return limit_dump(obj)
    raise FormatError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(dump_any(obj), sort_keys=True, indent=2)
