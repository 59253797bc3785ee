"""Command-line surface tying the library together.

Machine-readable JSON goes to stdout (DOT with --dot); a human summary
goes to stderr with -v.  Exit codes: 0 success, 1 domain error, 2 usage
error.  WITCH_THREADS caps worker parallelism (all current commands run
single-process, so any cap is honored trivially).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import limits as lm
from . import metric as mt
from . import moduli as md
from . import serialize as sz
from . import strata
from .errors import WitchModuliError


def _load(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _type_vector(s: str) -> tuple[int, ...]:
    parts = s.replace(",", " ").split()
    if not parts:
        raise argparse.ArgumentTypeError("empty type vector")
    return tuple(int(p) for p in parts)


def _emit(doc, verbose_note=None, verbose=False):
    print(json.dumps(doc, sort_keys=True, indent=2))
    if verbose and verbose_note:
        print(verbose_note, file=sys.stderr)


def _poset_doc(poset) -> dict:
    return {
        "count": len(poset.elements),
        "f_vector": poset.f_vector(),
        "elements": [
            {
                "index": i,
                "dimension": poset.dimension[i],
                "key": poset.key_of(e),
                "covers": sorted(poset.covers[i]),
            }
            for i, e in enumerate(poset.elements)
        ],
    }


def _render_hasse_png(poset, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    dims = poset.dimension
    by_rank: dict[int, list[int]] = {}
    for i, d in enumerate(dims):
        by_rank.setdefault(d, []).append(i)
    pos = {}
    for d, idxs in by_rank.items():
        for k, i in enumerate(sorted(idxs, key=lambda i: poset.key_of(poset.elements[i]))):
            pos[i] = ((k + 1) / (len(idxs) + 1), d)
    fig, ax = plt.subplots(figsize=(max(6, len(poset.elements) * 0.35), 4.5))
    for i, ups in enumerate(poset.covers):
        for j in ups:
            ax.plot(
                [pos[i][0], pos[j][0]],
                [pos[i][1], pos[j][1]],
                color="0.6",
                lw=0.8,
                zorder=1,
            )
    xs = [pos[i][0] for i in range(len(poset.elements))]
    ys = [pos[i][1] for i in range(len(poset.elements))]
    ax.scatter(xs, ys, s=28, color="tab:blue", zorder=2)
    for i in range(len(poset.elements)):
        ax.annotate(
            str(i), pos[i], textcoords="offset points", xytext=(0, 5), fontsize=6
        )
    ax.set_yticks(sorted(by_rank))
    ax.set_ylabel("dimension")
    ax.set_xticks([])
    ax.set_title("Hasse diagram")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="witchmoduli",
        description="Strata, moduli points, symbolic limits, and the mu_eps "
        "functional for witch curves.",
    )
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate-k", help="faces of the associahedron K_r")
    p.add_argument("r", type=int)

    p = sub.add_parser("enumerate-w", help="strata of the 2-associahedron W_n")
    p.add_argument("n", type=_type_vector)

    p = sub.add_parser("hasse", help="Hasse diagram of W_n (or K_r with --k)")
    p.add_argument("n", type=_type_vector, nargs="?")
    p.add_argument("--k", type=int, metavar="R")
    p.add_argument("--dot", metavar="FILE")
    p.add_argument("--png", metavar="FILE")

    p = sub.add_parser("fvector", help="face counts of W_n by dimension")
    p.add_argument("n", type=_type_vector)

    p = sub.add_parser("validate", help="validate a JSON document")
    p.add_argument("file")

    p = sub.add_parser("canon", help="canonical form of a curve or disk tree")
    p.add_argument("file")

    p = sub.add_parser("iso", help="isomorphism test for two curves")
    p.add_argument("fileA")
    p.add_argument("fileB")

    p = sub.add_parser("limit", help="Gromov limit of a smooth family")
    p.add_argument("family")
    p.add_argument("--check", action="store_true")

    p = sub.add_parser("classify", help="classify an added point against a limit")
    p.add_argument("family")
    p.add_argument("--point", required=True, metavar="JSON")

    p = sub.add_parser("mu", help="mu_eps between two curves")
    p.add_argument("fileA")
    p.add_argument("fileB")
    p.add_argument("--eps", required=True)
    p.add_argument("--witness", metavar="FILE")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("forget", help="seam part of a curve or tree-pair")
    p.add_argument("file")
    return ap


def run(args) -> int:
    verbose = args.verbose
    if args.command == "enumerate-k":
        poset = strata.enumerate_k(args.r)
        _emit(_poset_doc(poset), f"{len(poset.elements)} stable trees", verbose)

    elif args.command == "enumerate-w":
        poset = strata.enumerate_w(args.n)
        _emit(_poset_doc(poset), f"{len(poset.elements)} strata", verbose)

    elif args.command == "hasse":
        if (args.n is None) == (args.k is None):
            print("hasse: give a type vector or --k R, not both", file=sys.stderr)
            return 2
        poset = strata.enumerate_k(args.k) if args.k else strata.enumerate_w(args.n)
        dot = poset.to_dot()
        if args.dot:
            with open(args.dot, "w") as fh:
                fh.write(dot + "\n")
        if args.png:
            _render_hasse_png(poset, args.png)
        if not args.dot and not args.png:
            print(dot)
        else:
            _emit(
                {
                    "count": len(poset.elements),
                    "dot": args.dot,
                    "png": args.png,
                    "f_vector": poset.f_vector(),
                },
                "wrote " + ", ".join(p for p in (args.dot, args.png) if p),
                verbose,
            )

    elif args.command == "fvector":
        poset = strata.enumerate_w(args.n)
        print(json.dumps(poset.f_vector()))

    elif args.command == "validate":
        obj = sz.detect_and_parse(_load(args.file))
        _emit(
            {"valid": True, "kind": type(obj).__name__},
            f"{type(obj).__name__} validated",
            verbose,
        )

    elif args.command == "canon":
        obj = sz.detect_and_parse(_load(args.file))
        if isinstance(obj, md.WitchCurve):
            out = md.canonical_form(obj)
        elif isinstance(obj, md.DiskTree):
            out = md.canonical_form_disk(obj)
        else:
            print("canon: need a curve or disk-tree document", file=sys.stderr)
            return 2
        print(sz.dumps(out))

    elif args.command == "iso":
        a = sz.detect_and_parse(_load(args.fileA))
        b = sz.detect_and_parse(_load(args.fileB))
        if isinstance(a, md.WitchCurve) and isinstance(b, md.WitchCurve):
            ok, _ = md.is_isomorphic(a, b)
        elif isinstance(a, md.DiskTree) and isinstance(b, md.DiskTree):
            ok, _ = md.is_isomorphic_disk(a, b)
        else:
            print("iso: need two documents of the same curve kind", file=sys.stderr)
            return 2
        _emit({"isomorphic": ok}, "isomorphic" if ok else "not isomorphic", verbose)

    elif args.command == "limit":
        fam = sz.family_parse(_load(args.family))
        limit = lm.gromov_limit(fam)
        doc = sz.limit_dump(limit)
        if args.check:
            report = lm.check_gromov_convergence(limit, fam)
            doc["check"] = {
                "all_pass": report.all_pass,
                "failures": report.failures,
            }
            if verbose:
                print(report.summary(), file=sys.stderr)
        print(json.dumps(doc, sort_keys=True, indent=2))

    elif args.command == "classify":
        fam = sz.family_parse(_load(args.family))
        point = json.loads(args.point)
        zeta = (sz.laurent_parse(point[0]), sz.laurent_parse(point[1]))
        limit = lm.gromov_limit(fam)
        cls = lm.classify_new_point(limit, zeta)
        _emit(
            {
                "case": cls.case,
                "witness": cls.witness,
                "limits": {
                    str(a): "inf" if v.is_infinity else [sz.q_str(c) for c in v.coords]
                    for a, v in sorted(cls.zeta_limits.items())
                },
            },
            f"case {cls.case}",
            verbose,
        )

    elif args.command == "mu":
        a = sz.curve_parse(_load(args.fileA))
        b = sz.curve_parse(_load(args.fileB))
        eps = Fraction(args.eps)
        if args.witness:
            wit = sz.witness_parse(_load(args.witness))
            val = mt.mu_eps_with_data(a, b, wit, eps)
            _emit({"value": val, "witness": sz.witness_dump(wit)}, None, verbose)
        else:
            val, wit = mt.mu_eps(a, b, eps, seed=args.seed)
            doc = {"value": val if val != float("inf") else "inf"}
            if wit is not None:
                doc["witness"] = sz.witness_dump(wit)
            _emit(doc, f"mu_eps <= {val}", verbose)

    elif args.command == "forget":
        obj = sz.detect_and_parse(_load(args.file))
        if isinstance(obj, md.WitchCurve):
            print(sz.dumps(obj.seam_part()))
        elif hasattr(obj, "seam"):
            print(sz.dumps(strata.forgetful(obj)))
        else:
            print("forget: need a curve or tree-pair document", file=sys.stderr)
            return 2
    return 0


def main(argv=None) -> int:
    # WITCH_THREADS caps internal parallelism; current commands are
    # single-process so the cap is read for interface stability only
    os.environ.setdefault("WITCH_THREADS", "1")
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return run(args)
    except WitchModuliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        print(f"error: malformed input ({exc!r})", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
