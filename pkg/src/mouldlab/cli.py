"""Command-line interface.

Exit codes: 0 on success or verified, 1 on a verification failure, 2 on a
usage error (bad flags, unparsable expressions, malformed input).
"""

import argparse
import json
import os
import sys

from gmpy2 import mpq

from .core.expr import ExprError, parse
from .core.poly import U
from .operad import (
    MouldComponent,
    Mould,
    ari,
    arit,
    arrow,
    circ,
    compose_at,
    component_nice_poles,
    component_weight,
    derivation,
    forgetful,
    is_alternal,
    is_vegetal,
    limu,
    mu,
    over,
    prec,
    push,
    succ,
    under,
)
from . import gallery, plants, trees, verify

PRODUCT_OPS = {
    "succ": succ,
    "prec": prec,
    "mu": mu,
    "limu": limu,
    "arrow": arrow,
    "circ": circ,
    "over": over,
    "under": under,
    "arit": arit,
    "ari": ari,
}


def component_from_text(text):
    """Parse an expression and wrap it as a component of its largest
    u-index (1 for constant expressions)."""
    value = parse(text)
    arity = 1
    for v in value.variables():
        if v.kind == "u":
            arity = max(arity, v.index)
    return MouldComponent(arity, value)


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _component_payload(c):
    return {"arity": c.arity, "value": str(c.value)}


def _parse_word(text):
    if "," in text:
        return tuple(int(p) for p in text.split(","))
    return tuple(int(ch) for ch in text.strip())


def _plant_from_text(text):
    obj = json.loads(text)
    return plants.Plant.from_json(obj)


def _default_seed():
    raw = os.environ.get("MOULDLAB_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        print("MOULDLAB_SEED must be an integer, got %r" % raw, file=sys.stderr)
        raise SystemExit(2)


# ---------------------------------------------------------------------------
# command handlers

def cmd_eval(args):
    c = component_from_text(args.expr)
    _emit(args, _component_payload(c), str(c.value))
    return 0


def cmd_compose(args):
    f = component_from_text(args.f)
    g = component_from_text(args.g)
    h = compose_at(f, g, args.i)
    _emit(args, _component_payload(h), str(h.value))
    return 0


def cmd_product(args):
    f = component_from_text(args.f)
    g = component_from_text(args.g)
    h = PRODUCT_OPS[args.op](f, g)
    _emit(args, _component_payload(h), str(h.value))
    return 0


def cmd_push(args):
    c = push(component_from_text(args.expr))
    _emit(args, _component_payload(c), str(c.value))
    return 0


def cmd_deriv(args):
    c = component_from_text(args.expr)
    d = derivation(c)
    if isinstance(d, MouldComponent):
        _emit(args, _component_payload(d), str(d.value))
    else:
        _emit(args, {"arity": 0, "value": str(d)}, str(d))
    return 0


def cmd_check(args):
    c = component_from_text(args.expr)
    extra = {}
    if args.property == "alternal":
        ok = is_alternal(c)
    elif args.property == "vegetal":
        ok = is_vegetal(c)
    elif args.property == "homogeneous":
        weight = component_weight(c)
        ok = weight is not None
        if ok:
            extra["weight"] = weight
    else:
        ok = component_nice_poles(c)
    payload = {"check": args.property, "ok": ok}
    payload.update(extra)
    text = "%s: %s" % (args.property, "true" if ok else "false")
    if "weight" in extra:
        text += " (weight %d)" % extra["weight"]
    _emit(args, payload, text)
    return 0 if ok else 1


def cmd_trees(args):
    if args.action == "enumerate":
        ts = trees.planar_trees(args.n) if args.planar else trees.binary_trees(args.n)
        texts = [trees.tree_to_text(t) for t in ts]
        payload = {
            "degree": args.n,
            "count": len(texts),
            "kind": "planar" if args.planar else "binary",
            "trees": texts,
        }
        _emit(args, payload, "\n".join(texts))
        return 0
    if args.action == "psi":
        t = trees.tree_from_text(args.tree)
        c = trees.psi_tree(t)
        _emit(
            args,
            {"tree": trees.tree_to_text(t), "arity": c.arity, "value": str(c.value)},
            str(c.value),
        )
        return 0
    if args.action == "pi":
        word = _parse_word(args.word)
        t = trees.pi(word)
        text = trees.tree_to_text(t)
        _emit(args, {"word": list(word), "tree": text}, text)
        return 0
    if args.action == "expand":
        c = component_from_text(args.expr)
        try:
            coeffs = trees.expand_in_tree_basis(c, seed=args.seed)
        except ValueError as exc:
            print("expansion failed: %s" % exc, file=sys.stderr)
            return 1
        as_json = trees.expansion_to_json(coeffs)
        lines = ["%s * %s" % (coeff, tree) for tree, coeff in sorted(as_json.items())]
        _emit(args, {"arity": c.arity, "coefficients": as_json}, "\n".join(lines))
        return 0
    # tamari
    a = trees.tree_from_text(args.a)
    b = trees.tree_from_text(args.b)
    leq = trees.tamari_leq(a, b)
    interval = (
        sorted(trees.tree_to_text(t) for t in trees.tamari_interval(a, b))
        if leq
        else []
    )
    payload = {
        "a": trees.tree_to_text(a),
        "b": trees.tree_to_text(b),
        "leq": leq,
        "interval": interval,
    }
    text = "leq: %s" % ("true" if leq else "false")
    if leq:
        text += "\n" + "\n".join(interval)
    _emit(args, payload, text)
    return 0


def cmd_plants(args):
    if args.action == "enumerate":
        ps = plants.enumerate_plants(args.n, based_only=args.based)
        rows = sorted(
            (json.dumps(p.to_json(), sort_keys=True) for p in ps)
        )
        payload = {
            "degree": args.n,
            "based_only": args.based,
            "count": len(rows),
            "plants": [json.loads(r) for r in rows],
        }
        _emit(args, payload, "\n".join(rows))
        return 0
    if args.action == "count":
        total = len(plants.enumerate_plants(args.n))
        based = len(plants.enumerate_plants(args.n, based_only=True))
        payload = {"degree": args.n, "plants": total, "based": based}
        _emit(args, payload, "plants=%d based=%d" % (total, based))
        return 0
    if args.action == "series":
        p, q = plants.plant_counts_series(args.order)
        payload = {
            "order": args.order,
            "plants": [str(p[n]) for n in range(args.order + 1)],
            "based": [str(q[n]) for n in range(args.order + 1)],
        }
        _emit(args, payload, "plants: %s\nbased: %s" % (p, q))
        return 0
    if args.action == "graft":
        f = _plant_from_text(args.f)
        g = _plant_from_text(args.g)
        h = plants.graft(f, g, args.i)
        value = plants.psi_plant(h)
        payload = {"plant": h.to_json(), "value": str(value.value)}
        text = "%s\n%s" % (json.dumps(h.to_json(), sort_keys=True), value.value)
        _emit(args, payload, text)
        return 0
    # conjecture
    all_pass, rows = plants.tamari_interval_conjecture_check(args.n)
    payload = {"degree": args.n, "all_pass": all_pass, "rows": rows}
    lines = []
    for row in rows:
        lines.append(
            "%s support=%d coefficients01=%s interval=%s"
            % (
                json.dumps(row["plant"], sort_keys=True),
                row["support_size"],
                "true" if row["coefficients_01"] else "false",
                "true" if row["is_interval"] else "false",
            )
        )
    lines.append("all_pass=%s" % ("true" if all_pass else "false"))
    _emit(args, payload, "\n".join(lines))
    return 0 if all_pass else 1


def cmd_gallery(args):
    t = mpq(args.t) if args.t is not None else None
    if args.family == "pq":
        c = gallery.pq_sum(args.p, args.q)
        payload = {"family": "pq", "p": args.p, "q": args.q, "value": str(c.value)}
        _emit(args, payload, str(c.value))
        return 0
    if args.family == "as":
        c = gallery.as_mould(args.n)
    elif args.family == "ty":
        c = gallery.ty_mould(args.n, t)
    elif args.family == "weighted":
        c = gallery.weighted_mould(args.n)
    elif args.family == "cm":
        c = gallery.cm_mould(args.n)
    else:
        c = gallery.po_mould(args.n, t)
    payload = {"family": args.family, "degree": args.n, "value": str(c.value)}
    if args.t is not None:
        payload["t"] = str(t)
    _emit(args, payload, str(c.value))
    return 0


def cmd_series(args):
    if args.gallery is not None:
        if args.gallery in ("ty", "po"):
            tval = mpq(args.t) if args.t is not None else None
            m = gallery.named_mould(args.gallery, args.order, t=tval)
        else:
            m = gallery.named_mould(args.gallery, args.order)
    else:
        if not args.exprs:
            print("series forgetful needs --gallery or one expression per degree",
                  file=sys.stderr)
            return 2
        comps = {}
        for k, text in enumerate(args.exprs, start=1):
            c = component_from_text(text)
            if c.arity > k:
                print(
                    "degree-%d expression mentions u%d" % (k, c.arity),
                    file=sys.stderr,
                )
                return 2
            comps[k] = MouldComponent(k, c.value)
        m = Mould(comps, len(args.exprs))
    series = forgetful(m)
    payload = {
        "order": m.order,
        "series": str(series),
        "coefficients": [str(series[k]) for k in range(m.order + 1)],
    }
    _emit(args, payload, str(series))
    return 0


def cmd_verify(args):
    results = verify.run_group(args.group, seed=args.seed, max_degree=args.max_degree)
    ok = all(r.ok for r in results)
    if args.json:
        payload = {
            "group": args.group,
            "seed": args.seed,
            "ok": ok,
            "results": [r.to_json() for r in results],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for r in results:
            print(r.line())
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# argument parsing

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")

    parser = argparse.ArgumentParser(
        prog="mouldlab",
        description="Exact computer algebra for the anticyclic operad of moulds.",
    )
    # subparsers reset inherited defaults on this Python, so the global
    # flag needs its own destination
    parser.add_argument(
        "--json", dest="json_global", action="store_true", help="emit JSON"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="parse and print an expression")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("compose", parents=[common], help="partial composition f o_i g")
    p.add_argument("-i", type=int, required=True, metavar="K", help="slot index")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(fn=cmd_compose)

    p = sub.add_parser("product", parents=[common], help="binary mould products")
    p.add_argument("--op", required=True, choices=sorted(PRODUCT_OPS))
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(fn=cmd_product)

    p = sub.add_parser("push", parents=[common], help="apply the cyclic action")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_push)

    p = sub.add_parser("deriv", parents=[common], help="apply the residue derivation")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_deriv)

    p = sub.add_parser("check", parents=[common], help="test a component property")
    p.add_argument(
        "property", choices=("alternal", "vegetal", "homogeneous", "nice-poles")
    )
    p.add_argument("expr")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("trees", parents=[common], help="planar binary trees")
    tsub = p.add_subparsers(dest="action", required=True)
    q = tsub.add_parser("enumerate", parents=[common])
    q.add_argument("n", type=int)
    q.add_argument("--planar", action="store_true", help="all planar trees")
    q = tsub.add_parser("psi", parents=[common])
    q.add_argument("tree")
    q = tsub.add_parser("pi", parents=[common])
    q.add_argument("word", help="permutation, digits or comma-separated")
    q = tsub.add_parser("expand", parents=[common])
    q.add_argument("expr")
    q.add_argument("--seed", type=int, default=_default_seed())
    q = tsub.add_parser("tamari", parents=[common])
    q.add_argument("a")
    q.add_argument("b")
    p.set_defaults(fn=cmd_trees)

    p = sub.add_parser("plants", parents=[common], help="non-crossing plants")
    psub = p.add_subparsers(dest="action", required=True)
    q = psub.add_parser("enumerate", parents=[common])
    q.add_argument("n", type=int)
    q.add_argument("--based", action="store_true")
    q = psub.add_parser("count", parents=[common])
    q.add_argument("n", type=int)
    q = psub.add_parser("series", parents=[common])
    q.add_argument("order", type=int)
    q = psub.add_parser("graft", parents=[common])
    q.add_argument("f", help="plant as JSON")
    q.add_argument("g", help="plant as JSON")
    q.add_argument("i", type=int)
    q = psub.add_parser("conjecture", parents=[common])
    q.add_argument("n", type=int)
    p.set_defaults(fn=cmd_plants)

    p = sub.add_parser("gallery", parents=[common], help="named mould families")
    gsub = p.add_subparsers(dest="family", required=True)
    for name in ("as", "ty", "weighted", "cm", "po"):
        q = gsub.add_parser(name, parents=[common])
        q.add_argument("n", type=int)
        if name in ("ty", "po"):
            q.add_argument("--t", default=None, help="rational value (formal if omitted)")
    q = gsub.add_parser("pq", parents=[common])
    q.add_argument("p", type=int)
    q.add_argument("q", type=int)
    p.set_defaults(fn=cmd_gallery, t=None)

    p = sub.add_parser("series", parents=[common], help="formal power series maps")
    ssub = p.add_subparsers(dest="action", required=True)
    q = ssub.add_parser("forgetful", parents=[common])
    q.add_argument("exprs", nargs="*", help="one expression per degree 1..k")
    q.add_argument("--gallery", choices=gallery.GALLERY_NAMES, default=None)
    q.add_argument("--order", type=int, default=8)
    q.add_argument("--t", default=None)
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("verify", parents=[common], help="run verification groups")
    p.add_argument(
        "group",
        choices=tuple(verify.GROUP_ORDER) + ("all",),
    )
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--max-degree", type=int, default=None)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "json_global", False):
        args.json = True
    try:
        return args.fn(args)
    except ExprError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
