"""Verification suite behind the `verify` subcommand.

Each check re-derives one bundle of guarantees from scratch and reports a
CheckResult.  Sweep caps default to the sizes the test suite uses; callers
may override them (accepting the factorial or Catalan growth).
"""

import itertools
import time

from gmpy2 import mpq

from .core.poly import Polynomial
from .core.ratfun import RatFun, interval_form
from .core.series import PowerSeries, binomial_power, log_one_minus
from .operad import (
    ari,
    arit,
    arrow,
    circ,
    compose_at,
    dend_left,
    dend_right,
    derivation,
    forgetful,
    is_alternal,
    is_vegetal,
    limu,
    middle_gen,
    mould_circ,
    mould_mu,
    mu,
    over,
    prec,
    push,
    push_inverse,
    succ,
    under,
    unit,
    Mould,
)
from .randomgen import (
    alternal_pool,
    make_rng,
    random_admissible_mould,
    random_tree_component,
    random_tree_span,
    vegetal_pool,
)
from . import gallery, plants, trees


class CheckResult:
    __slots__ = ("name", "ok", "detail", "seconds")

    def __init__(self, name, ok, detail, seconds):
        self.name = name
        self.ok = bool(ok)
        self.detail = detail
        self.seconds = seconds

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        return "%s %s: %s (%.2fs)" % (status, self.name, self.detail, self.seconds)

    def to_json(self):
        return {
            "name": self.name,
            "ok": self.ok,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


def _finish(name, ok, detail, t0):
    return CheckResult(name, ok, detail, time.time() - t0)


# ---------------------------------------------------------------------------
# operad and cyclic-action axioms

def check_operad_axioms(seed=0, samples=50, max_degree=None):
    """Nested and disjoint associativity plus both unit laws, on random
    tree-image inputs."""
    cap = 3 if max_degree is None else max_degree
    t0 = time.time()
    rng = make_rng(seed)
    failures = 0
    for _ in range(samples):
        a = rng.randint(1, cap)
        b = rng.randint(1, cap)
        c = rng.randint(1, cap)
        f = random_tree_component(rng, a)
        g = random_tree_component(rng, b)
        h = random_tree_component(rng, c)
        i = rng.randint(1, a)
        j = rng.randint(1, b)
        ok = compose_at(compose_at(f, g, i), h, i - 1 + j) == compose_at(
            f, compose_at(g, h, j), i
        )
        if a >= 2:
            i2, j2 = sorted(rng.sample(range(1, a + 1), 2))
            ok = ok and compose_at(compose_at(f, g, i2), h, j2 + b - 1) == compose_at(
                compose_at(f, h, j2), g, i2
            )
        ok = ok and compose_at(f, unit(), rng.randint(1, a)) == f
        ok = ok and compose_at(unit(), f, 1) == f
        if not ok:
            failures += 1
    return _finish(
        "operad axioms",
        failures == 0,
        "%d random triples, arities <= %d, %d failures" % (samples, cap, failures),
        t0,
    )


def check_anticyclic(seed=0, samples=50, max_degree=None):
    """The cyclic action against composition, its sign on the unit, and its
    order n+1 in each degree."""
    cap = 5 if max_degree is None else max_degree
    t0 = time.time()
    rng = make_rng(seed)
    ok = push(unit()) == -unit()
    for _ in range(samples):
        a = rng.randint(1, 3)
        b = rng.randint(1, 3)
        f = random_tree_component(rng, a)
        g = random_tree_component(rng, b)
        if a >= 2:
            i = rng.randint(2, a)
            ok = ok and push(compose_at(f, g, i)) == compose_at(push(f), g, i - 1)
        ok = ok and push(compose_at(f, g, 1)) == -compose_at(push(g), push(f), b)
        if not ok:
            break
    orders = True
    for n in range(1, cap + 1):
        for f in (trees.psi_tree(trees.left_comb(n)), random_tree_component(rng, n)):
            g = f
            for _ in range(n + 1):
                g = push(g)
            orders = orders and g == f and push_inverse(push(f)) == f
    return _finish(
        "anticyclic action",
        ok and orders,
        "compatibility on %d random pairs, order n+1 for n <= %d" % (samples, cap),
        t0,
    )


# ---------------------------------------------------------------------------
# dendriform embedding

FIG1_TREE = (("L", (("L", "L"), "L")), (("L", "L"), ("L", "L")))

_FIG1_INTERVALS = ((1, 3), (2, 2), (2, 3), (1, 7), (5, 5), (5, 7), (7, 7))


def check_dend_relations(seed=0, max_degree=None):
    """The three half-product relations, the cyclic images of the two
    generators, and the pinned degree-7 tree fraction."""
    t0 = time.time()
    left, right = dend_left(), dend_right()
    rel1 = compose_at(left, left, 1) + compose_at(left, right, 1) == compose_at(
        left, left, 2
    )
    rel2 = compose_at(right, left, 1) == compose_at(left, right, 2)
    rel3 = compose_at(right, right, 1) == compose_at(right, left, 2) + compose_at(
        right, right, 2
    )
    tau_left = push(left) == right
    tau_right = push(right) == -(left + right)
    expected = RatFun.from_factored(
        Polynomial.one(), [(interval_form(a, b), 1) for a, b in _FIG1_INTERVALS]
    )
    pin = trees.psi_tree(FIG1_TREE).value == expected
    ok = rel1 and rel2 and rel3 and tau_left and tau_right and pin
    return _finish(
        "dendriform relations",
        ok,
        "3 relations, both generator images, degree-7 fraction pin",
        t0,
    )


def check_dend_basis(seed=0, max_degree=None):
    """Linear independence of the tree fractions and their total sum."""
    cap = 6 if max_degree is None else max_degree
    t0 = time.time()
    indep = all(trees.tree_basis_independent(n, seed=seed) for n in range(1, cap + 1))
    sums = all(plants.hille_identity_check(n) for n in range(1, cap + 1))
    return _finish(
        "tree basis",
        indep and sums,
        "independent and summing to 1/(u1..un) for n <= %d" % cap,
        t0,
    )


def check_multi_residue(seed=0, max_degree=None):
    """Iterated-residue vanishing matches the search-tree map on every
    (tree, permutation) pair, plus the two degree-7 word pins."""
    cap = 4 if max_degree is None else max_degree
    t0 = time.time()
    cases = 0
    ok = True
    for n in range(1, cap + 1):
        all_trees = trees.binary_trees(n)
        images = [(t, trees.psi_tree(t)) for t in all_trees]
        for sigma in itertools.permutations(range(1, n + 1)):
            target = trees.pi(sigma)
            for t, image in images:
                value = trees.multi_residue(image, sigma)
                ok = ok and (value != 0) == (target == t)
                cases += 1
        if not ok:
            break
    pins = (
        trees.pi((4, 1, 6, 3, 5, 2, 7)) == FIG1_TREE
        and trees.pi((4, 6, 5, 1, 3, 7, 2)) == FIG1_TREE
    )
    return _finish(
        "multi-residue criterion",
        ok and pins,
        "%d (tree, permutation) cases for n <= %d, 2 word pins" % (cases, cap),
        t0,
    )


# ---------------------------------------------------------------------------
# plants

def check_plant_counts(seed=0, max_degree=None):
    """Trichotomy counts against brute force, plus the generating-series
    relation and its functional inverse."""
    brute_cap = 4 if max_degree is None else max_degree
    t0 = time.time()
    counts_ok = (
        tuple(len(plants.enumerate_plants(n)) for n in (2, 3, 4)) == (3, 14, 80)
        and tuple(len(plants.enumerate_plants(n, based_only=True)) for n in (2, 3, 4))
        == (2, 9, 51)
    )
    brute_ok = all(
        set(plants.enumerate_plants(n)) == set(plants.brute_force_plants(n))
        for n in range(1, brute_cap + 1)
    )
    order = 10
    p, q = plants.plant_counts_series(order)
    series_ok = all(
        p[n] == len(plants.enumerate_plants(n)) and q[n] == len(plants.enumerate_plants(n, True))
        for n in range(1, 5)
    )
    x = PowerSeries.x(order)
    relation = (x - p + x * p * p + 2 * x * p + p * p + p * p * p).is_zero()
    y = PowerSeries.x(order)
    inverse_series = (y - y * y - y * y * y) * (PowerSeries.one(order) + y).pow_int(2).invert()
    inverse = inverse_series.compose(p) == x
    ok = counts_ok and brute_ok and series_ok and relation and inverse
    return _finish(
        "plant counts",
        ok,
        "trichotomy = brute force for n <= %d, series relation and inverse to order %d"
        % (brute_cap, order),
        t0,
    )


_PLANT_RELATIONS = (
    ("left", 2, "right", "right", 1, "left"),
    ("middle", 1, "middle", "middle", 2, "middle"),
    ("left", 1, "middle", "left", 2, "left"),
    ("right", 2, "middle", "right", 1, "right"),
)


def _triangle(name):
    return {
        "left": plants.left_triangle_plant(),
        "right": plants.right_triangle_plant(),
        "middle": plants.middle_triangle_plant(),
    }[name]


def check_plant_operad(seed=0, max_degree=None):
    """Grafting against composition for every pair, the four presentation
    relations, the decompose section property, and the signed rotation."""
    cap = 5 if max_degree is None else max_degree
    push_cap = min(4, cap - 1) if max_degree is None else max_degree - 1
    t0 = time.time()
    by_degree = {n: plants.enumerate_plants(n) for n in range(1, cap + 1)}
    images = {
        n: {p: plants.psi_plant(p) for p in ps} for n, ps in by_degree.items()
    }
    pairs = 0
    ok = True
    for m in range(1, cap + 1):
        for n in range(1, cap + 1):
            if m + n - 1 > cap:
                continue
            for f in by_degree[m]:
                for g in by_degree[n]:
                    for i in range(1, m + 1):
                        h = plants.graft(f, g, i)
                        ok = ok and plants.psi_plant(h) == compose_at(
                            images[m][f], images[n][g], i
                        )
                        pairs += 1
        if not ok:
            break
    relations = all(
        plants.graft(_triangle(a), _triangle(b), i)
        == plants.graft(_triangle(c), _triangle(d), j)
        for a, i, b, c, j, d in _PLANT_RELATIONS
    )
    section = True
    for n in range(2, cap + 1):
        for p in plants.enumerate_plants(n):
            s, delta, i = plants.decompose(p)
            section = section and plants.graft(s, delta, i) == p
    rotation = True
    for n in range(1, push_cap + 1):
        for p in plants.enumerate_plants(n):
            q, sign = plants.push_plant(p)
            rotation = (
                rotation
                and plants.is_valid_plant(q)
                and push(plants.psi_plant(p)) == plants.psi_plant(q).scale(sign)
            )
    ok = ok and relations and section and rotation
    return _finish(
        "plant operad",
        ok,
        "%d graft/compose pairs (degree <= %d), 4 relations, decompose sections, signed rotation (degree <= %d)"
        % (pairs, cap, push_cap),
        t0,
    )


def check_tamari_conjecture(seed=0, max_degree=None):
    """Every non-crossing tree expands with 0/1 coefficients over an
    interval of the rotation order."""
    cap = 4 if max_degree is None else max_degree
    t0 = time.time()
    ok = True
    rows = 0
    for n in range(2, cap + 1):
        all_pass, report = plants.tamari_interval_conjecture_check(n)
        ok = ok and all_pass
        rows += len(report)
    return _finish(
        "interval conjecture",
        ok,
        "%d non-crossing trees of degree <= %d: 0/1 coefficients, interval support"
        % (rows, cap),
        t0,
    )


# ---------------------------------------------------------------------------
# the residue derivation

_LEIBNIZ_OPS = (
    ("prec", prec),
    ("succ", succ),
    ("arrow", arrow),
    ("mu", mu),
    ("limu", limu),
    ("circ", circ),
    ("arit", arit),
    ("ari", ari),
)


def check_derivation(seed=0, max_degree=None):
    """The residue derivation: values on the generators, the Leibniz rule
    for every product, commutation with the unit graftings, and vanishing
    on higher alternal inputs."""
    cap = 5 if max_degree is None else max_degree
    t0 = time.time()
    rng = make_rng(seed)
    ok = derivation(unit()) == 1
    ok = ok and derivation(dend_left()) == unit()
    ok = ok and derivation(dend_right()) == unit()
    ok = ok and derivation(middle_gen()).is_zero()
    inputs = [
        (random_tree_span(rng, 2), random_tree_span(rng, 2)),
        (random_tree_span(rng, 2), random_tree_span(rng, 3)),
        (random_tree_span(rng, 3), random_tree_span(rng, 2)),
    ]
    bad_ops = []
    for name, op in _LEIBNIZ_OPS:
        for f, g in inputs:
            lhs = derivation(op(f, g))
            rhs = op(derivation(f), g) + op(f, derivation(g))
            if lhs != rhs:
                bad_ops.append(name)
                break
    f3 = random_tree_span(rng, 3)
    graft_ok = derivation(over(f3, unit())) == over(derivation(f3), unit())
    graft_ok = graft_ok and derivation(under(unit(), f3)) == under(
        unit(), derivation(f3)
    )
    pool = alternal_pool(cap)
    vanish = all(
        derivation(f).is_zero()
        for n in range(2, cap + 1)
        for f in pool.get(n, ())
    )
    ok = ok and not bad_ops and graft_ok and vanish
    detail = "Leibniz rule for %d products, unit graftings, zero on alternal degrees 2..%d" % (
        len(_LEIBNIZ_OPS),
        cap,
    )
    if bad_ops:
        detail += "; failing: " + ",".join(bad_ops)
    return _finish("residue derivation", ok, detail, t0)


# ---------------------------------------------------------------------------
# preservation theorems

def check_alternality_preservation(seed=0, max_degree=None):
    """Alternality of arrow, circ and ari outputs on verified alternal
    inputs through the total-degree cap."""
    cap = 5 if max_degree is None else max_degree
    t0 = time.time()
    pool = alternal_pool(cap - 1)
    inputs_ok = all(
        is_alternal(f) for fs in pool.values() for f in fs
    )
    checked = 0
    ok = inputs_ok
    for a in range(1, cap):
        for b in range(1, cap - a + 1):
            for f in pool.get(a, ())[:2]:
                for g in pool.get(b, ())[:2]:
                    for op in (arrow, circ, ari):
                        ok = ok and is_alternal(op(f, g))
                        checked += 1
            if not ok:
                break
    return _finish(
        "alternality preservation",
        ok,
        "%d products of verified alternal inputs, total degree <= %d" % (checked, cap),
        t0,
    )


def check_vegetality_preservation(seed=0, max_degree=None):
    """Vegetality of the half-products, mu, circ, arit and ari on verified
    vegetal inputs through the total-degree cap."""
    cap = 5 if max_degree is None else max_degree
    t0 = time.time()
    pool = vegetal_pool(cap - 1)
    inputs_ok = all(is_vegetal(f) for fs in pool.values() for f in fs)
    checked = 0
    ok = inputs_ok
    for a in range(1, cap):
        for b in range(1, cap - a + 1):
            for f in pool.get(a, ())[:2]:
                for g in pool.get(b, ())[:2]:
                    for op in (succ, prec, mu, circ, arit, ari):
                        ok = ok and is_vegetal(op(f, g), max_n=max(6, cap))
                        checked += 1
            if not ok:
                break
    return _finish(
        "vegetality preservation",
        ok,
        "%d products of verified vegetal inputs, total degree <= %d" % (checked, cap),
        t0,
    )


# ---------------------------------------------------------------------------
# the series map and the gallery

def check_forgetful(seed=0, max_degree=None):
    """Closed-form series for the named families and the two structure
    identities on random admissible inputs."""
    order = 8 if max_degree is None else max_degree
    t0 = time.time()
    x = PowerSeries.x(order)
    one = PowerSeries.one(order)

    as_series = forgetful(Mould.from_function(gallery.as_mould, order))
    ok = as_series == x / (one - x)

    cm_series = forgetful(Mould.from_function(gallery.cm_mould, order))
    ok = ok and cm_series == x

    weighted = forgetful(Mould.from_function(gallery.weighted_mould, order))
    ok = ok and weighted == x * (2 * one - x) / ((one - x).pow_int(2) * 2)

    for tval in (mpq(2), mpq(1, 3)):
        ty = forgetful(
            Mould.from_function(lambda n: gallery.ty_mould(n, tval), order)
        )
        expected = (log_one_minus(tval, order) - log_one_minus(1, order)) * (
            mpq(1) / (1 - tval)
        )
        ok = ok and ty == expected

    for tval in (mpq(1), mpq(3)):
        po = forgetful(
            Mould.from_function(lambda n: gallery.po_mould(n, tval), order)
        )
        expected = (binomial_power(tval, order) - one) * (1 / tval)
        ok = ok and po == expected

    rng = make_rng(seed)
    a = random_admissible_mould(rng, order - 2)
    b = random_admissible_mould(rng, order - 2)
    fa, fb = forgetful(a), forgetful(b)
    comp = forgetful(mould_circ(a, b, order - 2))
    ok = ok and comp.truncate(order - 3) == (
        fa.differentiate() * fb.truncate(order - 3)
    ).truncate(order - 3)
    prod = forgetful(mould_mu(a, b, order - 2))
    ok = ok and prod == (fa * fb).truncate(order - 2)

    return _finish(
        "series map",
        ok,
        "5 named families to order %d, composition and product identities" % order,
        t0,
    )


def check_gallery(seed=0, max_degree=None):
    """Recursions against closed forms, and the sign pin that separates the
    corrected binomial from the broken one."""
    cm_cap = 8 if max_degree is None else max_degree
    po_cap = 6 if max_degree is None else max_degree
    t0 = time.time()
    cm_ok = all(
        gallery.cm_mould(n) == gallery.cm_closed(n, corrected=True)
        for n in range(1, cm_cap + 1)
    )
    broken = gallery.cm_closed(2, corrected=False) != gallery.cm_mould(2)
    po_ok = all(
        gallery.po_recursion(n) == gallery.po_mould(n) for n in range(1, po_cap + 1)
    )
    return _finish(
        "gallery consistency",
        cm_ok and broken and po_ok,
        "corrected closed form for n <= %d, broken variant pinned, formal-t product formula for n <= %d"
        % (cm_cap, po_cap),
        t0,
    )


# ---------------------------------------------------------------------------
# planar trees (graded three-product operad)

def check_tridend(seed=0, max_degree=None):
    """All relations of the three-generator presentation and the planar-tree
    fractions against the generator-word oracle."""
    cap = 4 if max_degree is None else max_degree
    t0 = time.time()
    left, right, middle = dend_left(), dend_right(), middle_gen()
    rels = [
        compose_at(left, left, 1) + compose_at(left, right, 1)
        == compose_at(left, left, 2),
        compose_at(right, left, 1) == compose_at(left, right, 2),
        compose_at(right, right, 1)
        == compose_at(right, left, 2) + compose_at(right, right, 2),
        compose_at(middle, middle, 1) == compose_at(middle, middle, 2),
        compose_at(middle, right, 1) == compose_at(middle, left, 2),
        compose_at(middle, left, 1) == compose_at(left, middle, 2),
        compose_at(right, middle, 1) == compose_at(middle, right, 2),
    ]
    planar_ok = True
    count = 0
    for n in range(1, cap + 1):
        for t in trees.planar_trees(n):
            planar_ok = planar_ok and trees.planar_generator_expression(
                t
            ) == trees.psi_planar_tree(t)
            count += 1
    ok = all(rels) and planar_ok
    return _finish(
        "planar-tree relations",
        ok,
        "%d relations, %d planar trees through degree %d against the generator oracle"
        % (len(rels), count, cap),
        t0,
    )


# ---------------------------------------------------------------------------
# groups

GROUPS = {
    "operad": (check_operad_axioms,),
    "anticyclic": (check_anticyclic,),
    "dend": (check_dend_relations, check_dend_basis, check_multi_residue),
    "tridend": (check_tridend,),
    "ncp": (check_plant_counts, check_plant_operad, check_tamari_conjecture),
    "derivation": (check_derivation,),
    "ari": (check_alternality_preservation, check_vegetality_preservation),
    "gallery": (check_forgetful, check_gallery),
}

GROUP_ORDER = (
    "operad",
    "anticyclic",
    "dend",
    "tridend",
    "ncp",
    "derivation",
    "ari",
    "gallery",
)


def run_group(name, seed=0, max_degree=None):
    if name == "all":
        return run_all(seed=seed, max_degree=max_degree)
    if name not in GROUPS:
        raise KeyError("unknown verification group %r" % name)
    return [fn(seed=seed, max_degree=max_degree) for fn in GROUPS[name]]


def run_all(seed=0, max_degree=None):
    results = []
    for name in GROUP_ORDER:
        results.extend(run_group(name, seed=seed, max_degree=max_degree))
    return results
