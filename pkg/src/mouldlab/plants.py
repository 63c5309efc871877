"""Non-crossing plants: chord diagrams in a polygon and their fractions.

A plant of degree n lives in the polygon with vertices 0..n.  Its edges
are vertex pairs (a, b) with a < b, split into denominator and numerator
sets.  The side (i-1, i) carries the variable u_i, the base (0, n) and any
inner chord (a, b) carry the interval sum u_{a+1..b}; the fraction of a
plant is the product of its numerator forms over its denominator forms.

Validity: the union of the two edge sets is non-crossing, the denominator
graph is connected and touches every vertex, and each bounded face of the
denominator graph carries exactly one numerator chord joining two of its
non-adjacent vertices (so triangular faces never occur).  Numerators are
never polygon sides.  Faces are computed exactly by placing vertex v at
(v, v^2): convex position with no three points collinear.
"""

import itertools

from gmpy2 import mpq

from .core.poly import Polynomial
from .core.ratfun import RatFun, interval_form
from .core.series import PowerSeries
from .operad import MouldComponent


class Plant:
    """Degree n plus frozen denominator/numerator edge sets."""

    __slots__ = ("n", "denom", "numer")

    def __init__(self, n, denom, numer=()):
        if n < 1:
            raise ValueError("degree must be >= 1")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "denom", frozenset(_check_edges(n, denom)))
        object.__setattr__(self, "numer", frozenset(_check_edges(n, numer)))

    def __setattr__(self, name, value):
        raise AttributeError("plants are immutable")

    def __eq__(self, other):
        if not isinstance(other, Plant):
            return NotImplemented
        return (
            self.n == other.n
            and self.denom == other.denom
            and self.numer == other.numer
        )

    def __hash__(self):
        return hash((self.n, self.denom, self.numer))

    def __repr__(self):
        return "Plant(%d, denom=%s, numer=%s)" % (
            self.n,
            sorted(self.denom),
            sorted(self.numer),
        )

    def is_based(self):
        return (0, self.n) in self.denom

    def is_tree(self):
        """No numerators and acyclic denominators (edge count = n)."""
        return not self.numer and len(self.denom) == self.n

    def to_json(self):
        return {
            "n": self.n,
            "denom": [list(e) for e in sorted(self.denom)],
            "numer": [list(e) for e in sorted(self.numer)],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            int(obj["n"]),
            [tuple(e) for e in obj.get("denom", [])],
            [tuple(e) for e in obj.get("numer", [])],
        )


def _check_edges(n, edges):
    out = []
    for e in edges:
        a, b = e
        if not (0 <= a < b <= n):
            raise ValueError("edge %r out of range for degree %d" % (e, n))
        out.append((int(a), int(b)))
    return out


def unit_plant():
    return Plant(1, [(0, 1)])


def left_triangle_plant():
    return Plant(2, [(0, 2), (0, 1)])


def right_triangle_plant():
    return Plant(2, [(0, 2), (1, 2)])


def middle_triangle_plant():
    return Plant(2, [(0, 1), (1, 2)])


# ---------------------------------------------------------------------------
# validity

def _crossing(e1, e2):
    a, b = e1
    c, d = e2
    return a < c < b < d or c < a < d < b


def _connected_spanning(n, edges):
    adj = {v: [] for v in range(n + 1)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n + 1


def _rotations(n, edges):
    """Neighbors of each vertex in counterclockwise angular order.

    With vertex v at (v, v^2), the outgoing directions sort as: neighbors
    above v by increasing index, then neighbors below v by increasing index.
    """
    adj = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    rot = {}
    for v, nbrs in adj.items():
        rot[v] = sorted(q for q in nbrs if q > v) + sorted(
            q for q in nbrs if q < v
        )
    return rot


def bounded_faces(n, edges):
    """Vertex cycles of the bounded faces of a non-crossing edge set."""
    rot = _rotations(n, edges)
    darts = {(a, b) for a, b in edges} | {(b, a) for a, b in edges}
    faces = []
    seen = set()
    for start in sorted(darts):
        if start in seen:
            continue
        walk = []
        d = start
        while True:
            seen.add(d)
            walk.append(d)
            v, w = d
            order = rot[w]
            x = order[order.index(v) - 1]
            d = (w, x)
            if d == start:
                break
        area2 = sum(v * w * w - w * v * v for v, w in walk)
        if area2 > 0:
            cycle = tuple(v for v, _ in walk)
            if len(set(cycle)) != len(cycle):
                raise AssertionError("bounded face walk revisits a vertex")
            faces.append(cycle)
    return faces


def _cycle_non_adjacent(cycle, a, b):
    if a not in cycle or b not in cycle:
        return False
    i, j = cycle.index(a), cycle.index(b)
    k = len(cycle)
    return (i - j) % k not in (1, k - 1)


def is_valid_plant(p):
    if p.denom & p.numer:
        return False
    edges = sorted(p.denom | p.numer)
    for e1, e2 in itertools.combinations(edges, 2):
        if _crossing(e1, e2):
            return False
    if not _connected_spanning(p.n, p.denom):
        return False
    for a, b in p.numer:
        if b - a == 1 or (a, b) == (0, p.n):
            return False
    faces = bounded_faces(p.n, p.denom)
    face_load = [0] * len(faces)
    for a, b in p.numer:
        homes = [
            i for i, cyc in enumerate(faces) if _cycle_non_adjacent(cyc, a, b)
        ]
        if len(homes) != 1:
            return False
        face_load[homes[0]] += 1
    return all(load == 1 for load in face_load)


def plant_kind(p):
    """'I' base in a cycle, 'II' base a bridge, 'III' base absent."""
    if not is_valid_plant(p):
        raise ValueError("not a valid plant")
    if not p.is_based():
        return "III"
    rest = p.denom - {(0, p.n)}
    adj = {}
    for a, b in rest:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return "I" if p.n in seen else "II"


# ---------------------------------------------------------------------------
# the fraction of a plant

def _edge_form(e):
    a, b = e
    return interval_form(a + 1, b)


def psi_plant(p):
    if not is_valid_plant(p):
        raise ValueError("not a valid plant")
    num = Polynomial.one()
    for e in sorted(p.numer):
        num = num * _edge_form(e)
    factors = [(_edge_form(e), 1) for e in sorted(p.denom)]
    return MouldComponent(p.n, RatFun.from_factored(num, factors))


# ---------------------------------------------------------------------------
# enumeration: every plant is a chain of based blocks; based plants split
# into base-in-a-cycle and base-a-bridge shapes

def _shift(pairs, s):
    return frozenset((a + s, b + s) for a, b in pairs)


_BASED = {1: ((frozenset([(0, 1)]), frozenset()),)}
_ALL = {}


def _based_raw(n):
    """(denom, numer) pairs of the based plants of degree n."""
    if n in _BASED:
        return _BASED[n]
    out = []
    # base a bridge: optional plants left of the split vertex and right of it
    for a in range(n):
        lefts = _all_raw(a) if a >= 1 else ((frozenset(), frozenset()),)
        rights = (
            _all_raw(n - 1 - a) if n - 1 - a >= 1 else ((frozenset(), frozenset()),)
        )
        for dl, nl in lefts:
            for dr, nr in rights:
                out.append(
                    (
                        frozenset([(0, n)]) | dl | _shift(dr, a + 1),
                        nl | _shift(nr, a + 1),
                    )
                )
    # base in a cycle: cycle through 0 = w_0 < ... < w_k = n (k >= 3), a based
    # block on each cycle edge, one numerator chord between two cycle vertices
    # that are not neighbors on the cycle
    for k in range(3, n + 1):
        for inner in itertools.combinations(range(1, n), k - 1):
            w = (0,) + inner + (n,)
            chords = [
                (w[i], w[j])
                for i in range(k + 1)
                for j in range(i + 2, k + 1)
                if not (i == 0 and j == k)
            ]
            block_lists = [
                [
                    (_shift(d, w[i]), _shift(m, w[i]))
                    for d, m in _based_raw(w[i + 1] - w[i])
                ]
                for i in range(k)
            ]
            for blocks in itertools.product(*block_lists):
                denom = frozenset([(0, n)])
                numer = frozenset()
                for d, m in blocks:
                    denom |= d
                    numer |= m
                for chord in chords:
                    out.append((denom, numer | {chord}))
    uniq = tuple(dict.fromkeys(out))
    _BASED[n] = uniq
    return uniq


def _all_raw(n):
    if n in _ALL:
        return _ALL[n]
    out = []
    for k in range(1, n + 1):
        for parts in _compositions(n, k):
            offs = [sum(parts[:i]) for i in range(k)]
            block_lists = [
                [(_shift(d, o), _shift(m, o)) for d, m in _based_raw(p)]
                for p, o in zip(parts, offs)
            ]
            for blocks in itertools.product(*block_lists):
                denom = frozenset()
                numer = frozenset()
                for d, m in blocks:
                    denom |= d
                    numer |= m
                out.append((denom, numer))
    uniq = tuple(dict.fromkeys(out))
    _ALL[n] = uniq
    return uniq


def _compositions(total, k):
    if k == 1:
        yield (total,)
        return
    for first in range(1, total - k + 2):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def enumerate_plants(n, based_only=False):
    raw = _based_raw(n) if based_only else _all_raw(n)
    return tuple(Plant(n, d, m) for d, m in raw)


def brute_force_plants(n):
    """All valid plants by trying every role assignment of every edge."""
    edges = [
        (a, b) for a in range(n) for b in range(a + 1, n + 1)
    ]
    out = []
    for roles in itertools.product((0, 1, 2), repeat=len(edges)):
        denom = [e for e, r in zip(edges, roles) if r == 1]
        numer = [e for e, r in zip(edges, roles) if r == 2]
        p = Plant(n, denom, numer)
        if is_valid_plant(p):
            out.append(p)
    return tuple(out)


# ---------------------------------------------------------------------------
# grafting and peeling

def graft(f, g, i):
    """Insert g into slot i of f; degree adds up as m + n - 1.

    Vertices i..m of f spread apart to make room, g lands on vertices
    i-1..i+n-1, and the shared diagonal (i-1, i+n-1) stays a denominator
    when it was one on both sides, disappears when on exactly one, and
    becomes a numerator when on neither.
    """
    m, ng = f.n, g.n
    if not 1 <= i <= m:
        raise ValueError("slot out of range")
    delta = (i - 1, i + ng - 1)
    side = (i - 1, i)
    base = (0, ng)

    def rel_f(e):
        a, b = e
        return (a if a < i else a + ng - 1, b if b < i else b + ng - 1)

    def rel_g(e):
        a, b = e
        return (a + i - 1, b + i - 1)

    denom = {rel_f(e) for e in f.denom if e != side}
    denom |= {rel_g(e) for e in g.denom if e != base}
    numer = {rel_f(e) for e in f.numer} | {rel_g(e) for e in g.numer}
    in_f = side in f.denom
    in_g = base in g.denom
    if in_f and in_g:
        denom.add(delta)
    elif not in_f and not in_g:
        numer.add(delta)
    return Plant(m + ng - 1, denom, numer)


def peeling_points(p):
    """Non-base vertices whose incident edges are all polygon sides."""
    if p.n < 2:
        raise ValueError("degree must be >= 2")
    out = set()
    for v in range(1, p.n):
        incident = [e for e in p.denom | p.numer if v in e]
        if incident and all(b - a == 1 for a, b in incident):
            out.add(v)
    return out


def border_leaves(p):
    """Peeling points with a single incident side; based trees only."""
    if not (p.is_tree() and p.is_based()):
        raise ValueError("border leaves need a based non-crossing tree")
    return {
        v
        for v in peeling_points(p)
        if sum(1 for e in p.denom if v in e) == 1
    }


def decompose(p):
    """(S, triangle, i) with graft(S, triangle, i) == p.

    Peels at the leftmost single-side peeling point when one exists, else
    at the leftmost peeling point; a triangle plant decomposes over the
    unit plant and itself.
    """
    if not is_valid_plant(p):
        raise ValueError("not a valid plant")
    if p.n < 2:
        raise ValueError("nothing to decompose")
    if p.n == 2:
        return unit_plant(), p, 1
    pts = peeling_points(p)
    singles = {
        v for v in pts if sum(1 for e in p.denom if v in e) == 1
    }
    v = min(singles) if singles else min(pts)
    return _peel_at(p, v)


def _peel_at(p, v):
    left = (v - 1, v) in p.denom
    right = (v, v + 1) in p.denom
    closing = (v - 1, v + 1)
    if left and right:
        delta = middle_triangle_plant()
    elif left:
        delta = left_triangle_plant()
    else:
        delta = right_triangle_plant()

    def rel(e):
        a, b = e
        return (a if a < v else a - 1, b if b < v else b - 1)

    denom = {rel(e) for e in p.denom if v not in e}
    numer = {rel(e) for e in p.numer if e != closing}
    if left and right and closing not in p.denom and closing not in p.numer:
        denom.add((v - 1, v))
    return Plant(p.n - 1, denom, numer), delta, v


def generator_word(p):
    """Triangle-grafting word rebuilding p from the unit plant."""
    word = []
    while p.n >= 2:
        p, delta, i = decompose(p)
        word.append((delta, i))
    word.reverse()
    return word


def evaluate_word(word):
    p = unit_plant()
    for delta, i in word:
        p = graft(p, delta, i)
    return p


def push_plant(p):
    """(rotated plant, sign) matching the push of its fraction.

    Rotation sends vertex v to v-1 modulo n+1; the sign is -1 to the
    number of edges at vertex 0.
    """
    m = p.n + 1

    def rot(e):
        a, b = ((e[0] - 1) % m, (e[1] - 1) % m)
        return (min(a, b), max(a, b))

    sign = -1 if sum(1 for e in p.denom | p.numer if 0 in e) % 2 else 1
    return Plant(p.n, {rot(e) for e in p.denom}, {rot(e) for e in p.numer}), sign


# ---------------------------------------------------------------------------
# counting series

def plant_counts_series(order):
    """(all-plants series, based series) up to x^order, exactly.

    Solved by iterating the pair of functional equations: based plants are
    a cycle of blocks with a chord choice or a base over two optional
    plants; all plants are chains of based blocks.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    x = PowerSeries.x(order)
    q = PowerSeries.zero(order)
    p = PowerSeries.zero(order)
    for _ in range(order + 1):
        one_plus_p = p + PowerSeries.one(order)
        rhs = x * one_plus_p * one_plus_p
        qk = q * q
        for k in range(3, order + 1):
            qk = qk * q
            rhs = rhs + qk * mpq((k + 1) * (k - 2), 2)
        q = rhs
        p = q / (PowerSeries.one(order) - q)
    return p, q


def plant_series_relation_ok(order=10):
    """The algebraic relation and the functional inverse of the count series."""
    p, _ = plant_counts_series(order)
    one = PowerSeries.one(order)
    x = PowerSeries.x(order)
    rel = x - p + x * p * p + x * p * mpq(2) + p * p + p * p * p
    if not rel.is_zero():
        return False
    inv = (p - p * p - p * p * p) / ((one + p) * (one + p))
    return inv == x


# ---------------------------------------------------------------------------
# trees inside plants, conjecture and identity checks

def nc_trees(n, based_only=False):
    return tuple(
        p for p in enumerate_plants(n, based_only) if p.is_tree()
    )


def tamari_interval_conjecture_check(n):
    """Expand every degree-n non-crossing tree over the binary-tree basis.

    Returns (all_pass, rows); each row records the plant, that all basis
    coefficients are 0 or 1, the support size, and whether the support is
    an interval of the rotation order.
    """
    from .trees import expand_in_tree_basis, is_tamari_interval

    rows = []
    all_pass = True
    for p in nc_trees(n):
        coeffs = expand_in_tree_basis(psi_plant(p))
        zero_one = all(c == 1 for c in coeffs.values())
        interval = is_tamari_interval(set(coeffs))
        ok = zero_one and interval
        all_pass = all_pass and ok
        rows.append(
            {
                "plant": p.to_json(),
                "coefficients_01": zero_one,
                "support_size": len(coeffs),
                "is_interval": interval,
            }
        )
    return all_pass, rows


def zero_one_expansion_check(n, seed=0):
    """Tree-basis coefficients of every degree-n plant lie in {0, 1}.

    Uses one shared evaluation-matrix inverse for the whole degree, so the
    full degree-5 sweep stays cheap.
    """
    from .trees import TreeBasisExpander

    expander = TreeBasisExpander(n, seed=seed)
    for p in enumerate_plants(n):
        coeffs = expander.expand(psi_plant(p))
        if any(c != 1 for c in coeffs.values()):
            return False
    return True


def hille_identity_check(n):
    """Sum of all binary-tree fractions equals 1/(u_1...u_n)."""
    from .trees import sum_psi_trees

    expect = RatFun.from_factored(
        Polynomial.one(), [(interval_form(i, i), 1) for i in range(1, n + 1)]
    )
    return sum_psi_trees(n) == expect


def counts_csv(max_n):
    p, q = plant_counts_series(max_n)
    lines = ["n,plants,based"]
    for n in range(1, max_n + 1):
        lines.append("%d,%d,%d" % (n, p[n], q[n]))
    return "\n".join(lines) + "\n"
