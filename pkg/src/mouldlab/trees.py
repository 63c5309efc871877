"""Planar (binary) trees, their rational functions, and the Tamari order.

Trees are nested tuples: a leaf is the string "L", an internal vertex is a
tuple of two or more children.  A tree with n+1 leaves has degree n.  Gaps
between adjacent leaves are numbered 1..n left to right; the vertex whose
leaf span runs from leaf a to leaf b owns the gap interval [a+1, b], and its
rational function is the inverse of the product of u_{lo..hi} over all
internal vertices.
"""

import itertools
import json
import random

from gmpy2 import mpq

from .core.poly import Polynomial, U
from .core.ratfun import (
    FactoredFraction,
    RatFun,
    interval_form,
    residue_at_zero,
    sum_with_cancel,
)
from .operad import (
    MouldComponent,
    compose_at,
    dend_left,
    dend_right,
    middle_gen,
    unit,
)

LEAF = "L"


def is_leaf(t):
    return t == LEAF


def leaf_count(t):
    if t == LEAF:
        return 1
    return sum(leaf_count(c) for c in t)


def tree_degree(t):
    """Number of gaps: leaves minus one (= internal vertices when binary)."""
    return leaf_count(t) - 1


def is_binary(t):
    if t == LEAF:
        return True
    return len(t) == 2 and all(is_binary(c) for c in t)


_BINARY = {0: (LEAF,)}


def binary_trees(n):
    """All planar binary trees of degree n, in a fixed recursive order."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n not in _BINARY:
        out = []
        for k in range(n):
            for left in binary_trees(k):
                for right in binary_trees(n - 1 - k):
                    out.append((left, right))
        _BINARY[n] = tuple(out)
    return _BINARY[n]


_PLANAR = {1: (LEAF,)}


def _planar_by_leaves(m):
    if m not in _PLANAR:
        out = []
        for k in range(2, m + 1):
            for parts in _compositions(m, k):
                for kids in itertools.product(
                    *[_planar_by_leaves(p) for p in parts]
                ):
                    out.append(tuple(kids))
        _PLANAR[m] = tuple(out)
    return _PLANAR[m]


def _compositions(total, k):
    if k == 1:
        yield (total,)
        return
    for first in range(1, total - k + 2):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def planar_trees(n):
    """All planar trees of degree n (n+1 leaves, every vertex >= 2 children)."""
    if n < 1:
        raise ValueError("degree must be positive")
    return _planar_by_leaves(n + 1)


def left_comb(n):
    t = LEAF
    for _ in range(n):
        t = (t, LEAF)
    return t


def right_comb(n):
    t = LEAF
    for _ in range(n):
        t = (LEAF, t)
    return t


def corolla(n):
    """The planar tree with a single vertex and n+1 leaves (degree n)."""
    if n < 1:
        raise ValueError("degree must be positive")
    return (LEAF,) * (n + 1) if n > 1 else (LEAF, LEAF)


def vertex_intervals(t):
    """Gap intervals (lo, hi) of the internal vertices, in prefix order."""
    out = []

    def walk(node, offset):
        if node == LEAF:
            return 1
        width = 0
        idx = len(out)
        out.append(None)
        for c in node:
            width += walk(c, offset + width)
        out[idx] = (offset + 1, offset + width - 1)
        return width

    walk(t, 0)
    return tuple(out)


def psi_tree(t):
    """The mould component of a planar (binary or not) tree."""
    n = tree_degree(t)
    if n < 1:
        raise ValueError("the lone leaf has no component")
    factors = [(interval_form(lo, hi), 1) for lo, hi in vertex_intervals(t)]
    return MouldComponent(n, RatFun.from_factored(Polynomial.one(), factors))


psi_planar_tree = psi_tree


def sum_psi_trees(n):
    """Sum of psi over all binary trees of degree n, as a RatFun."""
    fracs = [
        FactoredFraction.from_ratfun(psi_tree(t).value) for t in binary_trees(n)
    ]
    return sum_with_cancel(fracs).to_ratfun()


# ---------------------------------------------------------------------------
# serialization

def tree_to_text(t):
    if t == LEAF:
        return "L"
    return "(" + ",".join(tree_to_text(c) for c in t) + ")"


def tree_from_text(s):
    pos = 0

    def node():
        nonlocal pos
        if pos < len(s) and s[pos] == "L":
            pos += 1
            return LEAF
        if pos >= len(s) or s[pos] != "(":
            raise ValueError("expected 'L' or '(' at position %d" % pos)
        pos += 1
        kids = [node()]
        while pos < len(s) and s[pos] == ",":
            pos += 1
            kids.append(node())
        if pos >= len(s) or s[pos] != ")":
            raise ValueError("expected ')' at position %d" % pos)
        pos += 1
        if len(kids) < 2:
            raise ValueError("internal vertex needs at least 2 children")
        return tuple(kids)

    t = node()
    if pos != len(s.strip()) and s[pos:].strip():
        raise ValueError("trailing input after tree")
    return t


def tree_to_json(t):
    if t == LEAF:
        return "L"
    return [tree_to_json(c) for c in t]


def tree_from_json(obj):
    if obj == "L":
        return LEAF
    if not isinstance(obj, list) or len(obj) < 2:
        raise ValueError("tree JSON must be 'L' or an array of >= 2 children")
    return tuple(tree_from_json(c) for c in obj)


# ---------------------------------------------------------------------------
# permutations

def pi(word):
    """The planar binary tree whose partial order the word extends.

    The first letter is the root gap; letters below it build the left
    subtree in their order of appearance, letters above it the right one.
    """
    word = tuple(word)
    if sorted(word) != list(range(1, len(word) + 1)):
        raise ValueError("not a permutation of 1..n")

    def build(letters):
        if not letters:
            return LEAF
        g = letters[0]
        return (
            build([a for a in letters[1:] if a < g]),
            build([a for a in letters[1:] if a > g]),
        )

    return build(list(word))


def pi_fibers(n):
    """How many permutations map to each tree of degree n."""
    counts = {}
    for word in itertools.permutations(range(1, n + 1)):
        t = pi(word)
        counts[t] = counts.get(t, 0) + 1
    return counts


def multi_residue(f, sigma):
    """Iterated residue of a component, innermost in u_{sigma(n)}."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, f.arity + 1)):
        raise ValueError("not a permutation of 1..arity")
    r = f.value
    for k in range(len(sigma) - 1, -1, -1):
        r = residue_at_zero(r, U(sigma[k]))
    if not r.num.is_const() or not r.den.is_const():
        raise AssertionError("multi-residue did not reduce to a constant")
    return r.num.const_value() / r.den.const_value()


# ---------------------------------------------------------------------------
# composing with generators, vertex removal

def graft_generator(t, i, side):
    """The tree of compose_at(psi(t), generator, i), when it is one tree.

    Composing with the left generator at slot i splits leaf i-1 in two
    (new vertex at gap i); the right generator splits leaf i (new vertex
    at gap i+1).  This is a single tree only when the split leaf is a
    first child (left generator) or a last child (right generator);
    otherwise the product is a sum of tree functions and this raises.
    """
    n = tree_degree(t)
    if not 1 <= i <= n:
        raise ValueError("slot out of range")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    target = i - 1 if side == "left" else i
    pos = _leaf_child_position(t, target)
    if side == "left" and pos != "first":
        raise ValueError("left graft needs leaf %d to be a first child" % target)
    if side == "right" and pos != "last":
        raise ValueError("right graft needs leaf %d to be a last child" % target)

    def walk(node, offset):
        if node == LEAF:
            return (LEAF, LEAF) if offset == target else node
        kids = []
        for c in node:
            kids.append(walk(c, offset))
            offset += leaf_count(c)
        return tuple(kids)

    return walk(t, 0)


def _leaf_child_position(t, target):
    """'first', 'last', 'middle', or 'only' for leaf number target."""
    if t == LEAF:
        return "only"

    def walk(node, offset):
        if node == LEAF:
            return None
        for k, c in enumerate(node):
            if c == LEAF and offset == target:
                if k == 0:
                    return "first"
                return "last" if k == len(node) - 1 else "middle"
            found = walk(c, offset)
            if found is not None:
                return found
            offset += leaf_count(c)
        return None

    return walk(t, 0)


def binary_decompose(t):
    """(S, i, side) with psi(t) = compose_at(psi(S), generator, i).

    Contracts the leftmost vertex whose children are both leaves; that
    vertex covers leaves j-1 and j, and is a left child exactly when the
    contraction leaf stays a first child.
    """
    if not is_binary(t):
        raise ValueError("binary trees only")
    if tree_degree(t) < 2:
        raise ValueError("nothing to decompose")
    l, _, path = _leftmost_bottom_corolla(t)
    s = _contract_at(t, path)
    if path and path[-1] == 0:
        return s, l + 1, "left"
    return s, l, "right"


def top_vertex_removals(t):
    """Contract, one at a time, each vertex all of whose children are leaves."""
    out = []

    def paths(node, path):
        if node == LEAF:
            return
        if all(c == LEAF for c in node):
            out.append(path)
            return
        for k, c in enumerate(node):
            paths(c, path + (k,))

    def replace(node, path):
        if not path:
            return LEAF
        k = path[0]
        return tuple(
            replace(c, path[1:]) if j == k else c for j, c in enumerate(node)
        )

    paths(t, ())
    return [replace(t, p) for p in out]


# ---------------------------------------------------------------------------
# Tamari order (left comb minimal; covers rotate ((A,B),C) -> (A,(B,C)))

_COVERS = {}
_COCOVERS = {}
_UP = {}
_DOWN = {}


def tamari_covers(t):
    if t in _COVERS:
        return _COVERS[t]
    out = set()
    if t != LEAF:
        l, r = t
        if l != LEAF:
            a, b = l
            out.add((a, (b, r)))
        for l2 in tamari_covers(l):
            out.add((l2, r))
        for r2 in tamari_covers(r):
            out.add((l, r2))
    out = frozenset(out)
    _COVERS[t] = out
    return out


def tamari_cocovers(t):
    if t in _COCOVERS:
        return _COCOVERS[t]
    out = set()
    if t != LEAF:
        l, r = t
        if r != LEAF:
            b, c = r
            out.add(((l, b), c))
        for l2 in tamari_cocovers(l):
            out.add((l2, r))
        for r2 in tamari_cocovers(r):
            out.add((l, r2))
    out = frozenset(out)
    _COCOVERS[t] = out
    return out


def _up_set(t):
    if t not in _UP:
        acc = {t}
        for c in tamari_covers(t):
            acc |= _up_set(c)
        _UP[t] = frozenset(acc)
    return _UP[t]


def _down_set(t):
    if t not in _DOWN:
        acc = {t}
        for c in tamari_cocovers(t):
            acc |= _down_set(c)
        _DOWN[t] = frozenset(acc)
    return _DOWN[t]


def tamari_leq(a, b):
    if tree_degree(a) != tree_degree(b):
        raise ValueError("trees must have the same degree")
    return b in _up_set(a)


def tamari_interval(a, b):
    if tree_degree(a) != tree_degree(b):
        raise ValueError("trees must have the same degree")
    return _up_set(a) & _down_set(b)


def is_tamari_interval(support):
    """True when a set of trees is exactly {t : a <= t <= b} for some a, b."""
    trees = set(support)
    if not trees:
        return False
    degs = {tree_degree(t) for t in trees}
    if len(degs) != 1:
        raise ValueError("support mixes degrees")
    mins = [t for t in trees if not any(s != t and tamari_leq(s, t) for s in trees)]
    maxs = [t for t in trees if not any(s != t and tamari_leq(t, s) for s in trees)]
    if len(mins) != 1 or len(maxs) != 1:
        return False
    return tamari_interval(mins[0], maxs[0]) == trees


# ---------------------------------------------------------------------------
# exact expansion in the tree basis

def _random_point(n, rng):
    return {U(j): mpq(rng.randint(1, 9), rng.randint(1, 9)) for j in range(1, n + 1)}


def solve_linear(matrix, rhs):
    """Exact Gaussian elimination; returns None when the matrix is singular."""
    m = [row[:] + [b] for row, b in zip(matrix, rhs)]
    size = len(m)
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(size):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [m[r][size] for r in range(size)]


def _evaluation_matrix(values, points):
    return [[v.evaluate(pt) for v in values] for pt in points]


_CERT_PRIME = (1 << 61) - 1


def _det_nonzero_mod_p(matrix, p=_CERT_PRIME):
    """True when det(matrix) != 0 mod p; a sound nonvanishing certificate."""
    m = []
    for row in matrix:
        out = []
        for x in row:
            q = mpq(x)
            den = int(q.denominator) % p
            if den == 0:
                return None
            out.append(int(q.numerator) % p * pow(den, p - 2, p) % p)
        m.append(out)
    size = len(m)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col]), None)
        if pivot is None:
            return False
        m[col], m[pivot] = m[pivot], m[col]
        inv = pow(m[col][col], p - 2, p)
        for r in range(col + 1, size):
            if m[r][col]:
                f = m[r][col] * inv % p
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[col])]
    return True


def tree_basis_independent(n, seed=0, tries=3):
    """Certify linear independence of the tree functions at degree n.

    Evaluates every tree function at Catalan-many random positive points
    (positivity keeps all interval forms nonzero) and certifies that the
    square matrix has nonzero determinant modulo a large prime; a nonzero
    result modulo p proves a nonzero exact determinant.
    """
    rng = random.Random(seed)
    values = [psi_tree(t).value for t in binary_trees(n)]
    for _ in range(tries):
        points = [_random_point(n, rng) for _ in values]
        matrix = _evaluation_matrix(values, points)
        if _det_nonzero_mod_p(matrix):
            return True
    return False


def expand_in_tree_basis(f, seed=0, tries=5):
    """Exact coefficients of f in the tree basis of its degree.

    Solves an evaluation system at random positive rational points, then
    verifies the answer: symbolically for degree <= 4, at a batch of fresh
    points above.  Raises ValueError when f is not in the span.
    """
    n = f.arity
    trees = binary_trees(n)
    values = [psi_tree(t).value for t in trees]
    rng = random.Random(seed)
    coeffs = None
    for _ in range(tries):
        points = [_random_point(n, rng) for _ in trees]
        try:
            rhs = [f.value.evaluate(pt) for pt in points]
        except ZeroDivisionError:
            continue
        matrix = _evaluation_matrix(values, points)
        coeffs = solve_linear(matrix, rhs)
        if coeffs is not None:
            break
    if coeffs is None:
        raise ValueError("singular evaluation matrix after retries")
    if n <= 4:
        fracs = [
            FactoredFraction.from_ratfun(v, scale=c)
            for v, c in zip(values, coeffs)
            if c != 0
        ]
        if sum_with_cancel(fracs).to_ratfun() != f.value:
            raise ValueError("component is not in the span of the tree basis")
    else:
        for _ in range(2 * n):
            pt = _random_point(n, rng)
            lhs = sum(
                (c * v.evaluate(pt) for v, c in zip(values, coeffs)), mpq(0)
            )
            if lhs != f.value.evaluate(pt):
                raise ValueError("component is not in the span of the tree basis")
    return {t: c for t, c in zip(trees, coeffs) if c != 0}


def expansion_to_json(coeffs):
    return {tree_to_text(t): str(c) for t, c in sorted(coeffs.items(), key=lambda kv: tree_to_text(kv[0]))}


def _invert_matrix(matrix):
    """Exact inverse by Gauss-Jordan; None when singular."""
    size = len(matrix)
    m = [
        [mpq(x) for x in row] + [mpq(1 if i == j else 0) for j in range(size)]
        for i, row in enumerate(matrix)
    ]
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(size):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [row[size:] for row in m]


class TreeBasisExpander:
    """Reusable expander for many components of one degree.

    Inverts the tree-evaluation matrix once, then each expansion costs a
    handful of evaluations plus a matrix-vector product.  Results are
    verified at a batch of extra points, so a component outside the span
    is always rejected.
    """

    __slots__ = ("degree", "trees", "points", "inverse", "check_points",
                 "check_values")

    def __init__(self, n, seed=0, extra=4, tries=5):
        rng = random.Random(seed)
        self.degree = n
        self.trees = binary_trees(n)
        values = [psi_tree(t).value for t in self.trees]
        size = len(values)
        inverse = None
        for _ in range(tries):
            points = [_random_point(n, rng) for _ in range(size)]
            inverse = _invert_matrix(_evaluation_matrix(values, points))
            if inverse is not None:
                break
        if inverse is None:
            raise ValueError("singular evaluation matrix after retries")
        self.points = points
        self.inverse = inverse
        self.check_points = [_random_point(n, rng) for _ in range(extra)]
        self.check_values = [
            [v.evaluate(pt) for v in values] for pt in self.check_points
        ]

    def expand(self, f):
        """Coefficients of f in the tree basis, as a tree -> rational dict."""
        if f.arity != self.degree:
            raise ValueError(
                "expander built for degree %d, got %d" % (self.degree, f.arity)
            )
        rhs = [f.value.evaluate(pt) for pt in self.points]
        coeffs = [
            sum((a * b for a, b in zip(row, rhs)), mpq(0))
            for row in self.inverse
        ]
        for pt, vals in zip(self.check_points, self.check_values):
            lhs = sum((c * v for c, v in zip(coeffs, vals)), mpq(0))
            if lhs != f.value.evaluate(pt):
                raise ValueError("component is not in the span of the tree basis")
        return {t: c for t, c in zip(self.trees, coeffs) if c != 0}


# ---------------------------------------------------------------------------
# generator words for planar trees

def _chain(d):
    """The middle-generator word for the corolla of degree d >= 2."""
    w = middle_gen()
    for _ in range(d - 2):
        w = compose_at(w, middle_gen(), 1)
    return w


def _left_device(c):
    """Word with value 1/(u_{1..c} * u_{1..c-1}), arity c."""
    if c == 2:
        return dend_left()
    return compose_at(dend_left(), _chain(c - 1), 1)


def _right_device(c):
    """Word with value 1/(u_{1..c} * u_{2..c}), arity c."""
    if c == 2:
        return dend_right()
    return compose_at(dend_right(), _chain(c - 1), 2)


def _leftmost_bottom_corolla(t):
    """(leftmost leaf offset, child count, path) of the first all-leaf vertex."""
    def walk(node, offset, path):
        if node == LEAF:
            return None
        if all(c == LEAF for c in node):
            return (offset, len(node), path)
        for k, c in enumerate(node):
            found = walk(c, offset, path + (k,))
            if found is not None:
                return found
            offset += leaf_count(c)
        return None

    return walk(t, 0, ())


def _contract_at(t, path):
    if not path:
        return LEAF
    k = path[0]
    return tuple(
        _contract_at(c, path[1:]) if j == k else c for j, c in enumerate(t)
    )


def planar_generator_expression(t):
    """psi(t) rebuilt from the three generator images and compose_at only.

    Peels one all-leaf vertex at a time: a vertex with c children covering
    leaves l..l+c-1 contracts to a leaf, and re-attaches with the arity-c
    left device at slot l+1 when it was a first (or middle) child, with
    the right device at slot l when it was a last child.  Independent of
    psi_tree, so it serves as its oracle.
    """
    n = tree_degree(t)
    if n < 1:
        raise ValueError("the lone leaf has no component")
    if n == 1:
        return unit()
    if t != LEAF and all(c == LEAF for c in t):
        return _chain(n)
    l, c, path = _leftmost_bottom_corolla(t)
    base = planar_generator_expression(_contract_at(t, path))
    if path[-1] < len(_subtree_at(t, path[:-1])) - 1:
        return compose_at(base, _left_device(c), l + 1)
    return compose_at(base, _right_device(c), l)


def _subtree_at(t, path):
    for k in path:
        t = t[k]
    return t
