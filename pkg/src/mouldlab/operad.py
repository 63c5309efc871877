"""The operad of moulds on rational functions.

A component of arity n is a rational function of u1..un (and optionally the
parameter t).  Partial composition inserts g into the i-th slot of f after
re-indexing, multiplied by the linear form covering g's block:

    (f o_i g)(u1..u_{m+n-1})
        = u_{i..i+n-1} * f(u1,.., u_{i-1}, u_{i..i+n-1}, u_{i+n}, ..)
                       * g(u_i, .., u_{i+n-1})

The push is the cyclic action f |-> f(-u_{1..n}, u1, .., u_{n-1}) of order
n+1 on arity n; it sends the unit 1/u1 to its negative.
"""

import itertools
import json
from math import factorial

from gmpy2 import mpq

from .core.poly import Polynomial, T, U, VarId
from .core.ratfun import (
    RatFun,
    clears_h_product,
    has_nice_poles,
    homogeneity_weight,
    interval_form,
    residue_at_zero,
    substitute_factored,
    sum_with_cancel,
)


class MouldComponent:
    """An arity n plus a RatFun in u1..un (and optionally t)."""

    __slots__ = ("arity", "value")

    def __init__(self, arity, value):
        if not isinstance(arity, int) or arity < 1:
            raise ValueError("arity must be a positive integer")
        if not isinstance(value, RatFun):
            value = RatFun(value) if isinstance(value, Polynomial) else RatFun.const(value)
        for v in value.variables():
            if v.kind == "x":
                raise ValueError("x is not allowed in mould components")
            if v.kind == "u" and v.index > arity:
                raise ValueError(
                    "component of arity %d mentions %s" % (arity, v.name)
                )
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *a):
        raise AttributeError("MouldComponent is immutable")

    def __eq__(self, other):
        if not isinstance(other, MouldComponent):
            return NotImplemented
        return self.arity == other.arity and self.value == other.value

    def __hash__(self):
        return hash((self.arity, self.value))

    def __add__(self, other):
        if not isinstance(other, MouldComponent):
            return NotImplemented
        if self.arity != other.arity:
            raise ValueError("cannot add components of different arities")
        return MouldComponent(self.arity, self.value + other.value)

    def __sub__(self, other):
        if not isinstance(other, MouldComponent):
            return NotImplemented
        if self.arity != other.arity:
            raise ValueError("cannot subtract components of different arities")
        return MouldComponent(self.arity, self.value - other.value)

    def __neg__(self):
        return MouldComponent(self.arity, -self.value)

    def scale(self, c):
        return MouldComponent(self.arity, self.value * RatFun.const(c))

    def is_zero(self):
        return self.value.is_zero()

    def subs_t(self, tval):
        """Assign a rational value to the parameter t."""
        return MouldComponent(self.arity, self.value.substitute({T: mpq(tval)}))

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return "MouldComponent(%d, %s)" % (self.arity, self.value)

    def to_json(self):
        return {"arity": self.arity, "expression": str(self.value)}

    @classmethod
    def from_json(cls, obj):
        from .core.expr import parse

        return cls(int(obj["arity"]), parse(obj["expression"]))


def zero_component(n):
    return MouldComponent(n, RatFun.zero())


def unit():
    """The operad unit 1/u1."""
    return MouldComponent(1, RatFun.from_factored(Polynomial.one(), [(interval_form(1, 1), 1)]))


def dend_left():
    """psi of the left dendriform generator: 1/(u1*u_{1..2})."""
    return MouldComponent(
        2,
        RatFun.from_factored(
            Polynomial.one(), [(interval_form(1, 1), 1), (interval_form(1, 2), 1)]
        ),
    )


def dend_right():
    """psi of the right dendriform generator: 1/(u_{1..2}*u2)."""
    return MouldComponent(
        2,
        RatFun.from_factored(
            Polynomial.one(), [(interval_form(1, 2), 1), (interval_form(2, 2), 1)]
        ),
    )


def middle_gen():
    """psi of the middle (tridendriform) generator: 1/(u1+u2)."""
    return MouldComponent(
        2, RatFun.from_factored(Polynomial.one(), [(interval_form(1, 2), 1)])
    )


def _shift_map(max_index, offset):
    return {U(j): Polynomial.var(U(j + offset)) for j in range(1, max_index + 1)}


def shift_value(value, offset, max_index):
    """u_j -> u_{j+offset} for 1 <= j <= max_index."""
    if offset == 0:
        return value
    return value.substitute(_shift_map(max_index, offset))


def compose_at(f, g, i):
    """Partial composition f o_i g."""
    m, n = f.arity, g.arity
    if not 1 <= i <= m:
        raise ValueError("composition index %d out of range 1..%d" % (i, m))
    form = interval_form(i, i + n - 1)
    sub_f = {U(i): form}
    for j in range(i + 1, m + 1):
        sub_f[U(j)] = Polynomial.var(U(j + n - 1))
    sub_g = _shift_map(n, i - 1)
    value = f.value.substitute(sub_f) * g.value.substitute(sub_g) * RatFun(form)
    return MouldComponent(m + n - 1, value)


def push(f):
    """The cyclic action: f(u1,..,un) -> f(-u_{1..n}, u1, .., u_{n-1})."""
    n = f.arity
    sub = {U(1): -interval_form(1, n)}
    for j in range(2, n + 1):
        sub[U(j)] = Polynomial.var(U(j - 1))
    return MouldComponent(n, f.value.substitute(sub))


def push_inverse(f):
    """Inverse of push (push applied n more times, by the order relation)."""
    n = f.arity
    sub = {U(n): -interval_form(1, n)}
    for j in range(1, n):
        sub[U(j)] = Polynomial.var(U(j + 1))
    return MouldComponent(n, f.value.substitute(sub))


# ---------------------------------------------------------------------------
# structural predicates

def is_alternal(f, max_n=8):
    """All shuffle sums vanish: for 1 <= i < n, summing f over the words
    interleaving (u1..ui) with (u_{i+1}..un) (relative orders preserved)
    gives 0.
    """
    n = f.arity
    if n > max_n:
        raise ValueError("alternality check capped at n=%d (got %d)" % (max_n, n))
    if n == 1:
        return True
    for i in range(1, n):
        fracs = []
        for positions in itertools.combinations(range(1, n + 1), i):
            word = {}
            for idx, pos in enumerate(positions):
                word[pos] = idx + 1
            rest = iter(range(i + 1, n + 1))
            for pos in range(1, n + 1):
                if pos not in word:
                    word[pos] = next(rest)
            sub = {U(pos): Polynomial.var(U(letter)) for pos, letter in word.items()}
            fracs.append(substitute_factored(f.value, sub))
        if not sum_with_cancel(fracs).is_zero():
            return False
    return True


def is_vegetal(f, max_n=6):
    """u1..un * sum over permutations of f(t*u_sigma) equals n! * f(t,..,t),
    as an exact identity in the formal parameter t and u1..un.
    """
    n = f.arity
    if n > max_n:
        raise ValueError("vegetality check capped at n=%d (got %d)" % (max_n, n))
    if any(v.kind == "t" for v in f.value.variables()):
        raise ValueError("assign t before checking vegetality")
    tpoly = Polynomial.var(T)
    rhs = f.value.substitute({U(j): tpoly for j in range(1, n + 1)})
    fracs = []
    for sigma in itertools.permutations(range(1, n + 1)):
        sub = {
            U(j): Polynomial.monomial([(T, 1), (U(sigma[j - 1]), 1)])
            for j in range(1, n + 1)
        }
        fracs.append(substitute_factored(f.value, sub))
    lhs = sum_with_cancel(fracs).to_ratfun()
    uprod = Polynomial.monomial([(U(j), 1) for j in range(1, n + 1)])
    return lhs * RatFun(uprod) == rhs * factorial(n)


def component_weight(f):
    """Homogeneity weight in the u-variables, or None if inhomogeneous."""
    return homogeneity_weight(f.value)


def component_nice_poles(f):
    return has_nice_poles(f.value, f.arity)


def component_clears_h(f):
    return clears_h_product(f.value, f.arity)


# ---------------------------------------------------------------------------
# products

def mu(f, g):
    """Juxtaposition product: f(u1..um) * g(u_{m+1}..u_{m+n})."""
    m, n = f.arity, g.arity
    return MouldComponent(m + n, f.value * shift_value(g.value, m, n))


def limu(f, g):
    """Commutator of mu."""
    return mu(f, g) - mu(g, f)


def succ(f, g):
    """Dendriform 'succ': f > g = f * g' * u_{m+1..m+n} / u_{1..m+n}."""
    m, n = f.arity, g.arity
    top = RatFun.from_factored(interval_form(m + 1, m + n), [(interval_form(1, m + n), 1)])
    return MouldComponent(m + n, f.value * shift_value(g.value, m, n) * top)


def prec(f, g):
    """Dendriform 'prec': f < g = f * g' * u_{1..m} / u_{1..m+n}."""
    m, n = f.arity, g.arity
    top = RatFun.from_factored(interval_form(1, m), [(interval_form(1, m + n), 1)])
    return MouldComponent(m + n, f.value * shift_value(g.value, m, n) * top)


def arrow(f, g):
    """The dendriform pre-Lie product: f <- g = (g succ f) - (f prec g)."""
    return succ(g, f) - prec(f, g)


def circ(f, g):
    """The operadic pre-Lie product: sum of all partial compositions."""
    total = zero_component(f.arity + g.arity - 1)
    for i in range(1, f.arity + 1):
        total = total + compose_at(f, g, i)
    return total


def over(f, g):
    """Over product: f(u1..um) * g(u_{1..m+1}, u_{m+2}, .., u_{m+n})."""
    m, n = f.arity, g.arity
    sub_g = {U(1): interval_form(1, m + 1)}
    for j in range(2, n + 1):
        sub_g[U(j)] = Polynomial.var(U(m + j))
    return MouldComponent(m + n, f.value * g.value.substitute(sub_g))


def under(f, g):
    """Under product: f(u1,..,u_{m-1}, u_{m..m+n}) * g(u_{m+1},..,u_{m+n})."""
    m, n = f.arity, g.arity
    sub_f = {U(m): interval_form(m, m + n)}
    return MouldComponent(
        m + n, f.value.substitute(sub_f) * shift_value(g.value, m, n)
    )


def arit(f, g):
    """Ecalle's ARIT(f, g) = f o (g over unit) - f o (unit under g)."""
    y = unit()
    return circ(f, over(g, y)) - circ(f, under(y, g))


def ari(f, g):
    """Ecalle's bracket: ARIT(f,g) - ARIT(g,f) + LIMU(f,g)."""
    return arit(f, g) - arit(g, f) + limu(f, g)


# ---------------------------------------------------------------------------
# derivation

def derivation(f):
    """The residue derivation: insert a fresh variable in each slot and take
    the residue at 0.  Lowers arity by one; on arity 1 the result is the
    plain rational Res_{v=0} f(v).
    """
    m = f.arity
    v = U(m)  # free after re-indexing: surviving variables are u1..u_{m-1}
    total = RatFun.zero()
    for j in range(1, m + 1):
        sub = {U(j): Polynomial.var(v)}
        for k in range(j + 1, m + 1):
            sub[U(k)] = Polynomial.var(U(k - 1))
        total = total + residue_at_zero(f.value.substitute(sub), v)
    if m == 1:
        if not total.num.is_const() or not total.den.is_const():
            raise AssertionError("arity-1 derivation must be constant")
        return total.num.const_value() / total.den.const_value()
    return MouldComponent(m - 1, total)


# ---------------------------------------------------------------------------
# mould sequences and the forgetful map

class Mould:
    """A truncated sequence of components; missing degrees are zero."""

    __slots__ = ("order", "components")

    def __init__(self, components, order):
        comps = {}
        for n, c in components.items():
            if not isinstance(c, MouldComponent):
                raise TypeError("Mould components must be MouldComponents")
            if c.arity != n:
                raise ValueError("component at degree %d has arity %d" % (n, c.arity))
            if not 1 <= n <= order:
                raise ValueError("degree %d outside 1..%d" % (n, order))
            if not c.is_zero():
                comps[n] = c
        self.order = order
        self.components = comps

    @classmethod
    def from_function(cls, fn, order):
        return cls({n: fn(n) for n in range(1, order + 1)}, order)

    def component(self, n):
        c = self.components.get(n)
        return c if c is not None else zero_component(n)

    def __eq__(self, other):
        if not isinstance(other, Mould):
            return NotImplemented
        return self.order == other.order and self.components == other.components


def mould_mu(a, b, order):
    """Degreewise convolution of two mould sequences under mu."""
    comps = {}
    for n in range(2, order + 1):
        total = zero_component(n)
        for k in range(1, n):
            fa = a.component(k)
            fb = b.component(n - k)
            if not fa.is_zero() and not fb.is_zero():
                total = total + mu(fa, fb)
        comps[n] = total
    return Mould(comps, order)


def mould_circ(a, b, order):
    """Degreewise convolution of two mould sequences under circ."""
    comps = {}
    for n in range(1, order + 1):
        total = zero_component(n)
        for m in range(1, n + 1):
            fa = a.component(m)
            fb = b.component(n - m + 1)
            if not fa.is_zero() and not fb.is_zero():
                total = total + circ(fa, fb)
        comps[n] = total
    return Mould(comps, order)


def forgetful(m, order=None):
    """The map to formal power series: coefficient of x^n is f_n(1,..,1).

    Every nonzero component must be homogeneous of weight -n with nice poles
    and must not mention t (assign t first).
    """
    from .core.series import PowerSeries

    if order is None:
        order = m.order
    ones = None
    coeffs = [mpq(0)]
    for n in range(1, order + 1):
        c = m.component(n)
        if c.is_zero():
            coeffs.append(mpq(0))
            continue
        for v in c.value.variables():
            if v.kind == "t":
                raise ValueError("assign t before applying the forgetful map")
        if component_weight(c) != -n:
            raise ValueError("component %d is not homogeneous of weight %d" % (n, -n))
        if not component_nice_poles(c):
            raise ValueError("component %d does not have nice poles" % n)
        ones = {U(j): mpq(1) for j in range(1, n + 1)}
        coeffs.append(c.value.evaluate(ones))
    return PowerSeries(coeffs, order)


# ---------------------------------------------------------------------------
# serialization helpers

def component_to_text(c):
    return json.dumps(c.to_json(), sort_keys=True)


def component_from_text(text):
    return MouldComponent.from_json(json.loads(text))
