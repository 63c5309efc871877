"""A gallery of named moulds with known closed forms and series images.

Each constructor returns one component of the mould; `named_mould` bundles
components 1..order into a Mould for series work.  Parameter t may be a
rational number or None for the formal variable.
"""

from math import comb

from gmpy2 import mpq

from .core.poly import Polynomial, T, U
from .core.ratfun import RatFun, interval_form
from .operad import Mould, MouldComponent, arrow, prec, succ, unit


def _t_value(t):
    return Polynomial.var(T) if t is None else Polynomial.const(mpq(t))


def _over_product(numerator, n, with_full_interval=True):
    """numerator / (u_1 ... u_n [ * u_{1..n} ])."""
    factors = [(interval_form(i, i), 1) for i in range(1, n + 1)]
    if with_full_interval:
        factors.append((interval_form(1, n), 1))
    return MouldComponent(n, RatFun.from_factored(numerator, factors))


def as_mould(n):
    """1/(u_1 ... u_n): the sum of all binary tree fractions."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    return _over_product(Polynomial.one(), n, with_full_interval=False)


def pq_sum(p, q):
    """u_p/(u_1...u_n u_{1..n}), n = p+q: trees whose root splits at gap p.

    The sum of tree fractions over binary trees whose left subtree has p
    leaves (so the right one has q+1); q = 0 collapses the right subtree
    to a leaf, and summing over p = 1..n recovers as_mould(n).
    """
    if p < 1 or q < 0:
        raise ValueError("need p >= 1 and q >= 0")
    n = p + q
    return _over_product(Polynomial.var(U(p)), n)


def ty_mould(n, t=None):
    """(sum of t^(i-1) u_i) / (u_1 ... u_n u_{1..n})."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    tv = _t_value(t)
    num = Polynomial.zero()
    tp = Polynomial.one()
    for i in range(1, n + 1):
        num = num + tp * Polynomial.var(U(i))
        tp = tp * tv
    return _over_product(num, n)


def weighted_mould(n):
    """(sum of i * u_i) / (u_1 ... u_n u_{1..n})."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    num = Polynomial.zero()
    for i in range(1, n + 1):
        num = num + Polynomial.var(U(i)) * mpq(i)
    return _over_product(num, n)


_CM = {1: None}


def cm_mould(n):
    """The corner mould: repeated pre-Lie bracketing of the unit.

    Defined by the recursion against the unit; the closed form
    cm_closed(n) is a validated consequence, not the definition.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    if _CM[1] is None:
        _CM[1] = unit()
    top = max(_CM)
    while top < n:
        _CM[top + 1] = arrow(_CM[top], _CM[1])
        top += 1
    return _CM[n]


def cm_closed(n, corrected=True):
    """Alternating-binomial closed form of the corner mould.

    corrected=True uses C(n-1, k-1), which matches the recursion for all
    n; corrected=False uses C(n, k), which already fails at n = 2 and is
    kept as a regression witness.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    num = Polynomial.zero()
    for k in range(1, n + 1):
        c = comb(n - 1, k - 1) if corrected else comb(n, k)
        sign = 1 if (n + k) % 2 == 0 else -1
        num = num + Polynomial.var(U(k)) * mpq(sign * c)
    return _over_product(num, n)


def po_mould(n, t=None):
    """Product formula: prod(u_{1..i-1} + t u_i) / (u_1 prod u_i u_{1..i})."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    tv = _t_value(t)
    num = Polynomial.one()
    factors = [(interval_form(1, 1), 1)]
    for i in range(2, n + 1):
        num = num * (interval_form(1, i - 1) + tv * Polynomial.var(U(i)))
        factors.append((interval_form(i, i), 1))
        factors.append((interval_form(1, i), 1))
    return MouldComponent(n, RatFun.from_factored(num, factors))


def po_recursion(n, t=None):
    """t (PO >) unit + (PO <) unit, the defining recursion; oracle for po_mould."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    tv = _t_value(t)
    po = unit()
    for _ in range(n - 1):
        grown = succ(po, unit())
        po = MouldComponent(grown.arity, grown.value * tv) + prec(po, unit())
    return po


GALLERY_NAMES = ("as", "pq", "ty", "weighted", "cm", "po")


def named_mould(name, order, t=None, p=None, q=None):
    """Bundle components 1..order of a gallery mould by name."""
    if name == "as":
        make = as_mould
    elif name == "ty":
        make = lambda n: ty_mould(n, t)
    elif name == "weighted":
        make = weighted_mould
    elif name == "cm":
        make = cm_mould
    elif name == "po":
        make = lambda n: po_mould(n, t)
    elif name == "pq":
        if p is None or q is None:
            raise ValueError("pq needs both p and q")
        comp = pq_sum(p, q)
        return Mould({comp.arity: comp}, max(order, comp.arity))
    else:
        raise ValueError("unknown gallery mould %r" % (name,))
    return Mould({n: make(n) for n in range(1, order + 1)}, order)
