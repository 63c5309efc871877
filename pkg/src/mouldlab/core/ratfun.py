"""Rational functions in reduced canonical form, and the factored-sum engine.

A RatFun stores numerator and denominator polynomials with the denominator
primitive over the integers and positive leading coefficient, fully reduced,
so structural equality coincides with mathematical equality.  Reduction has a
fast path: denominators are factored by trial division into the linear forms
u_{i..j} = u_i + ... + u_j (plus plain variable powers), which are pairwise
coprime irreducibles; only denominators outside that family fall back to a
generic multivariate gcd.
"""

from gmpy2 import mpq

from .poly import (
    MAX_U,
    Polynomial,
    SLOT_T,
    U,
    VarId,
    mono_pairs,
    poly_gcd,
    poly_exact_div,
    slot_var,
    try_div_linear,
)

_ONE = mpq(1)


def interval_form(i, j):
    """The linear form u_i + u_{i+1} + ... + u_j."""
    if not 1 <= i <= j <= MAX_U:
        raise ValueError("bad interval (%r, %r)" % (i, j))
    return _interval_cached(i, j)


_INTERVALS = {}


def _interval_cached(i, j):
    p = _INTERVALS.get((i, j))
    if p is None:
        p = Polynomial.zero()
        for k in range(i, j + 1):
            p = p + Polynomial.var(U(k))
        _INTERVALS[(i, j)] = p
    return p


def h_product(n):
    """H_n = product of all u_{i..j}, 1 <= i <= j <= n."""
    p = Polynomial.one()
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            p = p * interval_form(i, j)
    return p


def factor_interval_id(p):
    """(i, j) if p is exactly u_{i..j} (or a single variable u_i); else None.

    Also identifies t and x as pseudo-intervals (100,100) / (101,101) so the
    factor sort order is total.
    """
    slots = sorted(p.var_slots())
    if not slots:
        return None
    lo, hi = slots[0], slots[-1]
    if len(slots) == 1 and lo >= SLOT_T:
        if p == Polynomial.var(slot_var(lo)):
            return (lo, lo)
        return None
    if hi >= SLOT_T or len(slots) != hi - lo + 1:
        return None
    if p == _interval_cached(lo, hi):
        return (lo, hi)
    return None


def _factor_sort_key(p):
    ij = factor_interval_id(p)
    if ij is not None:
        return (0, ij[0], ij[1], ())
    terms = tuple(
        sorted(((m, (c.numerator, c.denominator)) for m, c in p.terms.items()))
    )
    return (1, p.degree(), 0, terms)


def _split_factor(p, power):
    """Normalize one denominator factor p**power.

    Returns (scalar, pieces): p**power == scalar * prod(key**mult) with each
    key primitive, positive-leading, and monomial content split off into
    single-variable keys.
    """
    if p.is_zero():
        raise ZeroDivisionError("zero factor in denominator")
    c = p.rational_content()
    _, lc = p.leading()
    if lc < 0:
        c = -c
    q = p * (1 / c)
    mono = q.monomial_content()
    pieces = []
    if mono:
        q = q.div_monomial(mono)
        for slot, e in mono_pairs(mono):
            pieces.append((Polynomial.var(slot_var(slot)), e * power))
    if not q.is_const():
        pieces.append((q, power))
    else:
        c = c * q.const_value()
    return c ** power, pieces


def factor_linear_forms(den):
    """Factor den into interval forms and variable powers.

    den must be primitive with positive leading coefficient.  Returns a
    sorted tuple of (form, multiplicity), or None if a non-constant residual
    remains.
    """
    factors = {}
    mono = den.monomial_content()
    rest = den
    if mono:
        rest = rest.div_monomial(mono)
        for slot, e in mono_pairs(mono):
            factors[Polynomial.var(slot_var(slot))] = e
    if not rest.is_const():
        maxu = rest.max_u_index()
        for i in range(1, maxu + 1):
            for j in range(i + 1, maxu + 1):
                form = _interval_cached(i, j)
                while True:
                    q = try_div_linear(rest, form)
                    if q is None:
                        break
                    factors[form] = factors.get(form, 0) + 1
                    rest = q
                if rest.is_const():
                    break
            if rest.is_const():
                break
        if not rest.is_const():
            return None
        # den is primitive with positive leading coefficient, and so is every
        # factor; the residual constant must be 1
        assert rest.const_value() == 1
    return tuple(sorted(factors.items(), key=lambda fe: _factor_sort_key(fe[0])))


class RatFun:
    """Reduced ratio of two Polynomials; immutable."""

    __slots__ = ("num", "den", "_fac")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial.const(num)
        if den is None:
            den = Polynomial.one()
        elif not isinstance(den, Polynomial):
            den = Polynomial.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num, den, fac = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_fac", fac)

    def __setattr__(self, *a):
        raise AttributeError("RatFun is immutable")

    @classmethod
    def _raw(cls, num, den, fac):
        r = cls.__new__(cls)
        object.__setattr__(r, "num", num)
        object.__setattr__(r, "den", den)
        object.__setattr__(r, "_fac", fac)
        return r

    @classmethod
    def zero(cls):
        return cls._raw(Polynomial.zero(), Polynomial.one(), ())

    @classmethod
    def one(cls):
        return cls._raw(Polynomial.one(), Polynomial.one(), ())

    @classmethod
    def const(cls, c):
        return cls._raw(Polynomial.const(c), Polynomial.one(), ())

    @classmethod
    def var(cls, v):
        return cls._raw(Polynomial.var(v), Polynomial.one(), ())

    @classmethod
    def from_factored(cls, num, factors, scalar=1):
        """num / (scalar * prod f**e); factors need not be normalized."""
        if not isinstance(num, Polynomial):
            num = Polynomial.const(num)
        scalar = mpq(scalar)
        if scalar == 0:
            raise ZeroDivisionError("zero denominator")
        merged = {}
        for f, e in factors:
            if e == 0:
                continue
            if e < 0:
                raise ValueError("negative factor multiplicity")
            c, pieces = _split_factor(f, e)
            scalar *= c
            for key, mult in pieces:
                merged[key] = merged.get(key, 0) + mult
        num = num * (1 / scalar)
        if num.is_zero():
            return cls.zero()
        # cancel numerator against factors
        mono = num.monomial_content()
        if mono:
            for key in [k for k in merged if len(k.terms) == 1]:
                (km,) = key.terms
                shift = 0
                e = merged[key]
                from .poly import mono_div
                while e > 0 and mono_div(mono, km) is not None:
                    mono = mono - km
                    shift += km
                    e -= 1
                if shift:
                    num = num.div_monomial(shift)
                    if e:
                        merged[key] = e
                    else:
                        del merged[key]
        for key in list(merged):
            if len(key.terms) == 1:
                continue
            e = merged[key]
            while e > 0:
                q = try_div_linear(num, key)
                if q is None:
                    break
                num = q
                e -= 1
            if e:
                merged[key] = e
            else:
                del merged[key]
        fac = tuple(sorted(merged.items(), key=lambda fe: _factor_sort_key(fe[0])))
        den = Polynomial.one()
        for f, e in fac:
            den = den * f ** e
        return cls._raw(num, den, fac)

    # -- predicates / accessors ----------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def variables(self):
        return self.num.variables() | self.den.variables()

    def max_u_index(self):
        return max(self.num.max_u_index(), self.den.max_u_index())

    def den_factors(self):
        """Denominator factorization [(form, mult), ...]; None if unknown.

        () means denominator 1.  The factors multiply exactly to `den`.
        """
        return self._fac

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Polynomial, int, type(_ONE))):
            return self == RatFun(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def equivalent(self, other):
        """Gcd-free equality oracle by cross-multiplication."""
        other = _coerce(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self._fac is not None and other._fac is not None:
            a = dict(self._fac)
            b = dict(other._fac)
            lcm = dict(a)
            for f, e in b.items():
                if lcm.get(f, 0) < e:
                    lcm[f] = e
            na = self.num
            for f, e in lcm.items():
                d = e - a.get(f, 0)
                if d:
                    na = na * f ** d
            nb = other.num
            for f, e in lcm.items():
                d = e - b.get(f, 0)
                if d:
                    nb = nb * f ** d
            return RatFun.from_factored(na + nb, lcm.items())
        return RatFun(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(-self.num, self.den, self._fac)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RatFun.zero()
        if self._fac is not None and other._fac is not None:
            fac = dict(self._fac)
            for f, e in other._fac:
                fac[f] = fac.get(f, 0) + e
            return RatFun.from_factored(self.num * other.num, fac.items())
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFun(other.den, other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, e):
        if e < 0:
            return (RatFun.one() / self) ** (-e)
        r = RatFun.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            if e:
                b = b * b
        return r

    # -- substitution / evaluation ---------------------------------------------
    def substitute(self, mapping):
        """Simultaneous substitution {VarId: value}.

        Values may be Polynomials, rationals, or RatFuns.  The fast path
        (everything polynomial of degree <= 1, the operadic case) keeps the
        denominator factored.
        """
        polys = {}
        general = False
        for v, val in mapping.items():
            if isinstance(val, RatFun):
                general = True
                break
            p = val if isinstance(val, Polynomial) else Polynomial.const(val)
            if p.degree() > 1:
                general = True
                break
            polys[v] = p
        if general:
            return _subst_general(self, mapping)
        num = self.num.substitute(polys)
        if self._fac is not None:
            factors = []
            for f, e in self._fac:
                factors.append((f.substitute(polys), e))
            return RatFun.from_factored(num, factors)
        den = self.den.substitute(polys)
        if den.is_zero():
            raise ZeroDivisionError("substitution makes the denominator vanish")
        return RatFun(num, den)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("pole: denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def diff(self, v):
        """Partial derivative with respect to v."""
        dn = self.num.diff(v) * self.den - self.num * self.den.diff(v)
        if self._fac is not None:
            fac = [(f, 2 * e) for f, e in self._fac]
            return RatFun.from_factored(dn, fac)
        return RatFun(dn, self.den * self.den)

    def __str__(self):
        return ratfun_str(self)

    def __repr__(self):
        return "RatFun(%s)" % ratfun_str(self)


def _coerce(x):
    if isinstance(x, RatFun):
        return x
    if isinstance(x, (Polynomial, int, type(_ONE))):
        return RatFun(x)
    return NotImplemented


def _reduce(num, den):
    if num.is_zero():
        return Polynomial.zero(), Polynomial.one(), ()
    cd = den.rational_content()
    _, lc = den.leading()
    if lc < 0:
        cd = -cd
    den = den * (1 / cd)
    num = num * (1 / cd)
    mg = num.monomial_content()
    if mg:
        from .poly import mono_gcd

        mg = mono_gcd(mg, den.monomial_content())
        if mg:
            num = num.div_monomial(mg)
            den = den.div_monomial(mg)
    fac = factor_linear_forms(den)
    if fac is not None:
        kept = []
        for f, e in fac:
            if len(f.terms) == 1:
                # single-monomial factor: already coprime to num after the
                # monomial-content cancellation above
                kept.append((f, e))
                continue
            while e > 0:
                q = try_div_linear(num, f)
                if q is None:
                    break
                num = q
                e -= 1
            if e:
                kept.append((f, e))
        den = Polynomial.one()
        for f, e in kept:
            den = den * f ** e
        return num, den, tuple(kept)
    g = poly_gcd(num, den)
    if not g.is_const():
        num = poly_exact_div(num, g)
        den = poly_exact_div(den, g)
    cd = den.rational_content()
    _, lc = den.leading()
    if lc < 0:
        cd = -cd
    if cd != 1:
        den = den * (1 / cd)
        num = num * (1 / cd)
    return num, den, factor_linear_forms(den)


def _subst_general(r, mapping):
    frac = {}
    for v, val in mapping.items():
        frac[v] = val if isinstance(val, RatFun) else RatFun(
            val if isinstance(val, Polynomial) else Polynomial.const(val)
        )

    def subst_poly(p):
        total = RatFun.zero()
        cache = {}
        for m, c in p.terms.items():
            term = RatFun.const(c)
            for slot, e in mono_pairs(m):
                v = slot_var(slot)
                if v in frac:
                    key = (slot, e)
                    f = cache.get(key)
                    if f is None:
                        f = cache[key] = frac[v] ** e
                    term = term * f
                else:
                    term = term * RatFun(Polynomial.monomial([(v, e)]))
            total = total + term
        return total

    den = subst_poly(r.den)
    if den.is_zero():
        raise ZeroDivisionError("substitution makes the denominator vanish")
    return subst_poly(r.num) / den


# ---------------------------------------------------------------------------
# printing

def _needs_parens(p):
    if len(p.terms) != 1:
        return True
    ((m, c),) = p.terms.items()
    return not (c > 0 and c.denominator == 1)


def _poly_atom(p):
    from .poly import poly_str

    s = poly_str(p)
    return "(%s)" % s if _needs_parens(p) else s


def ratfun_str(r):
    from .poly import poly_str

    if r.den == Polynomial.one():
        return poly_str(r.num)
    num = r.num
    prefix = ""
    if len(num.terms) == 1:
        ((m, c),) = num.terms.items()
        if c < 0:
            prefix = "-"
            num = -num
    fac = r._fac
    if fac is None:
        den = "(%s)" % poly_str(r.den)
    else:
        pieces = []
        for f, e in fac:
            if len(f.terms) == 1:
                base = poly_str(f)
            else:
                base = "(%s)" % poly_str(f)
            pieces.append(base if e == 1 else "%s^%d" % (base, e))
        den = "*".join(pieces)
        if len(pieces) > 1:
            den = "(%s)" % den
    return "%s%s/%s" % (prefix, _poly_atom(num), den)


# ---------------------------------------------------------------------------
# residues

def residue_at_zero(r, v):
    """Coefficient of v**-1 in the Laurent expansion of r at v = 0.

    Writes r = p(v)/q(v), q = v**m * q0 with q0(0) != 0, and reads the
    coefficient of v**(m-1) in p(v) * (1/q0 truncated to order m-1).
    """
    p = r.num.coeffs_in(v)
    q = r.den.coeffs_in(v)
    m = min(q)
    if m == 0:
        return RatFun.zero()
    q0 = {e - m: c for e, c in q.items()}
    c0 = RatFun(q0[0])
    inv = [RatFun.one() / c0]
    for k in range(1, m):
        acc = RatFun.zero()
        for j in range(1, k + 1):
            qj = q0.get(j)
            if qj is not None:
                acc = acc + RatFun(qj) * inv[k - j]
        inv.append(-acc / c0)
    total = RatFun.zero()
    for a in range(0, m):
        pa = p.get(a)
        if pa is not None:
            total = total + RatFun(pa) * inv[m - 1 - a]
    return total


# ---------------------------------------------------------------------------
# weight / pole structure

def homogeneity_weight(r):
    """Weight d with r(lambda*u) = lambda**d * r(u), u-variables only.

    Returns None when numerator or denominator mixes u-degrees; the zero
    function reports weight 0.
    """
    if r.num.is_zero():
        return 0
    dn = r.num.u_homogeneous_degree()
    if dn is None:
        return None
    dd = r.den.u_homogeneous_degree()
    if dd is None:
        return None
    return dn - dd


def has_nice_poles(r, n):
    """True when the reduced denominator is a product of u_{i..j} powers
    with 1 <= i <= j <= n.  Raises if r mentions u-indices above n or x.
    """
    _check_u_scope(r, n)
    fac = r._fac
    if fac is None:
        return False
    for f, _ in fac:
        ij = factor_interval_id(f)
        if ij is None or ij[1] > n:
            return False
    return True


def clears_h_product(r, n):
    """True when H_n * r is a polynomial (denominator divides H_n)."""
    _check_u_scope(r, n)
    fac = r._fac
    if fac is None:
        return False
    for f, e in fac:
        ij = factor_interval_id(f)
        if ij is None or ij[1] > n or e > 1:
            return False
    return True


def _check_u_scope(r, n):
    for v in r.variables():
        if v.kind == "x":
            raise ValueError("x is not allowed in mould components")
        if v.kind == "u" and v.index > n:
            raise ValueError("variable %s outside u1..u%d" % (v.name, n))


# ---------------------------------------------------------------------------
# factored accumulation for large alternating sums

class FactoredFraction:
    """num / prod(f**e) with the denominator kept factored.

    Zero testing is numerator testing; merging takes factorwise lcms and
    cancels numerator factors by trial division, never a generic gcd.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den  # dict poly -> exponent

    @classmethod
    def from_ratfun(cls, r, scale=1):
        num = r.num if scale == 1 else r.num * mpq(scale)
        fac = r._fac
        if fac is None:
            return cls(num, {r.den: 1})
        return cls(num, dict(fac))

    def is_zero(self):
        return self.num.is_zero()

    def cancel(self):
        num = self.num
        if num.is_zero():
            self.den = {}
            self.num = num
            return self
        mono = num.monomial_content()
        for f in list(self.den):
            e = self.den[f]
            if len(f.terms) == 1:
                from .poly import mono_div

                (fm,) = f.terms
                while e > 0 and mono and mono_div(mono, fm) is not None:
                    num = num.div_monomial(fm)
                    mono = mono - fm
                    e -= 1
            else:
                while e > 0:
                    q = try_div_linear(num, f)
                    if q is None:
                        break
                    num = q
                    e -= 1
            if e:
                self.den[f] = e
            else:
                del self.den[f]
        self.num = num
        return self

    def merge(self, other):
        lcm = dict(self.den)
        for f, e in other.den.items():
            if lcm.get(f, 0) < e:
                lcm[f] = e
        na = self.num
        for f, e in lcm.items():
            d = e - self.den.get(f, 0)
            if d:
                na = na * f ** d
        nb = other.num
        for f, e in lcm.items():
            d = e - other.den.get(f, 0)
            if d:
                nb = nb * f ** d
        return FactoredFraction(na + nb, lcm).cancel()

    def to_ratfun(self):
        return RatFun.from_factored(self.num, self.den.items())


def sum_with_cancel(fracs):
    """Balanced pairwise summation of FactoredFractions with cancellation."""
    items = [f for f in fracs]
    if not items:
        return FactoredFraction(Polynomial.zero(), {})
    while len(items) > 1:
        nxt = []
        for k in range(0, len(items) - 1, 2):
            nxt.append(items[k].merge(items[k + 1]))
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0].cancel()


def substitute_factored(r, mapping):
    """FactoredFraction of r after substituting polynomials for variables.

    Each value must be a monomial times a polynomial of degree <= 1, so
    that images of the (linear) denominator factors still split into a
    monomial content times an irreducible linear piece.
    """
    polys = {}
    for v, val in mapping.items():
        p = val if isinstance(val, Polynomial) else Polynomial.const(val)
        if not p.is_zero() and p.div_monomial(p.monomial_content()).degree() > 1:
            raise ValueError("substitute_factored needs monomial*linear values")
        polys[v] = p
    num = r.num.substitute(polys)
    fac = r._fac if r._fac is not None else ((r.den, 1),)
    scalar = _ONE
    den = {}
    for f, e in fac:
        fs = f.substitute(polys)
        c, pieces = _split_factor(fs, e)
        scalar *= c
        for key, mult in pieces:
            den[key] = den.get(key, 0) + mult
    if scalar != 1:
        num = num * (1 / scalar)
    return FactoredFraction(num, den).cancel()
