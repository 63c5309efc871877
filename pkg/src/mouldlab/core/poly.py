"""Sparse multivariate polynomials with exact rational coefficients.

Variables are u1..u99 plus two distinguished symbols: the parameter t and the
series variable x.  A monomial is packed into a single Python int, 16 bits
per variable slot (u_i at slot i, t at slot 100, x at slot 101), so that
multiplying monomials is integer addition and monomial dictionaries hash
fast.  The term order used wherever an order matters (leading terms,
printing) is graded lexicographic with u1 > u2 > ... > u99 > t > x.
"""

from dataclasses import dataclass

from gmpy2 import mpq

MAX_U = 99
SLOT_T = 100
SLOT_X = 101
NSLOTS = 102
SLOT_BITS = 16
SLOT_MASK = (1 << SLOT_BITS) - 1
EXP_CAP = 1 << 15  # borrow detection in mono_div relies on this bound
POW_CAP = 4096


@dataclass(frozen=True)
class VarId:
    """A variable: kind "u" with a 1-based index, or the symbols "t" / "x"."""

    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind == "u":
            if not 1 <= self.index <= MAX_U:
                raise ValueError("u-index out of range: %r" % (self.index,))
        elif self.kind in ("t", "x"):
            if self.index != 0:
                raise ValueError("t/x carry no index")
        else:
            raise ValueError("unknown variable kind %r" % (self.kind,))

    @property
    def slot(self):
        if self.kind == "u":
            return self.index
        return SLOT_T if self.kind == "t" else SLOT_X

    @property
    def name(self):
        if self.kind == "u":
            return "u%d" % self.index
        return self.kind

    @classmethod
    def from_name(cls, name):
        if name == "t":
            return cls("t")
        if name == "x":
            return cls("x")
        if name.startswith("u") and name[1:].isdigit():
            return cls("u", int(name[1:]))
        raise ValueError("not a variable name: %r" % (name,))

    def __repr__(self):
        return "VarId(%s)" % self.name


def U(i):
    return VarId("u", i)


T = VarId("t")
X = VarId("x")

_SLOT_NAMES = {SLOT_T: "t", SLOT_X: "x"}


def slot_name(slot):
    return _SLOT_NAMES.get(slot) or "u%d" % slot


def slot_var(slot):
    if slot == SLOT_T:
        return T
    if slot == SLOT_X:
        return X
    return VarId("u", slot)


# ---------------------------------------------------------------------------
# packed monomial helpers (monomials are plain ints)

def mono_pairs(m):
    """Decode a packed monomial into [(slot, exponent), ...], slots ascending."""
    out = []
    s = 0
    while m:
        e = m & SLOT_MASK
        if e:
            out.append((s, e))
        m >>= SLOT_BITS
        s += 1
    return out


def mono_from_pairs(pairs):
    m = 0
    for slot, e in pairs:
        if e < 0 or e >= EXP_CAP:
            raise ValueError("exponent out of range: %r" % (e,))
        if e:
            m += e << (SLOT_BITS * slot)
    return m


def mono_degree(m):
    d = 0
    while m:
        d += m & SLOT_MASK
        m >>= SLOT_BITS
    return d


def mono_u_degree(m):
    """Total degree counting only u-variables (t and x weightless)."""
    d = 0
    s = 0
    while m:
        if s < SLOT_T:
            d += m & SLOT_MASK
        m >>= SLOT_BITS
        s += 1
    return d


def mono_div(a, b):
    """a / b as packed monomials, or None when not divisible."""
    c = a - b
    if c < 0:
        return None
    m = c
    while m:
        if (m & SLOT_MASK) >= EXP_CAP:
            return None
        m >>= SLOT_BITS
    return c


def mono_gcd(a, b):
    g = 0
    s = 0
    while a and b:
        e = min(a & SLOT_MASK, b & SLOT_MASK)
        if e:
            g += e << (SLOT_BITS * s)
        a >>= SLOT_BITS
        b >>= SLOT_BITS
        s += 1
    return g


def mono_key(m):
    """Graded-lex sort key: degree first, then u1 > u2 > ... > t > x."""
    exps = [0] * NSLOTS
    d = 0
    for slot, e in mono_pairs(m):
        exps[slot] = e
        d += e
    return (d, tuple(exps[1:]))


def mono_str(m):
    parts = []
    for slot, e in mono_pairs(m):
        parts.append(slot_name(slot) if e == 1 else "%s^%d" % (slot_name(slot), e))
    return "*".join(parts)


_ZERO = mpq(0)
_ONE = mpq(1)


class Polynomial:
    """Immutable sparse polynomial: dict packed-monomial -> nonzero mpq."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = mpq(c)
                if c:
                    clean[m] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls._raw({0: _ONE})

    @classmethod
    def const(cls, c):
        c = mpq(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, v):
        return cls._raw({mono_from_pairs([(v.slot, 1)]): _ONE})

    @classmethod
    def monomial(cls, pairs, coeff=1):
        c = mpq(coeff)
        if not c:
            return cls.zero()
        return cls._raw({mono_from_pairs([(v.slot, e) for v, e in pairs]): c})

    # -- basics -------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def const_value(self):
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return self.terms.get(0, _ZERO)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, type(_ONE))):
            return self.terms == Polynomial.const(other).terms
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __len__(self):
        return len(self.terms)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for m, c in b.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial.const(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = mpq(other)
            if not c:
                return Polynomial.zero()
            if c == 1:
                return self
            return Polynomial._raw({m: cc * c for m, cc in self.terms.items()})
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial.zero()
        if len(a) < len(b):
            a, b = b, a
        out = {}
        for mb, cb in b.items():
            if mb == 0:
                for ma, ca in a.items():
                    s = out.get(ma)
                    v = ca * cb
                    if s is None:
                        out[ma] = v
                    else:
                        s = s + v
                        if s:
                            out[ma] = s
                        else:
                            del out[ma]
            else:
                for ma, ca in a.items():
                    m = ma + mb
                    s = out.get(m)
                    v = ca * cb
                    if s is None:
                        out[m] = v
                    else:
                        s = s + v
                        if s:
                            out[m] = s
                        else:
                            del out[m]
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0 or e > POW_CAP:
            raise ValueError("polynomial exponent out of range: %r" % (e,))
        result = Polynomial.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, mono, coeff=1):
        c = mpq(coeff)
        if not c:
            return Polynomial.zero()
        return Polynomial._raw({m + mono: cc * c for m, cc in self.terms.items()})

    def div_monomial(self, mono):
        """Exact division by a packed monomial; raises if not divisible."""
        if mono == 0:
            return self
        out = {}
        for m, c in self.terms.items():
            q = mono_div(m, mono)
            if q is None:
                raise ValueError("monomial does not divide polynomial")
            out[q] = c
        return Polynomial._raw(out)

    # -- structure ----------------------------------------------------------
    def degree(self):
        """Total degree over all variables; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def u_homogeneous_degree(self):
        """Common u-degree of all terms, or None if mixed / zero."""
        it = iter(self.terms)
        try:
            d = mono_u_degree(next(it))
        except StopIteration:
            return None
        for m in it:
            if mono_u_degree(m) != d:
                return None
        return d

    def variables(self):
        slots = set()
        for m in self.terms:
            for slot, _ in mono_pairs(m):
                slots.add(slot)
        return {slot_var(s) for s in slots}

    def var_slots(self):
        slots = set()
        for m in self.terms:
            for slot, _ in mono_pairs(m):
                slots.add(slot)
        return slots

    def max_u_index(self):
        best = 0
        for m in self.terms:
            for slot, _ in mono_pairs(m):
                if slot < SLOT_T and slot > best:
                    best = slot
        return best

    def degree_in(self, v):
        slot = v.slot
        best = 0
        for m in self.terms:
            e = (m >> (SLOT_BITS * slot)) & SLOT_MASK
            if e > best:
                best = e
        return best

    def coeff(self, mono):
        return self.terms.get(mono, _ZERO)

    def leading(self):
        """(monomial, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=mono_key)
        return m, self.terms[m]

    def rational_content(self):
        """Positive rational c with self/c integral and primitive (zero -> 1)."""
        if not self.terms:
            return _ONE
        from gmpy2 import gcd, lcm
        gn = 0
        dl = 1
        for c in self.terms.values():
            gn = gcd(gn, c.numerator)
            dl = lcm(dl, c.denominator)
        return mpq(gn, dl)

    def monomial_content(self):
        it = iter(self.terms)
        try:
            g = next(it)
        except StopIteration:
            return 0
        for m in it:
            g = mono_gcd(g, m)
            if g == 0:
                break
        return g

    def coeffs_in(self, v):
        """Split into {exponent of v: Polynomial in the other variables}."""
        slot = v.slot
        shift = SLOT_BITS * slot
        clear = ~(SLOT_MASK << shift)
        out = {}
        for m, c in self.terms.items():
            e = (m >> shift) & SLOT_MASK
            rest = m & clear
            d = out.get(e)
            if d is None:
                d = out[e] = {}
            d[rest] = c
        return {e: Polynomial._raw(d) for e, d in out.items()}

    @staticmethod
    def from_coeffs_in(v, coeffs):
        shift = SLOT_BITS * v.slot
        out = {}
        for e, p in coeffs.items():
            if e >= EXP_CAP:
                raise ValueError("exponent out of range")
            for m, c in p.terms.items():
                out[m + (e << shift)] = c
        return Polynomial._raw(out)

    def diff(self, v):
        """Partial derivative with respect to v."""
        shift = SLOT_BITS * v.slot
        out = {}
        for m, c in self.terms.items():
            e = (m >> shift) & SLOT_MASK
            if e:
                out[m - (1 << shift)] = c * e
        return Polynomial._raw(out)

    # -- evaluation / substitution ------------------------------------------
    def evaluate(self, point):
        """Evaluate at {VarId: rational}; every present variable must be set."""
        vals = {v.slot: mpq(q) for v, q in point.items()}
        total = _ZERO
        for m, c in self.terms.items():
            term = c
            for slot, e in mono_pairs(m):
                if slot not in vals:
                    raise ValueError("unassigned variable %s" % slot_name(slot))
                term = term * vals[slot] ** e
            total += term
        return total

    def substitute(self, mapping):
        """Simultaneous substitution {VarId: Polynomial or rational}."""
        subs = {}
        for v, val in mapping.items():
            subs[v.slot] = val if isinstance(val, Polynomial) else Polynomial.const(val)
        if not subs:
            return self
        out = Polynomial.zero()
        cache = {}
        for m, c in self.terms.items():
            keep = 0
            factor = None
            for slot, e in mono_pairs(m):
                if slot in subs:
                    key = (slot, e)
                    p = cache.get(key)
                    if p is None:
                        p = cache[key] = subs[slot] ** e
                    factor = p if factor is None else factor * p
                else:
                    keep += e << (SLOT_BITS * slot)
            if factor is None:
                out = out + Polynomial._raw({keep: c})
            else:
                out = out + factor.mul_monomial(keep, c)
        return out

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return "Polynomial(%s)" % poly_str(self)


def poly_str(p):
    """Canonical rendering: graded-lex descending terms, no spaces."""
    if not p.terms:
        return "0"
    items = sorted(p.terms.items(), key=lambda mc: mono_key(mc[0]), reverse=True)
    pieces = []
    for m, c in items:
        neg = c < 0
        a = -c if neg else c
        ms = mono_str(m)
        if not ms:
            body = str(a)
        elif a == 1:
            body = ms
        else:
            body = "%s*%s" % (a, ms)
        if not pieces:
            pieces.append("-" + body if neg else body)
        else:
            pieces.append(("-" if neg else "+") + body)
    return "".join(pieces)


# ---------------------------------------------------------------------------
# division

def try_div_linear(a, form):
    """Exact quotient a/form for `form` linear in some variable with constant
    coefficient (covers every u_{i..j} and similar linear forms); None if the
    division is not exact.  Runs in time linear in the size of `a`.
    """
    if a.is_zero():
        return a
    pivot = None
    for slot, e in sorted(
        (pr for m in form.terms for pr in mono_pairs(m)), key=lambda se: se[0]
    ):
        if e != 1:
            continue
        v = slot_var(slot)
        cf = form.coeffs_in(v)
        if cf.get(1) is not None and cf[1].is_const() and max(cf) == 1:
            pivot = v
            c = cf[1].const_value()
            rest = cf.get(0, Polynomial.zero())
            break
    if pivot is None:
        return poly_exact_div(a, form)
    b = a.coeffs_in(pivot)
    d = max(b)
    if d == 0:
        return None
    quot = {}
    for k in range(d, 0, -1):
        top = b.pop(k, None)
        if top is None or top.is_zero():
            continue
        q = top * (1 / c)
        quot[k - 1] = q
        low = b.get(k - 1, Polynomial.zero()) - rest * q
        b[k - 1] = low
    rem = b.get(0, Polynomial.zero())
    if not rem.is_zero():
        return None
    return Polynomial.from_coeffs_in(pivot, quot)


def poly_exact_div(a, b):
    """Generic exact multivariate division; None when b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return a
    lm, lc = b.leading()
    out = {}
    rem = a
    while rem.terms:
        m, c = rem.leading()
        q = mono_div(m, lm)
        if q is None:
            return None
        qc = c / lc
        out[q] = qc
        rem = rem - b.mul_monomial(q, qc)
    return Polynomial._raw(out)


def _pseudo_rem(a, b, v):
    """Pseudo-remainder of a by b with respect to variable v."""
    ca = a.coeffs_in(v)
    cb = b.coeffs_in(v)
    da, db = max(ca), max(cb)
    lb = cb[db]
    r = a
    while True:
        if r.is_zero():
            return r
        cr = r.coeffs_in(v)
        dr = max(cr)
        if dr < db:
            return r
        lead = cr[dr]
        shift = Polynomial.monomial([(v, dr - db)])
        r = r * lb - b * (lead * shift)


def _poly_content_wrt(a, v):
    g = Polynomial.zero()
    for p in a.coeffs_in(v).values():
        g = poly_gcd(g, p)
        if g.is_const() and not g.is_zero():
            break
    return g


def _normalize_gcd(g):
    if g.is_zero():
        return g
    c = g.rational_content()
    _, lc = g.leading()
    if lc < 0:
        c = -c
    return g * (1 / c)


def poly_gcd(a, b):
    """GCD over Q, primitive with positive leading coefficient.

    Primitive pseudo-remainder sequence; used only as the reduction fallback
    for denominators that are not products of the standard linear forms, and
    in tests.
    """
    if a.is_zero():
        return _normalize_gcd(b)
    if b.is_zero():
        return _normalize_gcd(a)
    slots = a.var_slots() | b.var_slots()
    if not slots:
        return Polynomial.one()
    v = slot_var(max(slots))
    if v.slot not in a.var_slots() or v.slot not in b.var_slots():
        # v appears in only one: gcd divides the content of that one
        inner, other = (a, b) if v.slot in a.var_slots() else (b, a)
        return poly_gcd(_poly_content_wrt(inner, v), other)
    ca = _poly_content_wrt(a, v)
    cb = _poly_content_wrt(b, v)
    pa = poly_exact_div(a, ca)
    pb = poly_exact_div(b, cb)
    cont = poly_gcd(ca, cb)
    if max(pa.coeffs_in(v)) < max(pb.coeffs_in(v)):
        pa, pb = pb, pa
    while True:
        r = _pseudo_rem(pa, pb, v)
        if r.is_zero():
            break
        if v.slot not in r.var_slots():
            return _normalize_gcd(cont)
        pa, pb = pb, poly_exact_div(r, _poly_content_wrt(r, v))
    return _normalize_gcd(cont * poly_exact_div(pb, _poly_content_wrt(pb, v)))
