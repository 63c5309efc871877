"""Truncated univariate power series over exact rationals.

A PowerSeries holds coefficients c0..c_order of sum c_k x^k + O(x^(order+1)).
All operations are exact and never read beyond the truncation order.
"""

from gmpy2 import mpq

_ZERO = mpq(0)


class PowerSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order=None):
        coeffs = [mpq(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(coeffs) < order + 1:
            coeffs = coeffs + [_ZERO] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs[: order + 1])

    @classmethod
    def zero(cls, order):
        return cls([], order)

    @classmethod
    def one(cls, order):
        return cls([1], order)

    @classmethod
    def x(cls, order):
        return cls([0, 1], order)

    def __getitem__(self, k):
        if k < 0:
            raise IndexError(k)
        if k > self.order:
            raise IndexError("coefficient %d beyond truncation order %d" % (k, self.order))
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return PowerSeries(self.coeffs[: order + 1], order)

    def _common(self, other):
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            return self.truncate(n), other.truncate(n)
        return self, PowerSeries([other], self.order)

    def __add__(self, other):
        a, b = self._common(other)
        return PowerSeries([x + y for x, y in zip(a.coeffs, b.coeffs)], a.order)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        a, b = self._common(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = mpq(other)
            return PowerSeries([x * c for x in self.coeffs], self.order)
        a, b = self._common(other)
        n = a.order
        out = [_ZERO] * (n + 1)
        for i, ca in enumerate(a.coeffs):
            if not ca:
                continue
            for j in range(0, n - i + 1):
                cb = b.coeffs[j]
                if cb:
                    out[i + j] += ca * cb
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def invert(self):
        """Multiplicative inverse; requires a unit constant term."""
        if not self.coeffs[0]:
            raise ValueError("cannot invert a series with zero constant term")
        n = self.order
        inv = [1 / self.coeffs[0]]
        for k in range(1, n + 1):
            s = _ZERO
            for j in range(1, k + 1):
                if j < len(self.coeffs) and self.coeffs[j]:
                    s += self.coeffs[j] * inv[k - j]
            inv.append(-s / self.coeffs[0])
        return PowerSeries(inv, n)

    def __truediv__(self, other):
        if not isinstance(other, PowerSeries):
            c = mpq(other)
            return PowerSeries([x / c for x in self.coeffs], self.order)
        a, b = self._common(other)
        return a * b.invert()

    def compose(self, inner):
        """self(inner(x)); inner must have zero constant term."""
        a, b = self._common(inner)
        if b.coeffs[0]:
            raise ValueError("composition needs zero constant term")
        n = a.order
        result = PowerSeries([a.coeffs[n]], n)
        for k in range(n - 1, -1, -1):
            result = result * b + PowerSeries([a.coeffs[k]], n)
        return result

    def differentiate(self):
        n = self.order
        out = [self.coeffs[k] * k for k in range(1, n + 1)]
        return PowerSeries(out, max(n - 1, 0))

    def integrate(self):
        out = [_ZERO] + [self.coeffs[k] / (k + 1) for k in range(self.order + 1)]
        return PowerSeries(out, self.order + 1)

    def log(self):
        """log(self) for unit constant term, truncated at the same order."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        # log f = integral of f'/f
        return (self.differentiate() / self.truncate(max(self.order - 1, 0))).integrate().truncate(
            self.order
        )

    def pow_int(self, e):
        r = PowerSeries.one(self.order)
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            if e:
                b = b * b
        return r

    def is_zero(self):
        return all(not c for c in self.coeffs)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "x" if k == 1 else "x^%d" % k
                if c == 1:
                    term = mono
                elif c == -1:
                    term = "-" + mono
                else:
                    term = "%s*%s" % (c, mono)
                parts.append(term)
        body = "0" if not parts else parts[0]
        for p in parts[1:]:
            body += p if p.startswith("-") else "+" + p
        return "%s+O(x^%d)" % (body, self.order + 1)

    def __repr__(self):
        return "PowerSeries(%s)" % self


def geometric(order):
    """1/(1-x)."""
    return PowerSeries([1] * (order + 1), order)


def binomial_power(alpha, order):
    """(1-x)**(-alpha) for rational alpha: c_n = c_{n-1} * (alpha + n - 1)/n."""
    alpha = mpq(alpha)
    coeffs = [mpq(1)]
    for n in range(1, order + 1):
        coeffs.append(coeffs[-1] * (alpha + n - 1) / n)
    return PowerSeries(coeffs, order)


def log_one_minus(a, order):
    """log(1 - a*x) = -sum (a*x)^k / k."""
    a = mpq(a)
    coeffs = [mpq(0)]
    for k in range(1, order + 1):
        coeffs.append(-(a ** k) / k)
    return PowerSeries(coeffs, order)
