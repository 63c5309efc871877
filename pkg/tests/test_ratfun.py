import random

from gmpy2 import mpq

from mouldlab.core.poly import Polynomial, T, U
from mouldlab.core.ratfun import (
    FactoredFraction,
    RatFun,
    h_product,
    has_nice_poles,
    homogeneity_weight,
    interval_form,
    residue_at_zero,
    substitute_factored,
    sum_with_cancel,
)


def u(i):
    return Polynomial.var(U(i))


def frac(num, den):
    return RatFun(num, den)


def test_interval_form():
    assert interval_form(2, 2) == u(2)
    assert interval_form(1, 3) == u(1) + u(2) + u(3)
    assert h_product(2) == u(1) * u(2) * (u(1) + u(2))


def test_reduction_to_canonical_form():
    a = frac((u(1) + u(2)) * u(1), (u(1) + u(2)) * u(2))
    assert a == frac(u(1), u(2))
    # denominator sign is normalized, the numerator carries the sign
    b = frac(u(1), -u(2))
    assert b == frac(-u(1), u(2))
    assert str(b) == "-u1/u2"


def test_arithmetic():
    left = frac(Polynomial.one(), u(1) * (u(1) + u(2)))
    right = frac(Polynomial.one(), (u(1) + u(2)) * u(2))
    assert left + right == frac(Polynomial.one(), u(1) * u(2))
    assert left - left == RatFun.zero()
    assert left * (u(1) + u(2)) == frac(Polynomial.one(), u(1))
    assert RatFun.one() / left == RatFun(u(1) * (u(1) + u(2)))
    assert (left / right) == frac(u(2), u(1))


def test_pow_and_equivalent():
    a = frac(u(1), u(2))
    assert a ** 2 == frac(u(1) ** 2, u(2) ** 2)
    assert a ** -1 == frac(u(2), u(1))
    assert a.equivalent(frac(u(1) * u(3), u(2) * u(3)))


def test_substitute_and_evaluate():
    a = frac(Polynomial.one(), u(1) * (u(1) + u(2)))
    b = a.substitute({U(1): u(2), U(2): u(1)})
    assert b == frac(Polynomial.one(), u(2) * (u(1) + u(2)))
    assert a.evaluate({U(1): mpq(1), U(2): mpq(2)}) == mpq(1, 3)


def test_residue_at_zero():
    # simple pole: res_{u1=0} 1/(u1*(u1+u2)) = 1/u2
    a = frac(Polynomial.one(), u(1) * (u(1) + u(2)))
    assert residue_at_zero(a, U(1)) == frac(Polynomial.one(), u(2))
    # no pole: residue vanishes
    b = frac(Polynomial.one(), u(1) + u(2))
    assert residue_at_zero(b, U(1)).is_zero()
    # double pole needs the derivative of the regular part
    c = frac(Polynomial.one(), u(1) ** 2 * (u(1) + u(2)))
    assert residue_at_zero(c, U(1)) == frac(Polynomial.const(-1), u(2) ** 2)


def test_homogeneity_weight():
    a = frac(Polynomial.one(), u(1) * u(2))
    assert homogeneity_weight(a) == -2
    b = frac(u(1), u(2))
    assert homogeneity_weight(b) == 0
    c = frac(u(1) + Polynomial.one(), u(2))
    assert homogeneity_weight(c) is None


def test_nice_poles():
    assert has_nice_poles(frac(Polynomial.one(), u(1) * (u(1) + u(2))), 2)
    assert has_nice_poles(frac(Polynomial.one(), (u(1) + u(2)) ** 2), 2)
    # u1+u3 skips u2, so it is not an interval form
    assert not has_nice_poles(frac(Polynomial.one(), u(1) + u(3)), 3)
    # numerators are unconstrained
    assert has_nice_poles(frac(u(1) + u(3), u(2)), 3)


def test_from_factored():
    a = RatFun.from_factored(Polynomial.one(), [(interval_form(1, 2), 1), (u(2), 1)])
    assert a == frac(Polynomial.one(), (u(1) + u(2)) * u(2))
    b = RatFun.from_factored(u(2), [(u(2), 1), (u(1), 1)])
    assert b == frac(Polynomial.one(), u(1))


def test_sum_with_cancel_matches_plain_sum():
    rng = random.Random(3)
    forms = [u(1), u(2), u(3), interval_form(1, 2), interval_form(2, 3), interval_form(1, 3)]
    for _ in range(20):
        fracs = []
        plain = RatFun.zero()
        for _ in range(rng.randint(2, 5)):
            den = [(rng.choice(forms), 1) for _ in range(rng.randint(1, 3))]
            scale = mpq(rng.randint(-3, 3))
            r = RatFun.from_factored(Polynomial.const(scale), den)
            fracs.append(FactoredFraction.from_ratfun(r))
            plain = plain + r
        assert sum_with_cancel(fracs).to_ratfun() == plain


def test_substitute_factored():
    a = RatFun.from_factored(
        Polynomial.one(), [(u(1), 1), (interval_form(1, 2), 1)]
    )
    sub = {U(1): u(2), U(2): u(1)}
    assert substitute_factored(a, sub).to_ratfun() == a.substitute(sub)


def test_t_variable_supported():
    a = frac(Polynomial.var(T) * u(2) + u(1), u(1) * u(2))
    assert homogeneity_weight(a) == -1
    val = a.substitute({T: Polynomial.const(1)})
    assert val == frac(u(1) + u(2), u(1) * u(2))
