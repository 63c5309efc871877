import random

import pytest

from gmpy2 import mpq

from mouldlab.core.expr import ExprError, parse
from mouldlab.core.poly import Polynomial, T, U
from mouldlab.core.ratfun import RatFun, interval_form


def u(i):
    return Polynomial.var(U(i))


def test_atoms():
    assert parse("u1") == RatFun(u(1))
    assert parse("t") == RatFun(Polynomial.var(T))
    assert parse("3/2") == RatFun.const(mpq(3, 2))
    assert parse("-5") == RatFun.const(-5)


def test_precedence():
    assert parse("1/(u1*(u1+u2))") == RatFun(
        Polynomial.one(), u(1) * (u(1) + u(2))
    )
    assert parse("u1+u2*u3") == RatFun(u(1) + u(2) * u(3))
    assert parse("(u1+u2)*u3") == RatFun((u(1) + u(2)) * u(3))
    assert parse("u1^2/u2") == RatFun(u(1) ** 2, u(2))
    assert parse("-u1^2") == RatFun(-(u(1) ** 2))
    assert parse("2*u1/u2/u3") == RatFun(2 * u(1), u(2) * u(3))


def test_whitespace_insensitive():
    assert parse(" 1 / ( u1 * ( u1 + u2 ) ) ") == parse("1/(u1*(u1+u2))")


def test_error_reports_position():
    with pytest.raises(ExprError) as err:
        parse("1/(u1")
    assert err.value.pos == 5
    with pytest.raises(ExprError):
        parse("u1 +")
    with pytest.raises(ExprError):
        parse("u0")
    with pytest.raises(ExprError):
        parse("2 ** u1")


def test_division_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        parse("1/(u1-u1)")


def test_print_parse_roundtrip_random():
    rng = random.Random(11)
    forms = [u(1), u(2), u(3), interval_form(1, 2), interval_form(1, 3)]
    for _ in range(40):
        num = Polynomial.zero()
        for _ in range(rng.randint(1, 3)):
            num = num + rng.choice(forms) * mpq(rng.randint(-4, 4), rng.randint(1, 4))
        den = rng.choice(forms) * rng.choice(forms)
        f = RatFun(num, den)
        assert parse(str(f)) == f
