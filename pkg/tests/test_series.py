from gmpy2 import mpq

from mouldlab.core.series import (
    PowerSeries,
    binomial_power,
    geometric,
    log_one_minus,
)


def test_constructors_and_indexing():
    x = PowerSeries.x(5)
    assert x[1] == 1 and x[0] == 0 and x[5] == 0
    assert PowerSeries.one(3)[0] == 1
    assert PowerSeries.zero(3).is_zero()
    s = PowerSeries([1, 2, 3], 2)
    assert (s[0], s[1], s[2]) == (1, 2, 3)


def test_arithmetic():
    x = PowerSeries.x(6)
    one = PowerSeries.one(6)
    assert (one - x) * geometric(6) == one
    assert (x + x) == 2 * x
    s = x / (one - x)
    assert [s[k] for k in range(4)] == [0, 1, 1, 1]


def test_invert_and_divide():
    one = PowerSeries.one(8)
    x = PowerSeries.x(8)
    inv = (one - x).invert()
    assert inv == geometric(8)
    assert (x * x + x) / (one + x) == x


def test_compose():
    x = PowerSeries.x(6)
    one = PowerSeries.one(6)
    f = x / (one - x)
    # f is its own inverse under composition with x/(1+x)
    g = x / (one + x)
    assert f.compose(g) == x
    assert g.compose(f) == x


def test_differentiate_integrate():
    x = PowerSeries.x(5)
    s = geometric(5)
    assert s.differentiate() == geometric(4) * geometric(4)
    assert s.differentiate().integrate() + PowerSeries.one(5) == s


def test_log():
    s = geometric(7)
    assert s.log() == -log_one_minus(1, 7)
    assert log_one_minus(2, 4)[3] == mpq(-8, 3)


def test_binomial_power():
    # (1-x)^-2 = sum (n+1) x^n
    s = binomial_power(2, 6)
    assert [s[k] for k in range(7)] == [1, 2, 3, 4, 5, 6, 7]
    half = binomial_power(mpq(1, 2), 3)
    assert half[1] == mpq(1, 2)
    assert half[2] == mpq(3, 8)
    assert binomial_power(3, 5).pow_int(0) == PowerSeries.one(5)


def test_pow_int():
    x = PowerSeries.x(6)
    one = PowerSeries.one(6)
    assert (one + x).pow_int(3) == one + 3 * x + 3 * x * x + x * x * x


def test_str():
    x = PowerSeries.x(3)
    assert str(x) == "x+O(x^4)"
    assert str(PowerSeries.zero(2)) == "0+O(x^3)"
