import math

import pytest

from gmpy2 import mpq

from mouldlab.gallery import (
    GALLERY_NAMES,
    as_mould,
    cm_closed,
    cm_mould,
    named_mould,
    po_mould,
    po_recursion,
    pq_sum,
    ty_mould,
    weighted_mould,
)
from mouldlab.operad import forgetful, is_alternal, unit, zero_component
from mouldlab.trees import sum_psi_trees


def test_all_trees_sum_family():
    assert as_mould(1) == unit()
    assert str(as_mould(2).value) == "1/(u1*u2)"
    assert str(as_mould(3).value) == "1/(u1*u2*u3)"
    for n in range(1, 5):
        assert as_mould(n).value == sum_psi_trees(n)


def test_root_split_family():
    assert str(pq_sum(1, 1).value) == "1/((u1+u2)*u2)"
    assert str(pq_sum(2, 0).value) == "1/(u1*(u1+u2))"
    assert str(pq_sum(2, 1).value) == "1/(u1*(u1+u2+u3)*u3)"
    with pytest.raises(ValueError):
        pq_sum(0, 2)
    # grouping trees by the root split partitions the full sum
    for n in range(2, 5):
        total = zero_component(n)
        for p in range(1, n + 1):
            total = total + pq_sum(p, n - p)
        assert total == as_mould(n)


def test_geometric_weight_family():
    assert ty_mould(1) == unit()
    assert str(ty_mould(3).value) == "(u3*t^2+u2*t+u1)/(u1*(u1+u2+u3)*u2*u3)"
    assert str(ty_mould(3, mpq(2)).value) == (
        "(u1+2*u2+4*u3)/(u1*(u1+u2+u3)*u2*u3)"
    )
    for n in range(1, 4):
        assert ty_mould(n, mpq(1)) == as_mould(n)
    series = forgetful(named_mould("ty", 6, t=mpq(2)))
    assert [series[n] for n in range(1, 7)] == [
        mpq(2**n - 1, n) for n in range(1, 7)
    ]


def test_linear_weight_family():
    assert str(weighted_mould(2).value) == "(u1+2*u2)/(u1*(u1+u2)*u2)"
    series = forgetful(named_mould("weighted", 6))
    assert [series[n] for n in range(1, 7)] == [
        mpq(n + 1, 2) for n in range(1, 7)
    ]


def test_corner_mould():
    assert cm_mould(1) == unit()
    assert str(cm_mould(2).value) == "(-u1+u2)/(u1*(u1+u2)*u2)"
    assert str(cm_mould(3).value) == "(u1-2*u2+u3)/(u1*(u1+u2+u3)*u2*u3)"
    for n in range(1, 7):
        assert cm_mould(n) == cm_closed(n)
    # dropping the corrective term breaks the closed form already at n = 2
    assert cm_closed(2, corrected=False) != cm_mould(2)
    assert str(cm_closed(2, corrected=False).value) == (
        "(-2*u1+u2)/(u1*(u1+u2)*u2)"
    )
    for n in range(2, 5):
        assert is_alternal(cm_mould(n))


def test_ordered_product_mould():
    assert po_mould(1) == unit()
    assert str(po_mould(2).value) == "(u2*t+u1)/(u1*(u1+u2)*u2)"
    for n in range(1, 5):
        assert po_mould(n, mpq(1)) == as_mould(n)
        assert po_recursion(n) == po_mould(n)
        assert po_recursion(n, mpq(3)) == po_mould(n, mpq(3))
    series = forgetful(named_mould("po", 6, t=mpq(3)))
    for n in range(1, 7):
        numer = mpq(1)
        for j in range(1, n):
            numer *= 3 + j
        assert series[n] == numer / math.factorial(n)


def test_named_mould_bundles():
    assert GALLERY_NAMES == ("as", "pq", "ty", "weighted", "cm", "po")
    m = named_mould("as", 3)
    assert m.order == 3
    assert str(m.component(2).value) == "1/(u1*u2)"
    pq = named_mould("pq", 4, p=2, q=1)
    assert pq.component(3) == pq_sum(2, 1)
    assert pq.component(2).is_zero() and pq.component(4).is_zero()
    with pytest.raises(ValueError):
        named_mould("pq", 4)
    with pytest.raises(ValueError):
        named_mould("nope", 3)
