"""Acceptance gate: ten criteria, one test and one report line each.

Every test drives the corresponding verification routines at their
default scopes, prints a single PASS/FAIL line with timing, and enforces
the runtime budget for the criterion.
"""

from gmpy2 import mpq

from mouldlab import verify
from mouldlab.gallery import cm_closed, cm_mould
from mouldlab.plants import (
    enumerate_plants,
    nc_trees,
    tamari_interval_conjecture_check,
)
from mouldlab.trees import pi, psi_tree, tree_to_text

FIG_TREE = (("L", (("L", "L"), "L")), (("L", "L"), ("L", "L")))
FIG_VALUE = (
    "1/((u1+u2+u3)*(u1+u2+u3+u4+u5+u6+u7)*u2*(u2+u3)"
    "*u5*(u5+u6+u7)*u7)"
)


def _report(number, results, budget):
    total = sum(r.seconds for r in results)
    ok = all(r.ok for r in results)
    detail = "; ".join(r.detail for r in results)
    status = "PASS" if ok and total < budget else "FAIL"
    print(
        "%s criterion %d: %s (%.2fs, budget %ds)"
        % (status, number, detail, total, budget)
    )
    for r in results:
        assert r.ok, r.line()
    assert total < budget, "criterion %d took %.2fs" % (number, total)


def test_criterion_01_operad_axioms():
    results = [verify.check_operad_axioms(), verify.check_anticyclic()]
    _report(1, results, 60)


def test_criterion_02_dendriform_relations_and_basis():
    assert str(psi_tree(FIG_TREE).value) == FIG_VALUE
    results = [verify.check_dend_relations(), verify.check_dend_basis()]
    _report(2, results, 120)


def test_criterion_03_multi_residue_criterion():
    assert pi((4, 1, 6, 3, 5, 2, 7)) == FIG_TREE
    assert pi((4, 6, 5, 1, 3, 7, 2)) == FIG_TREE
    results = [verify.check_multi_residue()]
    _report(3, results, 60)


def test_criterion_04_plant_counts_and_series():
    assert [len(enumerate_plants(n)) for n in (2, 3, 4)] == [3, 14, 80]
    assert [
        len(enumerate_plants(n, based_only=True)) for n in (2, 3, 4)
    ] == [2, 9, 51]
    results = [verify.check_plant_counts()]
    _report(4, results, 120)


def test_criterion_05_plant_operad_structure():
    results = [verify.check_plant_operad()]
    _report(5, results, 180)


def test_criterion_06_symmetries_and_derivation():
    results = [
        verify.check_derivation(),
        verify.check_alternality_preservation(),
        verify.check_vegetality_preservation(),
    ]
    _report(6, results, 120)


def test_criterion_07_forgetful_series():
    results = [verify.check_forgetful()]
    _report(7, results, 60)


def test_criterion_08_closed_forms():
    assert cm_closed(2, corrected=False) != cm_mould(2)
    assert cm_closed(2) == cm_mould(2)
    results = [verify.check_gallery()]
    _report(8, results, 60)


def test_criterion_09_interval_support_report():
    results = [verify.check_tamari_conjecture()]
    for n in range(1, 5):
        ok, rows = tamari_interval_conjecture_check(n)
        assert ok and len(rows) == len(nc_trees(n))
        print(
            "degree %d: %d non-crossing trees, 0/1 coefficients, "
            "interval supports" % (n, len(rows))
        )
        if n <= 2:
            for row in rows:
                print(
                    "  %s support=%d" % (row["plant"], row["support_size"])
                )
    _report(9, results, 120)


def test_criterion_10_mixed_generator_relations():
    results = [verify.check_tridend()]
    _report(10, results, 30)
