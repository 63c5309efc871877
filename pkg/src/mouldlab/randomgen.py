"""Seeded generators of structured inputs for the property checks.

Everything takes an explicit random.Random so runs are reproducible from a
single integer seed.  The pools below are deterministic by construction and
come with the structural property the consuming check needs (tree image,
alternal, vegetal, admissible for the series map).
"""

import random

from gmpy2 import mpq

from .operad import (
    MouldComponent,
    Mould,
    arrow,
    ari,
    mu,
    prec,
    succ,
    unit,
)
from .trees import binary_trees, psi_tree


def make_rng(seed):
    return random.Random(seed)


def random_rational(rng, bound=3):
    """A nonzero rational with small numerator and denominator."""
    num = rng.choice([k for k in range(-bound, bound + 1) if k != 0])
    return mpq(num, rng.randint(1, bound))


def random_binary_tree(rng, n):
    return rng.choice(binary_trees(n))


def random_tree_component(rng, n):
    """The image of a uniformly chosen degree-n binary tree."""
    return psi_tree(random_binary_tree(rng, n))


def random_tree_span(rng, n, terms=2):
    """A small rational combination of tree images of degree n."""
    trees = binary_trees(n)
    total = None
    for t in rng.sample(trees, min(terms, len(trees))):
        piece = psi_tree(t).scale(random_rational(rng))
        total = piece if total is None else total + piece
    return total


def random_point(rng, n, bound=9):
    """A positive rational point, safe for interval-form denominators."""
    from .core.poly import U

    return {
        U(j): mpq(rng.randint(1, bound), rng.randint(1, bound))
        for j in range(1, n + 1)
    }


def alternal_pool(max_degree):
    """Alternal components indexed by degree, built from the unit by the
    closure operations (each consumer re-checks alternality before use)."""
    pool = {1: [unit()]}
    if max_degree >= 2:
        pool[2] = [arrow(unit(), unit())]
    if max_degree >= 3:
        pool[3] = [arrow(pool[2][0], unit()), ari(unit(), pool[2][0])]
    if max_degree >= 4:
        pool[4] = [
            arrow(pool[3][0], unit()),
            arrow(pool[2][0], pool[2][0]),
            ari(pool[3][1], unit()),
        ]
    for n in range(5, max_degree + 1):
        pool[n] = [
            arrow(pool[n - 1][0], unit()),
            ari(pool[n - 2][0], pool[2][0]),
        ]
    return pool


def vegetal_pool(max_degree):
    """Vegetal components indexed by degree: words in the half-products and
    mu on the unit (each consumer re-checks vegetality before use)."""
    pool = {1: [unit()]}
    if max_degree >= 2:
        pool[2] = [succ(unit(), unit()), prec(unit(), unit()), mu(unit(), unit())]
    if max_degree >= 3:
        pool[3] = [
            succ(pool[2][0], unit()),
            prec(unit(), pool[2][2]),
            mu(pool[2][1], unit()),
        ]
    for n in range(4, max_degree + 1):
        pool[n] = [
            succ(pool[n - 1][0], unit()),
            mu(pool[n - 2][1], pool[2][0]),
        ]
    return pool


def random_admissible_mould(rng, order, terms=2):
    """A mould whose degree-n part is a combination of degree-n tree images.

    Such components are homogeneous of weight -n with nice poles, which is
    what the series map requires.
    """
    return Mould(
        {n: random_tree_span(rng, n, terms) for n in range(1, order + 1)},
        order,
    )
