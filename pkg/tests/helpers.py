"""Randomized generators of valid test structures.

Sullivan algebras are built generator by generator with differentials drawn
from the exact kernel of d on the smaller algebra, so d^2 = 0 holds by
construction; finite CDGAs are degree/word-length truncations of those, and
random cocommutative DGCs are their duals.
"""

import random
from fractions import Fraction

from htcas import linalg
from htcas.functors import CDGA, FiniteCDGA, dual_coalgebra


def random_sullivan(rng: random.Random, max_gens: int = 4, odd_only: bool = False,
                    max_degree: int = 7, quadratic_chance: float = 0.8) -> CDGA:
    gens: list[tuple[str, int]] = []
    diff: dict[str, list] = {}
    algebra = CDGA.of([], {})
    for i in range(rng.randint(2, max_gens)):
        if odd_only:
            deg = rng.choice([d for d in range(3, max_degree + 1, 2)])
        else:
            deg = rng.randint(2, max_degree)
        name = f"v{i}"
        img_items = []
        if gens and rng.random() < quadratic_chance:
            monos = [
                fs
                for fs in algebra.monomial_basis(deg + 1)
                if len(fs) >= 2 and algebra.cohom_degree_of(fs) == deg + 1
            ]
            if monos:
                allw = sorted(
                    {
                        w
                        for fs in monos
                        for w in algebra.d(algebra.monomial(fs)).terms
                    },
                    key=repr,
                )
                rows = [
                    [algebra.d(algebra.monomial(fs)).coeff(w) for fs in monos]
                    for w in allw
                ]
                kernel = linalg.nullspace(rows, len(monos))
                if kernel:
                    combo = [Fraction(0)] * len(monos)
                    for v in kernel:
                        c = Fraction(rng.randint(-1, 1))
                        if c:
                            combo = [a + c * b for a, b in zip(combo, v)]
                    img_items = [
                        (c, monos[j]) for j, c in enumerate(combo) if c
                    ]
        gens.append((name, deg))
        if img_items:
            diff[name] = img_items
        algebra = CDGA.of(gens, diff)
    return algebra


def random_finite_cdga(rng: random.Random, max_dim: int = 8,
                       conilpotence_two: bool = False) -> FiniteCDGA:
    """Finite-dimensional truncation of a random Sullivan algebra."""
    while True:
        A = random_sullivan(rng, max_gens=3, odd_only=True, max_degree=7)
        max_len = 2 if conilpotence_two else None
        top = 2 * A.gens.max_degree() + 2
        B = FiniteCDGA(A, max_cohom=top, max_length=max_len)
        if 2 <= len(B.monomials) - 1 <= max_dim:
            return B


def random_cocommutative_dgc(rng: random.Random, max_dim: int = 6,
                             conilpotence_two: bool = False):
    """(full, reduced) dual pair of a random finite CDGA, reduced dim <= max_dim."""
    B = random_finite_cdga(rng, max_dim=max_dim, conilpotence_two=conilpotence_two)
    return dual_coalgebra(B)
