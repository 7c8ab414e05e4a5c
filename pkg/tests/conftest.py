"""Shared test helpers: independent oracles and a random index sampler."""

import itertools
import math
import random

import pytest

from levi.rootsys import build_root_system, cartan_matrix, product_system
from levi.weyl import close_automorphisms, diagram_automorphism, node_orbits
from levi.index import validate_index

# Independent copy of the classical order formulas (the engine never uses
# these to enumerate; tests compare them against breadth-first closures).
def weyl_order_oracle(series: str, rank: int) -> int:
    if series == "A":
        return math.factorial(rank + 1)
    if series in ("B", "C", "BC"):
        return 2 ** rank * math.factorial(rank)
    if series == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    if series == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[rank]
    if series == "F":
        return 1152
    if series == "G":
        return 12
    raise ValueError(series)


def all_diagram_autos(rs):
    """Brute-force enumeration of the Cartan-matrix automorphisms."""
    cm = cartan_matrix(rs)
    n = rs.rank
    out = []
    for perm in itertools.permutations(range(n)):
        if all(cm[perm[i]][perm[j]] == cm[i][j] for i in range(n) for j in range(n)):
            out.append(perm)
    return out


_RANDOM_SHAPES = [
    ("A", 1), ("A", 2), ("A", 3), ("A", 4), ("A", 5),
    ("B", 2), ("B", 3), ("B", 4), ("B", 5), ("C", 3), ("C", 4),
    ("D", 4), ("D", 5), ("BC", 1), ("BC", 2), ("BC", 3),
    ("G", 2), ("F", 4),
]

_RANDOM_PRODUCT_FACTORS = [("A", 1), ("A", 2), ("B", 2)]


def random_valid_index(rng: random.Random):
    """A random well-formed index of rank at most 5 (occasionally a product)."""
    if rng.random() < 0.85:
        series, rank = rng.choice(_RANDOM_SHAPES)
        rs = build_root_system(series, rank)
    else:
        copies = rng.choice([2, 3])
        series, rank = rng.choice(_RANDOM_PRODUCT_FACTORS)
        rs = product_system([build_root_system(series, rank) for _ in range(copies)])
    autos = all_diagram_autos(rs)
    gens = [diagram_automorphism(rs, rng.choice(autos))
            for _ in range(rng.randint(0, 2))]
    closure = close_automorphisms(rs, gens)
    delta0 = set()
    for orbit in node_orbits(rs, list(closure)):
        if rng.random() < 0.35:
            delta0.update(orbit)
    return validate_index(rs, delta0, gens)


@pytest.fixture(scope="session")
def e6():
    return build_root_system("E", 6)
