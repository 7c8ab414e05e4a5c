"""Exact root systems of types A-G and the non-reduced type BC, plus products.

Coordinates are exact rationals. Roots are stored sorted lexicographically by
coordinate vector and all derived enumerations use that canonical order, so
orbit searches and witnesses are reproducible run to run.

Simple roots follow Bourbaki numbering; in particular the E6 base is the
chain a1-a3-a4-a5-a6 with a2 attached to a4.

A "root set" throughout this package is a frozenset of positions into
RootSystem.roots.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .linalg import Vec, dot, is_zero, neg, scale, solve, sub, vec

HALF = Fraction(1, 2)

SERIES = ("A", "B", "C", "D", "E", "F", "G", "BC")


class InvalidRootSystem(ValueError):
    pass


def _unit(i: int, n: int) -> Vec:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))


def _pm_pairs(e, i, j):
    out = []
    for si in (1, -1):
        for sj in (1, -1):
            out.append(tuple(a + b for a, b in zip(scale(si, e[i]), scale(sj, e[j]))))
    return out


def _type_a(n: int):
    dim = n + 1
    e = [_unit(i, dim) for i in range(dim)]
    roots = [sub(e[i], e[j]) for i in range(dim) for j in range(dim) if i != j]
    simple = [sub(e[i], e[i + 1]) for i in range(n)]
    return roots, simple, dim


def _type_b(n: int):
    e = [_unit(i, n) for i in range(n)]
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            roots.extend(_pm_pairs(e, i, j))
        roots.append(e[i])
        roots.append(neg(e[i]))
    simple = [sub(e[i], e[i + 1]) for i in range(n - 1)] + [e[n - 1]]
    return roots, simple, n


def _type_c(n: int):
    e = [_unit(i, n) for i in range(n)]
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            roots.extend(_pm_pairs(e, i, j))
        roots.append(scale(2, e[i]))
        roots.append(scale(-2, e[i]))
    simple = [sub(e[i], e[i + 1]) for i in range(n - 1)] + [scale(2, e[n - 1])]
    return roots, simple, n


def _type_d(n: int):
    e = [_unit(i, n) for i in range(n)]
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            roots.extend(_pm_pairs(e, i, j))
    simple = [sub(e[i], e[i + 1]) for i in range(n - 1)]
    simple.append(tuple(a + b for a, b in zip(e[n - 2], e[n - 1])))
    return roots, simple, n


def _type_bc(n: int):
    # Base matches B_n (short multipliable root last), so the map to the
    # system of non-multipliable roots is position-stable on the base.
    roots_b, simple, _ = _type_b(n)
    e = [_unit(i, n) for i in range(n)]
    roots = roots_b + [scale(s, e[i]) for i in range(n) for s in (2, -2)]
    return roots, simple, n


def _e8_roots():
    roots = []
    for i in range(8):
        for j in range(i + 1, 8):
            roots.extend(_pm_pairs([_unit(k, 8) for k in range(8)], i, j))
    for signs in itertools.product((HALF, -HALF), repeat=8):
        if sum(1 for s in signs if s < 0) % 2 == 0:
            roots.append(signs)
    return roots


def _e8_simple():
    e = [_unit(i, 8) for i in range(8)]
    a1 = vec(tuple(HALF * c for c in (1, -1, -1, -1, -1, -1, -1, 1)))
    a2 = vec((1, 1, 0, 0, 0, 0, 0, 0))
    chain = [sub(e[i + 1], e[i]) for i in range(6)]  # a3 = e2-e1, ..., a8 = e7-e6
    return [a1, a2] + chain


def _type_e(n: int):
    simple = _e8_simple()[:n]
    cols = [list(col) for col in zip(*simple)]
    kept = [r for r in _e8_roots() if solve(cols, r) is not None]
    return kept, simple, 8


def _type_f(_: int):
    e = [_unit(i, 4) for i in range(4)]
    roots = []
    for i in range(4):
        roots.append(e[i])
        roots.append(neg(e[i]))
        for j in range(i + 1, 4):
            roots.extend(_pm_pairs(e, i, j))
    roots.extend(itertools.product((HALF, -HALF), repeat=4))
    simple = [sub(e[1], e[2]), sub(e[2], e[3]), e[3], vec((HALF, -HALF, -HALF, -HALF))]
    return roots, simple, 4


def _type_g(_: int):
    base = [vec((1, -1, 0)), vec((-2, 1, 1))]
    halves = [vec((1, -1, 0)), vec((0, 1, -1)), vec((1, 0, -1)),
              vec((2, -1, -1)), vec((-1, 2, -1)), vec((-1, -1, 2))]
    roots = []
    for r in halves:
        roots.append(r)
        roots.append(neg(r))
    return roots, base, 3


_BUILDERS: dict[str, Callable] = {
    "A": _type_a, "B": _type_b, "C": _type_c, "D": _type_d,
    "E": _type_e, "F": _type_f, "G": _type_g, "BC": _type_bc,
}

_RANK_RULES = {
    "A": (1, None, "rank >= 1"),
    "B": (1, None, "rank >= 1"),
    "C": (1, None, "rank >= 1"),
    "BC": (1, None, "rank >= 1"),
    "D": (2, None, "rank >= 2"),
    "E": (6, 8, "rank in {6, 7, 8}"),
    "F": (4, 4, "rank = 4"),
    "G": (2, 2, "rank = 2"),
}


class RootSystem:
    """A finite crystallographic root system with a distinguished base.

    roots is the full, canonically sorted tuple of root vectors; simple holds
    the positions of the base inside it, in Bourbaki order. Instances are
    immutable after construction and safe to share between threads.
    """

    def __init__(self, series: str, rank: int, ambient_dim: int,
                 roots: Sequence[Vec], simple_vectors: Sequence[Vec],
                 factors=None):
        self.series = series
        self.rank = rank
        self.ambient_dim = ambient_dim
        self.roots: tuple[Vec, ...] = tuple(sorted(set(roots)))
        self.index: dict[Vec, int] = {v: i for i, v in enumerate(self.roots)}
        try:
            self.simple: tuple[int, ...] = tuple(self.index[v] for v in simple_vectors)
        except KeyError as exc:
            raise InvalidRootSystem("simple root %s is not a root" % (exc.args[0],))
        if len(self.simple) != rank:
            raise InvalidRootSystem("rank %d but %d simple roots" % (rank, len(self.simple)))
        # factors: tuple of (series, rank, node positions, ambient span) for products
        self.factors = factors
        self._finish()

    def _finish(self):
        roots, index = self.roots, self.index
        for v in roots:
            if is_zero(v):
                raise InvalidRootSystem("zero vector among roots")
            if neg(v) not in index:
                raise InvalidRootSystem("roots not closed under negation")
        self.negation = tuple(index[neg(v)] for v in roots)
        base = [roots[i] for i in self.simple]
        cols = [list(col) for col in zip(*base)]
        coeffs = []
        for v in roots:
            x = solve(cols, v)
            if x is None:
                raise InvalidRootSystem("root %s outside the base span" % (v,))
            ints = []
            for c in x:
                if c.denominator != 1:
                    raise InvalidRootSystem("non-integral base coefficient for %s" % (v,))
                ints.append(int(c))
            if not (all(c >= 0 for c in ints) or all(c <= 0 for c in ints)):
                raise InvalidRootSystem("root %s has mixed-sign base coefficients" % (v,))
            coeffs.append(tuple(ints))
        self.coefficients: tuple[tuple[int, ...], ...] = tuple(coeffs)
        self.positive = tuple(all(c >= 0 for c in cs) for cs in coeffs)
        self.support = tuple(frozenset(i for i, c in enumerate(cs) if c) for cs in coeffs)
        self._reflections: list = [None] * self.rank
        self._gram_inv = None
        self._full_group = None

    # -- basic helpers -------------------------------------------------

    def inner(self, u: Vec, v: Vec) -> Fraction:
        return dot(u, v)

    def simple_vector(self, i: int) -> Vec:
        return self.roots[self.simple[i]]

    def root_set(self, subset: Iterable[int]) -> frozenset[int]:
        """Root positions of the given base positions."""
        return frozenset(self.simple[i] for i in subset)

    def vectors(self, root_positions: Iterable[int]) -> frozenset[Vec]:
        return frozenset(self.roots[i] for i in root_positions)

    def __repr__(self):
        return "RootSystem(%s%d, %d roots)" % (self.series, self.rank, len(self.roots))


def build_root_system(series: str, rank: int) -> RootSystem:
    """Construct the root system of the given series and rank.

    Raises InvalidRootSystem for unsupported (series, rank) pairs, naming
    the violated constraint.
    """
    if series not in _BUILDERS:
        raise InvalidRootSystem("unknown series %r (expected one of %s)"
                                % (series, ", ".join(SERIES)))
    lo, hi, rule = _RANK_RULES[series]
    if not isinstance(rank, int) or rank < lo or (hi is not None and rank > hi):
        raise InvalidRootSystem("series %s requires %s (got %r)" % (series, rule, rank))
    roots, simple, dim = _BUILDERS[series](rank)
    return RootSystem(series, rank, dim, roots, simple)


def product_system(factors: Sequence[RootSystem]) -> RootSystem:
    """Block-diagonal product of root systems, with a factor map.

    The base is the concatenation of the factor bases; factor k occupies a
    contiguous block of base nodes and of ambient coordinates.
    """
    factors = list(factors)
    if not factors:
        raise InvalidRootSystem("a product needs at least one factor")
    if any(f.factors for f in factors):
        raise InvalidRootSystem("nested products are not supported")
    dim = sum(f.ambient_dim for f in factors)
    roots: list[Vec] = []
    simple: list[Vec] = []
    meta = []
    offset = 0
    node = 0
    zero = Fraction(0)
    for f in factors:
        pad_l, pad_r = offset, dim - offset - f.ambient_dim

        def embed(v, l=pad_l, r=pad_r):
            return (zero,) * l + v + (zero,) * r

        roots.extend(embed(v) for v in f.roots)
        simple.extend(embed(f.roots[i]) for i in f.simple)
        meta.append((f.series, f.rank, tuple(range(node, node + f.rank)),
                     (offset, offset + f.ambient_dim)))
        offset += f.ambient_dim
        node += f.rank
    rank = sum(f.rank for f in factors)
    return RootSystem("Product", rank, dim, roots, simple, factors=tuple(meta))


def factor_of_node(rs: RootSystem) -> tuple[int, ...]:
    """For products: which factor each base node belongs to (all 0 otherwise)."""
    if not rs.factors:
        return tuple(0 for _ in range(rs.rank))
    out = [0] * rs.rank
    for k, (_, _, nodes, _) in enumerate(rs.factors):
        for i in nodes:
            out[i] = k
    return tuple(out)


def cartan_matrix(rs: RootSystem) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix over the base: entry (i, j) = 2<ai, aj>/<aj, aj>."""
    base = [rs.simple_vector(i) for i in range(rs.rank)]
    out = []
    for a in base:
        row = []
        for b in base:
            c = 2 * dot(a, b) / dot(b, b)
            if c.denominator != 1:
                raise InvalidRootSystem("non-integral Cartan entry")
            row.append(int(c))
        out.append(tuple(row))
    return tuple(out)


def parabolic_closure(rs: RootSystem, subset: Iterable[int]) -> frozenset[int]:
    """All roots lying in the integer span of the given base positions."""
    keep = frozenset(subset)
    return frozenset(i for i in range(len(rs.roots)) if rs.support[i] <= keep)


def subsystem_base(rs: RootSystem, root_positions: Iterable[int]) -> tuple[int, ...]:
    """Base of a parabolic root subset: its positive members that are not
    sums of two positive members."""
    pos = [i for i in root_positions if rs.positive[i]]
    pos_vecs = {rs.roots[i] for i in pos}
    out = []
    for i in pos:
        v = rs.roots[i]
        if not any(w != v and sub(v, w) in pos_vecs for w in pos_vecs):
            out.append(i)
    return tuple(sorted(out))


class NonMultipliableMap:
    """Position map onto the system of non-multipliable roots.

    Maps a parabolic root subset R to R intersected with the non-multipliable
    roots. Base positions are preserved: a multipliable simple root is
    replaced by its double in the same slot, so base subsets transport as
    plain position sets.
    """

    def __init__(self, source: RootSystem, system: RootSystem, root_map: dict[int, int]):
        self.source = source
        self.system = system
        self.root_map = root_map
        self.identity = source is system

    def __call__(self, root_positions: Iterable[int]) -> frozenset[int]:
        return frozenset(self.root_map[i] for i in root_positions if i in self.root_map)


def non_multipliable(rs: RootSystem) -> tuple[RootSystem, NonMultipliableMap]:
    """The subsystem of roots a with 2a not a root, and the subset map onto it.

    For reduced input the map is the identity. The output lives in the same
    ambient space and its Weyl group is the same transformation group.
    """
    doubled = {i for i, v in enumerate(rs.roots) if scale(2, v) in rs.index}
    if not doubled:
        return rs, NonMultipliableMap(rs, rs, {i: i for i in range(len(rs.roots))})
    kept_vecs = [v for i, v in enumerate(rs.roots) if i not in doubled]
    simple_vecs = []
    for i in range(rs.rank):
        v = rs.simple_vector(i)
        simple_vecs.append(scale(2, v) if rs.index[v] in doubled else v)

    def relabel(series: str) -> str:
        return "C" if series == "BC" else series

    factors = None
    series = relabel(rs.series)
    if rs.factors:
        factors = tuple((relabel(s), r, nodes, amb) for (s, r, nodes, amb) in rs.factors)
        series = "Product"
    out = RootSystem(series, rs.rank, rs.ambient_dim, kept_vecs, simple_vecs, factors=factors)
    root_map = {i: out.index[v] for i, v in enumerate(rs.roots) if i not in doubled}
    return out, NonMultipliableMap(rs, out, root_map)


# -- isomorphism-type labels ------------------------------------------


def standard_cartan(series: str, n: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix of a standard irreducible type, by formula."""
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def chain(upto: int):
        for i in range(upto):
            m[i][i + 1] = m[i + 1][i] = -1

    if series in ("A",):
        chain(n - 1)
    elif series in ("B", "BC"):
        chain(n - 1)
        if n >= 2:
            m[n - 2][n - 1] = -2
    elif series == "C":
        chain(n - 1)
        if n >= 2:
            m[n - 1][n - 2] = -2
    elif series == "D":
        chain(n - 2)
        m[n - 3][n - 1] = m[n - 1][n - 3] = -1
    elif series == "E":
        # chain a1-a3-a4-a5-..., a2 attached to a4
        order = [0] + list(range(2, n))
        for a, b in zip(order, order[1:]):
            m[a][b] = m[b][a] = -1
        m[1][3] = m[3][1] = -1
    elif series == "F":
        chain(3)
        m[1][2], m[2][1] = -2, -1
    elif series == "G":
        m[0][1], m[1][0] = -1, -3
    else:
        raise InvalidRootSystem("unknown series %r" % (series,))
    return tuple(tuple(row) for row in m)


def _cartan_isomorphic(a, b) -> bool:
    """Whether two Cartan matrices agree up to a simultaneous permutation."""
    n = len(a)
    if n != len(b):
        return False

    def row_sig(m, i):
        return (tuple(sorted(m[i][j] for j in range(n) if j != i)),
                tuple(sorted(m[j][i] for j in range(n) if j != i)))

    sa = [row_sig(a, i) for i in range(n)]
    sb = [row_sig(b, i) for i in range(n)]
    if sorted(sa) != sorted(sb):
        return False
    assign = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or sa[i] != sb[j]:
                continue
            ok = all(assign[k] < 0 or (a[i][k] == b[j][assign[k]] and a[k][i] == b[assign[k]][j])
                     for k in range(n))
            if ok:
                assign[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                assign[i] = -1
                used[j] = False
        return False

    return extend(0)


def _label_base(base: list[Vec], multipliable: list[bool]) -> str:
    """Type label for a set of base vectors, e.g. 'A2xA1'."""
    if not base:
        return "1"
    n = len(base)
    remaining = set(range(n))
    labels = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = [seed]
        while frontier:
            i = frontier.pop()
            for j in list(remaining - comp):
                if dot(base[i], base[j]) != 0:
                    comp.add(j)
                    frontier.append(j)
        remaining -= comp
        comp = sorted(comp)
        k = len(comp)
        if any(multipliable[i] for i in comp):
            labels.append("BC%d" % k)
            continue
        vecs = [base[i] for i in comp]
        sub_cartan = tuple(tuple(int(2 * dot(a, b) / dot(b, b)) for b in vecs) for a in vecs)
        candidates = [("A", k)]
        if k >= 2:
            candidates += [("B", k), ("C", k)]
        if k >= 4:
            candidates.append(("D", k))
        if k in (6, 7, 8):
            candidates.append(("E", k))
        if k == 4:
            candidates.append(("F", k))
        if k == 2:
            candidates.append(("G", k))
        for series, m in candidates:
            if _cartan_isomorphic(sub_cartan, standard_cartan(series, m)):
                if series == "C" and k == 2:
                    series = "B"  # B2 and C2 coincide up to relabeling
                labels.append("%s%d" % (series, m))
                break
        else:
            raise InvalidRootSystem("unrecognized component Cartan matrix %r" % (sub_cartan,))
    return "x".join(sorted(labels))


def connected_components(rs: RootSystem, subset: Iterable[int]) -> list[tuple[int, ...]]:
    """Connected components of a set of base positions in the Dynkin graph."""
    nodes = sorted(set(subset))
    remaining = set(nodes)
    comps = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = [seed]
        while frontier:
            i = frontier.pop()
            for j in list(remaining - comp):
                if dot(rs.simple_vector(i), rs.simple_vector(j)) != 0:
                    comp.add(j)
                    frontier.append(j)
        comps.append(tuple(sorted(comp)))
        remaining -= comp
    return comps


def base_type(rs: RootSystem, subset: Iterable[int]) -> str:
    """Isomorphism-type label of the parabolic subsystem on a base subset."""
    nodes = sorted(set(subset))
    base = [rs.simple_vector(i) for i in nodes]
    mult = [scale(2, rs.simple_vector(i)) in rs.index for i in nodes]
    return _label_base(base, mult)


def subsystem_type(rs: RootSystem, root_positions: Iterable[int]) -> str:
    """Isomorphism-type label of a parabolic root subset (via its base)."""
    positions = frozenset(root_positions)
    base_positions = subsystem_base(rs, positions)
    base = [rs.roots[i] for i in base_positions]
    mult = [rs.index.get(scale(2, rs.roots[i])) in positions if scale(2, rs.roots[i]) in rs.index
            else False for i in base_positions]
    return _label_base(base, mult)
