"""Tits indices and the geometric/rational classification of Levi subsets.

A Tits index is a triple (base, anisotropic kernel, Galois action): a root
system with its base Delta, a subset Delta0, and a finite group of diagram
automorphisms stabilizing Delta0. A Levi subset is a Gamma-stable subset I
with Delta0 <= I <= Delta; it stands for the standard (pseudo-)Levi subgroup
generated by the minimal one and the root subgroups over the integer span
of I.

Geometric association acts through the whole Weyl group (for non-reduced
systems, through the system of non-multipliable roots, whose base positions
coincide). Rational association compares relative roots - orthogonal
projections onto the split subspace - under the relative Weyl group.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import Vec, dot, invert, kernel_basis, matvec
from .rootsys import RootSystem, non_multipliable, parabolic_closure
from .weyl import (DEFAULT_ORDER_BOUND, DiagramAutomorphism, GroupOrderExceeded,
                   WeylElement, apply_to_vector, close_automorphisms,
                   closure_orbit, diagram_automorphism, generate_group,
                   identity_element, longest_element, node_orbits,
                   transport_element)

# Above this absolute Weyl order, the rational side switches from the exact
# enumerate-and-filter computation to the relative-reflection fast path.
EXACT_RATIONAL_BOUND = 10_000

_ORDER_E = {6: 51840, 7: 2903040, 8: 696729600}


class InvalidIndex(ValueError):
    pass


def weyl_order(rs: RootSystem) -> int:
    """Order of the Weyl group, by the classical formulas."""

    def one(series: str, rank: int) -> int:
        if series == "A":
            return math.factorial(rank + 1)
        if series in ("B", "C", "BC"):
            return (2 ** rank) * math.factorial(rank)
        if series == "D":
            return (2 ** (rank - 1)) * math.factorial(rank)
        if series == "E":
            return _ORDER_E[rank]
        if series == "F":
            return 1152
        if series == "G":
            return 12
        raise ValueError("unknown series %r" % (series,))

    if rs.factors:
        out = 1
        for series, rank, _, _ in rs.factors:
            out *= one(series, rank)
        return out
    return one(rs.series, rs.rank)


class TitsIndex:
    """A validated index triple. gamma is the full closed automorphism group."""

    def __init__(self, rs: RootSystem, delta0: frozenset[int],
                 gamma: tuple[DiagramAutomorphism, ...]):
        self.rs = rs
        self.delta0 = delta0
        self.gamma = gamma
        self._split: SplitSpace | None = None
        self._proj_ids = None
        self._rel_gens = None

    @property
    def is_quasi_split(self) -> bool:
        return not self.delta0

    def orbits(self) -> list[tuple[int, ...]]:
        """Gamma-orbits on base positions, ordered by smallest member."""
        return node_orbits(self.rs, list(self.gamma))

    def __repr__(self):
        return "TitsIndex(%s%d, |delta0|=%d, |gamma|=%d)" % (
            self.rs.series, self.rs.rank, len(self.delta0), len(self.gamma))


def validate_index(rs: RootSystem, delta0: Iterable[int], gamma) -> TitsIndex:
    """Check the index invariants and return the validated triple.

    gamma may be given by generators (node permutations or
    DiagramAutomorphism); it is closed under composition and inverse here.
    Rejects non-automorphism permutations (naming the offending node pair)
    and automorphisms that move the anisotropic kernel.
    """
    kernel = frozenset(delta0)
    for i in kernel:
        if not (isinstance(i, int) and 0 <= i < rs.rank):
            raise InvalidIndex("anisotropic kernel position %r out of range" % (i,))
    autos = []
    for g in gamma:
        perm = g.node_perm if isinstance(g, DiagramAutomorphism) else tuple(g)
        autos.append(diagram_automorphism(rs, perm))
    closure = close_automorphisms(rs, autos)
    for a in closure:
        for i in sorted(kernel):
            j = a.node_perm[i]
            if j not in kernel:
                raise InvalidIndex(
                    "anisotropic kernel is not stable: an automorphism sends "
                    "node %d to node %d outside it" % (i + 1, j + 1))
    return TitsIndex(rs, kernel, closure)


def stable_levi_subsets(ix: TitsIndex) -> list[frozenset[int]]:
    """All Gamma-stable base subsets containing the anisotropic kernel,
    ordered by size then lexicographically."""
    free = [o for o in ix.orbits() if not set(o) & ix.delta0]
    subsets = []
    for k in range(len(free) + 1):
        for combo in itertools.combinations(free, k):
            members = set(ix.delta0)
            for orbit in combo:
                members.update(orbit)
            subsets.append(frozenset(members))
    subsets.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return subsets


# -- split space and relative roots ------------------------------------


class SplitSpace:
    """The subspace of the base span fixed by every automorphism and
    orthogonal to the anisotropic kernel.

    basis holds ambient vectors; coeff_basis their base coordinates;
    constraints the defining equations in base coordinates (used for fast
    membership tests).
    """

    def __init__(self, basis: tuple[Vec, ...], coeff_basis, constraints):
        self.basis = basis
        self.coeff_basis = coeff_basis
        self.constraints = constraints
        self._gram_inv = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def _inv(self):
        if self._gram_inv is None and self.basis:
            self._gram_inv = invert([[dot(a, b) for b in self.basis] for a in self.basis])
        return self._gram_inv

    def project(self, v: Vec) -> Vec:
        """Orthogonal projection onto the space."""
        if not self.basis:
            return tuple(Fraction(0) for _ in v)
        coords = matvec(self._inv(), [dot(b, v) for b in self.basis])
        n = len(v)
        return tuple(sum(c * b[k] for c, b in zip(coords, self.basis)) for k in range(n))

    def contains(self, v: Vec) -> bool:
        return self.project(v) == v


def split_space(ix: TitsIndex) -> SplitSpace:
    """Exact kernel computation of the split subspace, canonically based."""
    if ix._split is not None:
        return ix._split
    rs = ix.rs
    n = rs.rank
    rows: list[list[Fraction]] = []
    one, zero = Fraction(1), Fraction(0)
    for a in ix.gamma:
        for i in range(n):
            j = a.node_perm[i]
            if j != i:
                row = [zero] * n
                row[i] = one
                row[j] = -one
                rows.append(row)
    base = [rs.simple_vector(i) for i in range(n)]
    for j in sorted(ix.delta0):
        rows.append([dot(base[j], base[i]) for i in range(n)])
    coeff_basis = kernel_basis(rows, n)
    ambient = []
    for cs in coeff_basis:
        ambient.append(tuple(sum(c * b[k] for c, b in zip(cs, base))
                             for k in range(rs.ambient_dim)))
    ix._split = SplitSpace(tuple(ambient), tuple(coeff_basis),
                           tuple(tuple(r) for r in rows))
    return ix._split


def relative_roots(ix: TitsIndex, root_positions: Iterable[int]) -> frozenset[Vec]:
    """Nonzero orthogonal projections of the given roots onto the split space."""
    space = split_space(ix)
    out = set()
    for i in root_positions:
        p = space.project(ix.rs.roots[i])
        if any(c != 0 for c in p):
            out.add(p)
    return frozenset(out)


def _projection_ids(ix: TitsIndex):
    """Intern the distinct nonzero root projections as small integers.

    Returns (id_of_root, representative_root_of_id); id_of_root[i] is None
    when root i projects to zero.
    """
    if ix._proj_ids is not None:
        return ix._proj_ids
    space = split_space(ix)
    rs = ix.rs
    id_by_vec: dict[Vec, int] = {}
    id_of_root: list[int | None] = []
    rep_root: list[int] = []
    for i, v in enumerate(rs.roots):
        p = space.project(v)
        if all(c == 0 for c in p):
            id_of_root.append(None)
            continue
        known = id_by_vec.get(p)
        if known is None:
            known = len(rep_root)
            id_by_vec[p] = known
            rep_root.append(i)
        id_of_root.append(known)
    ix._proj_ids = (tuple(id_of_root), tuple(rep_root))
    return ix._proj_ids


def _stabilizes_split(ix: TitsIndex, w: WeylElement) -> bool:
    """Whether w maps the split space onto itself (integer-heavy fast test:
    base coordinates of basis images must satisfy the defining equations)."""
    rs = ix.rs
    sp = split_space(ix)
    if not sp.constraints:
        return True
    n = rs.rank
    for cb in sp.coeff_basis:
        total = [Fraction(0)] * n
        for i, c in enumerate(cb):
            if c:
                row = rs.coefficients[w.perm[rs.simple[i]]]
                for k in range(n):
                    if row[k]:
                        total[k] += c * row[k]
        for row in sp.constraints:
            if sum(r * t for r, t in zip(row, total) if r and t) != 0:
                return False
    return True


def relative_weyl_generators(ix: TitsIndex) -> list[WeylElement]:
    """Standard lifts of the relative reflections, one per Gamma-orbit off
    the anisotropic kernel: longest(kernel + orbit) * longest(kernel).

    Lifts that fail to stabilize the split space (possible for triples that
    do not arise from actual groups) are dropped; on cataloged indices all
    survive and their restrictions generate the relative Weyl group.
    """
    if ix._rel_gens is not None:
        return list(ix._rel_gens)
    rs = ix.rs
    kernel = sorted(ix.delta0)
    w_kernel = longest_element(rs, kernel)
    gens = []
    for orbit in ix.orbits():
        if set(orbit) & ix.delta0:
            continue
        w = longest_element(rs, sorted(set(kernel) | set(orbit))) * w_kernel
        if _stabilizes_split(ix, w):
            gens.append(w)
    ix._rel_gens = tuple(gens)
    return gens


class RelativeTransform:
    """An orthogonal transformation of the split space, as the matrix of
    basis images; representative is an inducing absolute element when known."""

    __slots__ = ("matrix", "representative")

    def __init__(self, matrix: tuple[tuple[Fraction, ...], ...],
                 representative: WeylElement | None = None):
        self.matrix = matrix
        self.representative = representative

    def __eq__(self, other):
        return isinstance(other, RelativeTransform) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __mul__(self, other: "RelativeTransform") -> "RelativeTransform":
        # (self o other) in the row convention: rows are basis images.
        n = len(self.matrix)
        m = tuple(tuple(sum(other.matrix[i][j] * self.matrix[j][k] for j in range(n))
                        for k in range(n))
                  for i in range(n))
        rep = None
        if self.representative is not None and other.representative is not None:
            rep = self.representative * other.representative
        return RelativeTransform(m, rep)

    @property
    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == (1 if i == j else 0)
                   for i in range(len(self.matrix)) for j in range(len(self.matrix)))

    def apply(self, space: SplitSpace, v: Vec) -> Vec:
        coords = matvec(space._inv(), [dot(b, v) for b in space.basis])
        n = len(v)
        out = [Fraction(0)] * n
        for i, c in enumerate(coords):
            if c:
                for j, b in enumerate(space.basis):
                    m = self.matrix[i][j]
                    if m:
                        cm = c * m
                        for k in range(n):
                            out[k] += cm * b[k]
        return tuple(out)

    def __repr__(self):
        return "RelativeTransform(%s)" % (self.matrix,)


def _identity_transform(dim: int) -> RelativeTransform:
    return RelativeTransform(
        tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(dim))
              for i in range(dim)))


def _restrict(ix: TitsIndex, w: WeylElement) -> RelativeTransform | None:
    """Restriction of w to the split space, or None if w moves it."""
    if not _stabilizes_split(ix, w):
        return None
    space = split_space(ix)
    rows = []
    for b in space.basis:
        image = apply_to_vector(ix.rs, w, b)
        rows.append(tuple(matvec(space._inv(), [dot(c, image) for c in space.basis]))
                    if space.basis else ())
    return RelativeTransform(tuple(rows), w)


def relative_weyl(ix: TitsIndex, order_bound: int = DEFAULT_ORDER_BOUND,
                  method: str = "auto") -> tuple[RelativeTransform, ...]:
    """The relative Weyl group, as deduplicated restrictions to the split space.

    method "filter" enumerates the absolute Weyl group (within order_bound),
    keeps the elements stabilizing the split space setwise, restricts and
    deduplicates: the unambiguous ground truth, failing loudly when the
    order bound is exceeded. method "generators" closes the restrictions of
    relative_weyl_generators instead; the two agree on every cataloged
    index. "auto" picks "filter" when the absolute order is small.
    """
    if method == "auto":
        method = ("filter" if weyl_order(ix.rs) <= min(EXACT_RATIONAL_BOUND, order_bound)
                  else "generators")
    if method == "filter":
        group = generate_group(ix.rs, order_bound)
        seen: set = set()
        out = []
        for w in group:
            t = _restrict(ix, w)
            if t is not None and t.matrix not in seen:
                seen.add(t.matrix)
                out.append(t)
        return tuple(out)
    if method != "generators":
        raise ValueError("unknown method %r" % (method,))
    gens = [_restrict(ix, w) for w in relative_weyl_generators(ix)]
    identity = _identity_transform(split_space(ix).dimension)
    identity.representative = identity_element(ix.rs)
    elements = [identity]
    seen_m = {identity.matrix}
    frontier = [identity]
    while frontier:
        nxt = []
        for t in frontier:
            for g in gens:
                u = g * t
                if u.matrix not in seen_m:
                    seen_m.add(u.matrix)
                    elements.append(u)
                    if len(elements) > order_bound:
                        raise GroupOrderExceeded(order_bound, len(elements))
                    nxt.append(u)
        frontier = nxt
    return tuple(elements)


# -- classification -----------------------------------------------------


@dataclass
class ClassificationReport:
    """Geometric and rational partitions of the stable Levi subsets.

    Classes hold positions into subsets, in canonical order; witnesses map
    (class representative position, member position) to an element carrying
    a replayable word of simple-root positions (0-based).
    """

    subsets: tuple[frozenset[int], ...]
    geometric_classes: tuple[tuple[int, ...], ...]
    rational_classes: tuple[tuple[int, ...], ...]
    geometric_witnesses: dict[tuple[int, int], WeylElement]
    rational_witnesses: dict[tuple[int, int], WeylElement]
    agreement: bool

    def partition_of(self, kind: str) -> set[frozenset[int]]:
        classes = self.geometric_classes if kind == "geometric" else self.rational_classes
        return {frozenset(c) for c in classes}


def _geometric_partition(ix: TitsIndex, subsets: Sequence[frozenset[int]],
                         order_bound: int):
    rs0 = ix.rs
    work, mapping = non_multipliable(rs0)
    classes: list[list[int]] = []
    reps: list[int] = []
    orbits = []
    state_to_class: dict[frozenset[int], int] = {}
    witnesses: dict[tuple[int, int], WeylElement] = {}
    for pos, subset in enumerate(subsets):
        state = parabolic_closure(work, subset)
        cid = state_to_class.get(state)
        if cid is None:
            cid = len(classes)
            orbit = closure_orbit(work, subset, order_bound)
            classes.append([pos])
            reps.append(pos)
            orbits.append(orbit)
            for s in orbit.parents:
                state_to_class.setdefault(s, cid)
        else:
            w = orbits[cid].witness_to(subset)
            assert w is not None
            if not mapping.identity:
                w = transport_element(work, w, rs0)
            witnesses[(reps[cid], pos)] = w
            classes[cid].append(pos)
    return [tuple(c) for c in classes], witnesses


def _rational_partition(ix: TitsIndex, subsets: Sequence[frozenset[int]],
                        order_bound: int):
    rs = ix.rs
    id_of_root, rep_root = _projection_ids(ix)
    nids = len(rep_root)

    def state_of(subset) -> tuple[int, ...]:
        ids = {id_of_root[i] for i in parabolic_closure(rs, subset)}
        ids.discard(None)
        return tuple(sorted(ids))

    states = [state_of(s) for s in subsets]
    classes: list[list[int]] = []
    reps: list[int] = []
    witnesses: dict[tuple[int, int], WeylElement] = {}
    exact = weyl_order(rs) <= min(EXACT_RATIONAL_BOUND, order_bound)
    if exact:
        group = generate_group(rs, order_bound)
        movers = [w for w in group if _stabilizes_split(ix, w)]
        id_perms = [tuple(id_of_root[w.perm[rep_root[k]]] for k in range(nids))
                    for w in movers]
        lookup: dict[tuple[int, ...], tuple[int, WeylElement]] = {}
        for pos, state in enumerate(states):
            hit = lookup.get(state)
            if hit is not None:
                cid, w = hit
                witnesses[(reps[cid], pos)] = w
                classes[cid].append(pos)
                continue
            cid = len(classes)
            classes.append([pos])
            reps.append(pos)
            for w, perm in zip(movers, id_perms):
                image = tuple(sorted(perm[i] for i in state))
                if image not in lookup:
                    lookup[image] = (cid, w)
    else:
        gens = relative_weyl_generators(ix)
        id_perms = [tuple(id_of_root[w.perm[rep_root[k]]] for k in range(nids))
                    for w in gens]
        lookup2: dict[tuple[int, ...], tuple[int, dict]] = {}
        for pos, state in enumerate(states):
            hit = lookup2.get(state)
            if hit is not None:
                cid, parents = hit
                w = _compose_chain(rs, gens, parents, state)
                witnesses[(reps[cid], pos)] = w
                classes[cid].append(pos)
                continue
            cid = len(classes)
            classes.append([pos])
            reps.append(pos)
            parents: dict[tuple[int, ...], tuple | None] = {state: None}
            frontier = [state]
            while frontier:
                nxt = []
                for s in frontier:
                    for gen_pos, perm in enumerate(id_perms):
                        image = tuple(sorted(perm[i] for i in s))
                        if image not in parents:
                            parents[image] = (s, gen_pos)
                            nxt.append(image)
                            if len(parents) > order_bound:
                                raise GroupOrderExceeded(order_bound, len(parents))
                frontier = nxt
            for s in parents:
                lookup2.setdefault(s, (cid, parents))
    return [tuple(c) for c in classes], witnesses


def _compose_chain(rs: RootSystem, gens: list[WeylElement], parents: dict,
                   state) -> WeylElement:
    chain = []
    while parents[state] is not None:
        prev, gen_pos = parents[state]
        chain.append(gen_pos)
        state = prev
    w = identity_element(rs)
    for gen_pos in reversed(chain):
        w = gens[gen_pos] * w
    return w


def classify(ix: TitsIndex, order_bound: int = DEFAULT_ORDER_BOUND) -> ClassificationReport:
    """Compute both partitions of the stable Levi subsets, with witnesses.

    Geometric classes follow association under the whole Weyl group
    (through the non-multipliable system when the input is non-reduced);
    rational classes follow matching of relative root sets under the
    relative Weyl group. All searches are deterministic, so the report is
    identical across runs with the same bounds.
    """
    subsets = tuple(stable_levi_subsets(ix))
    geo, geo_wit = _geometric_partition(ix, subsets, order_bound)
    rat, rat_wit = _rational_partition(ix, subsets, order_bound)
    _verify_witnesses(ix, subsets, geo_wit, rat_wit)
    agreement = {frozenset(c) for c in geo} == {frozenset(c) for c in rat}
    return ClassificationReport(subsets, tuple(geo), tuple(rat),
                                geo_wit, rat_wit, agreement)


def _verify_witnesses(ix, subsets, geo_wit, rat_wit):
    rs = ix.rs
    for (i, j), w in geo_wit.items():
        src = {rs.roots[k] for k in rs.root_set(subsets[i])}
        dst = {rs.roots[k] for k in rs.root_set(subsets[j])}
        got = {apply_to_vector(rs, w, v) for v in src}
        if got != dst:
            raise AssertionError("geometric witness failed re-verification")
    for (i, j), w in rat_wit.items():
        src = relative_roots(ix, parabolic_closure(rs, subsets[i]))
        dst = relative_roots(ix, parabolic_closure(rs, subsets[j]))
        got = {apply_to_vector(rs, w, v) for v in src}
        if got != dst:
            raise AssertionError("rational witness failed re-verification")


def verify_theorem(ix: TitsIndex,
                   order_bound: int = DEFAULT_ORDER_BOUND) -> tuple[bool, ClassificationReport]:
    """Whether the geometric and rational partitions coincide (reported,
    never assumed)."""
    report = classify(ix, order_bound)
    return report.agreement, report


def rational_partition_by_fixed_subgroup(ix: TitsIndex) -> set[frozenset[int]]:
    """Alternative rational partition for quasi-split indices: associate the
    subsets themselves under the fixed subgroup of Gamma (orbit search with
    the relative generators). Used as the dual computation in checks."""
    if not ix.is_quasi_split:
        raise InvalidIndex("dual computation applies to quasi-split indices only")
    rs = ix.rs
    gens = relative_weyl_generators(ix)
    subsets = tuple(stable_levi_subsets(ix))
    classes: list[list[int]] = []
    state_to_class: dict[frozenset[int], int] = {}
    for pos, subset in enumerate(subsets):
        state = rs.root_set(subset)
        cid = state_to_class.get(state)
        if cid is None:
            cid = len(classes)
            classes.append([pos])
            seen = {state}
            frontier = [state]
            while frontier:
                nxt = []
                for s in frontier:
                    for g in gens:
                        image = g.apply_set(s)
                        if image not in seen:
                            seen.add(image)
                            nxt.append(image)
                frontier = nxt
            for s in seen:
                state_to_class.setdefault(s, cid)
        else:
            classes[cid].append(pos)
    return {frozenset(c) for c in classes}
