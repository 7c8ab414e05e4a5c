"""Weyl group elements as root permutations, diagram automorphisms, orbits.

Elements store the permutation they induce on the canonical root list; the
ambient orthogonal action is recovered from the images of the simple roots.
Composition is array indexing and equality is tuple equality. Orbit searches
are breadth-first with generators taken in index order, so witnesses are
deterministic.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .linalg import Vec, dot, invert, matvec, scale, sub
from .rootsys import RootSystem, cartan_matrix, parabolic_closure, non_multipliable

DEFAULT_ORDER_BOUND = 10_000_000


class GroupOrderExceeded(RuntimeError):
    """Raised when an enumeration grows past the requested order bound."""

    def __init__(self, bound: int, partial: int):
        super().__init__("group order exceeds bound %d (enumerated %d elements)"
                         % (bound, partial))
        self.bound = bound
        self.partial = partial


class InvalidAutomorphism(ValueError):
    pass


def _pcompose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Permutation composition p after q."""
    return tuple(map(p.__getitem__, q))


class WeylElement:
    """An orthogonal transformation stored as a permutation of the root list.

    word, when present, is a sequence of simple-root positions whose
    reflections compose (rightmost applied first) to this element.
    """

    __slots__ = ("perm", "word")

    def __init__(self, perm: tuple[int, ...], word: tuple[int, ...] | None = None):
        self.perm = perm
        self.word = word

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(_pcompose(self.perm, other.perm), word)

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        word = tuple(reversed(self.word)) if self.word is not None else None
        return WeylElement(tuple(inv), word)

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    def apply_set(self, positions: Iterable[int]) -> frozenset[int]:
        return frozenset(self.perm[i] for i in positions)

    def __repr__(self):
        w = "" if self.word is None else " word=%s" % (list(self.word),)
        return "<WeylElement on %d roots%s>" % (len(self.perm), w)


def identity_element(rs: RootSystem) -> WeylElement:
    return WeylElement(tuple(range(len(rs.roots))), ())


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    """Reflection through the i-th simple root, as a root permutation."""
    if not 0 <= i < rs.rank:
        raise IndexError("simple root position %d out of range" % i)
    cached = rs._reflections[i]
    if cached is not None:
        return cached
    alpha = rs.simple_vector(i)
    norm = dot(alpha, alpha)
    perm = []
    for v in rs.roots:
        image = sub(v, scale(2 * dot(v, alpha) / norm, alpha))
        perm.append(rs.index[image])
    element = WeylElement(tuple(perm), (i,))
    rs._reflections[i] = element
    return element


def simple_reflections(rs: RootSystem) -> list[WeylElement]:
    return [simple_reflection(rs, i) for i in range(rs.rank)]


def _gram_inverse(rs: RootSystem):
    if rs._gram_inv is None:
        base = [rs.simple_vector(i) for i in range(rs.rank)]
        rs._gram_inv = invert([[dot(a, b) for b in base] for a in base])
    return rs._gram_inv


def _span_decompose(rs: RootSystem, v: Vec):
    """Write v = (combination of simple roots) + residual orthogonal to them."""
    base = [rs.simple_vector(i) for i in range(rs.rank)]
    coeffs = matvec(_gram_inverse(rs), [dot(a, v) for a in base])
    span_part = tuple(sum(c * b[k] for c, b in zip(coeffs, base)) for k in range(rs.ambient_dim))
    return coeffs, sub(v, span_part)


def apply_to_vector(rs: RootSystem, w: WeylElement, v: Vec) -> Vec:
    """Ambient action of w (identity on the orthocomplement of the roots)."""
    coeffs, residual = _span_decompose(rs, v)
    out = list(residual)
    for i, c in enumerate(coeffs):
        if c:
            image = rs.roots[w.perm[rs.simple[i]]]
            for k in range(rs.ambient_dim):
                out[k] += c * image[k]
    return tuple(out)


# -- diagram automorphisms ---------------------------------------------


class DiagramAutomorphism:
    """A permutation of the base preserving the Cartan matrix."""

    __slots__ = ("node_perm",)

    def __init__(self, node_perm: tuple[int, ...]):
        self.node_perm = tuple(node_perm)

    def __eq__(self, other):
        return isinstance(other, DiagramAutomorphism) and self.node_perm == other.node_perm

    def __hash__(self):
        return hash(self.node_perm)

    def __mul__(self, other: "DiagramAutomorphism") -> "DiagramAutomorphism":
        return DiagramAutomorphism(_pcompose(self.node_perm, other.node_perm))

    def inverse(self) -> "DiagramAutomorphism":
        inv = [0] * len(self.node_perm)
        for i, j in enumerate(self.node_perm):
            inv[j] = i
        return DiagramAutomorphism(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.node_perm))

    def __repr__(self):
        return "DiagramAutomorphism(%s)" % (list(self.node_perm),)


def diagram_automorphism(rs: RootSystem, node_perm: Sequence[int]) -> DiagramAutomorphism:
    """Validate a base permutation as a diagram automorphism.

    Rejects permutations that break the Cartan matrix, naming the first
    offending pair of nodes (1-based).
    """
    perm = tuple(node_perm)
    if sorted(perm) != list(range(rs.rank)):
        raise InvalidAutomorphism("node permutation %s is not a permutation of 0..%d"
                                  % (list(perm), rs.rank - 1))
    cartan = cartan_matrix(rs)
    for i in range(rs.rank):
        for j in range(rs.rank):
            if cartan[perm[i]][perm[j]] != cartan[i][j]:
                raise InvalidAutomorphism(
                    "not a diagram automorphism: Cartan entry at nodes (%d, %d) "
                    "changes under the permutation" % (i + 1, j + 1))
    return DiagramAutomorphism(perm)


def auto_root_perm(rs: RootSystem, auto: DiagramAutomorphism) -> tuple[int, ...]:
    """Root permutation induced by a diagram automorphism."""
    images = [rs.simple_vector(auto.node_perm[i]) for i in range(rs.rank)]
    perm = []
    for cs in rs.coefficients:
        v = tuple(sum(c * b[k] for c, b in zip(cs, images)) for k in range(rs.ambient_dim))
        pos = rs.index.get(v)
        if pos is None:
            raise InvalidAutomorphism("automorphism does not permute the root set")
        perm.append(pos)
    return tuple(perm)


def apply_automorphism(rs: RootSystem, auto: DiagramAutomorphism, v: Vec) -> Vec:
    """Ambient extension of a diagram automorphism (identity off the base span)."""
    coeffs, residual = _span_decompose(rs, v)
    out = list(residual)
    for i, c in enumerate(coeffs):
        if c:
            image = rs.simple_vector(auto.node_perm[i])
            for k in range(rs.ambient_dim):
                out[k] += c * image[k]
    return tuple(out)


def close_automorphisms(rs: RootSystem,
                        generators: Iterable[DiagramAutomorphism]) -> tuple[DiagramAutomorphism, ...]:
    """Closure of a set of diagram automorphisms under composition and inverse."""
    identity = DiagramAutomorphism(tuple(range(rs.rank)))
    gens = [g if isinstance(g, DiagramAutomorphism) else diagram_automorphism(rs, g)
            for g in generators]
    seen = {identity.node_perm: identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = g * a
                if b.node_perm not in seen:
                    seen[b.node_perm] = b
                    nxt.append(b)
        frontier = nxt
    return tuple(seen[p] for p in sorted(seen))


# -- group enumeration -------------------------------------------------


class GroupEnumeration:
    """A fully enumerated permutation group on the roots of a system.

    elements[0] is the identity; generator_indices point at the designated
    generators inside elements. Enumeration order is the deterministic
    breadth-first discovery order.
    """

    def __init__(self, system: RootSystem, elements: Sequence[WeylElement],
                 generator_indices: Sequence[int]):
        self.system = system
        self.elements: tuple[WeylElement, ...] = tuple(elements)
        self.generator_indices: tuple[int, ...] = tuple(generator_indices)
        self.position: dict[tuple[int, ...], int] = {w.perm: k for k, w in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, w: WeylElement):
        return w.perm in self.position

    @property
    def generators(self) -> list[WeylElement]:
        return [self.elements[i] for i in self.generator_indices]

    def __repr__(self):
        return "GroupEnumeration(order %d)" % len(self.elements)


def _bfs_closure(rs: RootSystem, gens: list[WeylElement], order_bound: int) -> GroupEnumeration:
    identity = identity_element(rs)
    elements: list[WeylElement] = [identity]
    seen = {identity.perm: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                new_perm = _pcompose(g.perm, w.perm)
                if new_perm in seen:
                    continue
                word = None
                if g.word is not None and w.word is not None:
                    word = g.word + w.word
                elt = WeylElement(new_perm, word)
                seen[new_perm] = len(elements)
                elements.append(elt)
                if len(elements) > order_bound:
                    raise GroupOrderExceeded(order_bound, len(elements))
                nxt.append(elt)
        frontier = nxt
    gen_indices = []
    for g in gens:
        pos = seen.get(g.perm)
        if pos is not None and pos not in gen_indices:
            gen_indices.append(pos)
    return GroupEnumeration(rs, elements, gen_indices)


def generate_group(rs: RootSystem, order_bound: int = DEFAULT_ORDER_BOUND) -> GroupEnumeration:
    """Enumerate the full Weyl group by closing the simple reflections.

    Fails with GroupOrderExceeded (naming the bound and the partial count)
    if the order passes order_bound. The result is cached on the system.
    """
    if rs._full_group is not None and len(rs._full_group) <= order_bound:
        return rs._full_group
    group = _bfs_closure(rs, simple_reflections(rs), order_bound)
    rs._full_group = group
    return group


def close_elements(rs: RootSystem, generators: Sequence[WeylElement],
                   order_bound: int = DEFAULT_ORDER_BOUND) -> GroupEnumeration:
    """Enumerate the subgroup generated by the given elements."""
    return _bfs_closure(rs, list(generators), order_bound)


# -- orbits and association --------------------------------------------


def subset_orbit(rs: RootSystem, generators: Sequence[WeylElement],
                 subset: Iterable[int]) -> list[tuple[Vec, ...]]:
    """Orbit of the vector set of a base subset under the generated group.

    Returns canonically sorted vector tuples in deterministic BFS order.
    """
    start = rs.root_set(subset)
    seen = {start}
    order = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for state in frontier:
            for g in generators:
                image = g.apply_set(state)
                if image not in seen:
                    seen.add(image)
                    order.append(image)
                    nxt.append(image)
        frontier = nxt
    return [tuple(sorted(rs.roots[i] for i in state)) for state in order]


def _walk_witness(gens: list[WeylElement], parents: dict, state, rs: RootSystem) -> WeylElement:
    chain = []
    while parents[state] is not None:
        prev, gen_pos = parents[state]
        chain.append(gen_pos)
        state = prev
    w = identity_element(rs)
    for gen_pos in reversed(chain):
        w = gens[gen_pos] * w
    return w


def are_associate(rs: RootSystem, generators: Sequence[WeylElement],
                  subset_i: Iterable[int], subset_j: Iterable[int]) -> WeylElement | None:
    """A witness w in the generated group with w(I) = J as vector sets, or None.

    The witness is composed from BFS parents and re-verified before return.
    """
    gens = list(generators)
    start = rs.root_set(subset_i)
    target = rs.root_set(subset_j)
    if len(start) != len(target):
        return None
    if start == target:
        return identity_element(rs)
    parents: dict[frozenset[int], tuple | None] = {start: None}
    frontier = [start]
    found = None
    while frontier and found is None:
        nxt = []
        for state in frontier:
            for gen_pos, g in enumerate(gens):
                image = g.apply_set(state)
                if image in parents:
                    continue
                parents[image] = (state, gen_pos)
                if image == target:
                    found = image
                    break
                nxt.append(image)
            if found is not None:
                break
        frontier = nxt
    if found is None:
        return None
    w = _walk_witness(gens, parents, found, rs)
    assert w.apply_set(start) == target
    return w


def transport_element(src: RootSystem, w: WeylElement, dst: RootSystem) -> WeylElement:
    """Re-express an element as a permutation of another system's roots,
    via its ambient action (the systems must span the same space)."""
    perm = tuple(dst.index[apply_to_vector(src, w, v)] for v in dst.roots)
    return WeylElement(perm, w.word)


def are_associate_full(rs: RootSystem, subset_i: Iterable[int],
                       subset_j: Iterable[int],
                       state_bound: int = DEFAULT_ORDER_BOUND) -> WeylElement | None:
    """Decide association under the whole Weyl group, without enumerating it.

    Two base subsets are associate iff their parabolic closures are
    conjugate as root sets; a closure orbit is far smaller than the orbit
    of the base itself. The witness is assembled in two BFS stages (closure
    orbit, then base matching inside the subsystem's own reflection group)
    and re-verified. Non-reduced systems are routed through the
    non-multipliable subsystem, whose base positions coincide.
    """
    I = frozenset(subset_i)
    J = frozenset(subset_j)
    reduced, mapping = non_multipliable(rs)
    if not mapping.identity:
        w = are_associate_full(reduced, I, J, state_bound)
        if w is None:
            return None
        out = transport_element(reduced, w, rs)
        assert out.apply_set(rs.root_set(I)) == rs.root_set(J)
        return out
    if I == J:
        return identity_element(rs)
    orbit = closure_orbit(rs, I, state_bound)
    target_state = parabolic_closure(rs, J)
    if target_state not in orbit.parents:
        return None
    return orbit.witness_to(J)


class ClosureOrbit:
    """BFS orbit of a parabolic closure under the full Weyl group, with
    parent pointers for witness assembly."""

    def __init__(self, rs: RootSystem, base_subset: frozenset[int], state_bound: int):
        self.rs = rs
        self.base_subset = frozenset(base_subset)
        self.gens = simple_reflections(rs)
        start = parabolic_closure(rs, self.base_subset)
        self.start = start
        parents: dict[frozenset[int], tuple | None] = {start: None}
        frontier = [start]
        while frontier:
            nxt = []
            for state in frontier:
                for gen_pos, g in enumerate(self.gens):
                    image = g.apply_set(state)
                    if image not in parents:
                        parents[image] = (state, gen_pos)
                        nxt.append(image)
                        if len(parents) > state_bound:
                            raise GroupOrderExceeded(state_bound, len(parents))
            frontier = nxt
        self.parents = parents

    def witness_to(self, target_subset: Iterable[int]) -> WeylElement | None:
        """Witness mapping the orbit's base subset onto target_subset, if the
        target's closure lies in this orbit."""
        rs = self.rs
        J = frozenset(target_subset)
        state = parabolic_closure(rs, J)
        if state not in self.parents:
            return None
        w1 = _walk_witness(self.gens, self.parents, state, rs)
        moved = w1.apply_set(rs.root_set(self.base_subset))
        target = rs.root_set(J)
        sub_gens = [simple_reflection(rs, j) for j in sorted(J)]
        if moved == target:
            w = w1
        else:
            parents: dict[frozenset[int], tuple | None] = {moved: None}
            frontier = [moved]
            found = None
            while frontier and found is None:
                nxt = []
                for s in frontier:
                    for gen_pos, g in enumerate(sub_gens):
                        image = g.apply_set(s)
                        if image in parents:
                            continue
                        parents[image] = (s, gen_pos)
                        if image == target:
                            found = image
                            break
                        nxt.append(image)
                    if found is not None:
                        break
                frontier = nxt
            assert found is not None, "bases of one subsystem must be conjugate inside it"
            w2 = _walk_witness(sub_gens, parents, found, rs)
            w = w2 * w1
        assert w.apply_set(rs.root_set(self.base_subset)) == target
        return w


def closure_orbit(rs: RootSystem, base_subset: Iterable[int],
                  state_bound: int = DEFAULT_ORDER_BOUND) -> ClosureOrbit:
    return ClosureOrbit(rs, frozenset(base_subset), state_bound)


# -- fixed subgroups ---------------------------------------------------


def fixed_subgroup(group: GroupEnumeration, autos) -> GroupEnumeration:
    """Elements of an enumerated group commuting with every automorphism in
    the closure of the given one(s), as root permutations.

    This is the unambiguous filter definition; see
    fixed_subgroup_generators for the generator-based fast path.
    """
    rs = group.system
    if isinstance(autos, DiagramAutomorphism):
        autos = [autos]
    closure = close_automorphisms(rs, autos)
    perms = [auto_root_perm(rs, a) for a in closure if not a.is_identity]
    kept = [w for w in group.elements
            if all(_pcompose(p, w.perm) == _pcompose(w.perm, p) for p in perms)]
    return GroupEnumeration(rs, kept, ())


def node_orbits(rs: RootSystem, autos) -> list[tuple[int, ...]]:
    """Orbits of the closure of the given automorphisms on base positions."""
    if isinstance(autos, DiagramAutomorphism):
        autos = [autos]
    closure = close_automorphisms(rs, autos)
    seen = set()
    orbits = []
    for i in range(rs.rank):
        if i in seen:
            continue
        orbit = {a.node_perm[i] for a in closure}
        orbits.append(tuple(sorted(orbit)))
        seen |= orbit
    return sorted(orbits, key=min)


def longest_element(rs: RootSystem, base_subset: Iterable[int]) -> WeylElement:
    """Longest element of the reflection subgroup on a base subset, with a
    reduced word: greedily append reflections while some subset simple root
    stays positive."""
    X = sorted(set(base_subset))
    w = identity_element(rs)
    while True:
        for i in X:
            if rs.positive[w.perm[rs.simple[i]]]:
                w = w * simple_reflection(rs, i)
                break
        else:
            return w


def fixed_subgroup_generators(rs: RootSystem, autos,
                              order_bound: int = DEFAULT_ORDER_BOUND) -> GroupEnumeration:
    """Generator-based fast path for the fixed subgroup of diagram
    automorphisms: close the longest elements of the automorphism orbits on
    the base. Cross-checked against the filter wherever both run."""
    gens = [longest_element(rs, orbit) for orbit in node_orbits(rs, autos)]
    return close_elements(rs, gens, order_bound)
