"""Index validation, split spaces, relative roots/Weyl groups, classify."""

import itertools
import random
from fractions import Fraction

import pytest
from conftest import random_valid_index, weyl_order_oracle

from levi.linalg import dot
from levi.rootsys import build_root_system, parabolic_closure, product_system
from levi.index import (InvalidIndex, classify, rational_partition_by_fixed_subgroup,
                        relative_roots, relative_weyl, relative_weyl_generators,
                        split_space, stable_levi_subsets, validate_index,
                        verify_theorem, weyl_order)
from levi.specfile import build_index, load_catalog
from levi.weyl import (InvalidAutomorphism, apply_automorphism, apply_to_vector,
                       auto_root_perm, GroupOrderExceeded)


def quasi_split_index(series, rank, perm):
    rs = build_root_system(series, rank)
    return validate_index(rs, (), [perm])


def test_validate_e6_quasi_split(e6):
    ix = validate_index(e6, (), [(5, 1, 4, 3, 2, 0)])
    assert len(ix.gamma) == 2
    assert ix.is_quasi_split


def test_validate_closes_gamma():
    d4 = build_root_system("D", 4)
    ix = validate_index(d4, (), [(2, 1, 3, 0)])
    assert len(ix.gamma) == 3  # cyclic closure of the triality generator


def test_validate_rejects_unstable_kernel():
    a3 = build_root_system("A", 3)
    validate_index(a3, (1,), [(2, 1, 0)])  # the middle node is fine
    with pytest.raises(InvalidIndex) as err:
        validate_index(a3, (0,), [(2, 1, 0)])
    assert "node 1 to node 3" in str(err.value)


def test_validate_rejects_non_automorphism():
    a3 = build_root_system("A", 3)
    with pytest.raises(InvalidAutomorphism) as err:
        validate_index(a3, (), [(1, 0, 2)])
    assert "Cartan" in str(err.value)


def test_validate_rejects_bad_kernel_position():
    a3 = build_root_system("A", 3)
    with pytest.raises(InvalidIndex):
        validate_index(a3, (7,), [])


def test_stable_subsets_2e6(e6):
    ix = validate_index(e6, (), [(5, 1, 4, 3, 2, 0)])
    subsets = stable_levi_subsets(ix)
    assert len(subsets) == 16
    # exhaustive oracle: filter all subsets for stability
    perm = (5, 1, 4, 3, 2, 0)
    expected = {frozenset(s) for k in range(7)
                for s in itertools.combinations(range(6), k)
                if {perm[i] for i in s} == set(s)}
    assert set(subsets) == expected
    sizes = [len(s) for s in subsets]
    assert sizes == sorted(sizes)


def test_stable_subsets_3d4():
    d4 = build_root_system("D", 4)
    ix = validate_index(d4, (), [(2, 1, 3, 0)])
    subsets = stable_levi_subsets(ix)
    assert [sorted(s) for s in subsets] == [[], [1], [0, 2, 3], [0, 1, 2, 3]]


def test_stable_subsets_split_a2():
    a2 = build_root_system("A", 2)
    ix = validate_index(a2, (), [])
    assert [sorted(s) for s in stable_levi_subsets(ix)] == [[], [0], [1], [0, 1]]


def test_split_space_dimensions(e6):
    a2 = build_root_system("A", 2)
    assert split_space(validate_index(a2, (), [])).dimension == 2
    assert split_space(validate_index(a2, (0, 1), [])).dimension == 0
    ix = validate_index(e6, (), [(5, 1, 4, 3, 2, 0)])
    assert split_space(ix).dimension == 4
    a3 = build_root_system("A", 3)
    assert split_space(validate_index(a3, (), [(2, 1, 0)])).dimension == 2
    a5 = build_root_system("A", 5)
    assert split_space(validate_index(a5, (0, 1, 3, 4), [])).dimension == 1


def test_split_space_invariants():
    rng = random.Random(5)
    for _ in range(25):
        ix = random_valid_index(rng)
        sp = split_space(ix)
        for b in sp.basis:
            for a in ix.gamma:
                assert apply_automorphism(ix.rs, a, b) == b
            for j in ix.delta0:
                assert dot(ix.rs.simple_vector(j), b) == 0
        # basis vectors are independent
        if sp.basis:
            from levi.linalg import rref
            rows = [list(b) for b in sp.basis]
            _, pivots = rref(rows)
            assert len(pivots) == len(sp.basis)


def test_split_space_dimension_matches_orbit_count_on_catalog():
    for spec in load_catalog():
        ix = build_index(spec)
        free = [o for o in ix.orbits() if not set(o) & ix.delta0]
        assert split_space(ix).dimension == len(free), spec.name


def test_relative_roots_split_identity():
    b2 = build_root_system("B", 2)
    ix = validate_index(b2, (), [])
    rel = relative_roots(ix, range(len(b2.roots)))
    assert rel == set(b2.roots)


def test_relative_roots_2a3():
    a3 = build_root_system("A", 3)
    ix = validate_index(a3, (), [(2, 1, 0)])
    rel = relative_roots(ix, range(len(a3.roots)))
    # independent oracle: average each root with its image under the
    # automorphism's root permutation
    auto = ix.gamma[1] if not ix.gamma[0].is_identity else ix.gamma[0]
    nontrivial = next(a for a in ix.gamma if not a.is_identity)
    perm = auto_root_perm(a3, nontrivial)
    half = Fraction(1, 2)
    expected = set()
    for i, v in enumerate(a3.roots):
        w = a3.roots[perm[i]]
        avg = tuple((x + y) * half for x, y in zip(v, w))
        if any(c != 0 for c in avg):
            expected.add(avg)
    assert rel == expected
    assert len(rel) == 8
    # the projections form two squared-length classes with ratio 2
    lengths = sorted({dot(v, v) for v in rel})
    assert len(lengths) == 2 and lengths[1] == 2 * lengths[0]


def test_relative_roots_of_kernel_closure_is_empty():
    for spec in load_catalog():
        ix = build_index(spec)
        closure = parabolic_closure(ix.rs, ix.delta0)
        assert relative_roots(ix, closure) == frozenset(), spec.name


def test_relative_weyl_split():
    a2 = build_root_system("A", 2)
    ix = validate_index(a2, (), [])
    rel = relative_weyl(ix)
    assert len(rel) == 6  # the restriction is faithful on the base span


def test_relative_weyl_2e6(e6):
    ix = validate_index(e6, (), [(5, 1, 4, 3, 2, 0)])
    rel = relative_weyl(ix, method="generators")
    assert len(rel) == 1152 == weyl_order_oracle("F", 4)


def test_relative_weyl_inner_gl():
    a5 = build_root_system("A", 5)
    ix = validate_index(a5, (0, 1, 3, 4), [])
    assert len(relative_weyl(ix)) == 2


QS_MATRIX = [
    ("A", 2, (1, 0)), ("A", 3, (2, 1, 0)), ("A", 4, (3, 2, 1, 0)),
    ("A", 5, (4, 3, 2, 1, 0)), ("D", 4, (0, 1, 3, 2)), ("D", 4, (2, 1, 3, 0)),
]


@pytest.mark.parametrize("series,rank,perm", QS_MATRIX)
def test_relative_weyl_filter_matches_generators(series, rank, perm):
    ix = quasi_split_index(series, rank, perm)
    filtered = relative_weyl(ix, method="filter")
    generated = relative_weyl(ix, method="generators")
    assert {t.matrix for t in filtered} == {t.matrix for t in generated}


@pytest.mark.parametrize("delta0", [(0, 2, 4), (0, 1, 3, 4), ()])
def test_relative_weyl_filter_matches_generators_inner(delta0):
    # kernels whose complement is a d-grid: the cataloged inner-form shape
    a5 = build_root_system("A", 5)
    ix = validate_index(a5, delta0, [])
    filtered = relative_weyl(ix, method="filter")
    generated = relative_weyl(ix, method="generators")
    assert {t.matrix for t in filtered} == {t.matrix for t in generated}


def test_relative_weyl_generators_sound_on_arbitrary_kernel():
    # off the cataloged shapes the fast path may under-generate, but every
    # generated transform must still appear in the filtered ground truth
    a5 = build_root_system("A", 5)
    ix = validate_index(a5, (1, 3), [])
    filtered = {t.matrix for t in relative_weyl(ix, method="filter")}
    generated = {t.matrix for t in relative_weyl(ix, method="generators")}
    assert generated <= filtered


def test_relative_weyl_order_bound():
    b3 = build_root_system("B", 3)
    ix = validate_index(b3, (), [])
    with pytest.raises(GroupOrderExceeded) as err:
        relative_weyl(ix, order_bound=5, method="filter")
    assert err.value.bound == 5


def test_relative_generators_stabilize_split_space():
    rng = random.Random(17)
    for _ in range(20):
        ix = random_valid_index(rng)
        sp = split_space(ix)
        for w in relative_weyl_generators(ix):
            for b in sp.basis:
                assert sp.contains(apply_to_vector(ix.rs, w, b))


def test_classify_split_a2():
    a2 = build_root_system("A", 2)
    report = classify(validate_index(a2, (), []))
    named = [{tuple(sorted(report.subsets[p])) for p in cls}
             for cls in report.geometric_classes]
    assert named == [{()}, {(0,), (1,)}, {(0, 1)}]
    assert report.partition_of("geometric") == report.partition_of("rational")
    assert report.agreement


def test_classify_anisotropic():
    a2 = build_root_system("A", 2)
    report = classify(validate_index(a2, (0, 1), []))
    assert len(report.subsets) == 1
    assert len(report.geometric_classes) == 1
    assert report.agreement


def test_classify_deterministic():
    def run():
        a4 = build_root_system("A", 4)
        ix = validate_index(a4, (), [(3, 2, 1, 0)])
        r = classify(ix)
        return (r.subsets, r.geometric_classes, r.rational_classes,
                {k: w.word for k, w in r.geometric_witnesses.items()},
                {k: w.word for k, w in r.rational_witnesses.items()},
                r.agreement)

    assert run() == run()


def test_verify_theorem_on_catalog():
    for spec in load_catalog():
        ok, report = verify_theorem(build_index(spec))
        assert ok, spec.name
        assert report.agreement


def test_witnesses_reverify_on_catalog():
    for spec in load_catalog():
        ix = build_index(spec)
        report = classify(ix)
        rs = ix.rs
        for (i, j), w in report.geometric_witnesses.items():
            src = {rs.roots[k] for k in rs.root_set(report.subsets[i])}
            dst = {rs.roots[k] for k in rs.root_set(report.subsets[j])}
            assert {apply_to_vector(rs, w, v) for v in src} == dst
        for (i, j), w in report.rational_witnesses.items():
            src = relative_roots(ix, parabolic_closure(rs, report.subsets[i]))
            dst = relative_roots(ix, parabolic_closure(rs, report.subsets[j]))
            assert {apply_to_vector(rs, w, v) for v in src} == dst


def test_rational_refines_geometric_on_random_indices():
    rng = random.Random(20260809)
    for _ in range(100):
        ix = random_valid_index(rng)
        report = classify(ix)
        geo = report.partition_of("geometric")
        for rational_class in report.partition_of("rational"):
            assert any(rational_class <= geometric_class
                       for geometric_class in geo), ix


@pytest.mark.parametrize("series,rank,perm", QS_MATRIX + [
    ("D", 5, (0, 1, 2, 4, 3)), ("E", 6, (5, 1, 4, 3, 2, 0)),
])
def test_quasi_split_dual_computation(series, rank, perm):
    ix = quasi_split_index(series, rank, perm)
    report = classify(ix)
    assert report.partition_of("rational") == rational_partition_by_fixed_subgroup(ix)


def test_dual_computation_rejects_non_quasi_split():
    a3 = build_root_system("A", 3)
    with pytest.raises(InvalidIndex):
        rational_partition_by_fixed_subgroup(validate_index(a3, (1,), []))


def test_classify_order_bound_propagates():
    a2 = build_root_system("A", 2)
    with pytest.raises(GroupOrderExceeded):
        classify(validate_index(a2, (), []), order_bound=2)


def test_weyl_order_formula():
    for series, rank in [("A", 4), ("B", 3), ("C", 5), ("D", 6), ("BC", 2),
                         ("E", 6), ("F", 4), ("G", 2)]:
        assert weyl_order(build_root_system(series, rank)) == \
            weyl_order_oracle(series, rank)
    prod = product_system([build_root_system("A", 2), build_root_system("B", 2)])
    assert weyl_order(prod) == 6 * 8


def test_split_bc_agrees_with_reduced_c():
    # classification of a split non-reduced index transports through the
    # non-multipliable map (which preserves base positions)
    from levi.rootsys import non_multipliable
    for n in (1, 2, 3):
        bc = build_root_system("BC", n)
        c, _ = non_multipliable(bc)
        rep_bc = classify(validate_index(bc, (), []))
        rep_c = classify(validate_index(c, (), []))
        assert rep_bc.subsets == rep_c.subsets
        assert rep_bc.partition_of("geometric") == rep_c.partition_of("geometric")
        assert rep_bc.partition_of("rational") == rep_c.partition_of("rational")
        assert rep_bc.agreement and rep_c.agreement
