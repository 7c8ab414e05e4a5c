"""Executable checks of the classical case-by-case classification tables.

Each case builds the relevant index, runs the classification engine, and
compares against an independently computed expectation (a canonical-form
criterion or an explicit table). A failing case is a build-stopping defect,
either in the engine or in the transcription of the expectation.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .index import (classify, rational_partition_by_fixed_subgroup,
                    relative_weyl, validate_index)
from .rootsys import build_root_system, product_system
from .weyl import (diagram_automorphism, fixed_subgroup,
                   fixed_subgroup_generators, generate_group)


class CaseParameterError(ValueError):
    pass


class UnknownCaseError(ValueError):
    pass


@dataclass
class CaseReport:
    case_id: str
    params: dict
    expected: dict
    computed: dict
    passed: bool
    elapsed: float
    notes: list[str] = field(default_factory=list)

    def summary(self) -> str:
        p = " ".join("%s=%s" % kv for kv in sorted(self.params.items()))
        return "%-18s %-22s %-4s %7.2fs" % (
            self.case_id, p or "-", "pass" if self.passed else "FAIL", self.elapsed)


def _classes_per_rank(subsets, partition):
    out: dict[int, int] = {}
    for cls in partition:
        rank = len(subsets[min(cls)])
        out[rank] = out.get(rank, 0) + 1
    return dict(sorted(out.items()))


def _partition_from_key(subsets, key):
    groups: dict = {}
    for pos, subset in enumerate(subsets):
        groups.setdefault(key(subset), []).append(pos)
    return {frozenset(v) for v in groups.values()}


# -- twisted A_n ---------------------------------------------------------


def _interval_components(nodes):
    comps = []
    cur: list[int] = []
    for x in sorted(nodes):
        if cur and x != cur[-1] + 1:
            comps.append(tuple(cur))
            cur = []
        cur.append(x)
    if cur:
        comps.append(tuple(cur))
    return comps


def twisted_a_canonical_form(n: int, subset) -> tuple:
    """Component-size data of a reversal-stable subset of the A_n base: the
    size of the central component plus the sorted sizes of one member of
    each mirrored pair."""
    middle = 0
    sides = []
    for comp in _interval_components(subset):
        lo, hi = comp[0], comp[-1]
        if lo + hi == n - 1:
            middle = len(comp)
        elif lo + hi < n - 1:
            sides.append(len(comp))
    return middle, tuple(sorted(sides))


def _case_2a(n: int):
    if not (isinstance(n, int) and 2 <= n <= 9):
        raise CaseParameterError("case 2A supports 2 <= n <= 9 (got %r)" % (n,))
    rs = build_root_system("A", n)
    reversal = diagram_automorphism(rs, tuple(n - 1 - i for i in range(n)))
    ix = validate_index(rs, (), [reversal])
    report = classify(ix)
    oracle = _partition_from_key(report.subsets,
                                 lambda s: twisted_a_canonical_form(n, s))
    geo = report.partition_of("geometric")
    rat = report.partition_of("rational")
    expected = {"classes_per_rank": _classes_per_rank(
        report.subsets, [tuple(sorted(c)) for c in oracle])}
    computed = {"classes_per_rank": _classes_per_rank(report.subsets,
                                                      report.geometric_classes)}
    passed = (oracle == geo == rat) and report.agreement
    notes = []
    if oracle != geo:
        notes.append("geometric partition disagrees with the multiset criterion")
    if oracle != rat:
        notes.append("rational partition disagrees with the multiset criterion")
    if not report.agreement:
        notes.append("geometric and rational partitions differ")
    return expected, computed, passed, notes


# -- twisted D_n ---------------------------------------------------------


def _d_components(n: int, nodes):
    """Connected components inside the D_n diagram (0-based nodes; the two
    fork nodes n-2 and n-1 are both attached to n-3 and not to each other)."""
    nodes = set(nodes)

    def neighbors(i):
        out = []
        if i <= n - 3:
            if i - 1 >= 0:
                out.append(i - 1)
            if i + 1 <= n - 3:
                out.append(i + 1)
            if i == n - 3:
                out.extend([n - 2, n - 1])
        else:
            out.append(n - 3)
        return [j for j in out if j in nodes]

    comps = []
    remaining = set(nodes)
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = [seed]
        while frontier:
            i = frontier.pop()
            for j in neighbors(i):
                if j not in comp:
                    comp.add(j)
                    frontier.append(j)
        comps.append(tuple(sorted(comp)))
        remaining -= comp
    return comps


def twisted_d_canonical_form(n: int, subset) -> tuple:
    """Tail size (number of coordinates met by the fork component(s)) plus
    the sorted sizes of the remaining chain components."""
    comps = _d_components(n, subset)
    fork = {n - 2, n - 1}
    if fork <= set(subset):
        tail_nodes = set()
        rest = []
        for comp in comps:
            if set(comp) & fork:
                tail_nodes.update(comp)
            else:
                rest.append(len(comp))
        return len(tail_nodes), tuple(sorted(rest))
    return 0, tuple(sorted(len(c) for c in comps))


def _support_count(rs, subset) -> int:
    out = set()
    for i in subset:
        v = rs.simple_vector(i)
        out.update(k for k, c in enumerate(v) if c)
    return len(out)


def _case_2d(n: int):
    if not (isinstance(n, int) and 4 <= n <= 7):
        raise CaseParameterError("case 2D supports 4 <= n <= 7 (got %r)" % (n,))
    rs = build_root_system("D", n)
    swap = list(range(n))
    swap[n - 2], swap[n - 1] = n - 1, n - 2
    ix = validate_index(rs, (), [diagram_automorphism(rs, tuple(swap))])
    report = classify(ix)
    oracle = _partition_from_key(report.subsets,
                                 lambda s: twisted_d_canonical_form(n, s))
    geo = report.partition_of("geometric")
    rat = report.partition_of("rational")
    notes = []
    passed = (oracle == geo == rat) and report.agreement
    if not passed:
        notes.append("partitions disagree with the tail/multiset criterion")
    for witnesses in (report.geometric_witnesses, report.rational_witnesses):
        for (i, j) in witnesses:
            src, dst = report.subsets[i], report.subsets[j]
            if twisted_d_canonical_form(n, src) != twisted_d_canonical_form(n, dst):
                passed = False
                notes.append("witnessed pair with different tails: %s vs %s"
                             % (sorted(src), sorted(dst)))
            if _support_count(rs, src) != _support_count(rs, dst):
                passed = False
                notes.append("witness changes the coordinate-support count")
    if n <= 6:
        # Signed-permutation invariant: no Weyl element changes the number
        # of coordinates met by a stable subset.
        group = generate_group(rs)
        supports = [frozenset(k for k, c in enumerate(v) if c) for v in rs.roots]
        for subset in report.subsets:
            positions = [rs.simple[i] for i in subset]
            count = len(frozenset().union(*[supports[p] for p in positions])) if positions else 0
            for w in group:
                moved = (frozenset().union(*[supports[w.perm[p]] for p in positions])
                         if positions else frozenset())
                if len(moved) != count:
                    passed = False
                    notes.append("coordinate count not preserved on %s" % (sorted(subset),))
                    break
    expected = {"classes_per_rank": _classes_per_rank(
        report.subsets, [tuple(sorted(c)) for c in oracle])}
    computed = {"classes_per_rank": _classes_per_rank(report.subsets,
                                                      report.geometric_classes)}
    return expected, computed, passed, notes


# -- triality D4 ---------------------------------------------------------


def _case_3d4():
    rs = build_root_system("D", 4)
    triality = diagram_automorphism(rs, (2, 1, 3, 0))
    ix = validate_index(rs, (), [triality])
    report = classify(ix)
    computed = {
        "subsets": len(report.subsets),
        "subset_sizes": sorted(len(s) for s in report.subsets),
        "classes": len(report.geometric_classes),
        "agreement": report.agreement,
    }
    expected = {"subsets": 4, "subset_sizes": [0, 1, 3, 4], "classes": 4,
                "agreement": True}
    passed = computed == expected
    return expected, computed, passed, [] if passed else ["table mismatch"]


# -- twisted E6 ----------------------------------------------------------

# 0-based node positions; the nontrivial diagram automorphism swaps the two
# chain ends (1<->6, 3<->5 in 1-based labels) and fixes nodes 2 and 4.
_E6_EXPECTED_CLASSES = [
    [frozenset()],
    [frozenset({1}), frozenset({3})],
    [frozenset({1, 3})],
    [frozenset({2, 4}), frozenset({0, 5})],
    [frozenset({2, 3, 4})],
    [frozenset({1, 2, 4}), frozenset({0, 1, 5}), frozenset({0, 3, 5})],
    [frozenset({0, 2, 4, 5})],
    [frozenset({0, 1, 3, 5})],
    [frozenset({1, 2, 3, 4})],
    [frozenset({0, 2, 3, 4, 5})],
    [frozenset({0, 1, 2, 4, 5})],
    [frozenset({0, 1, 2, 3, 4, 5})],
]


def _case_2e6():
    rs = build_root_system("E", 6)
    auto = diagram_automorphism(rs, (5, 1, 4, 3, 2, 0))
    ix = validate_index(rs, (), [auto])
    report = classify(ix)
    notes = []
    expected_partition = {frozenset(cls) for cls in _E6_EXPECTED_CLASSES}
    geo = {frozenset(report.subsets[p] for p in cls) for cls in report.geometric_classes}
    rat = {frozenset(report.subsets[p] for p in cls) for cls in report.rational_classes}
    passed = geo == expected_partition and rat == expected_partition and report.agreement
    if not passed:
        notes.append("classification table mismatch")
    expected = {"subsets": 16,
                "classes_per_rank": {0: 1, 1: 1, 2: 2, 3: 2, 4: 3, 5: 2, 6: 1},
                "weyl_order": 51840, "fixed_subgroup_order": 1152}
    # Cross-checks through the full Weyl group: the filtered fixed subgroup,
    # its generator-based fast path, and the dual rational computation.
    group = generate_group(rs)
    filtered = fixed_subgroup(group, auto)
    fast = fixed_subgroup_generators(rs, auto)
    dual = rational_partition_by_fixed_subgroup(ix)
    computed = {
        "subsets": len(report.subsets),
        "classes_per_rank": _classes_per_rank(report.subsets, report.geometric_classes),
        "weyl_order": len(group),
        "fixed_subgroup_order": len(filtered),
    }
    if len(group) != 51840:
        passed = False
        notes.append("unexpected Weyl group order %d" % len(group))
    if len(filtered) != 1152 or len(fast) != 1152:
        passed = False
        notes.append("fixed subgroup orders %d (filter) vs %d (generators)"
                     % (len(filtered), len(fast)))
    if report.partition_of("rational") != dual:
        passed = False
        notes.append("dual rational computation disagrees")
    if computed["subsets"] != 16 or computed["classes_per_rank"] != expected["classes_per_rank"]:
        passed = False
        notes.append("subset or rank-count mismatch")
    return expected, computed, passed, notes


# -- inner forms of the general linear family ----------------------------


def inner_block_multiset(r: int, d: int, subset) -> tuple[int, ...]:
    """Multiset of merged block sizes: grid node j*d joins blocks j and j+1."""
    blocks = (r + 1) // d
    sizes = []
    current = 1
    for j in range(1, blocks):
        if (j * d - 1) in subset:
            current += 1
        else:
            sizes.append(current)
            current = 1
    sizes.append(current)
    return tuple(sorted(sizes))


def _case_bn_inner(n: int, d: int, m: int = 0):
    if not all(isinstance(x, int) for x in (n, d, m)):
        raise CaseParameterError("case Bn_inner takes integers n, d, m")
    if not (1 <= n <= 9 and m >= 0 and d >= 1):
        raise CaseParameterError("case Bn_inner supports 1 <= n <= 9, m >= 0, d >= 1 "
                                 "(got n=%r d=%r m=%r)" % (n, d, m))
    if (n - m) % d != 0 or n - m <= 0:
        raise CaseParameterError("case Bn_inner needs d | (n - m) and m < n "
                                 "(got n=%r d=%r m=%r)" % (n, d, m))
    r = n - 1 - m
    if r < 1:
        raise CaseParameterError("case Bn_inner needs n - 1 - m >= 1 "
                                 "(got n=%r m=%r)" % (n, m))
    blocks = (n - m) // d
    rs = build_root_system("A", r)
    grid = {j * d - 1 for j in range(1, blocks)}  # 0-based positions of the d-grid
    delta0 = frozenset(range(r)) - grid
    ix = validate_index(rs, delta0, [])
    rel = relative_weyl(ix)
    report = classify(ix)
    oracle = _partition_from_key(report.subsets,
                                 lambda s: inner_block_multiset(r, d, s))
    rat = report.partition_of("rational")
    geo = report.partition_of("geometric")
    expected = {"relative_order": math.factorial(blocks),
                "rational_classes": len(oracle)}
    computed = {"relative_order": len(rel),
                "rational_classes": len(report.rational_classes)}
    notes = []
    passed = True
    if len(rel) != expected["relative_order"]:
        passed = False
        notes.append("relative Weyl order %d, wanted %d"
                     % (len(rel), expected["relative_order"]))
    if rat != oracle:
        passed = False
        notes.append("rational classes do not match block-size multisets")
    if geo != rat or not report.agreement:
        passed = False
        notes.append("geometric and rational partitions differ")
    return expected, computed, passed, notes


# -- product reduction ----------------------------------------------------


_FACTORS = {
    "2A3": ("A", 3, [(2, 1, 0)]),
    "D4": ("D", 4, []),
}


def _case_product_reduction(factor: str = "2A3", copies: int = 2):
    if factor not in _FACTORS:
        raise CaseParameterError("case product_reduction supports factors %s (got %r)"
                                 % (sorted(_FACTORS), factor))
    if copies not in (2, 3):
        raise CaseParameterError("case product_reduction supports copies in {2, 3} "
                                 "(got %r)" % (copies,))
    series, rank, factor_autos = _FACTORS[factor]
    single = build_root_system(series, rank)
    single_ix = validate_index(single, (), [diagram_automorphism(single, a)
                                            for a in factor_autos])
    single_report = classify(single_ix)

    product = product_system([build_root_system(series, rank) for _ in range(copies)])
    shift = tuple((i + rank) % (rank * copies) for i in range(rank * copies))
    autos = [diagram_automorphism(product, shift)]
    for a in factor_autos:
        diag = tuple(a[i % rank] + rank * (i // rank) for i in range(rank * copies))
        autos.append(diagram_automorphism(product, diag))
    ix = validate_index(product, (), autos)
    report = classify(ix)

    def embed(subset) -> frozenset:
        return frozenset(i + c * rank for i in subset for c in range(copies))

    embedding = {embed(s): pos for pos, s in enumerate(single_report.subsets)}
    notes = []
    passed = len(report.subsets) == len(single_report.subsets)
    if not passed:
        notes.append("stable subsets are not the diagonal embeddings")
    mapping = {}
    for pos, subset in enumerate(report.subsets):
        src = embedding.get(subset)
        if src is None:
            passed = False
            notes.append("unexpected stable subset %s" % (sorted(subset),))
        else:
            mapping[pos] = src
    if passed:
        for kind in ("geometric", "rational"):
            transported = {frozenset(mapping[p] for p in cls)
                           for cls in report.partition_of(kind)}
            if transported != single_report.partition_of(kind):
                passed = False
                notes.append("%s partition does not transport to the factor" % kind)
    if report.agreement != single_report.agreement:
        passed = False
        notes.append("agreement flags differ")
    expected = {"classes": len(single_report.geometric_classes),
                "subsets": len(single_report.subsets)}
    computed = {"classes": len(report.geometric_classes),
                "subsets": len(report.subsets)}
    return expected, computed, passed, notes


# -- registry ------------------------------------------------------------


_CASES = {
    "2A": (_case_2a, "quasi-split outer form of A_n (params: n in 2..9)"),
    "2D": (_case_2d, "quasi-split outer form of D_n (params: n in 4..7)"),
    "3D4": (_case_3d4, "triality form of D_4"),
    "2E6": (_case_2e6, "quasi-split outer form of E_6"),
    "Bn_inner": (_case_bn_inner,
                 "inner general-linear sub-index (params: n, d, m with d | n-m)"),
    "product_reduction": (_case_product_reduction,
                          "transitively permuted product of copies "
                          "(params: factor in {2A3, D4}, copies in {2, 3})"),
}

DEFAULT_SUITE: list[tuple[str, dict]] = (
    [("2A", {"n": n}) for n in range(2, 10)]
    + [("2D", {"n": n}) for n in range(4, 8)]
    + [("3D4", {}), ("2E6", {})]
    + [("Bn_inner", {"n": n, "d": d, "m": m})
       for (n, d, m) in [(6, 3, 0), (6, 2, 0), (8, 2, 0), (9, 3, 0)]]
    + [("product_reduction", {"factor": f, "copies": c})
       for f in ("2A3", "D4") for c in (2, 3)]
)


def list_cases() -> dict[str, str]:
    """Known case ids with a one-line description."""
    return {case_id: desc for case_id, (_, desc) in _CASES.items()}


def run_paper_case(case_id: str, **params) -> CaseReport:
    """Run one case and report expectation, computation, verdict and time."""
    if case_id not in _CASES:
        raise UnknownCaseError("unknown case %r; known cases: %s"
                               % (case_id, ", ".join(sorted(_CASES))))
    runner, _ = _CASES[case_id]
    start = time.perf_counter()
    expected, computed, passed, notes = runner(**params)
    elapsed = time.perf_counter() - start
    return CaseReport(case_id, dict(params), expected, computed, passed, elapsed, notes)
