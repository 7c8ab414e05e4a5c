"""The case suite: canonical forms, expected tables, parameter validation."""

import pytest

from levi.cases import (DEFAULT_SUITE, CaseParameterError, UnknownCaseError,
                        inner_block_multiset, list_cases, run_paper_case,
                        twisted_a_canonical_form, twisted_d_canonical_form)


def test_case_listing():
    cases = list_cases()
    assert set(cases) == {"2A", "2D", "3D4", "2E6", "Bn_inner", "product_reduction"}
    assert all(isinstance(v, str) and v for v in cases.values())


def test_twisted_a_canonical_form():
    # 0-based nodes of the A_5 base (1-based labels 1..5)
    assert twisted_a_canonical_form(5, frozenset()) == (0, ())
    assert twisted_a_canonical_form(5, {0, 4}) == (0, (1,))
    assert twisted_a_canonical_form(5, {1, 3}) == (0, (1,))
    assert twisted_a_canonical_form(5, {2}) == (1, ())
    assert twisted_a_canonical_form(5, {0, 2, 4}) == (1, (1,))
    assert twisted_a_canonical_form(5, {1, 2, 3}) == (3, ())
    assert twisted_a_canonical_form(5, {0, 1, 3, 4}) == (0, (2,))
    # even rank: the middle component has even size
    assert twisted_a_canonical_form(4, {1, 2}) == (2, ())
    assert twisted_a_canonical_form(4, {0, 3}) == (0, (1,))


def test_twisted_d_canonical_form():
    # 0-based nodes of the D_5 base; fork nodes are 3 and 4
    assert twisted_d_canonical_form(5, frozenset()) == (0, ())
    assert twisted_d_canonical_form(5, {3, 4}) == (2, ())
    assert twisted_d_canonical_form(5, {2, 3, 4}) == (3, ())
    assert twisted_d_canonical_form(5, {0, 3, 4}) == (2, (1,))
    assert twisted_d_canonical_form(5, {0, 1}) == (0, (2,))
    assert twisted_d_canonical_form(5, {0, 1, 2, 3, 4}) == (5, ())
    assert twisted_d_canonical_form(5, {0, 2}) == (0, (1, 1))


def test_inner_block_multiset():
    # r = 8, d = 3: grid nodes at 0-based positions 2 and 5
    base = frozenset({0, 1, 3, 4, 6, 7})
    assert inner_block_multiset(8, 3, base) == (1, 1, 1)
    assert inner_block_multiset(8, 3, base | {2}) == (1, 2)
    assert inner_block_multiset(8, 3, base | {5}) == (1, 2)
    assert inner_block_multiset(8, 3, base | {2, 5}) == (3,)


@pytest.mark.parametrize("case_id,params", DEFAULT_SUITE)
def test_default_suite_passes(case_id, params):
    report = run_paper_case(case_id, **params)
    assert report.passed, (report.case_id, report.params, report.notes)
    assert report.elapsed >= 0
    assert report.params == params


def test_2e6_table_details():
    report = run_paper_case("2E6")
    assert report.passed
    assert report.computed["subsets"] == 16
    assert report.computed["classes_per_rank"] == {0: 1, 1: 1, 2: 2, 3: 2,
                                                   4: 3, 5: 2, 6: 1}
    assert report.computed["weyl_order"] == 51840
    assert report.computed["fixed_subgroup_order"] == 1152


def test_3d4_report():
    report = run_paper_case("3D4")
    assert report.passed
    assert report.computed == {"subsets": 4, "subset_sizes": [0, 1, 3, 4],
                               "classes": 4, "agreement": True}


def test_bn_inner_relative_orders():
    for (n, d, m), order in [((6, 3, 0), 2), ((6, 2, 0), 6),
                             ((8, 2, 0), 24), ((9, 3, 0), 6)]:
        report = run_paper_case("Bn_inner", n=n, d=d, m=m)
        assert report.passed
        assert report.computed["relative_order"] == order


def test_bn_inner_with_anisotropic_tail():
    report = run_paper_case("Bn_inner", n=7, d=2, m=1)
    assert report.passed
    assert report.computed["relative_order"] == 6  # S_3 on three blocks


@pytest.mark.parametrize("params", [
    {"n": 1}, {"n": 10}, {"n": "x"},
])
def test_2a_parameter_validation(params):
    with pytest.raises(CaseParameterError) as err:
        run_paper_case("2A", **params)
    assert "2 <= n <= 9" in str(err.value)


def test_2d_parameter_validation():
    with pytest.raises(CaseParameterError) as err:
        run_paper_case("2D", n=3)
    assert "4 <= n <= 7" in str(err.value)


@pytest.mark.parametrize("params,fragment", [
    ({"n": 7, "d": 3, "m": 0}, "d | (n - m)"),
    ({"n": 12, "d": 2, "m": 0}, "1 <= n <= 9"),
    ({"n": 2, "d": 1, "m": 1}, "n - 1 - m >= 1"),
])
def test_bn_inner_parameter_validation(params, fragment):
    with pytest.raises(CaseParameterError) as err:
        run_paper_case("Bn_inner", **params)
    assert fragment in str(err.value)


def test_product_reduction_parameter_validation():
    with pytest.raises(CaseParameterError):
        run_paper_case("product_reduction", factor="E8", copies=2)
    with pytest.raises(CaseParameterError):
        run_paper_case("product_reduction", factor="2A3", copies=4)


def test_unknown_case():
    with pytest.raises(UnknownCaseError) as err:
        run_paper_case("4F4")
    message = str(err.value)
    assert "4F4" in message
    for known in list_cases():
        assert known in message


def test_case_report_summary_format():
    report = run_paper_case("3D4")
    line = report.summary()
    assert "3D4" in line and "pass" in line
