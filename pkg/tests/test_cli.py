"""Command-line behavior: spec parsing, reports, verify, catalog."""

import json

import pytest

from levi.cli import main
from levi.specfile import (SpecFileError, build_index, cycles_to_perm,
                           load_catalog, parse_catalog, parse_cycles,
                           parse_index_spec, perm_to_cycle_string)

E6_SPEC = "series E\nrank 6\nautomorphism (1 6)(3 5)\n"


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_cycles():
    assert parse_cycles("(1 6)(3 5)", 6, "t", 1) == [(1, 6), (3, 5)]
    assert cycles_to_perm([(1, 6), (3, 5)], 6) == (5, 1, 4, 3, 2, 0)
    assert perm_to_cycle_string((5, 1, 4, 3, 2, 0)) == "(1 6)(3 5)"
    assert perm_to_cycle_string((0, 1)) == "id"
    with pytest.raises(SpecFileError) as err:
        parse_cycles("(1 9)", 6, "t", 3)
    assert "node out of range" in str(err.value)
    with pytest.raises(SpecFileError):
        parse_cycles("(1)(2 3)", 3, "t", 1)
    with pytest.raises(SpecFileError):
        parse_cycles("(1 2)(2 3)", 3, "t", 1)
    with pytest.raises(SpecFileError):
        parse_cycles("1 2", 3, "t", 1)


def test_parse_index_spec_roundtrip():
    spec = parse_index_spec(E6_SPEC)
    assert spec.series == "E" and spec.rank == 6
    assert spec.automorphisms == [[(1, 6), (3, 5)]]
    ix = build_index(spec)
    assert len(ix.gamma) == 2


def test_parse_index_spec_product():
    text = ("series product\nfactor A 3\nfactor A 3\ndelta0\n"
            "automorphism (1 4)(2 5)(3 6) factors (1 2)\n")
    spec = parse_index_spec(text)
    assert spec.factors == [("A", 3), ("A", 3)]
    assert spec.factor_perms[0] == [(1, 2)]
    ix = build_index(spec)
    assert ix.rs.series == "Product"


def test_parse_index_spec_bad_factor_perm():
    text = ("series product\nfactor A 3\nfactor A 3\n"
            "automorphism (1 4)(2 5)(3 6) factors (1)(2)\n")
    with pytest.raises(SpecFileError):
        parse_index_spec(text)
    text = ("series product\nfactor A 3\nfactor A 3\n"
            "automorphism (1 3)(4 6) factors (1 2)\n")
    spec = parse_index_spec(text)
    with pytest.raises(ValueError) as err:
        build_index(spec)
    assert "factor permutation" in str(err.value)


def test_parse_errors_carry_position(tmp_path):
    with pytest.raises(SpecFileError) as err:
        parse_index_spec("series A\nrank 3\nbogus 1\n", source="f.index")
    assert str(err.value).startswith("f.index:3:")
    with pytest.raises(SpecFileError):
        parse_index_spec("rank 3\n")
    with pytest.raises(SpecFileError):
        parse_index_spec("series A\n")
    with pytest.raises(SpecFileError):
        parse_index_spec("series A\nrank 2\ndelta0 5\n")
    with pytest.raises(SpecFileError):
        parse_index_spec("")


def test_catalog_loads_and_names_are_unique():
    entries = load_catalog()
    names = [spec.name for spec in entries]
    assert len(names) == len(set(names))
    assert "quasi-split-2E6" in names
    assert any(spec.factors for spec in entries)


def test_catalog_requires_names():
    with pytest.raises(SpecFileError):
        parse_catalog("series A\nrank 1\n")


def test_cli_classify_text(tmp_path, capsys):
    path = write(tmp_path, "e6.index", E6_SPEC)
    assert main(["classify", path]) == 0
    out = capsys.readouterr().out
    assert "stable Levi subsets: 16" in out
    assert "geometric classes: 12" in out
    assert "rational classes: 12" in out
    assert "agreement: yes" in out


def test_cli_classify_split_a1(tmp_path, capsys):
    path = write(tmp_path, "a1.index", "series A\nrank 1\n")
    assert main(["classify", path]) == 0
    out = capsys.readouterr().out
    assert "stable Levi subsets: 2" in out
    assert "geometric classes: 2" in out


def test_cli_classify_malformed_cycle(tmp_path, capsys):
    path = write(tmp_path, "bad.index", "series A\nrank 6\nautomorphism (1 9)\n")
    assert main(["classify", path]) == 2
    err = capsys.readouterr().err
    assert "node out of range" in err


def test_cli_classify_missing_file(capsys):
    assert main(["classify", "/nonexistent/x.index"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_classify_json_roundtrip(tmp_path, capsys):
    path = write(tmp_path, "e6.index", E6_SPEC)
    assert main(["classify", path, "--format", "json"]) == 0
    first = capsys.readouterr().out
    document = json.loads(first)
    assert document["agreement"] is True
    assert len(document["subsets"]) == 16
    assert len(document["geometric_classes"]) == 12
    assert json.loads(json.dumps(document)) == document
    assert main(["classify", path, "--format", "json"]) == 0
    second = capsys.readouterr().out
    assert first == second  # bit-exact reports across runs


def test_cli_classify_witness_words_replay(tmp_path, capsys):
    from levi.rootsys import build_root_system
    from levi.weyl import identity_element, simple_reflection
    path = write(tmp_path, "e6.index", E6_SPEC)
    assert main(["classify", path, "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    rs = build_root_system("E", 6)
    subsets = [frozenset(i - 1 for i in s) for s in document["subsets"]]
    for item in document["witnesses"]["geometric"]:
        w = identity_element(rs)
        for label in item["word"]:
            w = w * simple_reflection(rs, label - 1)
        src = subsets[item["source"]]
        dst = subsets[item["target"]]
        assert w.apply_set(rs.root_set(src)) == rs.root_set(dst)


def test_cli_order_bound(tmp_path, capsys):
    path = write(tmp_path, "e6.index", E6_SPEC)
    assert main(["classify", path, "--order-bound", "5"]) == 3
    err = capsys.readouterr().err
    assert "5" in err and "bound" in err


def test_cli_verify_single(capsys):
    assert main(["verify", "3D4"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out and "1/1" in out


def test_cli_verify_with_params(capsys):
    assert main(["verify", "2A", "--n", "3"]) == 0
    out = capsys.readouterr().out
    assert "n=3" in out


def test_cli_verify_case_sweep(capsys):
    assert main(["verify", "Bn_inner"]) == 0
    out = capsys.readouterr().out
    assert "4/4" in out


def test_cli_verify_unknown_case(capsys):
    assert main(["verify", "nope"]) == 2
    err = capsys.readouterr().err
    assert "unknown case" in err and "2E6" in err


def test_cli_verify_bad_params(capsys):
    assert main(["verify", "2A", "--n", "77"]) == 2
    assert "2 <= n <= 9" in capsys.readouterr().err


def test_cli_verify_json(capsys):
    assert main(["verify", "3D4", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload[0]["case"] == "3D4" and payload[0]["passed"] is True


def test_cli_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert "quasi-split-2E6" in out
    assert "inner-A5-d3" in out


def test_cli_catalog_custom_file(tmp_path, capsys):
    path = write(tmp_path, "cat.index", "name only-entry\nseries A\nrank 2\n")
    assert main(["catalog", "list", "--catalog", path]) == 0
    assert "only-entry" in capsys.readouterr().out
    bad = write(tmp_path, "bad.index", "series A\nrank 2\n")
    assert main(["catalog", "list", "--catalog", bad]) == 2


def test_cli_entry_point_installed():
    import shutil
    assert shutil.which("levi") is not None
