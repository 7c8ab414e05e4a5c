"""Index specification files: a small line-based format, plus the bundled
catalog of known-admissible indices.

One index per file (the catalog is the one multi-block file: blank-line
separated blocks, each starting with a name). Simple roots are written as
1-based labels in Bourbaki order; for E6 the branch node carries label 2.
Grammar:

    # comment
    name <label>                 (catalog blocks; optional elsewhere)
    series <A|B|C|D|E|F|G|BC|product>
    rank <integer>               (non-product)
    factor <series> <rank>       (product; one line per factor)
    delta0 [label ...]           (optional; empty means quasi-split)
    automorphism <cycles> [factors <cycles>]
                                 (optional, repeatable; generators of the
                                  Galois action in cycle notation)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .index import TitsIndex, validate_index
from .rootsys import SERIES, build_root_system, product_system
from .weyl import diagram_automorphism


class SpecFileError(ValueError):
    def __init__(self, source: str, line: int, message: str):
        super().__init__("%s:%d: %s" % (source, line, message))
        self.source = source
        self.line = line


@dataclass
class IndexSpec:
    """Parsed index description; see the module docstring for the format."""

    series: str
    rank: int | None = None
    factors: list[tuple[str, int]] | None = None
    delta0: list[int] = field(default_factory=list)          # 1-based labels
    automorphisms: list[list[tuple[int, ...]]] = field(default_factory=list)
    factor_perms: list[list[tuple[int, ...]] | None] = field(default_factory=list)
    name: str | None = None

    @property
    def total_rank(self) -> int:
        if self.factors is not None:
            return sum(r for _, r in self.factors)
        return self.rank or 0

    def describe(self) -> str:
        if self.factors is not None:
            shape = " x ".join("%s%d" % f for f in self.factors)
        else:
            shape = "%s%d" % (self.series, self.rank)
        bits = [shape]
        if self.delta0:
            bits.append("delta0=%s" % ",".join(map(str, sorted(self.delta0))))
        if self.automorphisms:
            bits.append("%d automorphism generator(s)" % len(self.automorphisms))
        else:
            bits.append("split action")
        return "; ".join(bits)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, rank: int, source: str, line: int) -> list[tuple[int, ...]]:
    """Parse disjoint cycles like (1 6)(3 5) over 1-based labels."""
    stripped = text.replace(" ", "").replace(",", "")
    recon = "".join("(%s)" % m.group(1).replace(",", " ")
                    for m in _CYCLE_RE.finditer(text))
    if not _CYCLE_RE.search(text) or stripped != recon.replace(" ", ""):
        raise SpecFileError(source, line, "malformed cycle notation %r" % text)
    cycles = []
    seen: set[int] = set()
    for m in _CYCLE_RE.finditer(text):
        parts = [p for p in re.split(r"[,\s]+", m.group(1).strip()) if p]
        if len(parts) < 2:
            raise SpecFileError(source, line, "cycle %r needs at least two nodes" % m.group(0))
        nodes = []
        for p in parts:
            if not p.isdigit():
                raise SpecFileError(source, line, "bad node %r in cycle" % p)
            label = int(p)
            if not 1 <= label <= rank:
                raise SpecFileError(source, line,
                                    "node out of range: %d (rank %d)" % (label, rank))
            if label in seen:
                raise SpecFileError(source, line, "node %d repeated across cycles" % label)
            seen.add(label)
            nodes.append(label)
        cycles.append(tuple(nodes))
    return cycles


def cycles_to_perm(cycles: list[tuple[int, ...]], n: int) -> tuple[int, ...]:
    """0-based permutation tuple from 1-based disjoint cycles."""
    perm = list(range(n))
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            perm[a - 1] = b - 1
    return tuple(perm)


def perm_to_cycle_string(perm: tuple[int, ...]) -> str:
    """1-based disjoint-cycle rendering; 'id' for the identity."""
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        out.append("(%s)" % " ".join(str(i + 1) for i in cycle))
    return "".join(out) or "id"


def _parse_block(lines: list[tuple[int, str]], source: str) -> IndexSpec:
    spec = IndexSpec(series="")
    pending_autos: list[tuple[int, str, str | None]] = []
    for line_no, line in lines:
        parts = line.split()
        key = parts[0]
        rest = parts[1:]
        if key == "name":
            if not rest:
                raise SpecFileError(source, line_no, "name needs a label")
            spec.name = " ".join(rest)
        elif key == "series":
            if len(rest) != 1:
                raise SpecFileError(source, line_no, "series takes one value")
            spec.series = rest[0]
            if spec.series != "product" and spec.series not in SERIES:
                raise SpecFileError(source, line_no,
                                    "unknown series %r (expected one of %s or product)"
                                    % (spec.series, ", ".join(SERIES)))
        elif key == "rank":
            if len(rest) != 1 or not rest[0].lstrip("-").isdigit():
                raise SpecFileError(source, line_no, "rank takes one integer")
            spec.rank = int(rest[0])
        elif key == "factor":
            if len(rest) != 2 or not rest[1].isdigit():
                raise SpecFileError(source, line_no, "factor takes a series and a rank")
            if rest[0] not in SERIES:
                raise SpecFileError(source, line_no, "unknown factor series %r" % rest[0])
            if spec.factors is None:
                spec.factors = []
            spec.factors.append((rest[0], int(rest[1])))
        elif key == "delta0":
            for p in rest:
                if not p.isdigit():
                    raise SpecFileError(source, line_no, "bad delta0 label %r" % p)
                spec.delta0.append(int(p))
        elif key == "automorphism":
            text = " ".join(rest)
            factor_part = None
            if " factors " in " %s " % text:
                cut = text.index("factors")
                factor_part = text[cut + len("factors"):].strip()
                text = text[:cut].strip()
            pending_autos.append((line_no, text, factor_part))
        else:
            raise SpecFileError(source, line_no, "unknown directive %r" % key)
    if not spec.series:
        raise SpecFileError(source, lines[0][0] if lines else 0, "missing series")
    if spec.series == "product":
        if not spec.factors:
            raise SpecFileError(source, lines[0][0], "product needs factor lines")
    else:
        if spec.factors:
            raise SpecFileError(source, lines[0][0], "factor lines need series product")
        if spec.rank is None:
            raise SpecFileError(source, lines[0][0], "missing rank")
    total = spec.total_rank
    for label in spec.delta0:
        if not 1 <= label <= total:
            raise SpecFileError(source, lines[0][0],
                                "node out of range: delta0 label %d (rank %d)" % (label, total))
    for line_no, text, factor_part in pending_autos:
        spec.automorphisms.append(parse_cycles(text, total, source, line_no))
        if factor_part is None:
            spec.factor_perms.append(None)
        else:
            nfac = len(spec.factors or [])
            if not nfac:
                raise SpecFileError(source, line_no, "factors clause needs series product")
            spec.factor_perms.append(parse_cycles(factor_part, nfac, source, line_no))
    return spec


def _blocks(text: str, source: str):
    block: list[tuple[int, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            if block:
                yield block
                block = []
            continue
        if line.startswith("#"):
            continue
        if line.startswith("name ") and block:
            yield block
            block = []
        block.append((line_no, line))
    if block:
        yield block


def parse_index_spec(text: str, source: str = "<spec>") -> IndexSpec:
    """Parse a file holding exactly one index description."""
    blocks = list(_blocks(text, source))
    if not blocks:
        raise SpecFileError(source, 1, "empty index specification")
    if len(blocks) > 1:
        raise SpecFileError(source, blocks[1][0][0],
                            "expected one index per file (separate blocks found)")
    return _parse_block(blocks[0], source)


def parse_catalog(text: str, source: str = "<catalog>") -> list[IndexSpec]:
    """Parse a catalog file: multiple named blocks."""
    out = []
    for block in _blocks(text, source):
        spec = _parse_block(block, source)
        if spec.name is None:
            raise SpecFileError(source, block[0][0], "catalog entries need a name")
        out.append(spec)
    return out


def build_index(spec: IndexSpec) -> TitsIndex:
    """Realize a parsed specification as a validated index."""
    if spec.series == "product":
        factors = [build_root_system(s, r) for s, r in spec.factors or []]
        rs = product_system(factors)
    else:
        rs = build_root_system(spec.series, spec.rank or 0)
    total = rs.rank
    autos = []
    for pos, cycles in enumerate(spec.automorphisms):
        perm = cycles_to_perm(cycles, total)
        auto = diagram_automorphism(rs, perm)
        declared = spec.factor_perms[pos]
        if declared is not None:
            _check_factor_perm(rs, perm, declared, pos)
        autos.append(auto)
    delta0 = frozenset(label - 1 for label in spec.delta0)
    return validate_index(rs, delta0, autos)


def _check_factor_perm(rs, node_perm, declared_cycles, position):
    blocks = [set(nodes) for (_, _, nodes, _) in rs.factors or []]
    inferred = []
    for k, nodes in enumerate(blocks):
        images = {node_perm[i] for i in nodes}
        target = next((j for j, b in enumerate(blocks) if images <= b), None)
        if target is None:
            raise ValueError("automorphism %d does not permute the factors" % (position + 1,))
        inferred.append(target)
    declared = cycles_to_perm(declared_cycles, len(blocks))
    if tuple(inferred) != declared:
        raise ValueError(
            "automorphism %d: declared factor permutation %s does not match "
            "the node permutation (inferred %s)"
            % (position + 1, perm_to_cycle_string(declared),
               perm_to_cycle_string(tuple(inferred))))


def load_index_file(path: str) -> tuple[IndexSpec, TitsIndex]:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    spec = parse_index_spec(text, source=path)
    return spec, build_index(spec)


def bundled_catalog_text() -> str:
    return resources.files("levi").joinpath("data/catalog.index").read_text(encoding="utf-8")


def load_catalog(path: str | None = None) -> list[IndexSpec]:
    """Entries of the bundled catalog, or of the given file."""
    if path is None:
        return parse_catalog(bundled_catalog_text(), source="<bundled catalog>")
    with open(path, "r", encoding="utf-8") as fh:
        return parse_catalog(fh.read(), source=path)
