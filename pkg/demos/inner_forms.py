#!/usr/bin/env python3
"""Inner forms of the general linear family.

An anisotropic kernel that leaves only every d-th node of an A-type base
models the group of invertible k x k matrices over a degree-d division
algebra. The relative Weyl group is then the symmetric group on the k
diagonal blocks, and two standard Levi subsets are rationally associate
exactly when their block-size multisets agree.
"""

from levi import (build_root_system, classify, relative_weyl, split_space,
                  validate_index)
from levi.cases import inner_block_multiset

for rank, d in [(5, 2), (5, 3), (8, 3)]:
    blocks = (rank + 1) // d
    grid = {j * d - 1 for j in range(1, blocks)}
    delta0 = frozenset(range(rank)) - grid
    rs = build_root_system("A", rank)
    ix = validate_index(rs, delta0, [])
    print("A%d with d = %d: %d blocks, split dimension %d"
          % (rank, d, blocks, split_space(ix).dimension))
    rel = relative_weyl(ix)
    print("  relative Weyl order: %d (= %d!)" % (len(rel), blocks))
    report = classify(ix)
    for cls in report.rational_classes:
        multisets = {inner_block_multiset(rank, d, report.subsets[p]) for p in cls}
        members = ["{%s}" % ",".join(str(i + 1) for i in sorted(report.subsets[p]))
                   for p in cls]
        print("  class %-30s block sizes %s" % ("  ".join(members), sorted(multisets)))
    print("  geometric = rational:", report.agreement)
    print()
