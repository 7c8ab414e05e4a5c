#!/usr/bin/env python3
"""Non-reduced root systems and the non-multipliable reduction.

BC systems contain roots a with 2a also a root (they occur for
pseudo-reductive groups in characteristic 2). Dropping every multipliable
root leaves a C-type system in the same space, with the same Weyl group and
a position-preserving correspondence of parabolic subsets - so the whole
classification transports across the reduction.
"""

from levi import (build_root_system, classify, non_multipliable,
                  parabolic_closure, subsystem_type, validate_index)

bc = build_root_system("BC", 2)
reduced, mapping = non_multipliable(bc)
print("BC2 has %d roots; the non-multipliable subsystem has %d (type %s)"
      % (len(bc.roots), len(reduced.roots),
         subsystem_type(reduced, range(len(reduced.roots)))))

print("\nparabolic subsets transport by position:")
for subset in ([], [0], [1], [0, 1]):
    closure = parabolic_closure(bc, subset)
    image = mapping(closure)
    print("  base %-8s closure %2d roots -> %2d roots (%s)"
          % (subset, len(closure), len(image),
             subsystem_type(reduced, image) if image else "empty"))

rep_bc = classify(validate_index(bc, (), []))
rep_c = classify(validate_index(reduced, (), []))
print("\nsplit BC2 classes:", [tuple(sorted(rep_bc.subsets[p] for p in cls))
                               for cls in rep_bc.geometric_classes] ==
      [tuple(sorted(rep_c.subsets[p] for p in cls))
       for cls in rep_c.geometric_classes] and "match the reduced C2 classes")
print("agreement on both sides:", rep_bc.agreement and rep_c.agreement)
