"""
Enumerating singular types by dimension
=======================================

List all reduced singular settings of a given central dimension and group
them into singularity types.
"""

from qsing import (
    enumerate_reduced_singular,
    invariant_generators,
    singular_type_classes,
    toric_relations,
)

# Dimension 3: the conifold is the only type.
for d in (3, 4, 5):
    found = enumerate_reduced_singular(d)
    classes = singular_type_classes(found)
    print(f"dimension {d}: {len(found)} settings, {len(classes)} types")
    for s in found:
        print("   ", s.dims, s.arrows, s.marked_loops or "")

# The dimension-4 rings, presented by generators and binomial relations.
print("\ndimension-4 presentations:")
for s in enumerate_reduced_singular(4):
    basis = invariant_generators(s)
    relations = toric_relations(basis)
    print(f"  {s.arrows}: {len(basis)} generators, {len(relations)} relations")
    for rel in relations:
        print("    ", rel.lhs, "=", rel.rhs)

# In dimension 5 two different settings (on 3 and on 4 vertices) present the
# same singularity: their invariant semigroups match under a lattice map.
classes = singular_type_classes(enumerate_reduced_singular(5))
merged = next(c for c in classes if len(c.members) > 1)
print("\nring-isomorphic pair in dimension 5:")
for m in merged.members:
    print("   ", m.dims, m.arrows)
