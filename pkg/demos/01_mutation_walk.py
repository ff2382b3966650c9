"""A walk through seeds and mutations.

Build the rank-3 initial seed with its three frozen companions, fire a few
mutations by hand, then enumerate the whole finite-type atlas and read off
the root labels carried by the denominators.
"""

from clusterchar import (
    DynkinData,
    almost_positive_roots,
    build_c1_seed,
    cluster_expansion,
    compatible,
    enumerate_atlas,
    label_by_denominator,
)

d = DynkinData.make("A3", I0={1, 3})
seed = build_c1_seed(d)
print("initial exchange matrix:")
for row in seed.matrix:
    print("   ", row)

seed1, event = seed.mutate(1)
old, new, plus, minus = event
print("\nmutating direction 1 fires the exchange relation")
print(f"    ({old.text()}) * ({new.text()}) = m+ + m-")
print("    new variable:", new.text())

seed2, event = seed1.mutate(2)
print("then direction 2 produces:", event[1].text())

atlas = enumerate_atlas(build_c1_seed(d))
label_by_denominator(atlas, d)
print(f"\natlas: {atlas.n_clusters()} clusters, "
      f"{atlas.n_variables()} cluster variables, "
      f"{len(atlas.frozen)} frozen")

print("\nvariables labeled by almost positive roots:")
for root in almost_positive_roots(d):
    print(f"    {root}: {atlas.variables[atlas.by_label[root]].text()}")

gamma = (2, 2, 1)
print(f"\ncluster expansion of {gamma}:", cluster_expansion(gamma, atlas))
print("alpha_1 compatible with -alpha_2?",
      compatible((1, 0, 0), (0, -1, 0), atlas))
print("alpha_1 compatible with -alpha_1?",
      compatible((1, 0, 0), (-1, 0, 0), atlas))
