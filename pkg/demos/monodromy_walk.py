"""Monodromy of the degree-4 map by tracking its fiber around each branch value."""
from __future__ import annotations

from ramify.monodromy import cycle_notation, monodromy_rep, regularity_probe
from ramify.picard import construct
from ramify.sphere import INF

f = construct(16).map
rep = monodromy_rep(f, [0, 16, INF])
print("base value:", rep.base)
print("base fiber:", ", ".join(str(p) for p in rep.base_fiber))
for y in rep.order:
    print(f"  loop around {y}: {cycle_notation(rep.perms[y])}")
print("product of the loops is the identity:", rep.relation_holds)
print("sheets form one orbit:", rep.transitive)

# halving the loop radius does not change the answer
small = monodromy_rep(f, [0, 16, INF], base=rep.base, radius_scale=0.15)
print("stable under smaller loops:", small.ordered_perms() == rep.ordered_perms())

probe = regularity_probe(f, [0, 16, INF], trials=100, seed=0)
print("100 random values all have 4 simple preimages:", probe.regular)
