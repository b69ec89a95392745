"""A degree-4 map of the sphere branched over exactly three values.

Builds the map for w = 16 in exact arithmetic, prints its passport, then
moves the three branch values to 1, i, -1 with a Mobius change of target.
"""
from __future__ import annotations

from ramify.picard import check_converse, construct, construct_for_targets
from ramify.rational_map import fiber
from ramify.scalars import I
from ramify.sphere import INF

cfg = construct(16)
print("map:", cfg.map)
for entry in cfg.passport.entries:
    pts = ", ".join(f"{p} (local degree {e})" for p, e in zip(entry.points, entry.local_degrees))
    print(f"  over {entry.value}: {pts}")
print("total branching:", cfg.passport.total_branching, "(= 2*4 - 2)")

# the six preimages of the branch values are the only points sent to them
print("preimages of the branch values:", ", ".join(map(str, cfg.X)))

# the same shape over any three values
tp = construct_for_targets((1, I, -1))
for y in tp.targets:
    print(f"  over {y}:", sorted(m for _, m in fiber(tp.composite, y)))

# counting identity for the branch set, two ways of writing it
rep = check_converse(cfg.passport, [0, 16, INF])
print(f"derived form {rep.derived_lhs} = {rep.derived_rhs}; printed form {rep.printed_lhs} vs {rep.printed_rhs}")
