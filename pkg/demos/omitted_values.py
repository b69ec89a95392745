"""Integer bookkeeping for Gauss maps that omit values.

Enumerates every record allowed by the curvature and branching identities
in a small box, shows that none omits four values, and pushes each record
omitting three values through the degree-4 lift to reach a contradiction.
"""
from __future__ import annotations

from collections import Counter

from ramify.fgt import (EndRecord, FgtRecord, enumerate_admissible, no_extension_two_missed,
                        obstruct_three_missed, omitted_value_consequences)

recs = list(enumerate_admissible(2, 5, 6, 4))
print(len(recs), "records; omitted-value counts:", dict(sorted(Counter(r.ell for r in recs).items())))

three = [r for r in recs if r.ell == 3]
print("three omitted values: Euler characteristics", sorted({r.euler for r in three}))
r = next(r for r in three if r.genus == 1)
print("a torus example:", r)
for i in omitted_value_consequences(r).rigidity:
    print("  ", i)

exits = Counter(obstruct_three_missed(r).exit for r in three)
print("every three-omitted record is rejected:", dict(exits))

catenoid = FgtRecord(0, (EndRecord(1, 0, "missed:1"), EndRecord(1, 0, "missed:2")), 0, 1, ("1", "2"))
rep = no_extension_two_missed(catenoid, "w")
print("catenoid with an extra value w:", rep.exit, "(3 does not divide 1 + 0)")
