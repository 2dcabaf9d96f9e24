"""Flags and exact density expansions.

A flag is an oriented graph with some vertices labeled by a type; the
key computational fact is the chain rule: expanding a small graph's
density over a larger order is a linear map with rational coefficients,
and two-step expansion equals one-step expansion exactly.
"""

from flagcert import (
    EMPTY_TYPE,
    POINT_TYPE,
    Flag,
    Orgraph,
    chain_expand,
    enumerate_flags,
    flag_density,
)

basis3 = enumerate_flags(POINT_TYPE, 3)
print(f"point flags of order 3: {len(basis3)}")
for i, f in enumerate(basis3.flags):
    print(f"  F{i:<2d} {f.encode()}")

print()
print("the plain edge expanded over the order-3 classes:")
edge = Flag.from_embedding(EMPTY_TYPE, Orgraph.from_org1("2:1"), ())
o3 = enumerate_flags(EMPTY_TYPE, 3)
for f, c in zip(o3.flags, chain_expand(edge, o3)):
    print(f"  {f.graph.to_org1()}  coefficient {c}")

print()
print("chain rule spot check, expanding via order 4 and directly to order 5:")
o4 = enumerate_flags(EMPTY_TYPE, 4)
o5 = enumerate_flags(EMPTY_TYPE, 5)
target = o5.flags[100]
direct = flag_density(edge, target)
via4 = sum(
    flag_density(edge, mid) * flag_density(mid, target) for mid in o4.flags
)
print(f"  p(edge, {target.graph.to_org1()}) = {direct} directly, {via4} in two steps")
assert direct == via4
