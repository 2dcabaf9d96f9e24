"""Lower bounds from recursive blowup constructions.

A blowup spec names a small host graph, a weight per part, and how each
part is filled as n grows: with the whole construction again, with a
growing transitive tournament, or with nothing.  Limit densities solve a
linear fixed-point equation and come out as exact rationals whenever the
weights are rational.
"""

import math
from fractions import Fraction

from flagcert import (
    BlowupSpec,
    Orgraph,
    builtin_blowup,
    k12_closed_form,
    limit_densities,
    optimize_weight,
)

print("uniform blowup of the directed 4-cycle, all order-3 densities:")
dens = limit_densities(builtin_blowup("c4"), 4)
for g, v in sorted(dens.orders[3].items(), key=lambda kv: kv[0].to_org1()):
    print(f"  {g.to_org1()}  {v}")
print(f"  and its own order-4 density: {dens.density(Orgraph.from_org1('4:012210'))}")
print()

print("uniform cyclic-triangle blowup:",
      limit_densities(builtin_blowup("c3"), 3).density(Orgraph.from_org1("3:121")))
print("two growing tournaments, edge plus isolated vertex:",
      limit_densities(builtin_blowup("2tournaments"), 3).density(Orgraph.from_org1("3:001")))
print()

print("the out-star construction: one source part of weight s feeding two")
print("sink parts, recursively.  Density as a function of s has a closed form:")
for s_num, s_den in ((1, 3), (1, 4), (2, 5)):
    s = Fraction(s_num, s_den)
    d, rho = k12_closed_form(s)
    print(f"  s = {s}: out-star density {d}, non-edge density {rho}")
print()


def family(s):
    return BlowupSpec(
        host=Orgraph.from_org1("3:110"),
        weights=(s, (1 - s) / 2, (1 - s) / 2),
        fills=("recurse",) * 3,
    )


s_star, value = optimize_weight(family, Orgraph.from_org1("3:022"))
print(f"golden-section optimum: s* = {s_star:.10f}")
print(f"  density there = {value:.12f}")
print(f"  6 - 4 sqrt(2) = {6 - 4 * math.sqrt(2):.12f}")
print(f"  (2 sqrt(2) - 1)/7 = {(2 * math.sqrt(2) - 1) / 7:.10f}")
