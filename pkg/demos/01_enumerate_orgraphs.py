"""Enumerating oriented graphs up to isomorphism.

Every graph is stored as a digit string over the vertex pairs (i, j)
with i < j: 0 no arc, 1 arc i -> j, 2 arc j -> i.  The canonical class
representative is the lexicographically smallest digit string over all
relabelings, so equality of classes is string equality.
"""

from flagcert import Orgraph, converse, enumerate_orgraphs, induced_density

for n in range(7):
    print(f"order {n}: {len(enumerate_orgraphs(n))} classes")

print()
print("the seven order-3 classes:")
NAMES = {
    "3:000": "empty",
    "3:001": "single arc",
    "3:011": "in-star",
    "3:012": "directed path",
    "3:022": "out-star",
    "3:111": "transitive tournament",
    "3:121": "cyclic triangle",
}
for g in enumerate_orgraphs(3):
    enc = g.to_org1()
    rev = converse(g).to_org1()
    note = "self-converse" if rev == enc else f"converse is {NAMES[rev]}"
    print(f"  {enc}  {NAMES[enc]:22s} ({note})")

print()
print("one encoding per class, regardless of how the input is labeled:")
for text in ("3:012", "3:101", "3:210"):
    print(f"  {text} canonicalizes to {Orgraph.from_org1(text).canonical().to_org1()}")

print()
c4 = Orgraph.from_org1("4:012210")
p3 = Orgraph.from_org1("3:012")
print("induced densities are exact rationals:")
print(f"  every triple of the 4-cycle induces the path: {induced_density(p3, c4)}")
