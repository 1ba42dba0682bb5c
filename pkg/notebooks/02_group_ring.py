"""
Exact group-ring arithmetic
===========================

Rational coefficients, convolution, the involution and the two kinds of
trace: canonical (coefficient of e) and delocalised (sum over a class).
"""

from fractions import Fraction

from higher_kazhdan.group_ring import RingElement, TraceFunctional, averaging_projection, l1_norm
from higher_kazhdan.groups import FreeProduct

G = FreeProduct((2, 3))
one = RingElement.one(G)
s = RingElement.delta(G, G.parse("s"))
t = RingElement.delta(G, G.parse("t"))

# %% averaging projections are self-adjoint idempotents
p = averaging_projection(G, [(), G.parse("s")])
q = averaging_projection(G, [(), G.parse("t"), G.parse("tt")])
print("p =", p.to_string(), " p*p == p:", p * p == p, " p* == p:", p.star() == p)

# %% convolution and the involution
a = (one - s) * (one - t * t)
print("(1-s)(1-t^2) =", a.to_string())
print("its adjoint   =", a.star().to_string())

# %% traces
for g in ["e", "s", "t", "st"]:
    x = G.parse(g)
    tau = TraceFunctional.canonical() if g == "e" else TraceFunctional.delocalised(x)
    print(f"tau_<{g}>(1 - p - q) =", tau(one - p - q))

# %% the l1 norm dominates the operator norm
print("l1(1 - s - t) =", l1_norm(one - s - t), " exact coefficient:", q[()] == Fraction(1, 3))
