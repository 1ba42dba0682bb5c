"""
Heat-semigroup traces
=====================

tau_<g>(exp(-t Delta)) two ways: an exact rational Taylor sum with a
certified remainder, and a floating-point exponential of the operator
compressed to a Cayley ball.  At small t they must agree; at large t the
float engine approaches the exact Betti number.
"""

from fractions import Fraction

from higher_kazhdan.complexes import free_group_complex, free_product_complex
from higher_kazhdan.spectral import heat_limit_scan, heat_trace_exact, heat_trace_numeric

G_D1 = free_product_complex(2, 3).laplacian(1)
G = G_D1.spec

# %% agreement at small t
for w in ["e", "s", "st"]:
    g = G.parse(w)
    value, bound = heat_trace_exact(G_D1, Fraction(1, 4), g, 20)
    num = heat_trace_numeric(G_D1, 0.25, g, 16)
    print(f"{w}: exact {float(value):.12f} +- {float(bound):.1e}, float {num:.12f}")

# %% large t: the identity class settles near 1/6, the s class only slowly nears -1/2
report = heat_limit_scan(G_D1, [(), G.parse("s")], [2, 5, 10], [8, 12, 16],
                         exact={"e": Fraction(1, 6), "s": Fraction(-1, 2)})
print(report.to_csv())
print("status:", report.status, "deviation:", report.deviations())

# %% the s class against t at a fixed radius
for t in [5, 10, 20]:
    print(t, heat_trace_numeric(G_D1, t, G.parse("s"), 16))

# %% the free group converges quickly to 1
F = free_group_complex(2).laplacian(1)
print("F2:", heat_trace_numeric(F, 10, (), 8))
