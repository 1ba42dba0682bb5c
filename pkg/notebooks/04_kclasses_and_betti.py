"""
K-classes and delocalised l2-Betti numbers
==========================================

Exact pairings of the higher Kazhdan projection classes with the
canonical and delocalised traces.
"""

from fractions import Fraction

from higher_kazhdan.groups import FiniteCyclic, FreeProduct, parse_group
from higher_kazhdan.kclass import betti, betti_report, kazhdan_class_free_product, kazhdan_class_product

# %% PSL(2,Z): [p_1] = [1] - [p] - [q]
G = FreeProduct((2, 3))
print(betti_report(G, 1, [G.parse(w) for w in ["e", "s", "t", "tt", "st"]]).to_csv())

# %% 1 - 1/m - 1/n over a grid
for m in range(2, 5):
    row = [betti(kazhdan_class_free_product(m, n), ()) for n in range(3, 7)]
    print(f"m={m}:", " ".join(str(v) for v in row))

# %% products F2^n x F: the averaging tensor pairs to 1/|F|
for n in range(3):
    expr = kazhdan_class_product(n, FiniteCyclic(3))
    g = expr.spec.identity()
    print(f"F2^{n} x Z3:", betti(expr, g))

# %% everything else vanishes
print(betti_report(parse_group("F2xF2xZ2"), 1, [parse_group("F2xF2xZ2").identity()]).to_json())
print("check:", betti(kazhdan_class_product(2, FiniteCyclic(2)), ((), (), 1)) == Fraction(1, 2))
