"""
Groups, normal forms and conjugacy
==================================

Free products of cyclic groups, free groups and their products, with
words in normal form and a decision procedure for conjugacy.
"""

from higher_kazhdan.groups import ball, cyclic_reduce, is_conjugate, parse_group

# %% PSL(2,Z) is Z2 * Z3; elements are alternating syllables
G = parse_group("Z2*Z3")
s, t = G.parse("s"), G.parse("t")
print(G, G.format(G.mul(s, s)), G.format(G.mul(G.parse("st"), G.parse("tts"))))

# %% conjugacy: cyclically reduce, then compare up to rotation
x = G.parse("tstt")
print("tstt reduces to", G.format(cyclic_reduce(G, x)))
print("tstt ~ s ?", is_conjugate(G, x, s))
print("st ~ ts ?", is_conjugate(G, G.parse("st"), G.parse("ts")))

# %% Cayley balls in breadth-first order (layer, then lexicographic)
print([G.format(g) for g in ball(G, 2)])
F2 = parse_group("F2")
print("F2 ball sizes", [len(ball(F2, r)) for r in range(5)])

# %% products: 'x' binds looser than '*'
P = parse_group("F2xF2xZ2")
print(P, P.format(P.mul(P.parse("a|B|t"), P.parse("b|b|t"))))
