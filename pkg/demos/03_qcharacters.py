"""q-characters: the iterative algorithm, truncation, and factorization.

Runs the character algorithm on a small highest weight, shows where it is
known to drop a monomial, truncates characters to the level-1 window, and
factors a tensor product into its simple constituents.
"""

from clusterchar import (
    DynkinData,
    decompose_product,
    frenkel_mukhin,
    kr_char,
    parse_ymono,
    sl2_simple_qchar,
    t_system_check,
    truncated_char_c1,
)
from clusterchar.qchar import format_ymono

A2 = DynkinData.make("A2", I0={1})

m = parse_ymono("Y[1,0] Y[2,3]")
char = frenkel_mukhin(m, A2)
print(f"FM({format_ymono(m)}) has {char.dimension()} monomials:")
for mono, mult in sorted(char.flatten_monos().items()):
    print(f"    {mult} * {format_ymono(mono)}")

m2 = parse_ymono("Y[1,0]^2 Y[2,3]")
fm = frenkel_mukhin(m2, A2)
product = frenkel_mukhin(parse_ymono("Y[1,0]"), A2) * char
print(f"\nFM({format_ymono(m2)}) has total multiplicity {fm.dimension()};")
print(f"the true character (a product of two simples) has {product.dimension()}.")
missing = product.flatten() - fm.flatten()
print("the dropped monomial is:", missing.text())

print("\ntruncated characters in the level-1 window:")
for text in ["Y[1,0]", "Y[2,1]", "Y[1,0]^2 Y[2,3]"]:
    c = truncated_char_c1(parse_ymono(text), A2)
    print(f"    chi(L({text}))_<=2 = {c.flatten().text()}")

print("\nfactor a product of simples by dominant-monomial subtraction:")
c1 = truncated_char_c1(parse_ymono("Y[1,0]"), A2)
c2 = truncated_char_c1(parse_ymono("Y[1,0] Y[2,3]"), A2)
parts = decompose_product([c1, c2], A2)
print("    constituents:", [format_ymono(p) for p in parts])

print("\nsl2 sanity: the Kirillov-Reshetikhin ladder")
print("    chi(W_{2,0}) =", sl2_simple_qchar([0, 2]).flatten().text())
print("    T-system at (k, r) = (2, 0):", t_system_check(1, 2, 0,
                                                         DynkinData.make("A1")))
print("    A3 KR char W^{(2)}_{2,1} has dimension",
      kr_char(2, 2, 1, DynkinData.make("A3")).dimension())
