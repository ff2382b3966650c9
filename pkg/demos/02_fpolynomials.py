"""F-polynomials three ways, and cluster variables rebuilt from them.

The same polynomial comes out of (1) the principal-coefficient cluster
algebra, (2) the acceptable-vector combinatorics, and (3) Euler
characteristics of quiver grassmannians.  The g-vector and the tropical
evaluation then reconstruct the cluster variable itself.
"""

from clusterchar import (
    DynkinData,
    f_poly_combinatorial,
    f_poly_principal,
    geometric_fpoly,
    positive_roots,
    reconstruct_cluster_variable,
)


def show(fp, rank):
    terms = []
    for e, c in sorted(fp.items()):
        body = "*".join(f"v{i+1}^{x}" if x > 1 else f"v{i+1}"
                        for i, x in enumerate(e) if x)
        terms.append((f"{c}*{body}" if c != 1 else body) if body else str(c))
    return " + ".join(terms)


d = DynkinData.make("D4", I0={2})
alpha = (1, 2, 1, 1)   # the highest root, the one interesting multiplicity

routes = {
    "principal    ": f_poly_principal(alpha, d),
    "combinatorial": f_poly_combinatorial(alpha, d),
    "geometric    ": geometric_fpoly(alpha, d),
}
for name, fp in routes.items():
    print(f"{name}: {show(fp, d.rank)}")
assert len({tuple(sorted(fp.items())) for fp in routes.values()}) == 1
print("all three routes agree:", len(routes["geometric    "]), "monomials\n")

print("cluster variables rebuilt from (F-polynomial, g-vector):")
for beta in positive_roots(DynkinData.make("A3", I0={1, 3}))[:3]:
    z = reconstruct_cluster_variable(beta, DynkinData.make("A3", I0={1, 3}))
    print(f"    z[{beta}] = {z.text()}")
