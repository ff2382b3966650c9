"""Dynkin-quiver representations and quiver-grassmannian point counts.

The quiver orientation is fixed by the bipartition: vertices in I1 are
sources, vertices in I0 are sinks.  Subrepresentations are enumerated
exhaustively over small prime fields; the counting polynomial in the field
size is interpolated exactly and evaluated at 1 to obtain the Euler
characteristic.  This is the geometric route to the F-polynomials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .fpoly import FPoly
from .roots import DynkinData, RootVector, positive_roots


class GrassError(Exception):
    pass


class UnsupportedRoot(GrassError):
    pass


class InterpolationMismatch(GrassError):
    pass


class ScaleExceeded(GrassError):
    pass


Matrix = Tuple[Tuple[int, ...], ...]   # rows over F_p


def _zeros(r: int, c: int) -> Matrix:
    return tuple((0,) * c for _ in range(r))


@dataclass
class QuiverRep:
    """One representation of the bipartite Dynkin quiver over F_p."""

    d: DynkinData
    dims: Tuple[int, ...]
    maps: Dict[Tuple[int, int], Matrix]   # arrow (src, dst) -> dst x src matrix
    p: int

    def arrows(self) -> List[Tuple[int, int]]:
        out = []
        for i in self.d.vertices:
            if i in self.d.I1:
                for j in self.d.adjacent(i):
                    out.append((i, j))
        return out

    def direct_sum(self, other: "QuiverRep") -> "QuiverRep":
        if self.d != other.d or self.p != other.p:
            raise GrassError("incompatible summands")
        dims = tuple(a + b for a, b in zip(self.dims, other.dims))
        maps = {}
        for arrow in self.arrows():
            a = self.maps.get(arrow)
            b = other.maps.get(arrow)
            r1 = len(a) if a else self.dims[arrow[1] - 1]
            maps[arrow] = _block_diag(a, b, self, other, arrow)
        return QuiverRep(self.d, dims, maps, self.p)


def _block_diag(a: Optional[Matrix], b: Optional[Matrix],
                ra: QuiverRep, rb: QuiverRep, arrow) -> Matrix:
    src, dst = arrow
    ra_r, ra_c = ra.dims[dst - 1], ra.dims[src - 1]
    rb_r, rb_c = rb.dims[dst - 1], rb.dims[src - 1]
    a = a if a is not None else _zeros(ra_r, ra_c)
    b = b if b is not None else _zeros(rb_r, rb_c)
    rows = []
    for r in a:
        rows.append(tuple(r) + (0,) * rb_c)
    for r in b:
        rows.append((0,) * ra_c + tuple(r))
    return tuple(rows)


def indecomposable_rep(alpha: RootVector, d: DynkinData, p: int) -> QuiverRep:
    """The indecomposable representation with dimension vector alpha.

    Multiplicity-free roots get the thin module (identity maps along the
    support, indecomposable since the support tree is connected); the only
    supported root with multiplicity is the D4 highest root.  Anything else
    raises UnsupportedRoot rather than guessing matrices.
    """
    if alpha not in set(positive_roots(d)):
        raise UnsupportedRoot(str(alpha))
    maps: Dict[Tuple[int, int], Matrix] = {}
    if max(alpha) == 1:
        supp = {i for i in d.vertices if alpha[i - 1] == 1}
        for i in sorted(supp):
            if i in d.I1:
                for j in d.adjacent(i):
                    if j in supp:
                        maps[(i, j)] = ((1,),)
        return QuiverRep(d, alpha, maps, p)
    if d.name() == "D4" and alpha == (1, 2, 1, 1):
        if 2 in d.I0:
            # three source lines in general position inside F_p^2
            vectors = {1: (1, 0), 3: (0, 1), 4: (1, 1)}
            for leaf, v in vectors.items():
                maps[(leaf, 2)] = ((v[0],), (v[1],))
        else:
            # dual: three quotient maps with pairwise distinct kernels
            covectors = {1: (1, 0), 3: (0, 1), 4: (1, 1)}
            for leaf, v in covectors.items():
                maps[(2, leaf)] = (v,)
        return QuiverRep(d, alpha, maps, p)
    raise UnsupportedRoot(
        f"no construction for {alpha} in {d.name()} (only type A and D4)")


# --------------------------------------------------------------------------
# linear algebra over F_p


def rref(rows: List[List[int]], p: int) -> List[List[int]]:
    """Row-reduced echelon form over F_p; drops zero rows."""
    rows = [list(r) for r in rows]
    out: List[List[int]] = []
    cols = len(rows[0]) if rows else 0
    pivot_col = 0
    r = 0
    while r < len(rows) and pivot_col < cols:
        piv = next((i for i in range(r, len(rows))
                    if rows[i][pivot_col] % p != 0), None)
        if piv is None:
            pivot_col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][pivot_col], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][pivot_col] % p:
                f = rows[i][pivot_col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
        pivot_col += 1
    return [row for row in rows[:r]]


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    rows = [list(r) for r in rows if any(x % p for x in r)]
    if not rows:
        return 0
    return len(rref(rows, p))


def subspaces(n: int, k: int, p: int):
    """All k-dimensional subspaces of F_p^n as RREF basis matrices."""
    if k == 0:
        yield ()
        return
    if k > n:
        return
    for pivots in itertools.combinations(range(n), k):
        free_positions = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, n):
                if c not in pivots[r + 1:] and c not in pivots:
                    free_positions.append((r, c))
        for values in itertools.product(range(p), repeat=len(free_positions)):
            rows = [[0] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free_positions, values):
                rows[r][c] = v
            yield tuple(tuple(r) for r in rows)


def _in_span(vec: Sequence[int], basis: Sequence[Sequence[int]], p: int) -> bool:
    if not any(x % p for x in vec):
        return True
    if not basis:
        return False
    return rank(list(basis) + [list(vec)], p) == len(basis)


def _apply(mat: Matrix, vec: Sequence[int], p: int) -> List[int]:
    return [sum(m * v for m, v in zip(row, vec)) % p for row in mat]


def count_subreps(rep: QuiverRep, gamma: RootVector) -> int:
    """Number of F_p-points of the quiver grassmannian Gr_gamma(rep)."""
    d, p = rep.d, rep.p
    if any(g < 0 or g > dim for g, dim in zip(gamma, rep.dims)):
        return 0
    if sum(rep.dims) > 16:
        raise ScaleExceeded("total dimension too large for enumeration")
    choices = [list(subspaces(rep.dims[i - 1], gamma[i - 1], p))
               for i in d.vertices]
    arrows = rep.arrows()
    count = 0
    for combo in itertools.product(*choices):
        ok = True
        for (src, dst) in arrows:
            mat = rep.maps.get((src, dst))
            if mat is None:
                continue
            basis_src = combo[src - 1]
            basis_dst = combo[dst - 1]
            for v in basis_src:
                img = _apply(mat, v, p)
                if not _in_span(img, basis_dst, p):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def end_ring_dimension(rep: QuiverRep) -> int:
    """Dimension over F_p of the endomorphism ring (1 iff indecomposable
    with trivial endomorphisms, which certifies indecomposability)."""
    d, p = rep.d, rep.p
    dims = rep.dims
    offsets = [0]
    for dim in dims:
        offsets.append(offsets[-1] + dim * dim)
    nvars = offsets[-1]
    equations: List[List[int]] = []
    for (src, dst) in rep.arrows():
        mat = rep.maps.get((src, dst))
        if mat is None:
            mat = _zeros(dims[dst - 1], dims[src - 1])
        ds, dd = dims[src - 1], dims[dst - 1]
        # phi_dst . M = M . phi_src : one equation per (row, col)
        for r in range(dd):
            for c in range(ds):
                eq = [0] * nvars
                for k in range(dd):
                    eq[offsets[dst - 1] + r * dd + k] = (
                        eq[offsets[dst - 1] + r * dd + k] + mat[k][c]) % p
                for k in range(ds):
                    eq[offsets[src - 1] + k * ds + c] = (
                        eq[offsets[src - 1] + k * ds + c] - mat[r][k]) % p
                if any(eq):
                    equations.append(eq)
    free = nvars - (rank(equations, p) if equations else 0)
    return free


# --------------------------------------------------------------------------
# counting polynomials and Euler characteristics


@dataclass
class GrassCount:
    gamma: RootVector
    primes: Tuple[int, ...]
    counts: Tuple[int, ...]
    polynomial: Tuple[Fraction, ...]   # coefficients, constant first
    euler: int


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> List[Fraction]:
    """Exact Lagrange interpolation; coefficients constant-first."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                new[k] -= c * xs[j]
                new[k + 1] += c
            basis = new
            denom *= xs[i] - xs[j]
        scale = Fraction(ys[i]) / denom
        for k, c in enumerate(basis):
            coeffs[k] += c * scale
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


def euler_characteristic(rep_builder, gamma: RootVector,
                         min_primes: int = 3) -> GrassCount:
    """Point-count over enough primes, interpolate, evaluate at 1.

    ``rep_builder(p)`` must return the representation over F_p.  The degree
    of the counting polynomial is bounded by the dimension of the product of
    ambient grassmannians; one extra prime checks consistency.
    """
    probe = rep_builder(2)
    bound = sum(g * (dim - g)
                for g, dim in zip(gamma, probe.dims))
    n_samples = max(bound + 1, min_primes) + 1
    if n_samples > len(_PRIMES):
        raise ScaleExceeded("interpolation needs too many primes")
    primes = _PRIMES[:n_samples]
    counts = [count_subreps(rep_builder(p), gamma) for p in primes]
    coeffs = _interpolate(primes[:-1], counts[:-1])
    for c in coeffs:
        if c.denominator != 1:
            raise InterpolationMismatch(
                f"non-integer counting polynomial for {gamma}: {coeffs}")
    check = sum(c * primes[-1] ** k for k, c in enumerate(coeffs))
    if check != counts[-1]:
        raise InterpolationMismatch(
            f"holdout prime {primes[-1]} disagrees for {gamma}")
    euler = int(sum(coeffs))
    return GrassCount(gamma=gamma, primes=tuple(primes),
                      counts=tuple(counts), polynomial=tuple(coeffs),
                      euler=euler)


def geometric_fpoly(alpha: RootVector, d: DynkinData) -> FPoly:
    """F_alpha as the generating function of quiver-grassmannian Euler
    characteristics of the indecomposable module M[alpha]."""
    builder = lambda p: indecomposable_rep(alpha, d, p)
    return fpoly_of_rep_family(builder, d)


def fpoly_of_rep_family(rep_builder, d: DynkinData) -> FPoly:
    probe = rep_builder(2)
    dims = probe.dims
    out: Dict[Tuple[int, ...], int] = {}
    for gamma in itertools.product(*[range(dim + 1) for dim in dims]):
        gc = euler_characteristic(rep_builder, gamma)
        if gc.euler:
            out[gamma] = gc.euler
    return out


def generic_rep_builder(gamma: RootVector, d: DynkinData):
    """Generic representation for a nonnegative dimension vector: the direct
    sum of indecomposables along the cluster expansion (rigid, hence
    generic)."""
    from .qchar import c1_atlas
    from .cluster import cluster_expansion

    expansion = cluster_expansion(gamma, c1_atlas(d))
    for root in expansion:
        if any(x < 0 for x in root):
            raise UnsupportedRoot(
                f"{gamma} has negative parts in its cluster expansion")

    def build(p):
        total = None
        for root, n in sorted(expansion.items()):
            for _ in range(n):
                piece = indecomposable_rep(root, d, p)
                total = piece if total is None else total.direct_sum(piece)
        if total is None:
            total = QuiverRep(d, tuple(0 for _ in d.vertices), {}, p)
        return total

    return build
