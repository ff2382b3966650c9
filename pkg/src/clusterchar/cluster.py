"""Seeds, matrix/seed mutation, finite-type atlas enumeration and labels.

Cluster variables are stored as exact Laurent polynomials in the *initial*
cluster, so equality of seeds is decidable by comparing canonical forms.
Directions are 1-based to match the usual conventions; the last ``n_frozen``
rows of the exchange matrix are frozen and never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

# NonExactDivision is re-exported: mutation division errors surface here
from .laurent import LaurentPoly, NonExactDivision, var  # noqa: F401
from .roots import DynkinData, RootVector, almost_positive_roots


class ClusterError(Exception):
    pass


class FrozenDirection(ClusterError):
    pass


class LimitExceeded(ClusterError):
    pass


class LabelingFailure(ClusterError):
    pass


class NoExpansion(ClusterError):
    pass


class MultipleExpansions(ClusterError):
    pass


Matrix = Tuple[Tuple[int, ...], ...]


def mutate_matrix(B: Matrix, k: int, n_frozen: int = 0) -> Matrix:
    """Matrix mutation in direction k (1-based, k <= #columns)."""
    rows = len(B)
    cols = len(B[0]) if rows else 0
    if not 1 <= k <= cols:
        raise FrozenDirection(f"direction {k} out of mutable range 1..{cols}")
    ki = k - 1
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            if i == ki or j == ki:
                row.append(-B[i][j])
            else:
                bik, bkj = B[i][ki], B[ki][j]
                row.append(B[i][j] + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        out.append(tuple(row))
    return tuple(out)


def check_skew_principal(B: Matrix, n_frozen: int) -> bool:
    m = len(B) - n_frozen
    return all(B[i][j] == -B[j][i] for i in range(m) for j in range(m))


@dataclass(frozen=True)
class Seed:
    """Exchange matrix plus cluster variables expressed in the initial seed."""

    matrix: Matrix
    variables: Tuple[LaurentPoly, ...]
    n_frozen: int

    @property
    def rank(self) -> int:
        return len(self.variables) - self.n_frozen

    def mutable_vids(self) -> List[int]:
        """Variable ids of the initial mutable cluster (for denominators)."""
        vids = []
        for p in self.variables[: self.rank]:
            (m, _), = p.terms.items()
            vids.append(m[0][0])
        return vids

    def mutate(self, k: int, max_terms: int = 10 ** 6) -> Tuple["Seed", tuple]:
        """Seed mutation in direction k; returns (new seed, exchange event).

        The event is ``(old_var, new_var, plus_factors, minus_factors)`` where
        the factor lists hold ``(position, exponent)`` pairs of the exchange
        monomials m+ and m-.
        """
        if not 1 <= k <= self.rank:
            raise FrozenDirection(f"direction {k} is frozen or out of range")
        ki = k - 1
        plus = LaurentPoly.one()
        minus = LaurentPoly.one()
        plus_f, minus_f = [], []
        for i, p in enumerate(self.variables):
            b = self.matrix[i][ki]
            if b > 0:
                plus = plus * p ** b
                plus_f.append((i, b))
            elif b < 0:
                minus = minus * p ** (-b)
                minus_f.append((i, -b))
        total = plus + minus
        new_var = total.divide_exact(self.variables[ki])
        if new_var.num_terms() > max_terms:
            raise LimitExceeded(
                f"variable has {new_var.num_terms()} terms > {max_terms}")
        vs = list(self.variables)
        old = vs[ki]
        vs[ki] = new_var
        event = (old, new_var, tuple(plus_f), tuple(minus_f))
        return Seed(mutate_matrix(self.matrix, k), tuple(vs), self.n_frozen), event

    def cluster_key(self) -> FrozenSet:
        """Seed identity: the unordered set of canonical variable forms."""
        return frozenset(p.key() for p in self.variables)

    def to_json(self) -> dict:
        return {
            "matrix": [list(r) for r in self.matrix],
            "frozen": self.n_frozen,
            "vars": [p.to_json() for p in self.variables],
        }

    @staticmethod
    def from_json(data: dict) -> "Seed":
        return Seed(tuple(tuple(r) for r in data["matrix"]),
                    tuple(LaurentPoly.from_json(v) for v in data["vars"]),
                    data["frozen"])


# --------------------------------------------------------------------------
# seed builders


def build_c1_seed(d: DynkinData, x_names: Optional[Sequence[str]] = None,
                  f_names: Optional[Sequence[str]] = None) -> Seed:
    """The 2n x n initial seed: Dynkin quiver with I0 sources plus one frozen
    vertex i' per i, attached by i <- i' for i in I0 and i -> i' for i in I1."""
    n = d.rank
    B = [[0] * n for _ in range(2 * n)]
    for i in d.vertices:
        for j in d.adjacent(i):
            if j in d.I0:
                # arrow j -> i with j a source, so b_{ij} = +1, b_{ji} = -1
                B[i - 1][j - 1] = 1
                B[j - 1][i - 1] = -1
    # frozen row i': arrow i' -> i for i in I0 gives -1, arrow i -> i' gives +1
    for i in d.vertices:
        B[i + n - 1][i - 1] = 1 if i in d.I1 else -1
    x_names = x_names or [f"x{i}" for i in d.vertices]
    f_names = f_names or [f"f{i}" for i in d.vertices]
    vs = tuple(LaurentPoly.variable(nm) for nm in list(x_names) + list(f_names))
    return Seed(tuple(tuple(r) for r in B), vs, n)


def bz_matrix(d: DynkinData) -> Matrix:
    """Exchange matrix at the cluster reached from the initial one by mutating
    every I1 direction (the reference seed for F-polynomials)."""
    n = d.rank
    B = [[0] * n for _ in range(2 * n)]
    for i in d.vertices:
        for j in d.vertices:
            if i != j:
                B[i - 1][j - 1] = d.eps(j) * d.a(i, j)
    for j in d.vertices:
        B[j + n - 1][j - 1] = -1
        if j in d.I0:
            for k in d.vertices:
                if k != j:
                    B[k + n - 1][j - 1] = -d.a(k, j)
    return tuple(tuple(r) for r in B)


def build_z_seed(d: DynkinData) -> Seed:
    n = d.rank
    names = [f"z{i}" for i in d.vertices] + [f"f{i}" for i in d.vertices]
    vs = tuple(LaurentPoly.variable(nm) for nm in names)
    return Seed(bz_matrix(d), vs, n)


def build_principal_seed(d: DynkinData) -> Seed:
    """Principal coefficients: same principal part as the z-seed, identity
    lower part; variables u_i with frozen v_i."""
    n = d.rank
    Bz = bz_matrix(d)
    B = [list(Bz[i]) for i in range(n)]
    for i in range(n):
        row = [0] * n
        row[i] = 1
        B.append(row)
    names = [f"u{i}" for i in d.vertices] + [f"v{i}" for i in d.vertices]
    vs = tuple(LaurentPoly.variable(nm) for nm in names)
    return Seed(tuple(tuple(r) for r in B), vs, n)


# --------------------------------------------------------------------------
# atlas


@dataclass
class Atlas:
    """Everything the finite-type enumeration discovered."""

    initial: Seed
    seeds: List[Seed]
    clusters: List[FrozenSet]                  # canonical keys of variables
    variables: Dict[object, LaurentPoly]       # key -> polynomial (non-frozen)
    frozen: Tuple[LaurentPoly, ...]
    adjacency: Dict[FrozenSet, List[FrozenSet]]
    exchange_events: List[tuple]
    labels: Optional[Dict[object, RootVector]] = None
    by_label: Optional[Dict[RootVector, object]] = None

    def n_clusters(self) -> int:
        return len(self.clusters)

    def n_variables(self) -> int:
        return len(self.variables)

    def dump_jsonl(self, fh) -> int:
        """Write one JSON seed per line; returns the number of lines."""
        import json

        for seed in self.seeds:
            fh.write(json.dumps(seed.to_json(), sort_keys=True,
                                separators=(",", ":")) + "\n")
        return len(self.seeds)

    @staticmethod
    def load_jsonl(fh) -> List[Seed]:
        import json

        return [Seed.from_json(json.loads(line))
                for line in fh if line.strip()]

    def clusters_as_labels(self) -> List[FrozenSet[RootVector]]:
        if self.labels is None:
            raise LabelingFailure("atlas is not labeled")
        out = []
        frozen_keys = {p.key() for p in self.frozen}
        for cl in self.clusters:
            out.append(frozenset(self.labels[k]
                                 for k in cl if k not in frozen_keys))
        return out


def enumerate_atlas(s0: Seed, max_seeds: int = 10 ** 5,
                    max_terms: int = 10 ** 6) -> Atlas:
    """Breadth-first closure of ``s0`` under mutation.

    Seeds are deduplicated by the unordered set of canonical variable forms;
    exceeding either cap raises LimitExceeded (non finite type, or too big).
    """
    first_key = s0.cluster_key()
    seen = {first_key: s0}
    order = [s0]
    adjacency: Dict[FrozenSet, List[FrozenSet]] = {first_key: []}
    events = {}
    frontier = [s0]
    while frontier:
        nxt = []
        for s in frontier:
            skey = s.cluster_key()
            for k in range(1, s.rank + 1):
                s2, ev = s.mutate(k, max_terms=max_terms)
                key = s2.cluster_key()
                adjacency[skey].append(key)
                pair = frozenset((ev[0].key(), ev[1].key()))
                events.setdefault(pair, (s, ev))
                if key not in seen:
                    if len(seen) >= max_seeds:
                        raise LimitExceeded(
                            f"more than {max_seeds} seeds; raise the cap for "
                            "bigger finite types")
                    seen[key] = s2
                    adjacency[key] = []
                    order.append(s2)
                    nxt.append(s2)
        frontier = nxt
    variables: Dict[object, LaurentPoly] = {}
    frozen = s0.variables[s0.rank:]
    frozen_keys = {p.key() for p in frozen}
    for s in order:
        for p in s.variables[: s.rank]:
            if p.key() not in frozen_keys:
                variables.setdefault(p.key(), p)
    clusters = [s.cluster_key() for s in order]
    ev_list = []
    for pair, (s, ev) in sorted(events.items(),
                                key=lambda kv: tuple(sorted(kv[0]))):
        ev_list.append((s, ev))
    return Atlas(initial=s0, seeds=order, clusters=clusters,
                 variables=variables, frozen=frozen,
                 adjacency=adjacency, exchange_events=ev_list)


def label_by_denominator(atlas: Atlas, d: DynkinData) -> Dict[RootVector, object]:
    """Label the non-frozen variables by their denominator vectors.

    For a seed of C1 type the labels must biject with the almost positive
    roots; anything else raises LabelingFailure.
    """
    vids = atlas.initial.mutable_vids()
    labels: Dict[object, RootVector] = {}
    by_label: Dict[RootVector, object] = {}
    for key, p in atlas.variables.items():
        dv = p.denominator_vector(vids)
        labels[key] = dv
        if dv in by_label:
            raise LabelingFailure(f"duplicate denominator vector {dv}")
        by_label[dv] = key
    expected = set(almost_positive_roots(d))
    got = set(by_label)
    if got != expected:
        raise LabelingFailure(
            f"denominators {sorted(got - expected)} unexpected; "
            f"missing {sorted(expected - got)}")
    atlas.labels = labels
    atlas.by_label = by_label
    return by_label


def compatible(alpha: RootVector, beta: RootVector, atlas: Atlas) -> bool:
    """True iff x[alpha] and x[beta] lie in a common cluster."""
    for cl in atlas.clusters_as_labels():
        if alpha in cl and beta in cl:
            return True
    return False


# --------------------------------------------------------------------------
# the polygon model in type A: almost positive roots <-> diagonals


def _diagonals_cross(d1, d2) -> bool:
    (a, b), (c, e) = sorted([tuple(sorted(d1)), tuple(sorted(d2))])
    return a < c < b < e


def type_a_snake(n: int) -> Dict[RootVector, Tuple[int, int]]:
    """Negative simple roots as the snake diagonals of the (n+3)-gon."""
    out = {}
    for k in range(1, n + 1):
        if k % 2 == 1:
            i = (k + 1) // 2
            diag = (i, n + 3 - i)
        else:
            i = k // 2
            diag = (i + 1, n + 3 - i)
        root = tuple(-1 if j == k else 0 for j in range(1, n + 1))
        out[root] = diag
    return out


def type_a_diagonal(root: RootVector, n: int) -> Tuple[int, int]:
    """The diagonal attached to an almost positive root of type A_n.

    A positive root alpha_{[a,b]} goes to the unique diagonal crossing
    exactly the snake diagonals of -alpha_a, ..., -alpha_b.
    """
    snake = type_a_snake(n)
    if all(x <= 0 for x in root):
        return snake[root]
    want = {k for k in range(1, n + 1) if root[k - 1] == 1}
    snake_list = [snake[tuple(-1 if j == k else 0 for j in range(1, n + 1))]
                  for k in range(1, n + 1)]
    for a in range(1, n + 4):
        for b in range(a + 2, n + 4):
            if (a, b) == (1, n + 3):
                continue   # the outer side is not a diagonal
            if (a, b) in snake_list:
                continue
            crossed = {k + 1 for k, sd in enumerate(snake_list)
                       if _diagonals_cross((a, b), sd)}
            if crossed == want:
                return (a, b)
    raise ClusterError(f"no diagonal for {root}")


def type_a_compatible(alpha: RootVector, beta: RootVector, n: int) -> bool:
    """Compatibility in type A via non-crossing diagonals (independent of
    the atlas route)."""
    return not _diagonals_cross(type_a_diagonal(alpha, n),
                                type_a_diagonal(beta, n))


def _invert_columns(cols: List[RootVector]) -> Optional[List[List[Fraction]]]:
    """Exact inverse of the square matrix with the given columns, or None."""
    n = len(cols)
    a = [[Fraction(cols[j][i]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = a[col][col]
        a[col] = [x / f for x in a[col]]
        inv[col] = [x / f for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


class ExpansionSolver:
    """Unique decomposition of root-lattice elements into pairwise compatible
    almost positive roots, by scanning the clusters of a labeled atlas."""

    def __init__(self, atlas: Atlas):
        self.cluster_roots = [sorted(cl) for cl in atlas.clusters_as_labels()]
        self.inverses = []
        for roots in self.cluster_roots:
            inv = _invert_columns(roots)
            if inv is None:
                raise LabelingFailure("cluster roots do not form a basis")
            self.inverses.append(inv)

    def expand(self, gamma: RootVector) -> Dict[RootVector, int]:
        solutions = set()
        witness = {}
        for roots, inv in zip(self.cluster_roots, self.inverses):
            coeffs = [sum(inv[i][j] * gamma[j] for j in range(len(gamma)))
                      for i in range(len(gamma))]
            if all(c.denominator == 1 and c >= 0 for c in coeffs):
                sol = tuple(sorted((roots[i], int(coeffs[i]))
                                   for i in range(len(roots)) if coeffs[i]))
                solutions.add(sol)
                witness[sol] = roots
        if not solutions:
            raise NoExpansion(str(gamma))
        if len(solutions) > 1:
            raise MultipleExpansions(f"{gamma}: {sorted(solutions)}")
        return dict(solutions.pop())


def cluster_expansion(gamma: RootVector, atlas: Atlas) -> Dict[RootVector, int]:
    return ExpansionSolver(atlas).expand(gamma)
