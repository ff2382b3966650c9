"""ADE root-system data and piecewise-linear root combinatorics.

Vertices are labelled 1..n following Bourbaki (type D has the trivalent node
at n-2; type E hangs node 2 off node 4).  A bipartition I = I0 | I1 of the
Dynkin diagram is part of the data and is always caller-visible: two valid
choices exist and the literature flips between them, so nothing here picks
one silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Tuple

RootVector = Tuple[int, ...]


class RootsError(Exception):
    pass


class UnsupportedType(RootsError):
    pass


class NotAlmostPositive(RootsError):
    pass


_COXETER = {"A": lambda n: n + 1, "D": lambda n: 2 * n - 2,
            "E": {6: 12, 7: 18, 8: 30}}


def _edges(letter: str, n: int) -> List[Tuple[int, int]]:
    if letter == "A":
        return [(i, i + 1) for i in range(1, n)]
    if letter == "D":
        if n < 4:
            raise UnsupportedType(f"D{n}")
        chain = [(i, i + 1) for i in range(1, n - 2)]
        return chain + [(n - 2, n - 1), (n - 2, n)]
    if letter == "E":
        if n not in (6, 7, 8):
            raise UnsupportedType(f"E{n}")
        chain = [(1, 3)] + [(i, i + 1) for i in range(3, n)]
        return chain + [(2, 4)]
    raise UnsupportedType(letter + str(n))


@dataclass(frozen=True)
class DynkinData:
    """Simply-laced Dynkin diagram with a fixed bipartition.

    ``cartan[i][j]`` is the Cartan matrix entry a_{ij} with 0-based indices;
    vertex labels in the public API are 1-based.
    """

    letter: str
    rank: int
    I0: FrozenSet[int]
    cartan: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False)
    neighbors: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False)
    h: int = field(init=False)

    def __post_init__(self):
        n = self.rank
        edges = _edges(self.letter, n)
        cartan = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        nbrs: List[List[int]] = [[] for _ in range(n)]
        for a, b in edges:
            cartan[a - 1][b - 1] = cartan[b - 1][a - 1] = -1
            nbrs[a - 1].append(b)
            nbrs[b - 1].append(a)
        object.__setattr__(self, "cartan",
                           tuple(tuple(row) for row in cartan))
        object.__setattr__(self, "neighbors",
                           tuple(tuple(sorted(x)) for x in nbrs))
        if self.letter == "E":
            h = _COXETER["E"][n]
        else:
            h = _COXETER[self.letter](n)
        object.__setattr__(self, "h", h)
        for a, b in edges:
            if (a in self.I0) == (b in self.I0):
                raise RootsError(
                    f"invalid bipartition: edge {a}-{b} joins same part")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def make(type_str: str, I0=None) -> "DynkinData":
        """Build from a label like ``"A3"`` or ``"D4"``.

        ``I0`` defaults to the part containing vertex 1 (even graph distance
        from vertex 1); pass an explicit iterable to flip the convention.
        """
        letter = type_str[0].upper()
        if letter not in "ADE":
            raise UnsupportedType(type_str)
        n = int(type_str[1:])
        if n < 1:
            raise UnsupportedType(type_str)
        if I0 is None:
            edges = _edges(letter, n)
            adj: Dict[int, List[int]] = {i: [] for i in range(1, n + 1)}
            for a, b in edges:
                adj[a].append(b)
                adj[b].append(a)
            dist = {1: 0}
            queue = [1]
            while queue:
                u = queue.pop()
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        queue.append(w)
            I0 = frozenset(i for i in range(1, n + 1) if dist[i] % 2 == 0)
        return DynkinData(letter, n, frozenset(I0))

    def with_I0(self, I0) -> "DynkinData":
        return DynkinData(self.letter, self.rank, frozenset(I0))

    def flipped(self) -> "DynkinData":
        return self.with_I0(self.I1)

    # -- accessors ------------------------------------------------------------

    @property
    def I1(self) -> FrozenSet[int]:
        return frozenset(range(1, self.rank + 1)) - self.I0

    @property
    def vertices(self) -> range:
        return range(1, self.rank + 1)

    def xi(self, i: int) -> int:
        return 0 if i in self.I0 else 1

    def eps(self, i: int) -> int:
        return 1 if i in self.I0 else -1

    def a(self, i: int, j: int) -> int:
        return self.cartan[i - 1][j - 1]

    def adjacent(self, i: int) -> Tuple[int, ...]:
        return self.neighbors[i - 1]

    def name(self) -> str:
        return f"{self.letter}{self.rank}"

    def simple(self, i: int) -> RootVector:
        e = [0] * self.rank
        e[i - 1] = 1
        return tuple(e)

    def to_json(self) -> dict:
        return {"type": self.name(), "I0": sorted(self.I0)}

    @staticmethod
    def from_json(data: dict) -> "DynkinData":
        return DynkinData.make(data["type"], I0=data["I0"])


# --------------------------------------------------------------------------
# root enumeration


def positive_roots(d: DynkinData) -> List[RootVector]:
    """All positive roots by reflection closure of the simple roots.

    Deterministic order: height first, then lexicographic coordinates.
    """
    if d.rank > 8:
        raise UnsupportedType("rank > 8 not supported at desk scale")
    roots = {d.simple(i) for i in d.vertices}
    frontier = list(roots)
    while frontier:
        beta = frontier.pop()
        for i in d.vertices:
            # s_i(beta) = beta - <beta, alpha_i^vee> alpha_i
            pairing = sum(d.a(i, j) * beta[j - 1] for j in d.vertices)
            img = list(beta)
            img[i - 1] -= pairing
            img_t = tuple(img)
            if all(x >= 0 for x in img_t) and any(img_t) and img_t not in roots:
                roots.add(img_t)
                frontier.append(img_t)
    return sorted(roots, key=lambda r: (sum(r), r))


def almost_positive_roots(d: DynkinData) -> List[RootVector]:
    """Positive roots together with the negative simple roots."""
    neg = [tuple(-x for x in d.simple(i)) for i in d.vertices]
    return sorted(neg, key=lambda r: (sum(r), r)) + positive_roots(d)


def is_almost_positive(gamma: RootVector, d: DynkinData) -> bool:
    return gamma in set(almost_positive_roots(d))


# --------------------------------------------------------------------------
# piecewise-linear maps


def sigma_i(i: int, gamma: RootVector, d: DynkinData) -> RootVector:
    """Piecewise-linear automorphism acting only on the alpha_i coordinate."""
    out = list(gamma)
    acc = -gamma[i - 1]
    for j in d.adjacent(i):
        acc -= d.a(i, j) * max(0, gamma[j - 1])
    out[i - 1] = acc
    return tuple(out)


def tau_eps(eps: int, gamma: RootVector, d: DynkinData) -> RootVector:
    """tau_{+/-} = product of sigma_i over the vertices with eps_i = eps."""
    out = gamma
    for i in d.vertices:
        if d.eps(i) == eps:
            out = sigma_i(i, out, d)
    return out


def tau_plus(gamma: RootVector, d: DynkinData) -> RootVector:
    return tau_eps(1, gamma, d)


def tau_minus(gamma: RootVector, d: DynkinData) -> RootVector:
    return tau_eps(-1, gamma, d)


def tau(gamma: RootVector, d: DynkinData) -> RootVector:
    """tau = tau_+ tau_-."""
    return tau_plus(tau_minus(gamma, d), d)


def tau_inverse(gamma: RootVector, d: DynkinData) -> RootVector:
    return tau_minus(tau_plus(gamma, d), d)


def E_map(gamma: RootVector, d: DynkinData) -> RootVector:
    """Linear map alpha_i -> -eps_i alpha_i."""
    return tuple(-d.eps(i) * gamma[i - 1] for i in d.vertices)


def piecewise_linear(name: str, gamma: RootVector, d: DynkinData,
                     vertex: int | None = None) -> RootVector:
    """Dispatcher over {sigma_i | tau_plus | tau_minus | tau | E}."""
    if name == "sigma_i":
        if vertex is None:
            raise RootsError("sigma_i needs a vertex index")
        return sigma_i(vertex, gamma, d)
    if name == "tau_plus":
        return tau_plus(gamma, d)
    if name == "tau_minus":
        return tau_minus(gamma, d)
    if name == "tau":
        return tau(gamma, d)
    if name == "E":
        return E_map(gamma, d)
    raise RootsError(f"unknown map {name!r}")


def g_vector(alpha: RootVector, d: DynkinData) -> RootVector:
    """g(alpha) = E tau_-(alpha) for alpha among the almost positive roots."""
    if not is_almost_positive(alpha, d):
        raise NotAlmostPositive(str(alpha))
    return E_map(tau_minus(alpha, d), d)
