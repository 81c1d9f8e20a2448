"""Simplicial complexes and the elementary constructions on them.

Vertices are strings (no whitespace) ordered lexicographically. A simplex is
a sorted tuple of distinct vertices. A :class:`SimplicialComplex` stores its
full simplex set, so links, stars and induced subcomplexes reduce to set
lookups.
"""
from __future__ import annotations

import itertools
from collections import deque
from functools import cached_property
from typing import Iterable, Iterator, Mapping

import networkx as nx

from .errors import InvalidFacet, NotASimplex, TooLarge, VertexCollision

Vertex = str
Simplex = tuple

DEFAULT_SUBCOMPLEX_CAP = 25
DEFAULT_ISOMORPHISM_CAP = 60


def vertex(token) -> Vertex:
    token = str(token)
    if not token or any(c.isspace() for c in token):
        raise InvalidFacet(f"invalid vertex token {token!r}")
    return token


def simplex(vertices: Iterable) -> Simplex:
    """Canonical form of a vertex set: a sorted tuple of vertex tokens."""
    vs = sorted(vertex(v) for v in vertices)
    if not vs:
        raise InvalidFacet("empty simplex")
    if len(set(vs)) != len(vs):
        raise InvalidFacet(f"repeated vertex in {vs}")
    return tuple(vs)


def faces(s: Simplex) -> Iterator[Simplex]:
    """All non-empty faces of ``s`` (including ``s``)."""
    for k in range(1, len(s) + 1):
        yield from itertools.combinations(s, k)


def _closure(facets: Iterable[Simplex]) -> frozenset:
    out = set()
    for f in facets:
        if f in out:
            continue
        out.update(faces(f))
    return frozenset(out)


class SimplicialComplex:
    """A finite abstract simplicial complex.

    Immutable; every operation in this package returns a new complex. Use
    :meth:`from_facets` to build one from (possibly redundant) generators.
    """

    def __init__(self, simplices: Iterable[Simplex] = (), *, check: bool = True):
        if check:
            simplices = frozenset(simplex(s) for s in simplices)
            for s in simplices:
                if len(s) > 1:
                    for i in range(len(s)):
                        if s[:i] + s[i + 1:] not in simplices:
                            raise InvalidFacet(f"not downward closed: missing a face of {s}")
        self.simplices: frozenset = frozenset(simplices)

    @classmethod
    def from_facets(cls, facet_list: Iterable[Iterable]) -> "SimplicialComplex":
        return cls(_closure(simplex(f) for f in facet_list), check=False)

    @cached_property
    def facets(self) -> tuple:
        covered = set()
        for s in self.simplices:
            if len(s) > 1:
                for i in range(len(s)):
                    covered.add(s[:i] + s[i + 1:])
        return tuple(sorted(self.simplices - covered))

    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted(s[0] for s in self.simplices if len(s) == 1))

    @property
    def dimension(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    @cached_property
    def f_vector(self) -> tuple:
        counts = [0] * (self.dimension + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return tuple(counts)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** q * f for q, f in enumerate(self.f_vector))

    def is_empty(self) -> bool:
        return not self.simplices

    def simplices_of_dim(self, q: int) -> list:
        return sorted(s for s in self.simplices if len(s) == q + 1)

    def __contains__(self, s) -> bool:
        if isinstance(s, tuple):
            return s in self.simplices
        return simplex(s) in self.simplices

    def __iter__(self):
        return iter(sorted(self.simplices, key=lambda s: (len(s), s)))

    def __len__(self) -> int:
        return len(self.simplices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash(self.simplices)

    def __le__(self, other: "SimplicialComplex") -> bool:
        return self.simplices <= other.simplices

    def __or__(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(self.simplices | other.simplices, check=False)

    def __repr__(self) -> str:
        return f"SimplicialComplex(f_vector={self.f_vector}, facets={len(self.facets)})"


EMPTY = SimplicialComplex()


def _require(K: SimplicialComplex, sigma) -> Simplex:
    s = simplex(sigma)
    if s not in K.simplices:
        raise NotASimplex(f"{s} is not a simplex of the complex")
    return s


def link(K: SimplicialComplex, sigma) -> SimplicialComplex:
    s = _require(K, sigma)
    ss = set(s)
    gens = [tuple(v for v in f if v not in ss) for f in K.facets if ss.issubset(f)]
    return SimplicialComplex(_closure(g for g in gens if g), check=False)


def closed_star(K: SimplicialComplex, sigma) -> SimplicialComplex:
    s = _require(K, sigma)
    ss = set(s)
    return SimplicialComplex(_closure(f for f in K.facets if ss.issubset(f)), check=False)


def star_cluster(K: SimplicialComplex, sigma) -> SimplicialComplex:
    """Union of the closed stars of the vertices of ``sigma``."""
    s = _require(K, sigma)
    ss = set(s)
    return SimplicialComplex(_closure(f for f in K.facets if ss.intersection(f)), check=False)


def induced(K: SimplicialComplex, U: Iterable) -> SimplicialComplex:
    U = {str(u) for u in U}
    return SimplicialComplex((s for s in K.simplices if U.issuperset(s)), check=False)


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    if set(K1.vertices) & set(K2.vertices):
        raise VertexCollision("join requires disjoint vertex sets")
    if K1.is_empty():
        return K2
    if K2.is_empty():
        return K1
    return SimplicialComplex.from_facets(a + b for a in K1.facets for b in K2.facets)


def cone(K: SimplicialComplex, apex) -> SimplicialComplex:
    apex = vertex(apex)
    if (apex,) in K.simplices:
        raise VertexCollision(f"apex {apex!r} already a vertex")
    return join(SimplicialComplex([(apex,)], check=False), K)


def suspension(K: SimplicialComplex, poles=("north", "south")) -> SimplicialComplex:
    a, b = vertex(poles[0]), vertex(poles[1])
    if a == b:
        raise VertexCollision("suspension poles must differ")
    return join(SimplicialComplex([(a,), (b,)], check=False), K)


def skeleton(K: SimplicialComplex, d: int) -> SimplicialComplex:
    return SimplicialComplex((s for s in K.simplices if len(s) <= d + 1), check=False)


def graph(K: SimplicialComplex) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(K.vertices)
    G.add_edges_from(s for s in K.simplices if len(s) == 2)
    return G


def clique_closure(K: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex.from_facets(nx.find_cliques(graph(K)))


def is_cone(K: SimplicialComplex):
    """Some vertex contained in every facet (the least such), or ``None``."""
    if K.is_empty():
        return None
    common = set(K.facets[0])
    for f in K.facets[1:]:
        common.intersection_update(f)
        if not common:
            return None
    return min(common)


def connected_components(K: SimplicialComplex) -> list:
    return sorted(tuple(sorted(c)) for c in nx.connected_components(graph(K)))


def is_connected(K: SimplicialComplex) -> bool:
    return not K.is_empty() and len(connected_components(K)) == 1


def relabel(K: SimplicialComplex, mapping: Mapping) -> SimplicialComplex:
    """Rename vertices; ``mapping`` must be injective on the vertices it touches."""
    m = {v: vertex(mapping.get(v, v)) for v in K.vertices}
    if len(set(m.values())) != len(m):
        raise VertexCollision("relabelling is not injective")
    return SimplicialComplex((tuple(sorted(m[v] for v in s)) for s in K.simplices), check=False)


def enumerate_subcomplexes(K: SimplicialComplex, include_empty: bool = False,
                           cap: int = DEFAULT_SUBCOMPLEX_CAP) -> Iterator[SimplicialComplex]:
    """Yield every subcomplex of ``K`` exactly once.

    Simplices are decided in order of increasing dimension; a simplex may be
    kept only if all its codimension-one faces were kept, so each
    downward-closed subset is reached along exactly one branch.
    """
    if len(K) > cap:
        raise TooLarge(f"{len(K)} simplices exceed the subcomplex enumeration cap {cap}")
    order = sorted(K.simplices, key=lambda s: (len(s), s))
    boundary = [[s[:i] + s[i + 1:] for i in range(len(s))] if len(s) > 1 else [] for s in order]
    chosen: set = set()

    def rec(i):
        if i == len(order):
            if chosen or include_empty:
                yield SimplicialComplex(frozenset(chosen), check=False)
            return
        yield from rec(i + 1)
        if all(b in chosen for b in boundary[i]):
            chosen.add(order[i])
            yield from rec(i + 1)
            chosen.discard(order[i])

    yield from rec(0)


def _signature(K: SimplicialComplex, v: Vertex):
    lk = link(K, (v,))
    return (len(lk.vertices), lk.f_vector)


def isomorphic(K1: SimplicialComplex, K2: SimplicialComplex,
               cap: int = DEFAULT_ISOMORPHISM_CAP):
    """A simplex-preserving vertex bijection ``K1 -> K2`` as a dict, or ``None``.

    Backtracking over vertices in breadth-first order, pruning candidates by
    link size and requiring every already-complete simplex to map into K2.
    """
    if len(K1.vertices) > cap or len(K2.vertices) > cap:
        raise TooLarge(f"isomorphism search limited to {cap} vertices")
    if K1.f_vector != K2.f_vector:
        return None
    sig1 = {v: _signature(K1, v) for v in K1.vertices}
    sig2 = {v: _signature(K2, v) for v in K2.vertices}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return None
    if not K1.vertices:
        return {}

    G1 = graph(K1)
    order: list = []
    seen: set = set()
    freq = {}
    for s in sig1.values():
        freq[s] = freq.get(s, 0) + 1
    for root in sorted(K1.vertices, key=lambda v: (freq[sig1[v]], v)):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in sorted(G1[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    pos = {v: i for i, v in enumerate(order)}
    # simplices whose last vertex in the search order is v
    closing = {v: [] for v in order}
    for s in K1.simplices:
        closing[max(s, key=pos.__getitem__)].append(s)
    by_sig: dict = {}
    for w in K2.vertices:
        by_sig.setdefault(sig2[w], []).append(w)
    simp2 = K2.simplices
    phi: dict = {}
    used: set = set()

    def rec(i):
        if i == len(order):
            return True
        v = order[i]
        for w in by_sig[sig1[v]]:
            if w in used:
                continue
            phi[v] = w
            if all(tuple(sorted(phi[u] for u in s)) in simp2 for s in closing[v]):
                used.add(w)
                if rec(i + 1):
                    return True
                used.discard(w)
            del phi[v]
        return False

    return dict(phi) if rec(0) else None
