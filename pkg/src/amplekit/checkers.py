"""Decision procedures for r-conicity and r-ampleness.

Each property has a definitional oracle (``*_naive``) that sweeps every
vertex set of size ``<= r`` and every subcomplex literally, and an
optimized checker that only visits vertex sets of size ``min(r, |V|)`` and
works on bitmask-encoded simplices. Both report the lexicographically first
witness of failure in their own sweep order.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from math import comb, inf

from .core import (SimplicialComplex, closed_star, enumerate_subcomplexes,
                   induced, is_cone, link)
from .errors import TooLarge

CONE = inf  # conicity number of a cone: r-conic for every r

DEFAULT_SUBSET_BUDGET = 10 ** 6
DEFAULT_STREAM_CAP = 10 ** 5


def default_budget() -> int:
    env = os.environ.get("AMPLEKIT_BUDGET")
    return int(env) if env else DEFAULT_SUBSET_BUDGET


@dataclass(frozen=True)
class ConicityReport:
    r: int
    holds: bool
    witness: tuple | None = None

    def to_dict(self) -> dict:
        return {"property": "conic", "r": self.r, "holds": self.holds,
                "witness": None if self.witness is None else {"U": list(self.witness)}}


@dataclass(frozen=True)
class AmplenessReport:
    r: int
    holds: bool
    witness: tuple | None = None  # (U, L)
    external_only: bool = True
    include_empty: bool = True

    def to_dict(self) -> dict:
        w = None
        if self.witness is not None:
            U, L = self.witness
            w = {"U": list(U), "L": [list(f) for f in L.facets]}
        return {"property": "ample", "r": self.r, "holds": self.holds, "witness": w,
                "external_only": self.external_only, "include_empty": self.include_empty}


class _Bits:
    """Bitmask encoding: vertex ``i`` of the sorted vertex list is bit ``i``."""

    def __init__(self, K: SimplicialComplex):
        self.verts = K.vertices
        self.index = {v: i for i, v in enumerate(self.verts)}
        self.simp = {self.mask(s) for s in K.simplices}
        self.facets = [self.mask(f) for f in K.facets]
        self.nbr = [1 << i for i in range(len(self.verts))]
        for s in K.simplices:
            if len(s) == 2:
                a, b = self.index[s[0]], self.index[s[1]]
                self.nbr[a] |= 1 << b
                self.nbr[b] |= 1 << a

    def mask(self, s) -> int:
        m = 0
        for v in s:
            m |= 1 << self.index[v]
        return m

    def unmask(self, m: int) -> tuple:
        return tuple(v for i, v in enumerate(self.verts) if m >> i & 1)

    def induced_facets(self, U: int) -> list:
        cand = sorted({f & U for f in self.facets} - {0}, key=lambda m: -bin(m).count("1"))
        out: list = []
        for m in cand:
            if not any(m & o == m for o in out):
                out.append(m)
        return out

    def induced_simplices(self, U: int) -> list:
        out = []
        sub = U
        while sub:
            if sub in self.simp:
                out.append(sub)
            sub = (sub - 1) & U
        return out

    def cover(self, U: int):
        """Index of the least vertex whose closed star contains induced(K, U)."""
        facets = self.induced_facets(U)
        for v, nb in enumerate(self.nbr):
            if nb & U == U:
                bit = 1 << v
                if all(f | bit in self.simp for f in facets):
                    return v
        return None


@lru_cache(maxsize=128)
def _bits(K: SimplicialComplex) -> _Bits:
    return _Bits(K)


def _check_subsets(nverts: int, size: int, budget: int):
    if comb(nverts, size) > budget:
        raise TooLarge(f"C({nverts}, {size}) vertex subsets exceed the budget {budget}")


def star_cover_vertex(K: SimplicialComplex, U):
    """Some vertex ``v`` with ``induced(K, U)`` inside the closed star of ``v``, else ``None``."""
    b = _bits(K)
    U = {str(u) for u in U}
    if not U <= set(b.verts):
        raise ValueError("U must be a set of vertices of K")
    v = b.cover(b.mask(U))
    return None if v is None else b.verts[v]


def is_r_conic(K: SimplicialComplex, r: int, budget: int | None = None) -> ConicityReport:
    if r < 0:
        return ConicityReport(r, True)
    b = _bits(K)
    n = len(b.verts)
    size = min(r, n)
    _check_subsets(n, size, budget or default_budget())
    for combo in itertools.combinations(range(n), size):
        U = 0
        for i in combo:
            U |= 1 << i
        if b.cover(U) is None:
            return ConicityReport(r, False, b.unmask(U))
    return ConicityReport(r, True)


def conicity_number(K: SimplicialComplex, budget: int | None = None):
    """``CONE`` for a cone, otherwise the largest r for which K is r-conic."""
    if is_cone(K) is not None:
        return CONE
    r = 0
    while is_r_conic(K, r, budget).holds:
        r += 1
    return r - 1


def is_r_ample(K: SimplicialComplex, r: int, external_only: bool = True,
               include_empty: bool = True, budget: int | None = None,
               stream_cap: int = DEFAULT_STREAM_CAP) -> AmplenessReport:
    def report(holds, witness=None):
        return AmplenessReport(r, holds, witness, external_only, include_empty)

    if r < 1:
        raise ValueError("ampleness is defined for r >= 1")
    if K.is_empty():
        return report(False, ((), SimplicialComplex()))
    b = _bits(K)
    n = len(b.verts)
    size = min(r, n)
    _check_subsets(n, size, budget or default_budget())
    for combo in itertools.combinations(range(n), size):
        U = 0
        for i in combo:
            U |= 1 << i
        simplices_U = b.induced_simplices(U)
        traces = set()
        for v in range(n):
            bit = 1 << v
            if external_only and U & bit:
                continue
            traces.add(frozenset(s for s in simplices_U if not s & bit and s | bit in b.simp))
        Uverts = b.unmask(U)
        sub = induced(K, Uverts)
        for count, L in enumerate(enumerate_subcomplexes(sub, include_empty, cap=2 ** size)):
            if count >= stream_cap:
                raise TooLarge(f"more than {stream_cap} subcomplexes on one vertex set")
            if frozenset(b.mask(s) for s in L.simplices) not in traces:
                return report(False, (Uverts, L))
    return report(True)


def is_r_conic_naive(K: SimplicialComplex, r: int, budget: int | None = None,
                     stream_cap: int = DEFAULT_STREAM_CAP) -> ConicityReport:
    """Literal definition: every subcomplex on at most r vertices lies in some closed star."""
    if r < 0:
        return ConicityReport(r, True)
    budget = budget or default_budget()
    V = K.vertices
    if sum(comb(len(V), s) for s in range(min(r, len(V)) + 1)) > budget:
        raise TooLarge("naive conicity sweep exceeds the budget")
    stars = [closed_star(K, (v,)).simplices for v in V]
    for s in range(min(r, len(V)) + 1):
        for U in itertools.combinations(V, s):
            for count, L in enumerate(enumerate_subcomplexes(induced(K, U), True, cap=2 ** s)):
                if count >= stream_cap:
                    raise TooLarge("subcomplex stream cap exceeded")
                if not any(L.simplices <= st for st in stars):
                    return ConicityReport(r, False, U)
    return ConicityReport(r, True)


def is_r_ample_naive(K: SimplicialComplex, r: int, external_only: bool = True,
                     include_empty: bool = True, budget: int | None = None,
                     stream_cap: int = DEFAULT_STREAM_CAP) -> AmplenessReport:
    """Literal definition, sweeping every U with ``|U| <= r``."""
    def report(holds, witness=None):
        return AmplenessReport(r, holds, witness, external_only, include_empty)

    if r < 1:
        raise ValueError("ampleness is defined for r >= 1")
    if K.is_empty():
        return report(False, ((), SimplicialComplex()))
    budget = budget or default_budget()
    V = K.vertices
    if sum(comb(len(V), s) for s in range(min(r, len(V)) + 1)) > budget:
        raise TooLarge("naive ampleness sweep exceeds the budget")
    links = {v: link(K, (v,)).simplices for v in V}
    for s in range(min(r, len(V)) + 1):
        for U in itertools.combinations(V, s):
            Uset = set(U)
            restricted = [frozenset(t for t in links[v] if Uset.issuperset(t))
                          for v in V if not (external_only and v in Uset)]
            for count, L in enumerate(enumerate_subcomplexes(induced(K, U), include_empty,
                                                             cap=2 ** s)):
                if count >= stream_cap:
                    raise TooLarge("subcomplex stream cap exceeded")
                if L.simplices not in restricted:
                    return report(False, (U, L))
    return report(True)


def witness_confirms_conic_failure(K: SimplicialComplex, U) -> bool:
    sub = induced(K, U).simplices
    return not any(sub <= closed_star(K, (v,)).simplices for v in K.vertices)


def witness_confirms_ample_failure(K: SimplicialComplex, U, L: SimplicialComplex,
                                   external_only: bool = True) -> bool:
    Uset = set(U)
    if not set(L.vertices) <= Uset or not L <= K:
        return False
    for v in K.vertices:
        if external_only and v in Uset:
            continue
        if frozenset(t for t in link(K, (v,)).simplices if Uset.issuperset(t)) == L.simplices:
            return False
    return True
