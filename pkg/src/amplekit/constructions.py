"""Generators for the explicit complexes: simplices, cross-polytope spheres,
the Császár torus, band spheres, cubical grids and their barycentric
subdivisions, doubled spheres, and the staged coning counterexample."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from importlib import resources
from math import comb

from .core import (SimplicialComplex, cone, enumerate_subcomplexes, induced,
                   join)
from .errors import InvalidParam, TooLarge
from .io import parse_text


def simplex_complex(k: int) -> SimplicialComplex:
    if k < 0:
        raise InvalidParam("simplex dimension must be >= 0")
    return SimplicialComplex.from_facets([[str(i) for i in range(k + 1)]])


def cross_polytope_sphere(n: int) -> SimplicialComplex:
    """Join of ``n + 1`` copies of the two-point complex; triangulates S^n."""
    if n < 0:
        raise InvalidParam("n must be >= 0")
    K = SimplicialComplex()
    for i in range(n + 1):
        K = join(K, SimplicialComplex.from_facets([[f"+{i}"], [f"-{i}"]]))
    return K


def csaszar() -> SimplicialComplex:
    text = resources.files("amplekit.data").joinpath("csaszar.txt").read_text("utf-8")
    return parse_text(text).complex


def band_vertex(i: int, j: int) -> str:
    return f"({i},{j})"


def band_sphere(n: int, m: int) -> SimplicialComplex:
    """The 2-sphere M(n, m): an ``n x m`` triangulated cylinder capped by two cones.

    Column ``i = 0`` uses the opposite diagonal to the other columns.
    """
    if n < 3 or m < 0:
        raise InvalidParam("band_sphere needs n >= 3 and m >= 0")
    v = band_vertex
    facets = []
    for j in range(m):
        facets.append([v(0, j), v(1, j), v(0, j + 1)])
        facets.append([v(0, j + 1), v(1, j), v(1, j + 1)])
        for i in range(1, n):
            i1 = (i + 1) % n
            facets.append([v(i, j), v(i1, j), v(i1, j + 1)])
            facets.append([v(i, j), v(i1, j + 1), v(i, j + 1)])
    for i in range(n):
        i1 = (i + 1) % n
        facets.append(["0", v(i, 0), v(i1, 0)])
        facets.append(["1", v(i, m), v(i1, m)])
    return SimplicialComplex.from_facets(facets)


@dataclass(frozen=True, order=True)
class Cube:
    """An axis-parallel cube with integer corners.

    ``intervals[i] = (lo, hi)`` with ``hi - lo`` in ``{0, 1}``. ``copy`` is
    ``"A"``/``"B"`` for a cube owned by one half of a doubled sphere and
    ``""`` for a shared (or untagged) cube. ``level`` is the subdivision
    depth, ``None`` for a plain grid.
    """

    intervals: tuple
    copy: str = ""
    level: int | None = None

    @property
    def dimension(self) -> int:
        return sum(hi - lo for lo, hi in self.intervals)

    def contains(self, other: "Cube") -> bool:
        return (other.level == self.level
                and (other.copy == "" or other.copy == self.copy)
                and all(a <= c and d <= b for (a, b), (c, d) in zip(self.intervals, other.intervals)))

    def token(self) -> str:
        coords = ",".join(str(lo) if lo == hi else f"{lo}-{hi}" for lo, hi in self.intervals)
        if self.level is None:
            return f"b{self.copy}({coords})"
        return f"b{self.copy or 'S'}{self.level}({coords})"


class CubicalComplex:
    """A finite set of cubes closed under taking faces."""

    def __init__(self, cubes, side=None):
        self.cubes = frozenset(cubes)
        self.side = side

    def __len__(self):
        return len(self.cubes)

    def __iter__(self):
        return iter(sorted(self.cubes))

    def facets_of(self, Q: Cube) -> list:
        """Codimension-one faces of ``Q`` in this complex."""
        out = []
        for idx, (lo, hi) in enumerate(Q.intervals):
            if hi == lo:
                continue
            for x in (lo, hi):
                ivs = Q.intervals[:idx] + ((x, x),) + Q.intervals[idx + 1:]
                for copy in {Q.copy, ""}:
                    F = Cube(ivs, copy, Q.level)
                    if F in self.cubes:
                        out.append(F)
        return sorted(out)

    def maximal_cubes(self) -> list:
        covered = {F for Q in self.cubes for F in self.facets_of(Q)}
        return sorted(self.cubes - covered)

    def euler_characteristic(self) -> int:
        return sum((-1) ** Q.dimension for Q in self.cubes)


def _grid_cubes(sizes, copy="", level=None, shared_boundary=False):
    per_axis = []
    for m in sizes:
        per_axis.append([(x, x) for x in range(m + 1)] + [(x, x + 1) for x in range(m)])
    for ivs in itertools.product(*per_axis):
        c = copy
        if shared_boundary and any(lo == hi and lo in (0, m) for (lo, hi), m in zip(ivs, sizes)):
            c = ""
        yield Cube(tuple(ivs), c, level)


def cubical_grid(*sizes: int) -> CubicalComplex:
    """All faces of the unit boxes of the ``m_1 x ... x m_n`` grid."""
    if len(sizes) == 1 and not isinstance(sizes[0], int):
        sizes = tuple(sizes[0])
    if not sizes or any(m < 1 for m in sizes):
        raise InvalidParam("grid sizes must be positive")
    return CubicalComplex(_grid_cubes(sizes), side=tuple(sizes))


def _flags(C: CubicalComplex, Q: Cube):
    facets = C.facets_of(Q)
    if not facets:
        yield (Q,)
        return
    for F in facets:
        for chain in _flags(C, F):
            yield (Q,) + chain


def barycentric_of_cubical(C: CubicalComplex) -> SimplicialComplex:
    """Vertices are cube barycenters; simplices are chains of faces."""
    facets = []
    for Q in C.maximal_cubes():
        facets.extend([c.token() for c in chain] for chain in _flags(C, Q))
    return SimplicialComplex.from_facets(facets)


def doubled_cubical(n: int, k: int) -> CubicalComplex:
    if n < 1 or k < 0:
        raise InvalidParam("doubled sphere needs n >= 1 and k >= 0")
    sizes = (2 ** k,) * n
    cubes = set()
    for copy in ("A", "B"):
        cubes.update(_grid_cubes(sizes, copy, k, shared_boundary=True))
    return CubicalComplex(cubes, side=sizes)


def doubled_sphere(n: int, k: int) -> SimplicialComplex:
    """Two copies of the subdivided ``2^k``-grid on I^n glued along their boundary."""
    return barycentric_of_cubical(doubled_cubical(n, k))


def counterexample_stages(n: int, stages: int, max_vertices: int = 1000,
                          max_subsets: int = 10 ** 6) -> list:
    """The complexes ``K_0, ..., K_stages`` of the staged coning construction.

    ``K_0`` is the cross-polytope n-sphere; ``K_{j+1}`` adds one fresh cone
    apex ``c{j+1}.{idx}`` over every non-empty subcomplex of ``K_j`` with at
    most ``2n + 1`` vertices, visiting vertex sets in lexicographic order.
    """
    if n < 1 or stages < 0:
        raise InvalidParam("counterexample_stage needs n >= 1 and stages >= 0")
    size = 2 * n + 1
    K = cross_polytope_sphere(n)
    out = [K]
    for j in range(stages):
        V = K.vertices
        if sum(comb(len(V), s) for s in range(1, size + 1)) > max_subsets:
            raise TooLarge(f"stage {j + 1} needs more than {max_subsets} vertex subsets")
        bases = []
        for s in range(1, size + 1):
            for W in itertools.combinations(V, s):
                for L in enumerate_subcomplexes(induced(K, W)):
                    if len(L.vertices) == s:
                        bases.append(L)
                if len(V) + len(bases) > max_vertices:
                    raise TooLarge(f"stage {j + 1} exceeds {max_vertices} vertices")
        new = set(K.simplices)
        for idx, L in enumerate(bases):
            new.update(cone(L, f"c{j + 1}.{idx}").simplices)
        K = SimplicialComplex(new, check=False)
        out.append(K)
    return out


def counterexample_stage(n: int, stages: int, max_vertices: int = 1000) -> SimplicialComplex:
    return counterexample_stages(n, stages, max_vertices)[-1]
