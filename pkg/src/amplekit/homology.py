"""Integer simplicial homology, cycle-class tests and connectivity certificates."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod

from .core import SimplicialComplex, clique_closure, is_connected
from .errors import NotACycle, TooLarge
from .snf import smith_normal_form


@dataclass
class BoundaryMatrix:
    """Sparse matrix of the boundary map ``C_q -> C_{q-1}``.

    Rows are indexed by ``row_simplices`` and columns by ``col_simplices``,
    both sorted; ``entries[r][c]`` is ``(-1)^i`` when row ``r`` is the
    column simplex with its ``i``-th vertex removed. Degree 0 holds the
    augmentation (a single row of ones) when ``augmented`` is set.
    """

    degree: int
    row_simplices: list
    col_simplices: list
    entries: dict = field(default_factory=dict)

    @property
    def shape(self):
        return len(self.row_simplices), len(self.col_simplices)

    def dense(self) -> list:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for r, row in self.entries.items():
            for c, v in row.items():
                out[r][c] = v
        return out


def boundary_matrix(K: SimplicialComplex, q: int, augmented: bool = False) -> BoundaryMatrix:
    cols = K.simplices_of_dim(q)
    if q == 0:
        if augmented and cols:
            return BoundaryMatrix(0, [()], cols, {0: {c: 1 for c in range(len(cols))}})
        return BoundaryMatrix(0, [], cols, {})
    rows = K.simplices_of_dim(q - 1)
    index = {s: i for i, s in enumerate(rows)}
    entries: dict = {}
    for c, s in enumerate(cols):
        for i in range(len(s)):
            r = index[s[:i] + s[i + 1:]]
            entries.setdefault(r, {})[c] = -1 if i % 2 else 1
    return BoundaryMatrix(q, rows, cols, entries)


def composes_to_zero(lower: BoundaryMatrix, upper: BoundaryMatrix) -> bool:
    """True when ``lower @ upper == 0`` for consecutive boundary maps."""
    def by_col(M):
        out: dict = {}
        for r, row in M.entries.items():
            for c, v in row.items():
                out.setdefault(c, []).append((r, v))
        return out

    low = by_col(lower)
    for col in by_col(upper).values():
        acc: dict = {}
        for mid, v in col:
            for r, w in low.get(mid, ()):
                acc[r] = acc.get(r, 0) + v * w
        if any(acc.values()):
            return False
    return True


@dataclass(frozen=True)
class HomologySummary:
    betti: tuple
    torsion: tuple
    reduced: bool = False

    def is_trivial(self, upto: int | None = None) -> bool:
        upto = len(self.betti) - 1 if upto is None else upto
        return all(b == 0 for b in self.betti[:upto + 1]) and not any(self.torsion[:upto + 1])

    def to_dict(self) -> dict:
        return {"reduced": self.reduced, "betti": list(self.betti),
                "torsion": [list(t) for t in self.torsion]}


def homology(K: SimplicialComplex, max_degree: int | None = None,
             reduced: bool = False) -> HomologySummary:
    """Betti numbers and torsion coefficients in degrees ``0..max_degree``."""
    if max_degree is None:
        max_degree = max(K.dimension, 0)
    f = list(K.f_vector) + [0] * (max_degree + 2)
    ranks = []
    factors = []
    for q in range(max_degree + 2):
        if q > K.dimension:
            ranks.append(0)
            factors.append(())
            continue
        B = boundary_matrix(K, q, augmented=reduced)
        snf = smith_normal_form(B.entries)
        ranks.append(snf.rank)
        factors.append(snf.torsion)
    betti = tuple(f[q] - ranks[q] - ranks[q + 1] for q in range(max_degree + 1))
    torsion = tuple(factors[q + 1] for q in range(max_degree + 1))
    return HomologySummary(betti, torsion, reduced)


def reduced_homology(K: SimplicialComplex, max_degree: int | None = None) -> HomologySummary:
    return homology(K, max_degree, reduced=True)


def sphere_homology(d: int, reduced: bool = True) -> HomologySummary:
    betti = [0] * (d + 1)
    betti[d] = 1
    if not reduced:
        betti[0] += 1
    return HomologySummary(tuple(betti), ((),) * (d + 1), reduced)


def check_chain_complex(K: SimplicialComplex) -> bool:
    mats = [boundary_matrix(K, q, augmented=True) for q in range(K.dimension + 1)]
    return all(composes_to_zero(mats[q - 1], mats[q]) for q in range(1, len(mats)))


def _permutation_sign(seq) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def chain_from_dict(K: SimplicialComplex, z: dict):
    """Normalize ``{oriented simplex: coeff}`` to sorted orientations.

    Returns ``(degree, {sorted simplex: coeff})``.
    """
    out: dict = {}
    degree = None
    for s, c in z.items():
        s = tuple(str(v) for v in s)
        key = tuple(sorted(s))
        c *= _permutation_sign(s)
        if key not in K.simplices:
            raise NotACycle(f"{key} is not a simplex")
        if degree is None:
            degree = len(key) - 1
        elif degree != len(key) - 1:
            raise NotACycle("chain mixes degrees")
        if c:
            out[key] = out.get(key, 0) + c
    return degree, {k: v for k, v in out.items() if v}


def is_boundary(K: SimplicialComplex, z: dict) -> bool:
    """Whether the integer cycle ``z`` bounds, i.e. lies in ``im d_{q+1}``.

    ``z`` maps oriented simplices (vertex tuples) to integer coefficients.
    Adjoining ``z`` as an extra column leaves the image lattice unchanged
    exactly when rank and the product of invariant factors are unchanged.
    """
    q, z = chain_from_dict(K, z)
    if not z:
        return True
    if q > 0:
        rows = K.simplices_of_dim(q - 1)
        index = {s: i for i, s in enumerate(rows)}
        acc: dict = {}
        for s, c in z.items():
            for i in range(len(s)):
                r = index[s[:i] + s[i + 1:]]
                acc[r] = acc.get(r, 0) + (-c if i % 2 else c)
        if any(acc.values()):
            raise NotACycle("chain has non-zero boundary")
    B = boundary_matrix(K, q + 1)
    index = {s: i for i, s in enumerate(K.simplices_of_dim(q))}
    extra = len(B.col_simplices)
    with_z = {r: dict(row) for r, row in B.entries.items()}
    for s, c in z.items():
        with_z.setdefault(index[s], {})[extra] = c
    a = smith_normal_form(B.entries)
    b = smith_normal_form(with_z)
    return a.rank == b.rank and prod(a.factors) == prod(b.factors)


@dataclass(frozen=True)
class Certificate:
    status: str  # "Certified" | "Refuted" | "Unknown"
    reason: str

    def to_dict(self) -> dict:
        return {"status": self.status, "reason": self.reason}


def connectivity_certificate(K: SimplicialComplex, d: int, budget: int = 10_000) -> Certificate:
    """Semi-decide d-connectivity.

    Refutations are exact. ``Certified`` needs a complete trivialization of
    the edge-path group plus vanishing reduced homology through degree d.
    """
    from .fundamental_group import fundamental_presentation, try_trivialize

    if d < 0:
        return Certificate("Certified", "every space is (-1)-connected")
    if K.is_empty():
        return Certificate("Refuted", "empty complex")
    if not is_connected(K):
        return Certificate("Refuted", "disconnected")
    if d == 0:
        return Certificate("Certified", "non-empty and connected")
    H = reduced_homology(K, d)
    for q in range(1, d + 1):
        if H.betti[q] or H.torsion[q]:
            return Certificate("Refuted", f"reduced H_{q} is non-zero "
                               f"(betti {H.betti[q]}, torsion {list(H.torsion[q])})")
    result = try_trivialize(fundamental_presentation(K), budget)
    if result.status != "Trivial":
        return Certificate("Unknown", f"homology vanishes through degree {d} "
                           "but the edge-path group was not trivialized")
    return Certificate("Certified", f"edge-path group trivialized in {len(result.trace)} steps; "
                       f"reduced homology vanishes through degree {d}")


@dataclass
class CliqueSweepReport:
    n: int
    v_max: int
    graphs: dict          # vertex count -> number of graphs checked
    nontrivial: dict      # vertex count -> graphs whose clique complex has H_n != 0
    violations: list      # edge lists with fewer than 2n+2 vertices and H_n != 0

    @property
    def holds(self) -> bool:
        return not self.violations


def clique_homology_sweep(v_max: int, n: int, max_graphs: int = 40_000) -> CliqueSweepReport:
    """Check H_n of every clique complex of a labeled graph on at most ``v_max`` vertices."""
    total = sum(2 ** (v * (v - 1) // 2) for v in range(1, v_max + 1))
    if v_max > 6 or total > max_graphs:
        raise TooLarge(f"{total} graphs exceed the sweep budget")
    graphs, nontrivial, violations = {}, {}, []
    for v in range(1, v_max + 1):
        verts = [str(i) for i in range(v)]
        pairs = list(itertools.combinations(verts, 2))
        graphs[v] = nontrivial[v] = 0
        for mask in range(2 ** len(pairs)):
            edges = [p for b, p in enumerate(pairs) if mask >> b & 1]
            K = clique_closure(SimplicialComplex.from_facets([[x] for x in verts] + edges))
            graphs[v] += 1
            if K.dimension < n:
                continue
            H = homology(K, n)
            if H.betti[n] or H.torsion[n]:
                nontrivial[v] += 1
                if v < 2 * n + 2:
                    violations.append(edges)
    return CliqueSweepReport(n, v_max, graphs, nontrivial, violations)
