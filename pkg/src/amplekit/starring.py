"""Starring moves: ball certificates, the move itself, replayed reductions
of band spheres and doubled spheres, and independent log verification.

A starring replaces a ball ``D`` inside ``M`` by the cone ``w * boundary(D)``
over a fresh apex ``w``. Balls are certified homologically; in dimension at
most two the certificate is exact (surface classification).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .constructions import (Cube, band_sphere, band_vertex,
                            barycentric_of_cubical, doubled_cubical,
                            doubled_sphere)
from .core import (SimplicialComplex, cone, faces, graph, induced,
                   is_connected, isomorphic, join, link, relabel, star_cluster)
from .errors import InvalidParam, NotABall, RejectedMove, VerificationFailure
from .homology import reduced_homology, sphere_homology
from .io import canonical_facets, digest

HOMOLOGY_BALL = "HomologyBall"
SURFACE_DISK = "SurfaceDisk"
SHELLED_BALL = "ShelledBall"
LEVELS = (HOMOLOGY_BALL, SURFACE_DISK, SHELLED_BALL)


@dataclass
class BallCertificate:
    dimension: int
    level: str
    boundary: SimplicialComplex
    diagnostics: dict = field(default_factory=dict)


def _ridges(D: SimplicialComplex) -> dict:
    counts: dict = {}
    for f in D.facets:
        for i in range(len(f)):
            r = f[:i] + f[i + 1:]
            counts[r] = counts.get(r, 0) + 1
    return counts


def _strongly_connected(D: SimplicialComplex) -> bool:
    by_ridge: dict = {}
    for f in D.facets:
        for i in range(len(f)):
            by_ridge.setdefault(f[:i] + f[i + 1:], []).append(f)
    seen = {D.facets[0]}
    stack = [D.facets[0]]
    while stack:
        f = stack.pop()
        for i in range(len(f)):
            for g in by_ridge[f[:i] + f[i + 1:]]:
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
    return len(seen) == len(D.facets)


def _is_path_or_cycle(L: SimplicialComplex) -> bool:
    return (L.dimension == 1 and is_connected(L)
            and all(d <= 2 for _, d in graph(L).degree()))


def shelling_order(D: SimplicialComplex, budget: int = 10 ** 6):
    """A shelling order of the facets of a pure complex, or ``None`` if the
    backtracking search fails or exhausts ``budget`` nodes."""
    facets = list(D.facets)
    nodes = 0

    def attachable(F, present):
        ridges = [F[:i] + F[i + 1:] for i in range(len(F)) if F[:i] + F[i + 1:] in present]
        if not ridges:
            return False
        missing = [x for x in F if F[:F.index(x)] + F[F.index(x) + 1:] in present]
        for G in faces(F):
            if G != F and G in present and all(x in G for x in missing):
                return False
        return True

    def rec(order, present):
        nonlocal nodes
        if len(order) == len(facets):
            return True
        used = set(order)
        for F in facets:
            if F in used:
                continue
            nodes += 1
            if nodes > budget:
                return False
            if attachable(F, present):
                order.append(F)
                added = [G for G in faces(F) if G not in present]
                present.update(added)
                if rec(order, present):
                    return True
                present.difference_update(added)
                order.pop()
        return False

    for start in facets:
        order = [start]
        if rec(order, set(faces(start))):
            return order
        if nodes > budget:
            break
    return None


def certify_ball(D: SimplicialComplex, want: str = SURFACE_DISK,
                 shelling_budget: int = 10 ** 6) -> BallCertificate:
    """Certify that ``D`` triangulates a ball, at the strongest level <= ``want``.

    Raises :class:`NotABall` naming the first failed criterion.
    """
    if want not in LEVELS:
        raise InvalidParam(f"unknown certificate level {want!r}")
    if D.is_empty():
        raise NotABall("non-empty")
    d = D.dimension
    if any(len(f) != d + 1 for f in D.facets):
        raise NotABall("pure", f"facets of several dimensions (top {d})")
    if d == 0:
        if len(D.vertices) != 1:
            raise NotABall("connected", "a 0-ball is a single vertex")
        return BallCertificate(0, SURFACE_DISK if want != HOMOLOGY_BALL else HOMOLOGY_BALL,
                               SimplicialComplex(), {"f_vector": D.f_vector})
    ridges = _ridges(D)
    if any(c > 2 for c in ridges.values()):
        raise NotABall("pseudomanifold", "a codimension-one face lies in three or more facets")
    if not _strongly_connected(D):
        raise NotABall("strongly connected")
    boundary = SimplicialComplex.from_facets(r for r, c in ridges.items() if c == 1)
    if boundary.is_empty():
        raise NotABall("boundary", "no free codimension-one faces")
    hd = reduced_homology(D)
    if not hd.is_trivial():
        raise NotABall("acyclic", f"reduced homology {hd.to_dict()}")
    hb = reduced_homology(boundary, d - 1)
    if hb != sphere_homology(d - 1):
        raise NotABall("boundary sphere", f"reduced boundary homology {hb.to_dict()}")
    diagnostics = {"f_vector": D.f_vector, "boundary_f_vector": boundary.f_vector,
                   "homology": hd.to_dict(), "boundary_homology": hb.to_dict()}
    level = HOMOLOGY_BALL
    if want in (SURFACE_DISK, SHELLED_BALL) and d <= 2:
        if d == 2:
            for v in D.vertices:
                if not _is_path_or_cycle(link(D, (v,))):
                    raise NotABall("surface", f"link of {v} is not a path or cycle")
            if D.euler_characteristic != 1 or not is_connected(boundary):
                raise NotABall("disk", "Euler characteristic or boundary components")
        level = SURFACE_DISK
    if want == SHELLED_BALL:
        order = shelling_order(D, shelling_budget)
        if order is not None:
            diagnostics["shelling"] = [list(f) for f in order]
            level = SHELLED_BALL
    return BallCertificate(d, level, boundary, diagnostics)


def coface_violation(M: SimplicialComplex, D: SimplicialComplex, boundary: SimplicialComplex):
    """A simplex of ``M`` outside ``D`` with a face in ``D`` minus its boundary, else ``None``."""
    interior = D.simplices - boundary.simplices
    VD = set(D.vertices)
    for t in sorted(M.simplices - D.simplices):
        inside = tuple(v for v in t if v in VD)
        if inside and any(g in interior for g in faces(inside)):
            return t
    return None


@dataclass
class StarringMove:
    disk: SimplicialComplex
    boundary: SimplicialComplex
    apex: str
    r_bound: int
    certificate: BallCertificate
    before: str
    after: str
    note: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"apex": self.apex, "r_bound": self.r_bound,
                "certificate": self.certificate.level, "dimension": self.certificate.dimension,
                "disk_vertices": len(self.disk.vertices),
                "disk": canonical_facets(self.disk), "boundary": canonical_facets(self.boundary),
                "before": self.before, "after": self.after, "note": self.note}


def perform_starring(M: SimplicialComplex, D: SimplicialComplex, r_bound: int, apex: str,
                     want: str = SURFACE_DISK, note: dict | None = None):
    """Star ``D`` in ``M`` with a fresh ``apex``; returns ``(new complex, move)``."""
    if not D <= M:
        raise RejectedMove("disk is not a subcomplex")
    if len(D.vertices) > r_bound:
        raise RejectedMove(f"disk has {len(D.vertices)} vertices, more than {r_bound}")
    if (apex,) in M.simplices:
        raise RejectedMove(f"apex {apex!r} is not fresh")
    try:
        cert = certify_ball(D, want)
    except NotABall as exc:
        raise RejectedMove(f"not a ball: {exc}") from exc
    bad = coface_violation(M, D, cert.boundary)
    if bad is not None:
        raise RejectedMove(f"coface condition fails at {bad}")
    interior = D.simplices - cert.boundary.simplices
    new = SimplicialComplex((M.simplices - interior) | cone(cert.boundary, apex).simplices,
                            check=False)
    move = StarringMove(D, cert.boundary, apex, r_bound, cert, digest(M), digest(new),
                        dict(note or {}))
    return new, move


@dataclass
class MoveLog:
    kind: str
    params: dict
    start: SimplicialComplex
    moves: list
    final: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": self.params, "start": canonical_facets(self.start),
                "moves": [m.to_dict() | {"index": i} for i, m in enumerate(self.moves)],
                "final": self.final}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "MoveLog":
        data = json.loads(text)
        moves = []
        for rec in data["moves"]:
            disk = SimplicialComplex.from_facets(rec["disk"])
            boundary = SimplicialComplex.from_facets(rec["boundary"])
            cert = BallCertificate(rec["dimension"], rec["certificate"], boundary)
            moves.append(StarringMove(disk, boundary, rec["apex"], rec["r_bound"], cert,
                                      rec["before"], rec["after"], rec.get("note", {})))
        return cls(data["kind"], data["params"], SimplicialComplex.from_facets(data["start"]),
                   moves, data.get("final", {}))


def _fresh(prefix: str, taken, counter) -> str:
    while True:
        name = f"{prefix}{next(counter)}"
        if (name,) not in taken:
            return name


def _check_sphere(K: SimplicialComplex, d: int, where: str):
    if reduced_homology(K, d) != sphere_homology(d):
        raise RejectedMove(f"{where}: homology is no longer that of S^{d}")


def replay_theorem3(n: int, m: int, check_homology: bool = True,
                    max_vertices: int = 400) -> MoveLog:
    """Reduce the band sphere M(n, m) to M(3, 0) by 8-starrings.

    Each round with ``m >= 1`` stars the star clusters of the vertical edges
    joining the two top rows, columns ``1..n-1`` then ``0``; the apexes
    become the new top row. With one row left, the star cluster of two
    adjacent cycle vertices is starred until three remain.
    """
    if n < 3 or m < 0:
        raise InvalidParam("replay_theorem3 needs n >= 3 and m >= 0")
    if 2 + n * (m + 1) > max_vertices:
        raise InvalidParam(f"M({n},{m}) exceeds {max_vertices} vertices")
    K = start = band_sphere(n, m)
    rows = [[band_vertex(i, j) for i in range(n)] for j in range(m + 1)]
    counter = itertools.count()
    moves = []

    def star(D, note):
        nonlocal K
        apex = _fresh("w", K.simplices, counter)
        K, move = perform_starring(K, D, 8, apex, SURFACE_DISK, note)
        if check_homology:
            _check_sphere(K, 2, f"move {len(moves)}")
        moves.append(move)
        return apex

    for top in range(m, 0, -1):
        for i in list(range(1, n)) + [0]:
            D = star_cluster(K, (rows[top][i], rows[top - 1][i]))
            rows[top - 1][i] = star(D, {"round": top, "column": i})
        rows.pop()
    cycle = rows[0]
    while len(cycle) > 3:
        D = star_cluster(K, (cycle[0], cycle[1]))
        cycle = [star(D, {"round": 0, "cycle": len(cycle)})] + cycle[2:]
    iso = isomorphic(K, band_sphere(3, 0))
    if iso is None:
        raise RejectedMove("final complex is not isomorphic to M(3,0)")
    return MoveLog("thm3", {"n": n, "m": m}, start, moves,
                   {"target": "band_sphere(3,0)", "isomorphism": dict(sorted(iso.items())),
                    "digest": digest(K)})


def _inside(F: Cube, Q: Cube) -> bool:
    """Fine cube ``F`` (level k+1) lies in coarse cube ``Q`` (level k) of the same copy."""
    if F.copy and F.copy != Q.copy:
        return False
    return all(2 * a <= c and d <= 2 * b for (a, b), (c, d) in zip(Q.intervals, F.intervals))


def _chains_above(C, Q: Cube, top: int) -> list:
    """All chains ``Q < P_1 < ... < P_t`` with dimensions increasing by one up to ``top``."""
    if Q.dimension == top:
        return [()]
    up = [P for P in C.cubes if P.dimension == Q.dimension + 1 and P.contains(Q)]
    return [(P,) + rest for P in sorted(up) for rest in _chains_above(C, P, top)]


def coarse_relabelling(n: int, k: int) -> dict:
    """Tokens of level-(k+1) vertex cubes at even coordinates -> level-k tokens."""
    fine = doubled_cubical(n, k + 1)
    out = {}
    for F in fine.cubes:
        if F.dimension == 0 and all(lo % 2 == 0 for lo, _ in F.intervals):
            ivs = tuple((lo // 2, lo // 2) for lo, _ in F.intervals)
            out[F.token()] = Cube(ivs, F.copy, k).token()
    return dict(sorted(out.items()))


def replay_theorem4(n: int, k: int, check_homology: bool = True,
                    max_vertices: int = 2000) -> MoveLog:
    """Reduce the doubled sphere L_{k+1} to L_k by 6^n-starrings.

    Phase ``q`` stars, for each ``(n - q)``-cube ``Q`` of L_k, the join of the
    fine subdivision of ``Q`` with the complex of flags of coarse cubes
    strictly above ``Q``; the apex is the barycenter token of ``Q``.
    """
    if n < 1 or k < 0:
        raise InvalidParam("replay_theorem4 needs n >= 1 and k >= 0")
    fine = doubled_cubical(n, k + 1)
    if len(fine) > max_vertices:
        raise InvalidParam(f"L_{k + 1} in dimension {n} exceeds {max_vertices} vertices")
    coarse = doubled_cubical(n, k)
    K = start = barycentric_of_cubical(fine)
    bound = 6 ** n
    moves = []
    for q in range(n):
        for Q in sorted((Q for Q in coarse.cubes if Q.dimension == n - q),
                        key=lambda Q: (Q.intervals, Q.copy)):
            base = induced(start, [F.token() for F in fine.cubes if _inside(F, Q)])
            S = SimplicialComplex.from_facets([P.token() for P in chain]
                                              for chain in _chains_above(coarse, Q, n) if chain)
            D = join(S, base)
            nv = len(D.vertices)
            if nv >= bound or (q >= 1 and nv >= 6 ** (n - q) + 2 * 3 ** n):
                raise RejectedMove(f"phase {q} disk at {Q.token()} has {nv} vertices")
            K, move = perform_starring(K, D, bound, Q.token(), SURFACE_DISK,
                                       {"phase": q, "cube": Q.token()})
            if check_homology:
                _check_sphere(K, n, f"move {len(moves)}")
            moves.append(move)
    mapping = coarse_relabelling(n, k)
    final = relabel(K, mapping)
    if final != doubled_sphere(n, k):
        raise RejectedMove(f"relabelled result differs from L_{k}")
    return MoveLog("thm4", {"n": n, "k": k}, start, moves,
                   {"target": f"doubled_sphere({n},{k})", "relabel": mapping,
                    "digest": digest(K)})


def _expected_start(log: MoveLog) -> SimplicialComplex:
    p = log.params
    if log.kind == "thm3":
        return band_sphere(p["n"], p["m"])
    if log.kind == "thm4":
        return doubled_sphere(p["n"], p["k"] + 1)
    raise VerificationFailure(-1, f"unknown log kind {log.kind!r}")


def check_move_log(log: MoveLog) -> SimplicialComplex:
    """Replay and re-certify every move; raises :class:`VerificationFailure`.

    Returns the final complex.
    """
    if log.start != _expected_start(log):
        raise VerificationFailure(-1, "start complex does not match the parameters")
    n = log.params["n"]
    bound = 8 if log.kind == "thm3" else 6 ** n
    K = log.start
    for i, mv in enumerate(log.moves):
        if mv.before != digest(K):
            raise VerificationFailure(i, "before-digest does not match the replayed complex")
        if mv.r_bound != bound:
            raise VerificationFailure(i, f"r_bound {mv.r_bound} differs from {bound}")
        nv = len(mv.disk.vertices)
        if log.kind == "thm4":
            q = mv.note.get("phase")
            if q is None or nv >= bound or (q >= 1 and nv >= 6 ** (n - q) + 2 * 3 ** n):
                raise VerificationFailure(i, "phase vertex bound violated")
        try:
            cert = certify_ball(mv.disk, mv.certificate.level)
        except NotABall as exc:
            raise VerificationFailure(i, f"disk fails re-certification: {exc}") from exc
        if cert.level != mv.certificate.level:
            raise VerificationFailure(i, f"certificate level {mv.certificate.level} not reproduced")
        if cert.boundary != mv.boundary:
            raise VerificationFailure(i, "recorded boundary differs from the computed one")
        try:
            K, redo = perform_starring(K, mv.disk, mv.r_bound, mv.apex, mv.certificate.level)
        except RejectedMove as exc:
            raise VerificationFailure(i, str(exc)) from exc
        if redo.after != mv.after:
            raise VerificationFailure(i, "after-digest does not match the replayed complex")
    last = len(log.moves)
    if log.final.get("digest") != digest(K):
        raise VerificationFailure(last, "final digest mismatch")
    if log.kind == "thm3":
        iso = log.final.get("isomorphism") or {}
        target = band_sphere(3, 0)
        if len(set(iso.values())) != len(iso) or set(iso) != set(K.vertices) \
                or relabel(K, iso) != target:
            raise VerificationFailure(last, "isomorphism witness to M(3,0) is invalid")
    else:
        mapping = log.final.get("relabel") or {}
        if mapping != coarse_relabelling(n, log.params["k"]) or \
                relabel(K, mapping) != doubled_sphere(n, log.params["k"]):
            raise VerificationFailure(last, "relabelled final complex differs from L_k")
    return K


def verify_move_log(log) -> bool:
    """``True`` iff :func:`check_move_log` accepts the log (a MoveLog or its JSON text)."""
    try:
        if isinstance(log, str):
            log = MoveLog.from_json(log)
        check_move_log(log)
    except (VerificationFailure, KeyError, TypeError, ValueError):
        return False
    return True
