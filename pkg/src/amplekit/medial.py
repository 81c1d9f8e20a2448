"""Medial-regime random complexes and a reproducible Monte Carlo harness.

Every random decision is a keyed hash of ``(seed, sample, simplex)``, so a
sample does not depend on iteration order or on how samples are spread
over worker processes. Comparing one uniform per simplex against its
probability also couples runs that differ only in the probabilities.
"""
from __future__ import annotations

import csv
import hashlib
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from statistics import NormalDist

from .checkers import is_r_ample, is_r_conic
from .core import SimplicialComplex, is_connected
from .errors import InvalidParam, TooLarge
from .homology import connectivity_certificate, reduced_homology

_SCALE = float(2 ** 64)


@dataclass(frozen=True)
class Constant:
    c: float

    def probability(self, s: tuple, seed: int) -> float:
        return self.c

    def bounds(self) -> list:
        return [self.c]


@dataclass(frozen=True)
class PerDimension:
    probs: tuple

    def probability(self, s: tuple, seed: int) -> float:
        return self.probs[len(s) - 1]

    def bounds(self) -> list:
        return list(self.probs)


@dataclass(frozen=True)
class Hashed:
    """``p_sigma`` uniform on ``[p, P]``, fixed per simplex by a keyed hash of it."""

    p: float
    P: float

    def probability(self, s: tuple, seed: int) -> float:
        return self.p + (self.P - self.p) * _uniform(seed, "prob", s)

    def bounds(self) -> list:
        return [self.p, self.P]


def parse_prob(text: str):
    """``const:C``, ``perdim:C0,C1,...`` or ``hashed:P_LOW,P_HIGH``."""
    kind, _, rest = text.partition(":")
    try:
        nums = [float(x) for x in rest.split(",")] if rest else []
    except ValueError as exc:
        raise InvalidParam(f"bad probability spec {text!r}") from exc
    if kind == "const" and len(nums) == 1:
        return Constant(nums[0])
    if kind == "perdim" and nums:
        return PerDimension(tuple(nums))
    if kind == "hashed" and len(nums) == 2:
        return Hashed(*nums)
    raise InvalidParam(f"bad probability spec {text!r}")


def _uniform(seed: int, stream, s: tuple) -> float:
    key = (seed & (2 ** 64 - 1)).to_bytes(8, "little")
    h = hashlib.blake2b(f"{stream}|{','.join(s)}".encode(), key=key, digest_size=8)
    return int.from_bytes(h.digest(), "little") / _SCALE


@dataclass(frozen=True)
class MedialRegimeConfig:
    n: int
    max_dim: int
    prob: object
    seed: int
    allow_degenerate: bool = False

    def __post_init__(self):
        if self.n < 0 or self.max_dim < 0:
            raise InvalidParam("n and max_dim must be non-negative")
        if isinstance(self.prob, PerDimension) and len(self.prob.probs) <= self.max_dim:
            raise InvalidParam("PerDimension needs a probability for every dimension up to max_dim")
        if isinstance(self.prob, Hashed) and not self.prob.p <= self.prob.P:
            raise InvalidParam("Hashed(p, P) needs p <= P")
        for b in self.prob.bounds():
            if not (0 <= b <= 1 if self.allow_degenerate else 0 < b < 1):
                raise InvalidParam(f"probability {b} outside (0,1); degenerate values need "
                                   "allow_degenerate")

    def with_n(self, n: int) -> "MedialRegimeConfig":
        return MedialRegimeConfig(n, self.max_dim, self.prob, self.seed, self.allow_degenerate)

    def vertex_names(self) -> list:
        width = len(str(max(self.n - 1, 0)))
        return [str(i).zfill(width) for i in range(self.n)]


def medial_sample(config: MedialRegimeConfig, sample_index: int = 0) -> SimplicialComplex:
    """Level-by-level build: a q-simplex is a candidate once its boundary is present."""
    seed, prob = config.seed, config.prob

    def keep(s):
        return _uniform(seed, sample_index, s) < prob.probability(s, seed)

    level = [(v,) for v in config.vertex_names() if keep((v,))]
    present = set(level)
    nbr: dict = {v: set() for (v,) in level}
    for q in range(1, config.max_dim + 1):
        nxt = []
        for s in level:
            common = set.intersection(*(nbr[v] for v in s)) if q > 1 else nbr.keys()
            for v in sorted(w for w in common if w > s[-1]):
                t = s + (v,)
                if q > 1 and not all(t[:i] + t[i + 1:] in present for i in range(q - 1)):
                    continue
                if keep(t):
                    nxt.append(t)
        present.update(nxt)
        if q == 1:
            for a, b in nxt:
                nbr[a].add(b)
                nbr[b].add(a)
        level = nxt
        if not level:
            break
    return SimplicialComplex(present, check=False)


PROPERTIES = ("conic", "ample", "connected", "d-connected", "betti-vanish")


def parse_property(text: str) -> tuple:
    name, _, arg = text.strip().partition(":")
    if name not in PROPERTIES:
        raise InvalidParam(f"unknown property {name!r}")
    if name == "connected":
        if arg:
            raise InvalidParam("connected takes no parameter")
        return (name, None)
    try:
        value = int(arg)
    except ValueError as exc:
        raise InvalidParam(f"property {name} needs an integer parameter") from exc
    if value < (1 if name == "ample" else 0):
        raise InvalidParam(f"parameter of {name} out of range")
    return (name, value)


def default_max_dim(properties) -> int:
    """Simplices above this dimension cannot change any of the properties."""
    need = 1
    for name, arg in properties:
        if name in ("conic", "ample"):
            need = max(need, arg)
        elif name in ("d-connected", "betti-vanish"):
            need = max(need, arg + 1)
    return need


def evaluate(K: SimplicialComplex, prop: tuple) -> str:
    """``"success"``, ``"failure"`` or ``"unknown"`` (budget exhausted or undecided)."""
    name, arg = prop
    try:
        if name == "conic":
            ok = is_r_conic(K, arg).holds
        elif name == "ample":
            ok = is_r_ample(K, arg).holds
        elif name == "connected":
            ok = is_connected(K)
        elif name == "betti-vanish":
            H = reduced_homology(K, arg)
            ok = H.betti[arg] == 0
        else:
            status = connectivity_certificate(K, arg).status
            return {"Certified": "success", "Refuted": "failure"}.get(status, "unknown")
    except TooLarge:
        return "unknown"
    return "success" if ok else "failure"


def consistency_violations(K: SimplicialComplex) -> list:
    """Implications every sample must satisfy; returns the names of the failed ones."""
    conic2 = is_r_conic(K, 2).holds
    out = []
    if is_r_ample(K, 2).holds and not conic2:
        out.append("ample:2 => conic:2")
    if conic2 and not is_connected(K):
        out.append("conic:2 => connected")
    if is_r_conic(K, 4).holds and reduced_homology(K, 1).betti[1] != 0:
        out.append("conic:4 => betti_1 = 0")
    return out


def wilson_interval(successes: int, samples: int, confidence: float = 0.95) -> tuple:
    if samples < 1:
        raise InvalidParam("wilson_interval needs samples >= 1")
    if not 0 <= successes <= samples:
        raise InvalidParam("successes must lie in [0, samples]")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = successes / samples
    denom = 1 + z * z / samples
    center = (phat + z * z / (2 * samples)) / denom
    margin = z * ((phat * (1 - phat) / samples + z * z / (4 * samples * samples)) ** 0.5) / denom
    low = 0.0 if successes == 0 else min(center - margin, phat)
    high = 1.0 if successes == samples else max(center + margin, phat)
    return low, high


@dataclass(frozen=True)
class ExperimentRow:
    seed: int
    n: int
    samples: int
    property: str
    param: int | None
    estimate: float
    ci_low: float
    ci_high: float
    unknown: int
    max_dim: int

    @property
    def optimistic(self) -> float:
        """Estimate that counts undecided samples as successes."""
        return (self.estimate * self.samples + self.unknown) / self.samples


def _evaluate_job(args) -> list:
    config, index, properties = args
    K = medial_sample(config, index)
    return [evaluate(K, p) for p in properties]


def run_experiment(config: MedialRegimeConfig, n_list, properties, samples: int,
                   jobs: int = 1) -> list:
    """One row per ``(n, property)``; sample ``i`` at size ``n`` is shared by all properties."""
    properties = [parse_property(p) if isinstance(p, str) else tuple(p) for p in properties]
    if samples < 0:
        raise InvalidParam("samples must be non-negative")
    if samples == 0:
        return []
    work = [(config.with_n(n), i, properties) for n in n_list for i in range(samples)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate_job, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        results = [_evaluate_job(w) for w in work]
    rows = []
    for a, n in enumerate(n_list):
        chunk = results[a * samples:(a + 1) * samples]
        for j, (name, arg) in enumerate(properties):
            wins = sum(r[j] == "success" for r in chunk)
            unknown = sum(r[j] == "unknown" for r in chunk)
            low, high = wilson_interval(wins, samples)
            rows.append(ExperimentRow(config.seed, n, samples, name, arg, wins / samples,
                                      low, high, unknown, config.max_dim))
    rows.sort(key=lambda r: (r.property, -1 if r.param is None else r.param, r.n))
    return rows


CSV_HEADER = ["seed", "n", "samples", "property", "param", "estimate", "ci_low", "ci_high",
              "unknown"]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.seed, r.n, r.samples, r.property, "" if r.param is None else r.param,
                    f"{r.estimate:.6g}", f"{r.ci_low:.6g}", f"{r.ci_high:.6g}", r.unknown])
    return buf.getvalue()
