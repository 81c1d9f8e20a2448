"""Smith normal form of integer matrices (invariant factors and rank).

Matrices are sparse ``{row: {col: value}}`` dicts or dense lists of rows.
Elimination uses unit pivots first (boundary matrices are dominated by
them), then minimal-absolute-value pivots; Python integers never overflow.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class SmithForm:
    factors: tuple
    rank: int

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.factors if d > 1)


def to_sparse(M) -> dict:
    if isinstance(M, dict):
        return {i: {j: v for j, v in row.items() if v} for i, row in M.items()}
    return {i: {j: int(v) for j, v in enumerate(row) if v} for i, row in enumerate(M)}


def _divisibility_chain(diag: list) -> tuple:
    d = sorted(diag)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            if d[j] % d[i]:
                g = gcd(d[i], d[j])
                d[i], d[j] = g, d[i] * d[j] // g
    return tuple(sorted(d))


class _Eliminator:
    def __init__(self, M):
        self.rows = {i: r for i, r in to_sparse(M).items() if r}
        self.cols: dict = {}
        for i, r in self.rows.items():
            for j in r:
                self.cols.setdefault(j, set()).add(i)
        self.diag: list = []

    def _axpy(self, target: int, source: int, factor: int):
        """rows[target] -= factor * rows[source]"""
        t = self.rows[target]
        for j, v in self.rows[source].items():
            nv = t.get(j, 0) - factor * v
            if nv:
                if j not in t:
                    self.cols[j].add(target)
                t[j] = nv
            elif j in t:
                del t[j]
                self.cols[j].discard(target)
        if not t:
            del self.rows[target]

    def _drop(self, i: int, c: int, value: int):
        for j in self.rows.pop(i):
            self.cols[j].discard(i)
            if not self.cols[j]:
                del self.cols[j]
        self.cols.pop(c, None)
        self.diag.append(abs(value))

    def unit_pass(self) -> bool:
        progress = False
        for c in sorted(self.cols):
            rs = self.cols.get(c)
            if not rs:
                continue
            best = None
            for i in rs:
                v = self.rows[i][c]
                if v in (1, -1) and (best is None or len(self.rows[i]) < len(self.rows[best])):
                    best = i
            if best is None:
                continue
            p = self.rows[best][c]
            for r in sorted(rs - {best}):
                self._axpy(r, best, self.rows[r][c] * p)
            self._drop(best, c, p)
            progress = True
        return progress

    def general(self):
        while self.rows:
            i, c, p = min(((i, j, v) for i, r in self.rows.items() for j, v in r.items()),
                          key=lambda t: (abs(t[2]), t[0], t[1]))
            dirty = False
            for r in sorted(self.cols[c] - {i}):
                q = self.rows[r][c] // p
                self._axpy(r, i, q)
                if r in self.rows and c in self.rows[r]:
                    dirty = True
            if dirty:
                continue
            row = self.rows[i]
            for j in sorted(row):
                if j == c:
                    continue
                # column op col_j -= q * col_c; col_c is zero outside row i
                q = row[j] // p
                nv = row[j] - q * p
                if nv:
                    row[j] = nv
                    dirty = True
                else:
                    del row[j]
                    self.cols[j].discard(i)
                    if not self.cols[j]:
                        del self.cols[j]
            if not dirty:
                self._drop(i, c, p)


def smith_normal_form(M) -> SmithForm:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` (all positive) and the rank ``r``."""
    e = _Eliminator(M)
    while e.unit_pass():
        pass
    e.general()
    units = [d for d in e.diag if d == 1]
    rest = _divisibility_chain([d for d in e.diag if d != 1])
    factors = tuple(units) + rest
    return SmithForm(factors, len(factors))


def rank(M) -> int:
    return smith_normal_form(M).rank
