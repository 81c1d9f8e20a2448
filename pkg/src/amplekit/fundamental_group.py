"""Edge-path group presentations and a Tietze-move trivialization heuristic.

Words are tuples of non-zero integers: letter ``i + 1`` is generator ``i``
and ``-(i + 1)`` its inverse.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

from .core import SimplicialComplex, graph, is_connected
from .errors import NotConnected
from .snf import smith_normal_form


def free_reduce(word) -> tuple:
    out: list = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word) -> tuple:
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def inverse(word) -> tuple:
    return tuple(-x for x in reversed(word))


@dataclass
class GroupPresentation:
    generators: list          # oriented edges (u, v) with u < v, outside the spanning tree
    relators: list            # words, one per 2-simplex
    tree: list = field(default_factory=list)

    def abelianization(self) -> tuple:
        """``(free rank, torsion coefficients)`` of the abelianized group."""
        rows = {}
        for i, r in enumerate(self.relators):
            c = Counter()
            for x in r:
                c[abs(x) - 1] += 1 if x > 0 else -1
            rows[i] = {g: v for g, v in c.items() if v}
        snf = smith_normal_form(rows)
        return len(self.generators) - snf.rank, snf.torsion


def spanning_tree(K: SimplicialComplex) -> list:
    """Breadth-first spanning tree edges from the least vertex."""
    G = graph(K)
    root = K.vertices[0]
    seen = {root}
    queue = deque([root])
    edges = []
    while queue:
        v = queue.popleft()
        for w in sorted(G[v]):
            if w not in seen:
                seen.add(w)
                queue.append(w)
                edges.append(tuple(sorted((v, w))))
    return edges


def fundamental_presentation(K: SimplicialComplex) -> GroupPresentation:
    if not is_connected(K):
        raise NotConnected("edge-path group needs a non-empty connected complex")
    tree = spanning_tree(K)
    tree_set = set(tree)
    gens = [e for e in K.simplices_of_dim(1) if e not in tree_set]
    letter = {e: i + 1 for i, e in enumerate(gens)}

    def edge(a, b):
        return (letter[(a, b)],) if (a, b) in letter else ()

    relators = []
    for a, b, c in K.simplices_of_dim(2):
        relators.append(free_reduce(edge(a, b) + edge(b, c) + inverse(edge(a, c))))
    return GroupPresentation(gens, relators, tree)


@dataclass
class Trivialization:
    status: str               # "Trivial" | "Unknown"
    trace: list               # (eliminated generator index, replacement word)
    remaining_generators: int = 0


def _substitute(word, g: int, replacement: tuple) -> tuple:
    inv = inverse(replacement)
    out: list = []
    for x in word:
        if x == g:
            out.extend(replacement)
        elif x == -g:
            out.extend(inv)
        else:
            out.append(x)
    return cyclic_reduce(out)


def try_trivialize(P: GroupPresentation, budget: int = 10_000,
                   max_length: int = 64) -> Trivialization:
    """Eliminate generators one at a time using relators in which they occur once.

    Returns ``Trivial`` only when every generator was eliminated, with the
    full elimination trace; anything else is ``Unknown``.
    """
    rels = [r for r in (cyclic_reduce(r) for r in P.relators) if r]
    alive = set(range(1, len(P.generators) + 1))
    trace: list = []
    work = 0
    while alive:
        candidates = []
        for ri, r in enumerate(rels):
            counts = Counter(abs(x) for x in r)
            for g, cnt in counts.items():
                if cnt == 1:
                    candidates.append((len(r), g, ri))
        candidates.sort()
        done = False
        for _, g, ri in candidates:
            work += 1
            if work > budget:
                return Trivialization("Unknown", trace, len(alive))
            r = rels[ri]
            p = next(i for i, x in enumerate(r) if abs(x) == g)
            rotated = r[p:] + r[:p]
            rest = rotated[1:]
            replacement = inverse(rest) if rotated[0] > 0 else rest
            new = []
            for rj, s in enumerate(rels):
                if rj == ri:
                    continue
                s = _substitute(s, g, replacement) if g in map(abs, s) else s
                if len(s) > max_length:
                    break
                if s:
                    new.append(s)
            else:
                rels = new
                alive.discard(g)
                trace.append((g - 1, tuple(replacement)))
                done = True
                break
        if not done:
            return Trivialization("Unknown", trace, len(alive))
    return Trivialization("Trivial", trace, 0)
