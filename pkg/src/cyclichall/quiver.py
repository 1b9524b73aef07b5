"""Dynkin quivers: validation, paths, Euler form and positive roots.

Vertices are 0-based internally.  The text format used by the CLI is
1-based::

    type=A3
    1 -> 2
    2 -> 3
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np


class NotDynkin(ValueError):
    pass


class OrientedCycle(ValueError):
    pass


_LEGS = {"E6": (1, 2, 2), "E7": (1, 2, 3), "E8": (1, 2, 4)}


def _parse_type(diagram_type: str) -> tuple[str, int]:
    m = re.fullmatch(r"([ADE])(\d+)", diagram_type.strip().upper())
    if m is None:
        raise NotDynkin(f"unknown diagram type {diagram_type!r}")
    letter, rank = m.group(1), int(m.group(2))
    if (letter == "A" and rank < 1) or (letter == "D" and rank < 4) or (letter == "E" and rank not in (6, 7, 8)):
        raise NotDynkin(f"no Dynkin diagram {diagram_type}")
    return letter, rank


@dataclass(frozen=True)
class DynkinQuiver:
    diagram_type: str
    n: int
    arrows: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] = field(default=())

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        indeg = [0] * self.n
        for _, t in self.arrows:
            indeg[t] += 1
        ready = [v for v in range(self.n) if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
        return tuple(order)

    def arrows_into(self, v: int) -> list[tuple[int, int]]:
        """(arrow index, source) for every arrow ending at v."""
        return [(a, s) for a, (s, t) in enumerate(self.arrows) if t == v]

    @cached_property
    def paths(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """Arrow sequence of the unique path i -> j, for every reachable pair (including i = j)."""
        out: dict[tuple[int, int], tuple[int, ...]] = {}
        for i in range(self.n):
            out[(i, i)] = ()
            frontier = [i]
            while frontier:
                u = frontier.pop()
                for a, (s, t) in enumerate(self.arrows):
                    if s == u and (i, t) not in out:
                        out[(i, t)] = out[(i, u)] + (a,)
                        frontier.append(t)
        return out

    def reaches(self, i: int, j: int) -> bool:
        """True iff there is a path i -> j of length >= 0."""
        return (i, j) in self.paths

    @cached_property
    def projective_dims(self) -> np.ndarray:
        """Row i is dim P_i; (P_i)_j counts paths i -> j."""
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for (i, j) in self.paths:
            m[i, j] += 1
        return m

    @cached_property
    def _proj_inverse(self) -> np.ndarray:
        import sympy

        inv = sympy.Matrix(self.projective_dims.tolist()).T.inv()
        # the path-count matrix is unitriangular in a topological order, so the inverse is integral
        return np.array(inv.tolist(), dtype=np.int64)

    def projective_multiplicities(self, dims) -> tuple[int, ...]:
        """Multiplicities a with sum_i a_i dim P_i = dims (negative entries are allowed)."""
        return tuple(int(x) for x in self._proj_inverse @ np.asarray(dims, dtype=np.int64))

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v + 1)

    def describe(self) -> str:
        lines = [f"type={self.diagram_type}"]
        lines += [f"{self.label(s)} -> {self.label(t)}" for s, t in self.arrows]
        return "\n".join(lines) + "\n"


def _check_shape(letter: str, rank: int, n: int, edges: list[tuple[int, int]]) -> None:
    if n != rank:
        raise NotDynkin(f"type {letter}{rank} needs {rank} vertices, got {n}")
    undirected = {frozenset(e) for e in edges}
    if len(undirected) != len(edges) or any(len(e) != 2 for e in undirected):
        raise NotDynkin("multiple edges or loops")
    if len(edges) != n - 1:
        raise NotDynkin("underlying graph is not a tree")
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for s, t in edges:
        adj[s].add(t)
        adj[t].add(s)
    seen, stack = {0}, [0]
    while stack:
        u = stack.pop()
        for w in adj[u] - seen:
            seen.add(w)
            stack.append(w)
    if len(seen) != n:
        raise NotDynkin("underlying graph is disconnected")
    branch = [v for v in range(n) if len(adj[v]) >= 3]
    if letter == "A":
        if branch:
            raise NotDynkin("type A graph must be a path")
        return
    if len(branch) != 1 or len(adj[branch[0]]) != 3:
        raise NotDynkin(f"type {letter} needs exactly one trivalent vertex")
    c = branch[0]
    legs = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while True:
            nxt = adj[cur] - {prev}
            if not nxt:
                break
            if len(nxt) > 1:
                raise NotDynkin("more than one branch point")
            prev, cur = cur, next(iter(nxt))
            length += 1
        legs.append(length)
    legs = tuple(sorted(legs))
    expected = (1, 1, rank - 3) if letter == "D" else _LEGS[f"{letter}{rank}"]
    if legs != expected:
        raise NotDynkin(f"leg lengths {legs} do not match {letter}{rank}")


def build_dynkin(diagram_type: str, arrows, labels=None) -> DynkinQuiver:
    """Validate an orientation of a Dynkin diagram; arrows are 0-based (source, target) pairs."""
    letter, rank = _parse_type(diagram_type)
    arrows = tuple((int(s), int(t)) for s, t in arrows)
    n = rank
    for s, t in arrows:
        if not (0 <= s < n and 0 <= t < n):
            raise NotDynkin(f"arrow {s}->{t} out of range")
    q = DynkinQuiver(f"{letter}{rank}", n, arrows, tuple(labels) if labels else ())
    if len(q.topological_order) != n:
        raise OrientedCycle("quiver has an oriented cycle")
    _check_shape(letter, rank, n, list(arrows))
    return q


def parse_quiver(text: str) -> DynkinQuiver:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("type="):
        raise ValueError("first line must be type=<A|D|E><rank>")
    dtype = lines[0][len("type="):].strip()
    _, rank = _parse_type(dtype)
    arrows = []
    for ln in lines[1:]:
        m = re.fullmatch(r"(\d+)\s*->\s*(\d+)", ln)
        if m is None:
            raise ValueError(f"cannot parse arrow line {ln!r}")
        arrows.append((int(m.group(1)) - 1, int(m.group(2)) - 1))
    return build_dynkin(dtype, arrows)


def load_quiver(path: str | Path) -> DynkinQuiver:
    return parse_quiver(Path(path).read_text())


def path_matrix(q: DynkinQuiver) -> np.ndarray:
    a = np.zeros((q.n, q.n), dtype=np.int64)
    for (i, j) in q.paths:
        if i != j:
            a[i, j] = 1
            a[j, i] = -1
    return a


def long_path_pairs(q: DynkinQuiver) -> set[frozenset[int]]:
    return {frozenset((i, j)) for (i, j), arr in q.paths.items() if len(arr) >= 2}


def is_bipartite(q: DynkinQuiver) -> bool:
    sources = {s for s, _ in q.arrows}
    targets = {t for _, t in q.arrows}
    return not (sources & targets)


def euler_form(q: DynkinQuiver, alpha, beta) -> int:
    val = sum(int(a) * int(b) for a, b in zip(alpha, beta))
    return val - sum(int(alpha[s]) * int(beta[t]) for s, t in q.arrows)


def tits_form(q: DynkinQuiver, alpha) -> int:
    return euler_form(q, alpha, alpha)


def root_candidates(q: DynkinQuiver) -> list[tuple[int, ...]]:
    """Positive vectors with Tits form 1, grown from simple roots by adding simple roots."""
    simple = [tuple(int(i == j) for j in range(q.n)) for i in range(q.n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(q.n):
                s = tuple(x + (j == i) for j, x in enumerate(r))
                if s not in found and tits_form(q, s) == 1:
                    found.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(found, key=lambda r: (sum(r), r))


def positive_roots(q: DynkinQuiver, p: int = 2) -> list[tuple[int, ...]]:
    """Dimension vectors of the indecomposable catalogue over F_p, canonically ordered."""
    from .modcat import build_catalogue

    return list(build_catalogue(q, p).roots)


PRESETS = {
    "A1": ("A1", []),
    "A2": ("A2", [(0, 1)]),
    "A3-linear": ("A3", [(0, 1), (1, 2)]),
    "A3-bipartite": ("A3", [(0, 1), (2, 1)]),
    "A3-source": ("A3", [(1, 0), (1, 2)]),
    "D4": ("D4", [(0, 1), (2, 1), (3, 1)]),
    "D4-source": ("D4", [(1, 0), (1, 2), (1, 3)]),
}


def preset(name: str) -> DynkinQuiver:
    dtype, arrows = PRESETS[name]
    return build_dynkin(dtype, arrows)
