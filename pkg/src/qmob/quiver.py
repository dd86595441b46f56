"""Quivers, paths, relations and sinking vertex sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .errors import InvalidQuiver


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    """Directed multigraph on vertices ``1..n_vertices`` with named arrows."""

    n_vertices: int
    arrows: Tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(
            a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows))
        if self.n_vertices < 1:
            raise InvalidQuiver("a quiver needs at least one vertex")
        seen = set()
        for a in self.arrows:
            if a.name in seen:
                raise InvalidQuiver(f"duplicate arrow name {a.name!r}")
            seen.add(a.name)
            for v in (a.source, a.target):
                if not 1 <= v <= self.n_vertices:
                    raise InvalidQuiver(f"arrow {a.name!r} has endpoint {v} outside 1..{self.n_vertices}")

    @property
    def vertices(self) -> range:
        return range(1, self.n_vertices + 1)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise InvalidQuiver(f"unknown arrow {name!r}")

    def out_arrows(self, v: int) -> List[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: int) -> List[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def sinks(self) -> FrozenSet[int]:
        sources = {a.source for a in self.arrows}
        return frozenset(v for v in self.vertices if v not in sources)

    def topological_order(self):
        """Vertices with every arrow pointing forward, or ``None`` if cyclic."""
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        ready = sorted(v for v, d in indeg.items() if d == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in self.out_arrows(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    ready.append(a.target)
                    ready.sort()
        return order if len(order) == self.n_vertices else None

    def is_acyclic(self) -> bool:
        # depth-first search for a back edge
        color = {v: 0 for v in self.vertices}

        def visit(v):
            color[v] = 1
            for a in self.out_arrows(v):
                if color[a.target] == 1:
                    return False
                if color[a.target] == 0 and not visit(a.target):
                    return False
            color[v] = 2
            return True

        return all(color[v] or visit(v) for v in self.vertices)

    def reachable(self, v: int) -> FrozenSet[int]:
        """Smallest out-closed vertex set containing ``v``."""
        seen = {v}
        stack = [v]
        while stack:
            for a in self.out_arrows(stack.pop()):
                if a.target not in seen:
                    seen.add(a.target)
                    stack.append(a.target)
        return frozenset(seen)

    def is_sinking(self, vertices: Iterable[int]) -> bool:
        s = set(vertices)
        return all(a.target in s for a in self.arrows if a.source in s)

    def minimal_sinking(self, v: int) -> FrozenSet[int]:
        return self.reachable(v)

    def sinking_union(self, sets: Iterable[Iterable[int]]) -> FrozenSet[int]:
        out = set()
        for s in sets:
            out |= set(s)
        return frozenset(out)

    def full_subquiver(self, vertices: Iterable[int]) -> "Quiver":
        """Full subquiver, its vertices renumbered ``1..k`` in increasing order."""
        keep = sorted(set(vertices))
        if not keep:
            raise InvalidQuiver("a full subquiver needs at least one vertex")
        pos = {v: k + 1 for k, v in enumerate(keep)}
        arrows = [Arrow(a.name, pos[a.source], pos[a.target])
                  for a in self.arrows if a.source in pos and a.target in pos]
        return Quiver(len(keep), tuple(arrows))

    def enumerate_sinking_sets(self) -> List[FrozenSet[int]]:
        """Every out-closed vertex set, ordered by size then sorted contents."""
        found = set()
        n = self.n_vertices
        for mask in range(1 << n):
            s = frozenset(v for v in self.vertices if (mask >> (v - 1)) & 1)
            if self.is_sinking(s):
                found.add(s)
        return sorted(found, key=lambda s: (len(s), sorted(s)))


def is_acyclic(q: Quiver) -> bool:
    return q.is_acyclic()


def sinks(q: Quiver) -> FrozenSet[int]:
    return q.sinks()


def reachable(q: Quiver, v: int) -> FrozenSet[int]:
    return q.reachable(v)


def is_sinking(q: Quiver, vertices: Iterable[int]) -> bool:
    return q.is_sinking(vertices)


def minimal_sinking(q: Quiver, v: int) -> FrozenSet[int]:
    return q.minimal_sinking(v)


def sinking_union(q: Quiver, sets) -> FrozenSet[int]:
    return q.sinking_union(sets)


def full_subquiver(q: Quiver, vertices) -> Quiver:
    return q.full_subquiver(vertices)


def enumerate_sinking_sets(q: Quiver) -> List[FrozenSet[int]]:
    return q.enumerate_sinking_sets()


@dataclass(frozen=True)
class Path:
    """Nonempty arrow sequence, first arrow traversed first."""

    arrows: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if not self.arrows:
            raise InvalidQuiver("a path needs at least one arrow")

    def __len__(self):
        return len(self.arrows)

    def endpoints(self, q: Quiver) -> Tuple[int, int]:
        arrows = [q.arrow(n) for n in self.arrows]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise InvalidQuiver(f"path {self} is not composable at {a.name}.{b.name}")
        return arrows[0].source, arrows[-1].target

    def __str__(self):
        return ".".join(self.arrows)


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths of length at least two."""

    terms: Tuple[Tuple[object, Path], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((c, p if isinstance(p, Path) else Path(p))
                                                for c, p in self.terms))
        if not self.terms:
            raise InvalidQuiver("a relation needs at least one term")

    def check(self, q: Quiver) -> Tuple[int, int]:
        """Validate against ``q``; return the common ``(source, target)``."""
        ends = set()
        for c, p in self.terms:
            if not c:
                raise InvalidQuiver(f"relation term {p} has zero coefficient")
            if len(p) < 2:
                raise InvalidQuiver(f"relation path {p} has length {len(p)}; admissible relations need length >= 2")
            ends.add(p.endpoints(q))
        if len(ends) != 1:
            raise InvalidQuiver(f"relation paths are not parallel: endpoints {sorted(ends)}")
        return ends.pop()

    def __str__(self):
        return " + ".join(f"{c} {p}" for c, p in self.terms)
