"""Finite posets and their incidence-algebra Möbius function.

The order is held as bitsets: ``up[i]`` has bit ``j`` set iff ``i <= j``.
That keeps interval extraction and the Möbius recursion fast enough for
lattices with a few thousand elements.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence

from .errors import DomainError, InvalidPoset, NotBounded, NotComparable


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """A finite poset on ``0..size-1`` with opaque labels.

    The relation is validated eagerly; an invalid order raises
    :class:`InvalidPoset`.
    """

    def __init__(self, labels: Sequence[Hashable], up: Sequence[int], *, check: bool = True):
        self.labels = list(labels)
        self.size = len(self.labels)
        self.up = list(up)
        if len(self.up) != self.size:
            raise InvalidPoset("one up-set per element is required")
        self.down = [0] * self.size
        for i, mask in enumerate(self.up):
            for j in iter_bits(mask):
                if j >= self.size:
                    raise InvalidPoset(f"element {i} relates to unknown index {j}")
                self.down[j] |= 1 << i
        if check:
            self._validate()
        # x < y implies down(x) is a proper subset of down(y)
        self.linear_extension = sorted(range(self.size), key=lambda i: (self.down[i].bit_count(), i))
        self._position = {x: k for k, x in enumerate(self.linear_extension)}
        self._mobius_rows: Dict[int, Dict[int, int]] = {}

    @classmethod
    def from_leq(cls, labels: Sequence[Hashable], leq: Callable[[int, int], bool]) -> "FinitePoset":
        """Build from a predicate on index pairs."""
        n = len(labels)
        up = []
        for i in range(n):
            mask = 0
            for j in range(n):
                if i == j or leq(i, j):
                    mask |= 1 << j
            up.append(mask)
        return cls(labels, up)

    @classmethod
    def from_covers(cls, labels: Sequence[Hashable], covers: Iterable[tuple]) -> "FinitePoset":
        """Reflexive-transitive closure of the given ``(lower, upper)`` pairs."""
        n = len(labels)
        succ = [0] * n
        for a, b in covers:
            succ[a] |= 1 << b
        up = [None] * n
        state = [0] * n

        def close(i):
            if state[i] == 2:
                return up[i]
            if state[i] == 1:
                raise InvalidPoset("cover relation contains a cycle")
            state[i] = 1
            mask = 1 << i
            for j in iter_bits(succ[i]):
                mask |= close(j)
            up[i] = mask
            state[i] = 2
            return mask

        for i in range(n):
            close(i)
        return cls(labels, up)

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        return cls(list(range(n)), [((1 << n) - 1) ^ ((1 << i) - 1) for i in range(n)])

    def _validate(self):
        for i in range(self.size):
            if not (self.up[i] >> i) & 1:
                raise InvalidPoset(f"relation is not reflexive at {self.labels[i]!r}")
            if self.up[i] & self.down[i] != 1 << i:
                raise InvalidPoset(f"relation is not antisymmetric at {self.labels[i]!r}")
            for j in iter_bits(self.up[i]):
                if self.up[j] & ~self.up[i]:
                    raise InvalidPoset(f"relation is not transitive through {self.labels[j]!r}")

    def __len__(self):
        return self.size

    def leq(self, x: int, y: int) -> bool:
        return bool((self.up[x] >> y) & 1)

    def index(self, label) -> int:
        return self.labels.index(label)

    # bounds, atoms, coatoms -------------------------------------------------

    def bottom(self) -> int:
        full = (1 << self.size) - 1
        for i in range(self.size):
            if self.up[i] == full:
                return i
        raise NotBounded("poset has no least element")

    def top(self) -> int:
        full = (1 << self.size) - 1
        for i in range(self.size):
            if self.down[i] == full:
                return i
        raise NotBounded("poset has no greatest element")

    def is_bounded(self) -> bool:
        try:
            self.bottom()
            self.top()
        except NotBounded:
            return False
        return True

    def covers(self) -> List[tuple]:
        """Hasse diagram edges ``(x, y)`` with ``y`` covering ``x``, sorted."""
        edges = []
        for x in range(self.size):
            strict = self.up[x] & ~(1 << x)
            above = 0
            for y in iter_bits(strict):
                above |= self.up[y] & ~(1 << y)
            edges.extend((x, y) for y in iter_bits(strict & ~above))
        return sorted(edges)

    def upper_covers(self, x: int) -> List[int]:
        strict = self.up[x] & ~(1 << x)
        above = 0
        for y in iter_bits(strict):
            above |= self.up[y] & ~(1 << y)
        return list(iter_bits(strict & ~above))

    def lower_covers(self, y: int) -> List[int]:
        strict = self.down[y] & ~(1 << y)
        below = 0
        for x in iter_bits(strict):
            below |= self.down[x] & ~(1 << x)
        return list(iter_bits(strict & ~below))

    def atoms(self) -> List[int]:
        return self.upper_covers(self.bottom())

    def coatoms(self) -> List[int]:
        return self.lower_covers(self.top())

    def _least(self, mask: int) -> Optional[int]:
        if not mask:
            return None
        z = min(iter_bits(mask), key=self._position.__getitem__)
        return z if mask & ~self.up[z] == 0 else None

    def _greatest(self, mask: int) -> Optional[int]:
        if not mask:
            return None
        z = max(iter_bits(mask), key=self._position.__getitem__)
        return z if mask & ~self.down[z] == 0 else None

    def join(self, x: int, y: int) -> Optional[int]:
        return self._least(self.up[x] & self.up[y])

    def meet(self, x: int, y: int) -> Optional[int]:
        return self._greatest(self.down[x] & self.down[y])

    def is_lattice(self) -> bool:
        if self.size == 0:
            return False
        for x in range(self.size):
            for y in range(x + 1, self.size):
                if self.join(x, y) is None or self.meet(x, y) is None:
                    return False
        return True

    # derived posets ---------------------------------------------------------

    def interval(self, x: int, y: int) -> "FinitePoset":
        """Induced subposet ``[x, y]``; labels are carried over."""
        if not self.leq(x, y):
            raise NotComparable(f"{self.labels[x]!r} is not below {self.labels[y]!r}")
        return self.induced(list(iter_bits(self.up[x] & self.down[y])))

    def induced(self, members: Sequence[int]) -> "FinitePoset":
        pos = {m: k for k, m in enumerate(members)}
        up = []
        for m in members:
            mask = 0
            for j in iter_bits(self.up[m]):
                if j in pos:
                    mask |= 1 << pos[j]
            up.append(mask)
        return FinitePoset([self.labels[m] for m in members], up, check=False)

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.labels, self.down, check=False)

    # Möbius function --------------------------------------------------------

    def mobius_row(self, x: int) -> Dict[int, int]:
        """``{y: mu(x, y)}`` for every ``y >= x``."""
        row = self._mobius_rows.get(x)
        if row is not None:
            return row
        row = {x: 1}
        upx = self.up[x]
        for y in sorted(iter_bits(upx & ~(1 << x)), key=self._position.__getitem__):
            row[y] = -sum(row[z] for z in iter_bits(upx & self.down[y] & ~(1 << y)))
        self._mobius_rows[x] = row
        return row

    def mobius(self, x: int, y: int) -> int:
        if not self.leq(x, y):
            raise NotComparable(f"{self.labels[x]!r} is not below {self.labels[y]!r}")
        return self.mobius_row(x)[y]

    def mobius_table(self) -> Dict[tuple, int]:
        return {(x, y): v for x in range(self.size) for y, v in self.mobius_row(x).items()}

    def to_dot(self, labels: Optional[Sequence[str]] = None, name: str = "hasse") -> str:
        """Graphviz digraph of the cover relation, nodes in index order."""
        labels = [str(l) for l in (labels if labels is not None else self.labels)]
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, lab in enumerate(labels):
            esc = lab.replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  n{i} [label="{esc}"];')
        for x, y in self.covers():
            lines.append(f"  n{x} -> n{y};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def mobius_pair(P: FinitePoset, x: int, y: int) -> int:
    return P.mobius(x, y)


def mobius_table(P: FinitePoset) -> Dict[tuple, int]:
    return P.mobius_table()


def product(P: FinitePoset, Q: FinitePoset) -> FinitePoset:
    """Componentwise order on ``P x Q``; element ``(x, u)`` has index ``x * |Q| + u``."""
    labels = [(a, b) for a in P.labels for b in Q.labels]
    up = []
    for x in range(P.size):
        for u in range(Q.size):
            mask = 0
            for y in iter_bits(P.up[x]):
                mask |= Q.up[u] << (y * Q.size)
            up.append(mask)
    return FinitePoset(labels, up, check=False)


def atoms(P: FinitePoset) -> List[int]:
    return P.atoms()


def coatoms(P: FinitePoset) -> List[int]:
    return P.coatoms()


def is_lattice(P: FinitePoset) -> bool:
    return P.is_lattice()


def interval(P: FinitePoset, x: int, y: int) -> FinitePoset:
    return P.interval(x, y)


def mobius_invert(P: FinitePoset, g: Mapping[int, object]) -> Dict[int, Fraction]:
    """``f(y) = sum_{x <= y} g(x) mu(x, y)``.

    This undoes ``g(y) = sum_{x <= y} f(x)``.
    """
    P.top()
    out = {}
    for y in range(P.size):
        total = Fraction(0)
        for x in iter_bits(P.down[y]):
            total += Fraction(g[x]) * P.mobius(x, y)
        out[y] = total
    return out


def weisner_check(P: FinitePoset, atom: int) -> bool:
    """Check ``mu(0, 1) = -sum mu(0, N)`` over coatoms ``N`` not above ``atom``."""
    bot, top = P.bottom(), P.top()
    if atom not in P.atoms():
        raise DomainError(f"{P.labels[atom]!r} is not an atom")
    rhs = -sum(P.mobius(bot, n) for n in P.coatoms() if not P.leq(atom, n))
    return P.mobius(bot, top) == rhs


def diamond() -> FinitePoset:
    """Bottom, two incomparable atoms, top."""
    return FinitePoset.from_covers(["0", "a", "b", "1"], [(0, 1), (0, 2), (1, 3), (2, 3)])


def seven_element_lattice() -> FinitePoset:
    """Three atoms ``a, b, c`` with joins ``a|b``, ``b|c`` below the top only.

    Here ``a|c`` is already the top, so ``mu(0, a|b) = mu(0, b|c) = 1`` while
    ``mu(0, 1) = 0`` although the top is a join of atoms.
    """
    labels = ["0", "a", "b", "c", "a|b", "b|c", "1"]
    covers = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (2, 5), (3, 5), (4, 6), (5, 6)]
    return FinitePoset.from_covers(labels, covers)
