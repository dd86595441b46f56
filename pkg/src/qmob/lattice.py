"""Exhaustive enumeration of submodule lattices.

Over a prime field every subrepresentation is found by a depth-first search
that fixes one vertex at a time.  When vertex ``v`` is chosen, the images of
the already chosen neighbours force a lower bound (sum of incoming images)
and an upper bound (preimages of already chosen targets), so only the
subspaces of an interval are tried and no branch dies later.

Over the rationals only thin representations are accepted; their
subrepresentations are exactly the out-closed subsets of the support.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import CapExceeded, DomainError, InfiniteModeNonThin
from .exactmath import Subspace, apply, preimage, subspaces_between
from .poset import FinitePoset, iter_bits
from .rep import (Representation, Subrep, direct_sum, embed_left, embed_right, hom_dim,
                  is_thin, sub_to_rep)

DEFAULT_CAP = 100_000

# encode subspaces as bitsets of their vectors when p**dim stays below this
_BITSET_LIMIT = 1 << 14


def _vertex_order(M: Representation) -> List[int]:
    order = M.quiver.topological_order()
    return order if order is not None else list(M.quiver.vertices)


def _canonical_key(U: Subrep):
    return (U.total_dim, U.key())


class _Search:
    def __init__(self, M: Representation, order: Sequence[int], cap: Optional[int]):
        self.M = M
        self.order = list(order)
        self.cap = cap
        self.results: List[Subrep] = []
        self.pos = {v: k for k, v in enumerate(self.order)}

    def candidates(self, k: int, assigned: Dict[int, Subspace]):
        M = self.M
        v = self.order[k]
        field, d = M.field, M.dim(v)
        lower = Subspace.zero(field, d)
        upper = Subspace.full(field, d)
        loops = []
        for a in M.quiver.arrows:
            if a.source == v and a.target == v:
                loops.append(M.map(a.name))
            elif a.target == v and a.source in assigned:
                lower = lower + apply(M.map(a.name), assigned[a.source])
            elif a.source == v and a.target in assigned:
                upper = upper & preimage(M.map(a.name), assigned[a.target])
        if not lower <= upper:
            return
        for W in subspaces_between(lower, upper):
            if all(apply(m, W) <= W for m in loops):
                yield W

    def run(self, k: int = 0, assigned: Optional[Dict[int, Subspace]] = None):
        assigned = {} if assigned is None else assigned
        if k == len(self.order):
            self.results.append(Subrep(tuple(assigned[v] for v in self.M.quiver.vertices)))
            if self.cap is not None and len(self.results) > self.cap:
                raise CapExceeded(len(self.results), self.cap)
            return
        v = self.order[k]
        for W in self.candidates(k, assigned):
            assigned[v] = W
            self.run(k + 1, assigned)
            del assigned[v]


def _search_branch(M, order, cap, first):
    s = _Search(M, order, cap)
    s.run(1, {order[0]: first})
    return s.results


def _dfs_subreps(M: Representation, cap: Optional[int], threads: int) -> List[Subrep]:
    order = _vertex_order(M)
    if threads <= 1:
        s = _Search(M, order, cap)
        s.run()
        return s.results
    firsts = list(_Search(M, order, cap).candidates(0, {}))
    results: List[Subrep] = []
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(_search_branch, [M] * len(firsts), [order] * len(firsts),
                             [cap] * len(firsts), firsts):
            results.extend(part)
            if cap is not None and len(results) > cap:
                raise CapExceeded(len(results), cap)
    return results


def thin_subreps(M: Representation, cap: Optional[int] = None) -> List[Subrep]:
    """Subrepresentations of a thin ``M`` over any field.

    A subspace of a space of dimension at most one is zero or everything, so
    a subrepresentation is a subset of the support closed under the arrows
    whose structural map is nonzero.
    """
    if not is_thin(M):
        raise InfiniteModeNonThin("thin-mode enumeration needs a thin representation")
    support = [v for v in M.quiver.vertices if M.dim(v) == 1]
    live = [(a.source, a.target) for a in M.quiver.arrows if not M.map(a.name).is_zero()]
    out = []
    for mask in range(1 << len(support)):
        chosen = {v for k, v in enumerate(support) if (mask >> k) & 1}
        if all(t in chosen for s, t in live if s in chosen):
            out.append(Subrep(tuple(Subspace.full(M.field, 1) if v in chosen
                                    else Subspace.zero(M.field, M.dim(v)) for v in M.quiver.vertices)))
            if cap is not None and len(out) > cap:
                raise CapExceeded(len(out), cap)
    return out


def _vector_index_masks(space: Subspace) -> int:
    """Bitset of the vectors of ``space``, each read as a base-p integer."""
    p = space.field.p
    d = space.ambient
    mask = 0
    vecs = [(0,) * d]
    for r in space.rows:
        vecs = [tuple((x + c * y) % p for x, y in zip(v, r)) for v in vecs for c in range(p)]
    for v in vecs:
        idx = 0
        for x in v:
            idx = idx * p + x
        mask |= 1 << idx
    return mask


class SubmoduleLattice:
    """The lattice of subrepresentations of ``base`` in canonical order.

    Elements are sorted by total dimension and then by their RREF bases, so
    index 0 is the zero subrepresentation and the last index is ``base``.
    """

    def __init__(self, base: Representation, elements: Sequence[Subrep]):
        self.base = base
        self.elements = sorted(elements, key=_canonical_key)
        self._index = {U.key(): i for i, U in enumerate(self.elements)}
        self.poset = FinitePoset(self.elements, self._up_sets(), check=False)

    def _up_sets(self) -> List[int]:
        n = len(self.elements)
        M = self.base
        if M.field.is_finite and all(M.field.p ** d <= _BITSET_LIMIT for d in M.dims):
            shifts, off = [], 0
            for d in M.dims:
                shifts.append(off)
                off += M.field.p ** d
            cache: Dict[Subspace, int] = {}
            codes = []
            for U in self.elements:
                code = 0
                for s, sh in zip(U.spaces, shifts):
                    if s not in cache:
                        cache[s] = _vector_index_masks(s)
                    code |= cache[s] << sh
                codes.append(code)
            leq = lambda i, j: codes[i] & ~codes[j] == 0
        else:
            leq = lambda i, j: self.elements[i] <= self.elements[j]
        dims = [U.total_dim for U in self.elements]
        up = []
        for i in range(n):
            mask = 1 << i
            for j in range(i + 1, n):
                if dims[j] > dims[i] and leq(i, j):
                    mask |= 1 << j
            up.append(mask)
        return up

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, U: Subrep) -> int:
        try:
            return self._index[U.key()]
        except KeyError:
            raise DomainError("not an element of this lattice") from None

    def __contains__(self, U: Subrep) -> bool:
        return U.key() in self._index

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.elements) - 1

    def mobius(self, lower: int = None, upper: int = None) -> int:
        lower = self.bottom if lower is None else lower
        upper = self.top if upper is None else upper
        return self.poset.mobius(lower, upper)

    def atoms(self) -> List[Subrep]:
        if len(self.elements) == 1:
            return []
        return [self.elements[i] for i in self.poset.upper_covers(self.bottom)]

    def coatoms(self) -> List[Subrep]:
        if len(self.elements) == 1:
            return []
        return [self.elements[i] for i in self.poset.lower_covers(self.top)]

    def count_by_length(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for U in self.elements:
            counts[U.total_dim] = counts.get(U.total_dim, 0) + 1
        return dict(sorted(counts.items()))

    def below(self, i: int) -> List[int]:
        return list(iter_bits(self.poset.down[i]))

    def is_closed_under_operations(self) -> bool:
        for i, U in enumerate(self.elements):
            for V in self.elements[i + 1:]:
                if (U + V) not in self or (U & V) not in self:
                    return False
        return True

    def labels(self) -> List[str]:
        return ["[" + ",".join(str(d) for d in U.dims) + "] " + str(U) for U in self.elements]

    def to_dot(self) -> str:
        return self.poset.to_dot(self.labels(), name="submodules")

    def to_json(self) -> dict:
        """Elements as per-vertex basis matrices (entries as strings), covers, Möbius table."""
        elements = [{"index": i, "dims": list(U.dims),
                     "bases": [[[str(x) for x in r] for r in s.rows] for s in U.spaces]}
                    for i, U in enumerate(self.elements)]
        table = [[x, y, str(v)] for (x, y), v in sorted(self.poset.mobius_table().items())]
        return {"size": len(self.elements), "elements": elements,
                "covers": [list(e) for e in self.poset.covers()],
                "mobius": table, "mobius_bottom_top": str(self.mobius())}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def enumerate_subreps(M: Representation, cap: Optional[int] = DEFAULT_CAP, threads: int = 1) -> SubmoduleLattice:
    """All subrepresentations of ``M``.

    Raises :class:`CapExceeded` rather than truncating, and
    :class:`InfiniteModeNonThin` for a non-thin ``M`` over the rationals.
    """
    if M.field.is_finite:
        elements = _dfs_subreps(M, cap, threads)
    elif is_thin(M):
        elements = thin_subreps(M, cap)
    else:
        raise InfiniteModeNonThin("refusing to enumerate a non-thin representation over an infinite field")
    return SubmoduleLattice(M, elements)


LatticeOrRep = Union[SubmoduleLattice, Representation]


def _lattice(x: LatticeOrRep, cap: Optional[int]) -> SubmoduleLattice:
    return x if isinstance(x, SubmoduleLattice) else enumerate_subreps(x, cap)


def mobius_bruteforce(M: LatticeOrRep, cap: Optional[int] = DEFAULT_CAP) -> int:
    return _lattice(M, cap).mobius()


def atoms_of(M: LatticeOrRep, cap: Optional[int] = DEFAULT_CAP) -> List[Subrep]:
    return _lattice(M, cap).atoms()


def coatoms_of(M: LatticeOrRep, cap: Optional[int] = DEFAULT_CAP) -> List[Subrep]:
    return _lattice(M, cap).coatoms()


def count_by_length(M: LatticeOrRep, cap: Optional[int] = DEFAULT_CAP) -> Dict[int, int]:
    return _lattice(M, cap).count_by_length()


def is_poset_orthogonal(M: Representation, N: Representation,
                        cap: Optional[int] = DEFAULT_CAP) -> Tuple[bool, Optional[Subrep]]:
    """Whether every subrepresentation of ``M (+) N`` splits along the summands.

    Returns ``(True, None)`` or ``(False, witness)`` with the first
    non-split element in canonical order.
    """
    S = direct_sum(M, N)
    left, right = embed_left(M, N), embed_right(M, N)
    for U in enumerate_subreps(S, cap):
        if U.total_dim != (U & left).total_dim + (U & right).total_dim:
            return False, U
    return True, None


def orthocyclic_obstruction(M: Representation, N: Representation, cap: Optional[int] = DEFAULT_CAP):
    """First ``(side, U)`` with ``Hom(U, other) != 0``, or ``None``.

    ``side`` is ``"left"`` when ``U`` is a subrepresentation of ``M``.
    """
    for side, A, B in (("left", M, N), ("right", N, M)):
        for U in enumerate_subreps(A, cap):
            if U.total_dim and hom_dim(sub_to_rep(A, U), B):
                return side, U
    return None


def is_orthocyclic(M: Representation, N: Representation, cap: Optional[int] = DEFAULT_CAP) -> bool:
    return orthocyclic_obstruction(M, N, cap) is None


def weisner_verify(M: LatticeOrRep, atom: Subrep, cap: Optional[int] = DEFAULT_CAP) -> bool:
    """``mu(0, M) = -sum mu(0, N)`` over maximal ``N`` not containing ``atom``."""
    L = _lattice(M, cap)
    a = L.index(atom)
    P = L.poset
    if a not in P.upper_covers(L.bottom):
        raise DomainError("not an atom of the lattice")
    rhs = -sum(P.mobius(L.bottom, n) for n in P.lower_covers(L.top) if not P.leq(a, n))
    return L.mobius() == rhs
