"""Shared fixtures and independent brute-force oracles.

The oracles here avoid the package's own elimination and enumeration code:
subspaces are plain frozensets of vectors, built by closing spans under
linear combinations, and Möbius values come from the defining recursion.
"""

import itertools
from functools import lru_cache

import pytest

from qmob import corpus
from qmob.exactmath import FieldSpec
from qmob.quiver import Quiver
from qmob.rep import Representation


def span_set(vectors, p, n):
    """All F_p-linear combinations of ``vectors`` as a frozenset of tuples."""
    out = {(0,) * n}
    for v in vectors:
        out = {tuple((x + c * y) % p for x, y in zip(w, v)) for w in out for c in range(p)}
    return frozenset(out)


def all_subspace_sets(n, p):
    """Every subspace of F_p^n as a vector set, by repeatedly adjoining vectors."""
    vecs = list(itertools.product(range(p), repeat=n))
    found = {span_set([], p, n)}
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            for v in vecs:
                if v not in s:
                    t = frozenset(tuple((x + c * y) % p for x, y in zip(w, v)) for w in s for c in range(p))
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
        frontier = nxt
    return found


def set_dim(s, p):
    d = 0
    size = len(s)
    while size > 1:
        size //= p
        d += 1
    return d


def matvec(rows, v, p):
    return tuple(sum(a * b for a, b in zip(r, v)) % p for r in rows)


def oracle_subreps(M):
    """All closed tuples of vertex subspaces of ``M`` over F_p, as vector sets."""
    p = M.field.p
    per_vertex = [sorted(all_subspace_sets(d, p), key=lambda s: (len(s), sorted(s))) for d in M.dims]
    arrows = [(a.source - 1, a.target - 1, [tuple(int(x) for x in r) for r in M.map(a.name).rows])
              for a in M.quiver.arrows]
    out = []
    for tup in itertools.product(*per_vertex):
        if all(matvec(rows, v, p) in tup[t] for s, t, rows in arrows for v in tup[s]):
            out.append(tup)
    return out


def naive_mobius(elements, leq):
    """mu(bottom, top) by the defining recursion over an explicit order."""
    n = len(elements)

    @lru_cache(maxsize=None)
    def mu(i, j):
        if i == j:
            return 1
        return -sum(mu(i, k) for k in range(n) if leq(elements[i], elements[k])
                    and leq(elements[k], elements[j]) and k != j)

    bottom = next(i for i in range(n) if all(leq(elements[i], e) for e in elements))
    top = next(i for i in range(n) if all(leq(e, elements[i]) for e in elements))
    return mu(bottom, top)


def subset_leq(a, b):
    return all(x <= y for x, y in zip(a, b))


F2 = FieldSpec(2)
F3 = FieldSpec(3)
QQ = FieldSpec.infinite()


def simple_power(t, p):
    return Representation(FieldSpec(p), Quiver(1), [t])


@pytest.fixture
def a3_quiver():
    return Quiver(3, [("alpha", 2, 1), ("beta", 2, 3)])


@pytest.fixture
def diamond_quiver():
    return Quiver(4, [("alpha", 1, 2), ("beta", 1, 3), ("gamma", 2, 4), ("delta", 3, 4)])


@pytest.fixture
def orth():
    return {k: corpus.load(f"orth_{k}").representation for k in ("L", "M", "N", "Mprime")}


@pytest.fixture
def a3_example():
    return corpus.load("a3_example").representation


@pytest.fixture
def counterex():
    return corpus.load("counterex").representation


def corpus_reps():
    return [(name, corpus.load(name).representation) for name in corpus.names()]
