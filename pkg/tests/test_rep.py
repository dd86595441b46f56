import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from qmob.errors import Incompatible, NotASubrep, NotSinking, ShapeError
from qmob.exactmath import FieldSpec, Mat, Subspace
from qmob.quiver import Path, Quiver, Relation
from qmob.rep import (Representation, Subrep, direct_sum, embed_left, embed_right, hom_basis, hom_dim, inclusion,
                      is_closed, is_semisimple, is_thin, lift_subrep, quotient, radical, restrict_sinking, simple,
                      socle, sub_to_rep, validate, zero_rep)

F2 = FieldSpec(2)
QQ = FieldSpec.infinite()


def brute_hom_count(M, N):
    """|Hom(M, N)| over F_p by trying every tuple of vertex matrices."""
    p = M.field.p
    blocks = []
    for v in M.quiver.vertices:
        r, c = N.dim(v), M.dim(v)
        blocks.append([Mat(M.field, r, c, tuple(tuple(e[i * c:(i + 1) * c]) for i in range(r)))
                       for e in itertools.product(range(p), repeat=r * c)])
    count = 0
    for phi in itertools.product(*blocks):
        if all(phi[a.target - 1] @ M.map(a.name) == N.map(a.name) @ phi[a.source - 1] for a in M.quiver.arrows):
            count += 1
    return count


def test_shapes_checked(a3_quiver):
    with pytest.raises(ShapeError):
        Representation(F2, a3_quiver, [1, 1])
    with pytest.raises(ShapeError):
        Representation(F2, a3_quiver, [1, 1, 1], {"alpha": [[1, 1]]})
    M = Representation(F2, a3_quiver, [1, 1, 1])
    assert M.map("beta") == Mat.zero(F2, 1, 1)


def test_validate_relations():
    Q = Quiver(3, [("a", 1, 2), ("b", 2, 3)])
    rel = Relation(((1, ("a", "b")),))
    ok = Representation(F2, Q, [1, 1, 1], {"a": [[1]], "b": [[0]]}, [rel])
    bad = Representation(F2, Q, [1, 1, 1], {"a": [[1]], "b": [[1]]}, [rel])
    assert validate(ok) == []
    assert len(validate(bad)) == 1


def test_path_matrix_order():
    Q = Quiver(3, [("a", 1, 2), ("b", 2, 3)])
    M = Representation(QQ, Q, [1, 2, 1], {"a": [[1], [2]], "b": [[3, 5]]})
    assert M.path_matrix(Path(("a", "b"))).rows == ((13,),)


def test_socle_radical_of_a3(a3_example):
    assert socle(a3_example).dims == (0, 1, 1, 1)
    assert radical(a3_example).dims == (0, 2, 2, 1)
    assert is_closed(a3_example, socle(a3_example))
    assert is_closed(a3_example, radical(a3_example))


def test_simple_and_semisimple(a3_quiver):
    S = simple(F2, a3_quiver, 2)
    assert S.dims == (0, 1, 0) and is_semisimple(S) and is_thin(S)
    assert socle(S).dims == (0, 1, 0) and radical(S).dims == (0, 0, 0)


def test_quotient_by_socle(a3_example):
    Q, proj = quotient(a3_example, socle(a3_example))
    assert Q.dims == (2, 1, 1, 0)
    assert proj.is_valid()
    assert validate(Q) == []


def test_quotient_rejects_non_subrep(orth):
    N = orth["N"]
    U = Subrep((Subspace.zero(F2, 1), Subspace.full(F2, 1), Subspace.zero(F2, 1)))
    with pytest.raises(NotASubrep):
        quotient(N, U)


def test_restrict_sinking(a3_example):
    assert restrict_sinking(a3_example, {2, 3, 4}).dims == (0, 2, 2, 1)
    with pytest.raises(NotSinking):
        restrict_sinking(a3_example, {1})


def test_direct_sum_and_embeddings(orth):
    L, M = orth["L"], orth["M"]
    S = direct_sum(L, M)
    assert S.dims == tuple(a + b for a, b in zip(L.dims, M.dims))
    assert is_closed(S, embed_left(L, M)) and is_closed(S, embed_right(L, M))
    with pytest.raises(Incompatible):
        direct_sum(L, zero_rep(F2, Quiver(1)))


def test_hom_dims_of_section_examples(orth):
    L, M, N, Mp = orth["L"], orth["M"], orth["N"], orth["Mprime"]
    assert hom_dim(N, M) == 1
    assert hom_dim(M, N) == 0
    assert hom_dim(Mp, N) == 1
    for A, B in itertools.permutations([L, M, N, Mp], 2):
        assert 2 ** hom_dim(A, B) == brute_hom_count(A, B)


def test_hom_basis_morphisms_valid(a3_example):
    basis = hom_basis(a3_example, a3_example)
    assert len(basis) == hom_dim(a3_example, a3_example) >= 1
    assert all(f.is_valid() for f in basis)


def test_sub_to_rep_and_inclusion(a3_example):
    soc = socle(a3_example)
    R = sub_to_rep(a3_example, soc)
    assert R.dims == soc.dims and validate(R) == []
    assert inclusion(a3_example, soc).is_valid()


def test_lift_subrep_round_trip(a3_example):
    soc = socle(a3_example)
    Q, _ = quotient(a3_example, soc)
    assert lift_subrep(a3_example, soc, socle(Q)).dims == (0, 2, 2, 1)


def random_reps(max_vertices=3, max_dim=2):
    def build(data):
        n, edges, dims, seed = data
        Q = Quiver(n, [(f"a{i}", s, t) for i, (s, t) in enumerate(edges)])
        rng = random.Random(seed)
        maps = {a.name: [[rng.randint(0, 1) for _ in range(dims[a.source - 1])] for _ in range(dims[a.target - 1])]
                for a in Q.arrows}
        return Representation(F2, Q, dims, maps)
    return st.integers(1, max_vertices).flatmap(lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(1, n), st.integers(1, n)), max_size=3),
        st.lists(st.integers(0, max_dim), min_size=n, max_size=n),
        st.integers(0, 10 ** 6))).map(build)


@settings(max_examples=60, deadline=None)
@given(random_reps())
def test_structural_invariants(M):
    soc, rad = socle(M), radical(M)
    assert is_closed(M, soc) and is_closed(M, rad)
    top, _ = quotient(M, rad)
    assert is_semisimple(top)
    soc_rep = sub_to_rep(M, soc)
    assert is_semisimple(soc_rep)
    Q, proj = quotient(M, soc)
    assert proj.is_valid() and validate(Q) == []
    assert sum(Q.dims) == sum(M.dims) - soc.total_dim


@settings(max_examples=30, deadline=None)
@given(random_reps(max_vertices=2, max_dim=2), random_reps(max_vertices=2, max_dim=2))
def test_hom_dim_matches_brute_force(M, N):
    if M.quiver != N.quiver:
        N = Representation(F2, M.quiver, [min(d, 1) for d in M.dims])
    assert 2 ** hom_dim(M, N) == brute_hom_count(M, N)
