from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qmob import corpus
from qmob.errors import DomainError, InfiniteLattice
from qmob.exactmath import FieldSpec, gaussian_binomial
from qmob.lattice import enumerate_subreps, mobius_bruteforce
from qmob.mobius import (Method, MobiusReport, count_length_l, count_maximal, count_simple_submodules,
                         downward_sums, mobius_inversion_module, mobius_power, mobius_rep, mobius_semisimple)
from qmob.quiver import Quiver
from qmob.rep import Representation

from conftest import simple_power


@pytest.mark.parametrize("q,t,expected", [(2, 1, -1), (2, 2, 2), (2, 3, -8), (3, 2, 3), (5, 4, 5 ** 6), (7, 0, 1)])
def test_mobius_power_values(q, t, expected):
    assert mobius_power(q, t) == expected


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("t", [1, 2, 3])
def test_closed_form_matches_enumeration(q, t):
    assert mobius_bruteforce(simple_power(t, q)) == mobius_power(q, t)


def test_semisimple_product():
    Q = Quiver(2, [("a", 1, 2)])
    M = Representation(FieldSpec(3), Q, [2, 1])
    assert mobius_semisimple([2, 1], 3) == 3 * -1
    assert mobius_rep(M).value == mobius_bruteforce(M) == -3
    assert mobius_semisimple([1, 1, 0], 1) == 1
    with pytest.raises(InfiniteLattice):
        mobius_semisimple([2], 1)


def test_non_semisimple_is_zero(orth):
    report = mobius_rep(orth["N"])
    assert report == MobiusReport(0, Method.ClosedForm, False, 2)
    assert mobius_bruteforce(orth["N"]) == 0
    # over an infinite field the closed form needs no enumeration
    assert mobius_rep(corpus.load("a3_example").representation).value == 0


def test_counts():
    assert count_simple_submodules(2, 3) == 7
    assert count_maximal(3, 2) == 4
    assert [count_length_l(2, 4, l) for l in range(5)] == [1, 15, 35, 15, 1]
    with pytest.raises(DomainError):
        count_simple_submodules(1, 3)
    with pytest.raises(DomainError):
        count_length_l(1, 3, 1)
    with pytest.raises(DomainError):
        mobius_power(0, 2)


@given(st.integers(2, 9), st.integers(1, 12))
def test_weisner_recursion(q, t):
    assert mobius_power(q, t) == -q ** (t - 1) * mobius_power(q, t - 1)
    assert count_length_l(q, t, 1) == count_maximal(q, t) == gaussian_binomial(t, t - 1, q)


@pytest.mark.parametrize("name", ["a3_example_f2", "orth_N", "s1_cubed_f2", "counterex_f2"])
def test_inversion_round_trip(name):
    M = corpus.load(name).representation
    lat = enumerate_subreps(M)
    f = {U.key(): Fraction(3 * i - 7, 2) for i, U in enumerate(lat)}
    g = downward_sums(lat, f)
    top = f[lat.elements[lat.top].key()]
    assert mobius_inversion_module(M, g, over="full") == top
    assert mobius_inversion_module(M, g, over="radical") == top
    # callables work too
    assert mobius_inversion_module(M, lambda U: g[U.key()]) == top


def test_inversion_over_thin_rationals(orth):
    N = orth["N"].with_field(FieldSpec.infinite())
    lat = enumerate_subreps(N)
    f = {U.key(): Fraction(i) for i, U in enumerate(lat)}
    g = downward_sums(lat, f)
    assert mobius_inversion_module(N, g) == f[lat.elements[lat.top].key()]


def test_inversion_rejects_unknown_range(orth):
    with pytest.raises(DomainError):
        mobius_inversion_module(orth["N"], lambda U: 1, over="middle")
