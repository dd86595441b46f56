"""Closed-form Möbius values and submodule counts.

For a semisimple module ``S^t`` with ``|End(S)| = q`` the Möbius value is
``(-1)^t q^(t(t-1)/2)``; a direct sum of powers of pairwise non-isomorphic
simples multiplies these; any non-semisimple module has value 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

from .errors import DomainError, InfiniteLattice
from .exactmath import gaussian_binomial, s_number
from .lattice import DEFAULT_CAP, enumerate_subreps
from .rep import Representation, Subrep, dimension_vector, is_semisimple, lift_subrep, quotient, radical


class Method(enum.Enum):
    ClosedForm = "ClosedForm"
    BruteForce = "BruteForce"


@dataclass(frozen=True)
class MobiusReport:
    value: int
    method: Method
    semisimple: bool
    q_used: int

    def __post_init__(self):
        if not self.semisimple and (self.value != 0 or self.method is not Method.ClosedForm):
            raise ValueError("a non-semisimple closed-form report must carry the value 0")


def mobius_power(q: int, t: int) -> int:
    """``mu(S^t) = (-1)^t q^(t(t-1)/2)``."""
    if q < 1 or t < 0:
        raise DomainError(f"need q >= 1 and t >= 0, got q={q}, t={t}")
    return (-1) ** t * q ** (t * (t - 1) // 2)


def mobius_semisimple(dimvec: Sequence[int], q: int) -> int:
    """Product of :func:`mobius_power` over the dimension vector.

    ``q = 1`` stands for an infinite field, where a repeated simple summand
    makes the lattice infinite.
    """
    if q < 1:
        raise DomainError(f"need q >= 1, got {q}")
    if q == 1 and any(a >= 2 for a in dimvec):
        raise InfiniteLattice("a semisimple module with a repeated simple summand over an infinite field "
                              "has infinitely many submodules")
    value = 1
    for a in dimvec:
        value *= mobius_power(q, a)
    return value


def mobius_rep(M: Representation) -> MobiusReport:
    q = M.field.q_for_formulas
    if not is_semisimple(M):
        return MobiusReport(0, Method.ClosedForm, False, q)
    return MobiusReport(mobius_semisimple(dimension_vector(M), q), Method.ClosedForm, True, q)


def count_simple_submodules(q: int, t: int) -> int:
    """Simple submodules of ``S^t`` when ``|End(S)| = q``."""
    if q < 2:
        raise DomainError(f"an endomorphism ring has at least 2 elements, got q={q}")
    if t < 1:
        raise DomainError(f"need t >= 1, got {t}")
    return s_number(t, q)


def count_maximal(q: int, t: int) -> int:
    # simple and maximal submodules of S^t are in bijection
    return count_simple_submodules(q, t)


def count_length_l(q: int, t: int, l: int) -> int:
    """Submodules of length ``l`` in ``S^t``: the Gaussian binomial ``[t, l]_q``."""
    if q < 2:
        raise DomainError(f"an endomorphism ring has at least 2 elements, got q={q}")
    return gaussian_binomial(t, l, q)


GFunction = Union[Mapping, Callable[[Subrep], object]]


def _g_value(g: GFunction, U: Subrep) -> Fraction:
    if callable(g):
        return Fraction(g(U))
    if U in g:
        return Fraction(g[U])
    return Fraction(g[U.key()])


def mobius_inversion_module(M: Representation, g: GFunction, cap: Optional[int] = DEFAULT_CAP,
                            over: str = "radical") -> Fraction:
    """``f(M) = sum g(N) mu(M/N)``.

    ``over="radical"`` sums over the interval ``[rad M, M]`` only, obtained
    from the lattice of ``M / rad M``; this also works over an infinite
    field when that quotient is thin.  ``over="full"`` sums over the whole
    enumerated lattice of ``M``.  Both agree because ``mu(M/N) = 0`` unless
    ``M/N`` is semisimple.
    """
    if over == "full":
        terms = enumerate_subreps(M, cap).elements
    elif over == "radical":
        rad = radical(M)
        top, _ = quotient(M, rad)
        terms = [lift_subrep(M, rad, W) for W in enumerate_subreps(top, cap)]
    else:
        raise DomainError(f"unknown summation range {over!r}")
    total = Fraction(0)
    for N in terms:
        mu = mobius_rep(quotient(M, N)[0]).value
        if mu:
            total += _g_value(g, N) * mu
    return total


def downward_sums(lattice, f: GFunction) -> dict:
    """``g(N) = sum_{L <= N} f(L)`` on every element of an enumerated lattice."""
    values = [_g_value(f, U) for U in lattice.elements]
    return {U.key(): sum(values[i] for i in lattice.below(k)) for k, U in enumerate(lattice.elements)}
