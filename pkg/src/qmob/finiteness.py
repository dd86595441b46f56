"""Deciding whether a representation has finitely many subrepresentations.

Over a prime field the lattice is always finite.  Over the rationals a thin
representation has a finite lattice, and on an acyclic quiver every
non-thin one has an infinite lattice: some quotient by a sinking
subrepresentation has ``S(a)^2`` in its socle.  On quivers with cycles the
same search is only a semidecision.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

from .errors import NotApplicable
from .lattice import SubmoduleLattice, enumerate_subreps
from .rep import Representation, is_thin, quotient, restrict_sinking, socle


class Verdict(enum.Enum):
    Finite = "Finite"
    Infinite = "Infinite"
    Unknown = "Unknown"


class Reason(enum.Enum):
    FiniteField = "FiniteField"
    Thin = "Thin"
    NonThinAcyclic = "NonThinAcyclic"
    SocleSquare = "SocleSquare"
    Inconclusive = "Inconclusive"


@dataclass(frozen=True)
class Witness:
    """``quotient = M / R_M(sinking)`` whose socle has dimension >= 2 at ``vertex``."""

    vertex: int
    sinking: FrozenSet[int]
    quotient: Representation

    @property
    def socle_dim(self) -> int:
        return socle(self.quotient).spaces[self.vertex - 1].dim

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "sinking_set": sorted(self.sinking),
                "quotient_dims": list(self.quotient.dims), "socle_dim_at_vertex": self.socle_dim}


@dataclass(frozen=True)
class FinitenessVerdict:
    verdict: Verdict
    reason: Reason
    witness: Optional[Witness] = None
    lattice: Optional[SubmoduleLattice] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.verdict is Verdict.Infinite and (self.witness is None or self.witness.socle_dim < 2):
            raise ValueError("an Infinite verdict needs a witness with a square in the socle")

    def to_json(self) -> dict:
        out = {"verdict": self.verdict.value, "reason": self.reason.value}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.lattice is not None:
            out["lattice_size"] = len(self.lattice)
        return out


def infinite_witness(M: Representation) -> Witness:
    """Witness for a non-thin ``M`` over an infinite field on an acyclic quiver.

    Take the smallest vertex ``a`` with ``dim >= 2``.  A sink needs no
    quotient.  Otherwise quotient by everything reachable from the targets
    of the arrows leaving ``a``; those targets become zero, so ``M_a`` lands
    in the socle.
    """
    Q = M.quiver
    if M.field.is_finite or not Q.is_acyclic() or is_thin(M):
        raise NotApplicable("witness construction needs an infinite field, an acyclic quiver "
                            "and a non-thin representation")
    a = min(v for v in Q.vertices if M.dim(v) >= 2)
    sinking = Q.sinking_union(Q.reachable(arr.target) for arr in Q.out_arrows(a))
    quot, _ = quotient(M, restrict_sinking(M, sinking))
    w = Witness(a, frozenset(sinking), quot)
    assert w.socle_dim >= 2
    return w


def _socle_square_search(M: Representation) -> Optional[Witness]:
    for s in M.quiver.enumerate_sinking_sets():
        quot, _ = quotient(M, restrict_sinking(M, s))
        soc = socle(quot)
        for v in M.quiver.vertices:
            if soc.spaces[v - 1].dim >= 2:
                return Witness(v, frozenset(s), quot)
    return None


def decide_finiteness(M: Representation, *, enumerate_thin: bool = True) -> FinitenessVerdict:
    if M.field.is_finite:
        return FinitenessVerdict(Verdict.Finite, Reason.FiniteField)
    if is_thin(M):
        lat = enumerate_subreps(M, cap=None) if enumerate_thin else None
        return FinitenessVerdict(Verdict.Finite, Reason.Thin, lattice=lat)
    if M.quiver.is_acyclic():
        return FinitenessVerdict(Verdict.Infinite, Reason.NonThinAcyclic, infinite_witness(M))
    w = _socle_square_search(M)
    if w is not None:
        return FinitenessVerdict(Verdict.Infinite, Reason.SocleSquare, w)
    return FinitenessVerdict(Verdict.Unknown, Reason.Inconclusive)


@dataclass(frozen=True)
class SocleLayer:
    socle_dims: Tuple[int, ...]
    thin: bool


@dataclass(frozen=True)
class SocleSeriesReport:
    layers: Tuple[SocleLayer, ...]
    verdict: FinitenessVerdict

    @property
    def all_layers_thin(self) -> bool:
        return all(l.thin for l in self.layers)

    def to_json(self) -> dict:
        return {"layers": [{"socle_dims": list(l.socle_dims), "thin": l.thin} for l in self.layers],
                "all_layers_thin": self.all_layers_thin, "finiteness": self.verdict.to_json()}


def socle_series_counterexample_check(M: Representation) -> SocleSeriesReport:
    """Socle layers ``Soc(M)``, ``Soc(M/Soc M)``, ... with their thinness.

    Juxtaposes layer thinness with the finiteness verdict of ``M`` itself.
    """
    layers: List[SocleLayer] = []
    cur = M
    while sum(cur.dims):
        soc = socle(cur)
        layers.append(SocleLayer(soc.dims, all(d <= 1 for d in soc.dims)))
        cur, _ = quotient(cur, soc)
    return SocleSeriesReport(tuple(layers), decide_finiteness(M))
