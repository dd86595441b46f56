"""Exact Möbius functions and submodule lattices for quiver representations."""

from .errors import QmobError
from .exactmath import FieldSpec, Mat, Subspace
from .finiteness import decide_finiteness
from .lattice import SubmoduleLattice, enumerate_subreps, mobius_bruteforce
from .mobius import mobius_rep
from .poset import FinitePoset
from .quiver import Path, Quiver, Relation
from .rep import Representation, Subrep

__version__ = "0.1.0"
