"""Representations of bound quivers and their subrepresentations.

A representation assigns ``field^dims[v]`` to each vertex ``v`` and a
``dims[target] x dims[source]`` matrix to each arrow.  Subrepresentations
are tuples of :class:`~qmob.exactmath.Subspace`, one per vertex.

The matrix of a path ``a1.a2...ak`` (``a1`` traversed first) is
``M[ak] @ ... @ M[a1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import Incompatible, InvalidQuiver, NotASubrep, NotSinking, ShapeError
from .exactmath import FieldSpec, Mat, Subspace, apply, block_diag, kernel
from .quiver import Path, Quiver, Relation


@dataclass(frozen=True)
class Representation:
    field: FieldSpec
    quiver: Quiver
    dims: Tuple[int, ...]
    maps: Tuple[Tuple[str, Mat], ...]
    relations: Tuple[Relation, ...] = ()

    def __init__(self, field: FieldSpec, quiver: Quiver, dims: Sequence[int],
                 maps: Optional[Mapping[str, object]] = None, relations: Iterable[Relation] = ()):
        dims = tuple(int(d) for d in dims)
        if len(dims) != quiver.n_vertices:
            raise ShapeError(f"{len(dims)} dimensions for {quiver.n_vertices} vertices")
        if any(d < 0 for d in dims):
            raise ShapeError("dimensions must be nonnegative")
        maps = dict(maps or {})
        unknown = set(maps) - {a.name for a in quiver.arrows}
        if unknown:
            raise InvalidQuiver(f"maps given for unknown arrows {sorted(unknown)}")
        built = []
        for a in quiver.arrows:
            shape = (dims[a.target - 1], dims[a.source - 1])
            m = maps.get(a.name)
            if m is None:
                m = Mat.zero(field, *shape)
            elif not isinstance(m, Mat):
                m = Mat.from_rows(field, m, ncols=shape[1])
            elif m.field != field:
                m = m.with_field(field)
            if m.shape != shape:
                raise ShapeError(f"map {a.name} has shape {m.shape}, expected {shape}")
            built.append((a.name, m))
        rels = tuple(relations)
        for r in rels:
            r.check(quiver)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", tuple(built))
        object.__setattr__(self, "relations", rels)

    def map(self, name: str) -> Mat:
        for n, m in self.maps:
            if n == name:
                return m
        raise InvalidQuiver(f"unknown arrow {name!r}")

    def dim(self, v: int) -> int:
        return self.dims[v - 1]

    def path_matrix(self, path: Path) -> Mat:
        names = path.arrows if isinstance(path, Path) else tuple(path)
        m = self.map(names[0])
        for n in names[1:]:
            m = self.map(n) @ m
        return m

    def evaluate_relation(self, rel: Relation) -> Mat:
        src, tgt = rel.check(self.quiver)
        total = Mat.zero(self.field, self.dim(tgt), self.dim(src))
        for c, p in rel.terms:
            total = total + self.path_matrix(p).scale(c)
        return total

    def with_field(self, field: FieldSpec) -> "Representation":
        rels = tuple(Relation(tuple((field(c), p) for c, p in r.terms)) for r in self.relations)
        return Representation(field, self.quiver, self.dims,
                              {n: m.with_field(field) for n, m in self.maps}, rels)

    def with_relations(self, relations: Iterable[Relation]) -> "Representation":
        return Representation(self.field, self.quiver, self.dims, dict(self.maps), relations)


@dataclass(frozen=True)
class Subrep:
    spaces: Tuple[Subspace, ...]

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(s.dim for s in self.spaces)

    @property
    def total_dim(self) -> int:
        return sum(s.dim for s in self.spaces)

    def key(self):
        return tuple(s.rows for s in self.spaces)

    def __le__(self, other: "Subrep") -> bool:
        return all(a <= b for a, b in zip(self.spaces, other.spaces))

    def __add__(self, other: "Subrep") -> "Subrep":
        return Subrep(tuple(a + b for a, b in zip(self.spaces, other.spaces)))

    def __and__(self, other: "Subrep") -> "Subrep":
        return Subrep(tuple(a & b for a, b in zip(self.spaces, other.spaces)))

    def __str__(self):
        return "(" + "; ".join(str(s) for s in self.spaces) + ")"


@dataclass(frozen=True)
class RepMorphism:
    source: Representation
    target: Representation
    mats: Tuple[Mat, ...]

    def violations(self) -> List[str]:
        out = []
        for a in self.source.quiver.arrows:
            lhs = self.mats[a.target - 1] @ self.source.map(a.name)
            rhs = self.target.map(a.name) @ self.mats[a.source - 1]
            if lhs != rhs:
                out.append(f"square at arrow {a.name} does not commute")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def rank(self) -> int:
        return sum(m.rank() for m in self.mats)


def validate(M: Representation) -> List[str]:
    """Shape and relation violations of ``M``; empty when valid."""
    out = []
    for a in M.quiver.arrows:
        shape = (M.dim(a.target), M.dim(a.source))
        if M.map(a.name).shape != shape:
            out.append(f"map {a.name} has shape {M.map(a.name).shape}, expected {shape}")
    for k, r in enumerate(M.relations):
        try:
            value = M.evaluate_relation(r)
        except (InvalidQuiver, ShapeError) as exc:
            out.append(f"relation {k + 1} ({r}): {exc}")
            continue
        if not value.is_zero():
            out.append(f"relation {k + 1} ({r}) does not vanish: {value}")
    return out


def dimension_vector(M: Representation) -> Tuple[int, ...]:
    return M.dims


def total_dim(M: Representation) -> int:
    return sum(M.dims)


def is_thin(M: Representation) -> bool:
    return all(d <= 1 for d in M.dims)


def is_semisimple(M: Representation) -> bool:
    return all(m.is_zero() for _, m in M.maps)


def simple(field: FieldSpec, quiver: Quiver, a: int, relations=()) -> Representation:
    """The simple representation ``S(a)``."""
    return Representation(field, quiver, [1 if v == a else 0 for v in quiver.vertices], {}, relations)


def zero_rep(field: FieldSpec, quiver: Quiver, relations=()) -> Representation:
    return Representation(field, quiver, [0] * quiver.n_vertices, {}, relations)


def zero_subrep(M: Representation) -> Subrep:
    return Subrep(tuple(Subspace.zero(M.field, d) for d in M.dims))


def full_subrep(M: Representation) -> Subrep:
    return Subrep(tuple(Subspace.full(M.field, d) for d in M.dims))


def is_closed(M: Representation, U: Subrep) -> bool:
    if len(U.spaces) != M.quiver.n_vertices:
        return False
    if any(s.ambient != d for s, d in zip(U.spaces, M.dims)):
        return False
    return all(apply(M.map(a.name), U.spaces[a.source - 1]) <= U.spaces[a.target - 1]
               for a in M.quiver.arrows)


def _require_closed(M: Representation, U: Subrep):
    if not is_closed(M, U):
        raise NotASubrep("subspace tuple is not closed under the structural maps")


def socle(M: Representation) -> Subrep:
    """Full space at sinks, intersection of outgoing kernels elsewhere."""
    spaces = []
    for v in M.quiver.vertices:
        s = Subspace.full(M.field, M.dim(v))
        for a in M.quiver.out_arrows(v):
            s = s & kernel(M.map(a.name))
        spaces.append(s)
    return Subrep(tuple(spaces))


def radical(M: Representation) -> Subrep:
    """Sum of the images of incoming arrows at each vertex."""
    spaces = []
    for v in M.quiver.vertices:
        s = Subspace.zero(M.field, M.dim(v))
        for a in M.quiver.in_arrows(v):
            s = s + Subspace.span(M.field, M.dim(v), M.map(a.name).columns())
        spaces.append(s)
    return Subrep(tuple(spaces))


def quotient(M: Representation, U: Subrep) -> Tuple[Representation, RepMorphism]:
    """``M / U`` with the projection; quotient bases are the non-pivot coordinates of ``U``."""
    _require_closed(M, U)
    proj = [s.projection() for s in U.spaces]
    maps = {}
    for a in M.quiver.arrows:
        src = U.spaces[a.source - 1]
        m = M.map(a.name)
        cols = []
        for j in src.complement_columns:
            e = [M.field.zero] * src.ambient
            e[j] = M.field.one
            cols.append(proj[a.target - 1].apply_vec(m.apply_vec(e)))
        maps[a.name] = Mat.from_columns(M.field, cols, proj[a.target - 1].nrows)
    Q = Representation(M.field, M.quiver, [p.nrows for p in proj], maps, M.relations)
    return Q, RepMorphism(M, Q, tuple(proj))


def lift_subrep(M: Representation, U: Subrep, W: Subrep) -> Subrep:
    """Preimage in ``M`` of a subrepresentation ``W`` of ``M / U``."""
    spaces = []
    for u, w in zip(U.spaces, W.spaces):
        spaces.append(u + Subspace.span(M.field, u.ambient, [u.lift(r) for r in w.rows]))
    return Subrep(tuple(spaces))


def direct_sum(M: Representation, N: Representation) -> Representation:
    if M.field != N.field or M.quiver != N.quiver:
        raise Incompatible("direct sum needs the same field and quiver")
    rels = list(M.relations) + [r for r in N.relations if r not in M.relations]
    maps = {a.name: block_diag(M.map(a.name), N.map(a.name)) for a in M.quiver.arrows}
    return Representation(M.field, M.quiver, [a + b for a, b in zip(M.dims, N.dims)], maps, rels)


def _coordinate_block(field: FieldSpec, ambient: int, start: int, stop: int) -> Subspace:
    z, o = field.zero, field.one
    return Subspace(field, ambient, tuple(tuple(o if j == i else z for j in range(ambient))
                                          for i in range(start, stop)))


def embed_left(M: Representation, N: Representation) -> Subrep:
    """``M`` as a subrepresentation of ``M (+) N``."""
    return Subrep(tuple(_coordinate_block(M.field, m + n, 0, m) for m, n in zip(M.dims, N.dims)))


def embed_right(M: Representation, N: Representation) -> Subrep:
    """``N`` as a subrepresentation of ``M (+) N``."""
    return Subrep(tuple(_coordinate_block(M.field, m + n, m, m + n) for m, n in zip(M.dims, N.dims)))


def restrict_sinking(M: Representation, vertices: Iterable[int]) -> Subrep:
    """``R_M(Q')``: everything on a sinking vertex set, zero elsewhere."""
    s = set(vertices)
    if not M.quiver.is_sinking(s):
        raise NotSinking(f"vertex set {sorted(s)} is not closed under arrows")
    return Subrep(tuple(Subspace.full(M.field, M.dim(v)) if v in s else Subspace.zero(M.field, M.dim(v))
                        for v in M.quiver.vertices))


def _hom_system(M: Representation, N: Representation):
    if M.field != N.field or M.quiver != N.quiver:
        raise Incompatible("Hom needs the same field and quiver")
    # unknown phi_v is a dims_N[v] x dims_M[v] block, flattened row-major
    offsets, n = {}, 0
    for v in M.quiver.vertices:
        offsets[v] = n
        n += N.dim(v) * M.dim(v)
    norm = M.field.norm
    rows = []
    for a in M.quiver.arrows:
        s, t = a.source, a.target
        Ma, Na = M.map(a.name), N.map(a.name)
        # (phi_t Ma - Na phi_s)[i][j] = 0
        for i in range(N.dim(t)):
            for j in range(M.dim(s)):
                row = [M.field.zero] * n
                for k in range(M.dim(t)):
                    c = Ma.rows[k][j]
                    if c:
                        idx = offsets[t] + i * M.dim(t) + k
                        row[idx] = norm(row[idx] + c)
                for k in range(N.dim(s)):
                    c = Na.rows[i][k]
                    if c:
                        idx = offsets[s] + k * M.dim(s) + j
                        row[idx] = norm(row[idx] - c)
                rows.append(row)
    return Mat(M.field, len(rows), n, tuple(tuple(r) for r in rows)), offsets


def hom_dim(M: Representation, N: Representation) -> int:
    """Dimension of ``Hom(M, N)``."""
    system, _ = _hom_system(M, N)
    return system.ncols - system.rank()


def hom_basis(M: Representation, N: Representation) -> List[RepMorphism]:
    system, offsets = _hom_system(M, N)
    out = []
    for vec in kernel(system).rows:
        mats = []
        for v in M.quiver.vertices:
            r, c = N.dim(v), M.dim(v)
            flat = vec[offsets[v]:offsets[v] + r * c]
            mats.append(Mat(M.field, r, c, tuple(tuple(flat[i * c:(i + 1) * c]) for i in range(r))))
        out.append(RepMorphism(M, N, tuple(mats)))
    return out


def sub_to_rep(M: Representation, U: Subrep) -> Representation:
    """``U`` as a standalone representation in its RREF bases."""
    _require_closed(M, U)
    maps = {}
    for a in M.quiver.arrows:
        src, tgt = U.spaces[a.source - 1], U.spaces[a.target - 1]
        m = M.map(a.name)
        cols = [tgt.coords(m.apply_vec(b)) for b in src.rows]
        maps[a.name] = Mat.from_columns(M.field, cols, tgt.dim)
    return Representation(M.field, M.quiver, U.dims, maps, M.relations)


def inclusion(M: Representation, U: Subrep) -> RepMorphism:
    """The embedding ``sub_to_rep(M, U) -> M``."""
    sub = sub_to_rep(M, U)
    mats = tuple(Mat.from_columns(M.field, list(s.rows), s.ambient) for s in U.spaces)
    return RepMorphism(sub, M, mats)
