"""Exact scalars, matrices and subspaces over F_p or the rationals.

Scalars are plain Python objects: ``int`` in ``range(p)`` over a prime field,
``fractions.Fraction`` over the rationals.  Arithmetic is done with the usual
operators followed by :meth:`FieldSpec.norm`, so the same elimination code
serves both kinds of field.

Subspaces are stored by their reduced row-echelon basis, which makes equal
subspaces compare (and hash) equal.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .errors import AmbientMismatch, CapExceeded, DomainError, NotPrime, ShapeError

__all__ = [
    "FieldSpec", "Mat", "Subspace", "rref", "kernel", "image", "subspace_sum",
    "intersect", "apply", "contains", "leq", "enumerate_subspaces",
    "subspaces_with_pivots", "pivot_patterns", "subspaces_between",
    "gaussian_binomial", "s_number", "block_diag",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field ``F_p`` (``p`` set) or the rationals (``p is None``)."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if isinstance(self.p, bool) or not isinstance(self.p, int) or not _is_prime(self.p):
                raise NotPrime(f"field characteristic must be a prime, got {self.p!r}")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def infinite(cls) -> "FieldSpec":
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def q_for_formulas(self) -> int:
        # |K| for finite K, 1 for the infinite field
        return self.p if self.p is not None else 1

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or ``"n/d"`` string into a field scalar."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DomainError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def norm(self, x):
        return x % self.p if self.p is not None else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p) if self.p is not None else 1 / x

    def elements(self) -> range:
        if self.p is None:
            raise DomainError("the rational field is not enumerable")
        return range(self.p)

    def __str__(self):
        return f"F_{self.p}" if self.p is not None else "Q"


def _rref_rows(field: FieldSpec, rows, ncols: int):
    """Row-reduce; return (nonzero RREF rows as lists, pivot columns)."""
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        row = a[r]
        if row[c] != 1:
            inv = field.inv(row[c])
            row = [field.norm(x * inv) for x in row]
            a[r] = row
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                other = a[i]
                a[i] = [field.norm(x - f * y) for x, y in zip(other, row)]
        pivots.append(c)
        r += 1
    return a[:r], pivots


@dataclass(frozen=True)
class Mat:
    """Immutable ``nrows x ncols`` matrix; ``rows`` is a tuple of row tuples."""

    field: FieldSpec
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ShapeError(f"entries do not match shape {self.nrows}x{self.ncols}")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence], ncols: Optional[int] = None) -> "Mat":
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ShapeError("cannot infer column count of an empty matrix")
            ncols = len(rows[0])
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def zero(cls, field: FieldSpec, nrows: int, ncols: int) -> "Mat":
        z = field.zero
        return cls(field, nrows, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Mat":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], nrows: int) -> "Mat":
        return cls(field, nrows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(nrows)))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.ncols, self.nrows, tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols)))

    def columns(self) -> list:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            norm = self.field.norm
            cols = other.columns()
            return Mat(self.field, self.nrows, other.ncols, tuple(
                tuple(norm(sum(a * b for a, b in zip(r, c))) for c in cols) for r in self.rows))
        return self.apply_vec(other)

    def apply_vec(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ShapeError(f"vector of length {len(v)} for a {self.shape} matrix")
        norm = self.field.norm
        return tuple(norm(sum(a * b for a, b in zip(r, v))) for r in self.rows)

    def _zip(self, other, op):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        norm = self.field.norm
        return Mat(self.field, self.nrows, self.ncols, tuple(
            tuple(norm(op(a, b)) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def scale(self, c) -> "Mat":
        c = self.field(c)
        norm = self.field.norm
        return Mat(self.field, self.nrows, self.ncols, tuple(tuple(norm(c * a) for a in r) for r in self.rows))

    def rank(self) -> int:
        return len(_rref_rows(self.field, self.rows, self.ncols)[1])

    def with_field(self, field: FieldSpec) -> "Mat":
        """Re-read the entries in another field (e.g. a rational matrix mod p)."""
        return Mat(field, self.nrows, self.ncols, tuple(tuple(field(x) for x in r) for r in self.rows))

    def __str__(self):
        return "[" + ",".join("[" + ",".join(str(x) for x in r) + "]" for r in self.rows) + "]"


def block_diag(a: Mat, b: Mat) -> Mat:
    z = a.field.zero
    rows = [tuple(r) + (z,) * b.ncols for r in a.rows]
    rows += [(z,) * a.ncols + tuple(r) for r in b.rows]
    return Mat(a.field, a.nrows + b.nrows, a.ncols + b.ncols, tuple(rows))


def rref(m: Mat):
    """Reduced row-echelon form (zero rows kept at the bottom) and rank."""
    red, pivots = _rref_rows(m.field, m.rows, m.ncols)
    z = m.field.zero
    padded = [tuple(r) for r in red] + [(z,) * m.ncols] * (m.nrows - len(red))
    return Mat(m.field, m.nrows, m.ncols, tuple(padded)), len(pivots)


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``field^ambient`` given by its canonical RREF basis.

    Build instances with :meth:`span`, :meth:`zero` or :meth:`full`; the raw
    constructor trusts that ``rows`` is already reduced.
    """

    field: FieldSpec
    ambient: int
    rows: tuple

    @classmethod
    def span(cls, field: FieldSpec, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {ambient}")
        red, _ = _rref_rows(field, vectors, ambient)
        return cls(field, ambient, tuple(tuple(r) for r in red))

    @classmethod
    def zero(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, ())

    @classmethod
    def full(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, Mat.identity(field, ambient).rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> Mat:
        return Mat(self.field, len(self.rows), self.ambient, self.rows)

    @cached_property
    def pivots(self) -> tuple:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.rows)

    @cached_property
    def complement_columns(self) -> tuple:
        """Standard coordinates that are not pivots; they span a complement."""
        piv = set(self.pivots)
        return tuple(j for j in range(self.ambient) if j not in piv)

    def reduce(self, v: Sequence) -> tuple:
        """Representative of ``v`` modulo this subspace, zero on every pivot."""
        norm = self.field.norm
        v = list(v)
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f:
                v = [norm(x - f * y) for x, y in zip(v, row)]
        return tuple(v)

    def quotient_coords(self, v: Sequence) -> tuple:
        red = self.reduce(v)
        return tuple(red[j] for j in self.complement_columns)

    def coords(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` (assumed inside) in the RREF basis."""
        return tuple(v[c] for c in self.pivots)

    def projection(self) -> Mat:
        """Matrix of ``field^ambient -> field^ambient / self`` in complement coordinates."""
        comp = self.complement_columns
        cols = []
        z, o = self.field.zero, self.field.one
        for k in range(self.ambient):
            e = tuple(o if i == k else z for i in range(self.ambient))
            cols.append(self.quotient_coords(e))
        return Mat.from_columns(self.field, cols, len(comp))

    def lift(self, coords: Sequence) -> tuple:
        """Vector with ``coords`` placed on the complement columns."""
        v = [self.field.zero] * self.ambient
        for j, x in zip(self.complement_columns, coords):
            v[j] = x
        return tuple(v)

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise AmbientMismatch(f"ambient dimensions {self.ambient} and {other.ambient} differ")

    def __contains__(self, v) -> bool:
        if len(v) != self.ambient:
            raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient}")
        return not any(self.reduce(v))

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        if self.dim > other.dim:
            return False
        return all(r in other for r in self.rows)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not other.rows:
            return self
        if not self.rows:
            return other
        return Subspace.span(self.field, self.ambient, self.rows + other.rows)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.rows or not other.rows:
            return Subspace.zero(self.field, self.ambient)
        # x = sum c_i a_i lies in other  iff  sum c_i reduce(a_i) = 0
        residues = Mat(self.field, self.dim, self.ambient, tuple(other.reduce(r) for r in self.rows))
        coeffs = kernel(residues.T)
        norm = self.field.norm
        vecs = [tuple(norm(sum(c * a[j] for c, a in zip(cv, self.rows))) for j in range(self.ambient))
                for cv in coeffs.rows]
        return Subspace.span(self.field, self.ambient, vecs)

    def __str__(self):
        return "<" + ", ".join("(" + ",".join(str(x) for x in r) + ")" for r in self.rows) + ">"


def kernel(m: Mat) -> Subspace:
    """Null space ``{v : m v = 0}``."""
    red, pivots = _rref_rows(m.field, m.rows, m.ncols)
    piv = set(pivots)
    norm = m.field.norm
    vecs = []
    for f in range(m.ncols):
        if f in piv:
            continue
        v = [m.field.zero] * m.ncols
        v[f] = m.field.one
        for row, c in zip(red, pivots):
            v[c] = norm(-row[f])
        vecs.append(v)
    return Subspace.span(m.field, m.ncols, vecs)


def image(m: Mat) -> Subspace:
    return Subspace.span(m.field, m.nrows, m.columns())


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a & b


def apply(m: Mat, u: Subspace) -> Subspace:
    """Image of ``u`` under ``m``."""
    if m.ncols != u.ambient:
        raise AmbientMismatch(f"{m.nrows}x{m.ncols} matrix applied in ambient dimension {u.ambient}")
    return Subspace.span(m.field, m.nrows, [m.apply_vec(r) for r in u.rows])


def preimage(m: Mat, u: Subspace) -> Subspace:
    """``{v : m v in u}``."""
    if m.nrows != u.ambient:
        raise AmbientMismatch(f"{m.nrows}x{m.ncols} matrix into ambient dimension {u.ambient}")
    return kernel(u.projection() @ m)


def contains(u: Subspace, v: Sequence) -> bool:
    return v in u


def leq(a: Subspace, b: Subspace) -> bool:
    return a <= b


def pivot_patterns(n: int, k: int) -> Iterator[tuple]:
    return itertools.combinations(range(n), k)


def subspaces_with_pivots(field: FieldSpec, n: int, pivots: Sequence[int]) -> Iterator[Subspace]:
    """All subspaces of ``F_p^n`` whose RREF has exactly these pivot columns.

    Pivot patterns partition the subspaces, so this is the unit of work for
    splitting an enumeration between workers.
    """
    pset = set(pivots)
    free = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, n) if j not in pset]
    z, o = field.zero, field.one
    for values in itertools.product(field.elements(), repeat=len(free)):
        rows = [[z] * n for _ in pivots]
        for i, c in enumerate(pivots):
            rows[i][c] = o
        for (i, j), x in zip(free, values):
            rows[i][j] = x
        yield Subspace(field, n, tuple(tuple(r) for r in rows))


def enumerate_subspaces(n: int, p: int, cap: Optional[int] = None) -> Iterator[Subspace]:
    """Every subspace of ``F_p^n`` once, ordered by dimension then RREF rows.

    Raises :class:`CapExceeded` before yielding element ``cap + 1``.
    """
    if n < 0:
        raise DomainError(f"negative dimension {n}")
    field = FieldSpec.prime(p)
    count = 0
    for k in range(n + 1):
        layer = sorted((s for piv in pivot_patterns(n, k) for s in subspaces_with_pivots(field, n, piv)),
                       key=lambda s: s.rows)
        for s in layer:
            if cap is not None and count >= cap:
                raise CapExceeded(count, cap)
            count += 1
            yield s


def subspaces_between(lower: Subspace, upper: Subspace) -> Iterator[Subspace]:
    """All subspaces ``W`` with ``lower <= W <= upper``.

    Over the rationals only a gap of dimension at most one is finite.
    """
    lower._check(upper)
    field = lower.field
    # vectors of ``upper`` that complete a basis of ``lower``
    extra = []
    acc = lower
    for r in upper.rows:
        if r not in acc:
            extra.append(r)
            acc = acc + Subspace.span(field, lower.ambient, [r])
    gap = len(extra)
    if gap == 0:
        yield lower
        return
    if not field.is_finite:
        if gap > 1:
            raise DomainError("infinitely many intermediate subspaces over an infinite field")
        yield lower
        yield upper
        return
    norm = field.norm
    for w in enumerate_subspaces(gap, field.p):
        vecs = [tuple(norm(sum(c * e[j] for c, e in zip(row, extra))) for j in range(lower.ambient))
                for row in w.rows]
        yield lower + Subspace.span(field, lower.ambient, vecs)


def s_number(j: int, q: int) -> int:
    """``1 + q + ... + q^(j-1)``; zero for ``j = 0``."""
    if j < 0:
        raise DomainError(f"s_number needs j >= 0, got {j}")
    if q < 1:
        raise DomainError(f"s_number needs q >= 1, got {q}")
    return sum(q ** i for i in range(j))


def gaussian_binomial(t: int, l: int, q: int) -> int:
    """Number of ``l``-dimensional subspaces of a ``t``-dimensional space over F_q.

    Product form ``(s_t ... s_(t-l+1)) / (s_l ... s_1)``; the ordinary
    binomial coefficient when ``q = 1``.
    """
    if l < 0 or l > t:
        raise DomainError(f"need 0 <= l <= t, got l={l}, t={t}")
    if q < 1:
        raise DomainError(f"need q >= 1, got {q}")
    num = den = 1
    for i in range(l):
        num *= s_number(t - i, q)
        den *= s_number(i + 1, q)
    value, rem = divmod(num, den)
    assert rem == 0
    return value
