"""Exact subspace algebra over Q(i).

Subspaces are stored in reduced row-echelon form over the Gaussian integers:
each basis row is primitive (the integer gcd of all real and imaginary parts
is 1) and its pivot is a positive integer.  Dividing a row by its pivot gives
the usual rational canonical basis vector (pivot 1, zeros in the other pivot
columns), so two subspaces are equal iff their stored rows are identical.

Elimination is fraction-free: ``s <- d*s - c*r`` followed by removal of the
integer content.  Internally a row is a pair ``(re, im)`` of int sequences.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .gaussian import GaussianRational

__all__ = [
    "Vector",
    "Subspace",
    "DimensionMismatch",
    "NotContainedError",
    "NotPositiveDefiniteError",
    "vector",
    "inner",
    "canonicalize",
    "sum_subspaces",
    "intersect",
    "orth_complement",
    "orth_complement_within",
    "gram_orth_complement_within",
    "is_hermitian_positive_definite",
    "quotient_dim",
    "solve",
]

Vector = tuple  # tuple[GaussianRational, ...]


class DimensionMismatch(ValueError):
    pass


class NotContainedError(ValueError):
    """Raised when an operation needs ``V ⊆ U`` and it fails."""


class NotPositiveDefiniteError(ValueError):
    pass


def vector(*entries) -> Vector:
    """Build a vector from anything :meth:`GaussianRational.coerce` accepts."""
    if len(entries) == 1 and isinstance(entries[0], (list, tuple)):
        entries = tuple(entries[0])
    return tuple(GaussianRational.coerce(e) for e in entries)


def unit(n: int, k: int) -> Vector:
    return tuple(GaussianRational(1 if j == k else 0) for j in range(n))


def inner(u: Sequence[GaussianRational], v: Sequence[GaussianRational]) -> GaussianRational:
    """``<u, v> = sum u_k conj(v_k)``: linear in the first slot."""
    if len(u) != len(v):
        raise DimensionMismatch(f"inner product of lengths {len(u)} and {len(v)}")
    re = Fraction(0)
    im = Fraction(0)
    for a, b in zip(u, v):
        a = GaussianRational.coerce(a)
        b = GaussianRational.coerce(b)
        re += a.re * b.re + a.im * b.im
        im += a.im * b.re - a.re * b.im
    return GaussianRational(re, im)


# ---------------------------------------------------------------------------
# integer-row kernel


def vec_to_row(vec: Sequence[GaussianRational]) -> tuple[list[int], list[int]]:
    """Scale a rational vector to a Gaussian-integer row spanning the same line."""
    vec = [GaussianRational.coerce(x) for x in vec]
    den = 1
    for x in vec:
        den = lcm(den, x.re.denominator, x.im.denominator)
    re = [x.re.numerator * (den // x.re.denominator) for x in vec]
    im = [x.im.numerator * (den // x.im.denominator) for x in vec]
    return re, im


def vec_to_row_den(vec: Sequence[GaussianRational]) -> tuple[list[int], list[int], int]:
    """Exact integer form ``(re, im, den)`` with ``vec == (re + i*im) / den``."""
    vec = [GaussianRational.coerce(x) for x in vec]
    den = 1
    for x in vec:
        den = lcm(den, x.re.denominator, x.im.denominator)
    re = [x.re.numerator * (den // x.re.denominator) for x in vec]
    im = [x.im.numerator * (den // x.im.denominator) for x in vec]
    return re, im, den


def row_to_vec(re: Sequence[int], im: Sequence[int], den: int = 1) -> Vector:
    if den == 1:
        return tuple(GaussianRational(a, b) for a, b in zip(re, im))
    return tuple(GaussianRational(Fraction(a, den), Fraction(b, den)) for a, b in zip(re, im))


def _primitive(re, im):
    g = gcd(*re, *im)
    if g > 1:
        re = [x // g for x in re]
        im = [y // g for y in im]
    return re, im


def _nonzero(re, im) -> bool:
    return any(re) or any(im)


def rref(rows, n: int):
    """Reduced echelon form of integer rows of length ``n``.

    Returns ``(pivots, basis)``; ``basis[k]`` is a primitive ``(re, im)`` pair of
    lists whose entry at ``pivots[k]`` is a positive integer and which is zero
    at every other pivot column.
    """
    work = [(list(re), list(im)) for re, im in rows if _nonzero(re, im)]
    basis: list = []
    pivots: list[int] = []
    for col in range(n):
        if not work:
            break
        best = -1
        best_norm = 0
        for k, (re, im) in enumerate(work):
            a = re[col]
            b = im[col]
            if a or b:
                nm = a * a + b * b
                if best < 0 or nm < best_norm:
                    best, best_norm = k, nm
                    if nm == 1:
                        break
        if best < 0:
            continue
        re, im = work.pop(best)
        a = re[col]
        b = im[col]
        if b or a < 0:
            # multiply by conj(pivot) so the pivot becomes |pivot|^2 > 0
            re, im = ([a * x + b * y for x, y in zip(re, im)],
                      [a * y - b * x for x, y in zip(re, im)])
        re, im = _primitive(re, im)
        d = re[col]
        kept = []
        for sre, sim in work:
            cr = sre[col]
            ci = sim[col]
            if cr or ci:
                sre = [d * x - cr * u + ci * v for x, u, v in zip(sre, re, im)]
                sim = [d * y - cr * v - ci * u for y, u, v in zip(sim, re, im)]
                if _nonzero(sre, sim):
                    kept.append(_primitive(sre, sim))
            else:
                kept.append((sre, sim))
        work = kept
        for k, (sre, sim) in enumerate(basis):
            cr = sre[col]
            ci = sim[col]
            if cr or ci:
                sre = [d * x - cr * u + ci * v for x, u, v in zip(sre, re, im)]
                sim = [d * y - cr * v - ci * u for y, u, v in zip(sim, re, im)]
                basis[k] = _primitive(sre, sim)
        basis.append((re, im))
        pivots.append(col)
    return pivots, basis


def nullspace_from_rref(pivots, basis, n: int):
    """Integer rows spanning ``{x : M x = 0}`` for ``M`` already in :func:`rref` form."""
    if not pivots:
        return [([1 if j == k else 0 for j in range(n)], [0] * n) for k in range(n)]
    pivot_set = set(pivots)
    scale = 1
    for p, (re, _) in zip(pivots, basis):
        scale = lcm(scale, re[p])
    out = []
    for j in range(n):
        if j in pivot_set:
            continue
        xre = [0] * n
        xim = [0] * n
        xre[j] = scale
        for p, (re, im) in zip(pivots, basis):
            f = scale // re[p]
            xre[p] = -re[j] * f
            xim[p] = -im[j] * f
        out.append((xre, xim))
    return out


def slice_rows(rows, n: int, nzero: int):
    """Rows spanning ``{u[nzero:] : u in span(rows), u[:nzero] == 0}``."""
    pivots, basis = rref(rows, n)
    return [(re[nzero:], im[nzero:]) for p, (re, im) in zip(pivots, basis) if p >= nzero]


# ---------------------------------------------------------------------------


class Subspace:
    """Canonically represented subspace of ``Q(i)^ambient_dim``."""

    __slots__ = ("ambient_dim", "rows", "pivots", "_hash")

    def __init__(self, ambient_dim: int, rows=(), *, _canonical: bool = False):
        if ambient_dim < 0:
            raise ValueError("ambient dimension must be non-negative")
        for re, im in rows:
            if len(re) != ambient_dim or len(im) != ambient_dim:
                raise DimensionMismatch(
                    f"row of length {len(re)} in ambient dimension {ambient_dim}")
        if _canonical:
            pivots = [next(k for k, x in enumerate(re) if x) for re, _ in rows]
            basis = rows
        else:
            pivots, basis = rref(rows, ambient_dim)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "rows", tuple((tuple(re), tuple(im)) for re, im in basis))
        object.__setattr__(self, "pivots", tuple(pivots))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    # constructors ---------------------------------------------------------

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(
                    f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append(vec_to_row(v))
        return cls(ambient_dim, rows)

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, (), _canonical=True)

    @classmethod
    def full(cls, n: int) -> Subspace:
        rows = [([1 if j == k else 0 for j in range(n)], [0] * n) for k in range(n)]
        return cls(n, rows, _canonical=True)

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> Subspace:
        rows = [([1 if j == k else 0 for j in range(n)], [0] * n) for k in sorted(set(indices))]
        return cls(n, rows, _canonical=True)

    # basic queries ----------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> tuple[Vector, ...]:
        """Rational canonical basis: pivot entries equal 1."""
        return tuple(row_to_vec(re, im, re[p]) for p, (re, im) in zip(self.pivots, self.rows))

    def is_zero(self) -> bool:
        return not self.rows

    def is_full(self) -> bool:
        return len(self.rows) == self.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ambient_dim, self.rows))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        vecs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.basis)
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis=[{vecs}])"

    def _check_same(self, other: Subspace):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    # membership -------------------------------------------------------------

    def reduce_row(self, re, im):
        """Residual of an integer row after eliminating this subspace's pivots."""
        re = list(re)
        im = list(im)
        for p, (bre, bim) in zip(self.pivots, self.rows):
            cr = re[p]
            ci = im[p]
            if cr or ci:
                d = bre[p]
                re = [d * x - cr * u + ci * v for x, u, v in zip(re, bre, bim)]
                im = [d * y - cr * v - ci * u for y, u, v in zip(im, bre, bim)]
        return re, im

    def contains_row(self, re, im) -> bool:
        return not _nonzero(*self.reduce_row(re, im))

    def __contains__(self, vec) -> bool:
        if len(vec) != self.ambient_dim:
            raise DimensionMismatch(
                f"vector of length {len(vec)} in ambient dimension {self.ambient_dim}")
        return self.contains_row(*vec_to_row(vec))

    def issubspace(self, other: Subspace) -> bool:
        """``self ⊆ other``."""
        self._check_same(other)
        if self.dim > other.dim:
            return False
        return all(other.contains_row(re, im) for re, im in self.rows)

    __le__ = issubspace

    def coords(self, vec) -> tuple[GaussianRational, ...]:
        """Coordinates of ``vec`` in the rational canonical basis."""
        if vec not in self:
            raise NotContainedError("vector is not in the subspace")
        vec = [GaussianRational.coerce(x) for x in vec]
        return tuple(vec[p] for p in self.pivots)

    # lattice operations -------------------------------------------------------

    def __add__(self, other: Subspace) -> Subspace:
        self._check_same(other)
        if other.is_zero() or self.is_full():
            return self
        if self.is_zero() or other.is_full():
            return other
        return Subspace(self.ambient_dim, self.rows + other.rows)

    def __and__(self, other: Subspace) -> Subspace:
        self._check_same(other)
        n = self.ambient_dim
        if self.is_zero() or other.is_full():
            return self
        if other.is_zero() or self.is_full():
            return other
        # Zassenhaus: rows (u | u) and (v | 0); the part with zero left half is U ∩ V
        zeros = (0,) * n
        rows = [(re + re, im + im) for re, im in self.rows]
        rows += [(re + zeros, im + zeros) for re, im in other.rows]
        return Subspace(n, slice_rows(rows, 2 * n, n))

    def orth(self) -> Subspace:
        """Orthogonal complement in the ambient space."""
        n = self.ambient_dim
        # w ⊥ u  <=>  sum w_k conj(u_k) = 0; conjugated canonical rows are still in rref
        conj_rows = [(re, tuple(-y for y in im)) for re, im in self.rows]
        return Subspace(n, nullspace_from_rref(self.pivots, conj_rows, n))

    def project(self, indices: Sequence[int]) -> Subspace:
        """Span of the restrictions of elements to ``indices`` (in that order)."""
        rows = [([re[k] for k in indices], [im[k] for k in indices]) for re, im in self.rows]
        return Subspace(len(indices), rows)

    def restrict_kernel(self, zero: Sequence[int], keep: Sequence[int]) -> Subspace:
        """``{u[keep] : u in self, u[zero] == 0}``."""
        order = list(zero) + list(keep)
        rows = [([re[k] for k in order], [im[k] for k in order]) for re, im in self.rows]
        return Subspace(len(keep), slice_rows(rows, len(order), len(zero)))


# ---------------------------------------------------------------------------
# functional surface


def canonicalize(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    return Subspace.span(vectors, ambient_dim)


def sum_subspaces(u: Subspace, v: Subspace) -> Subspace:
    return u + v


def intersect(u: Subspace, v: Subspace) -> Subspace:
    return u & v


def orth_complement(u: Subspace) -> Subspace:
    return u.orth()


def orth_complement_within(u: Subspace, v: Subspace) -> Subspace:
    """``W`` with ``V ⊕ W = U`` and ``W ⊥ V`` for the standard inner product."""
    if not v.issubspace(u):
        raise NotContainedError("orth_complement_within requires V ⊆ U")
    return u & v.orth()


def is_hermitian_positive_definite(gram: Sequence[Sequence[GaussianRational]]) -> bool:
    """Exact test by symmetric elimination: every pivot must be real and positive."""
    k = len(gram)
    g = [[GaussianRational.coerce(x) for x in row] for row in gram]
    if any(len(row) != k for row in g):
        return False
    for a in range(k):
        for b in range(a, k):
            if g[a][b] != g[b][a].conj():
                return False
    for a in range(k):
        piv = g[a][a]
        if piv.im or piv.re <= 0:
            return False
        for b in range(a + 1, k):
            f = g[b][a] / piv
            if f:
                for c in range(a + 1, k):
                    g[b][c] = g[b][c] - f * g[a][c]
    return True


def gram_orth_complement_within(u: Subspace, v: Subspace, gram) -> Subspace:
    """Complement of ``V`` inside ``U`` orthogonal for the form with matrix ``gram``.

    ``gram[j][k]`` is the form evaluated on the j-th and k-th canonical basis
    vectors of ``U``.
    """
    if not v.issubspace(u):
        raise NotContainedError("gram_orth_complement_within requires V ⊆ U")
    k = u.dim
    if len(gram) != k:
        raise DimensionMismatch(f"Gram matrix of size {len(gram)} for subspace of dim {k}")
    if not is_hermitian_positive_definite(gram):
        raise NotPositiveDefiniteError("form is not Hermitian positive-definite")
    gram = [[GaussianRational.coerce(x) for x in row] for row in gram]
    # w = sum a_l u_l is orthogonal to v_j = sum c_jm u_m iff sum_l a_l sum_m G[l][m] conj(c_jm) = 0
    eqs = []
    for vj in v.basis:
        c = u.coords(vj)
        eqs.append(vec_to_row([
            sum((gram[l][m] * c[m].conj() for m in range(k)), GaussianRational(0))
            for l in range(k)
        ]))
    pivots, basis = rref(eqs, k)
    coeff_rows = nullspace_from_rref(pivots, basis, k)
    ub = u.rows
    n = u.ambient_dim
    out = []
    for are, aim in coeff_rows:
        # u's integer rows carry their pivot as a scale; undo it with a common denominator
        scale = 1
        for p, (re, _) in zip(u.pivots, ub):
            scale = lcm(scale, re[p])
        wre = [0] * n
        wim = [0] * n
        for l, (p, (bre, bim)) in enumerate(zip(u.pivots, ub)):
            ar, ai = are[l], aim[l]
            if not (ar or ai):
                continue
            f = scale // bre[p]
            for t in range(n):
                wre[t] += f * (ar * bre[t] - ai * bim[t])
                wim[t] += f * (ar * bim[t] + ai * bre[t])
        out.append((wre, wim))
    return Subspace(n, out)


def quotient_dim(u: Subspace, v: Subspace) -> int:
    """``dim(U / V)``; refuses unless ``V ⊆ U``."""
    if not v.issubspace(u):
        raise NotContainedError("quotient_dim requires V ⊆ U")
    return u.dim - v.dim


def solve(columns: Sequence[Sequence], b: Sequence):
    """General solution of ``sum_j x_j * columns[j] = b``.

    Returns ``(particular, nullspace)``; ``particular`` is ``None`` when the
    system is inconsistent.
    """
    m = len(b)
    k = len(columns)
    for c in columns:
        if len(c) != m:
            raise DimensionMismatch(f"column of length {len(c)} for right-hand side of length {m}")
    cols = [[GaussianRational.coerce(x) for x in c] for c in columns]
    bb = [GaussianRational.coerce(x) for x in b]
    eqs = [vec_to_row([cols[j][r] for j in range(k)] + [bb[r]]) for r in range(m)]
    pivots, basis = rref(eqs, k + 1)
    kernel_pivots = [p for p in pivots if p < k]
    kernel_basis = [(re[:k], im[:k]) for p, (re, im) in zip(pivots, basis) if p < k]
    null = Subspace(k, nullspace_from_rref(kernel_pivots, kernel_basis, k))
    if pivots and pivots[-1] == k:
        return None, null
    x = [GaussianRational(0)] * k
    for p, (re, im) in zip(pivots, basis):
        x[p] = GaussianRational(Fraction(re[k], re[p]), Fraction(im[k], re[p]))
    return tuple(x), null
