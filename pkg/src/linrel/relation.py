"""Linear relations on ``X = Q(i)^n``.

A relation is a subspace of ``X ⊕ X`` with coordinates ordered
``(x_1..x_n, y_1..y_n)``.  Everything here is closed because the spaces are
finite-dimensional, so adjoints are involutive and no closures are taken.
"""

from __future__ import annotations

from math import lcm
from typing import NamedTuple, Sequence

from .errors import ConsistencyError, PreconditionError
from .gaussian import GaussianRational
from .linalg import (
    DimensionMismatch,
    Subspace,
    Vector,
    orth_complement_within,
    row_to_vec,
    slice_rows,
    solve,
    vec_to_row_den,
)

__all__ = [
    "LinearRelation",
    "Parts",
    "ArensParts",
    "DeficiencyPair",
    "NotHermitianError",
    "from_pairs",
    "from_matrix",
    "zero_relation",
    "full_relation",
    "parts",
    "image_of",
    "scalar_mul",
    "rel_sum",
    "shift",
    "inverse",
    "direct_sum",
    "orth_sum",
    "product",
    "adjoint",
    "arens_decompose",
    "apply_operator_part",
    "is_hermitian",
    "is_selfadjoint",
    "m_lambda",
    "deficiency",
    "von_neumann_check",
    "block",
]


class NotHermitianError(ValueError):
    pass


class LinearRelation:
    """Subspace of ``X ⊕ X``; immutable, compared by canonical graph."""

    __slots__ = ("space_dim", "graph", "_cache")

    def __init__(self, space_dim: int, graph: Subspace):
        if graph.ambient_dim != 2 * space_dim:
            raise DimensionMismatch(
                f"graph ambient dimension {graph.ambient_dim} != 2*{space_dim}")
        object.__setattr__(self, "space_dim", space_dim)
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("LinearRelation is immutable")

    @classmethod
    def from_rows(cls, n: int, rows) -> LinearRelation:
        return cls(n, Subspace(2 * n, rows))

    @property
    def dim(self) -> int:
        return self.graph.dim

    @property
    def pairs(self) -> tuple[tuple[Vector, Vector], ...]:
        """Canonical generators as ``(x, y)`` pairs."""
        n = self.space_dim
        return tuple((v[:n], v[n:]) for v in self.graph.basis)

    def __eq__(self, other):
        if not isinstance(other, LinearRelation):
            return NotImplemented
        return self.space_dim == other.space_dim and self.graph == other.graph

    def __hash__(self):
        return hash(self.graph)

    def __le__(self, other: LinearRelation) -> bool:
        _same(self, other)
        return self.graph.issubspace(other.graph)

    def __repr__(self):
        gens = ", ".join(
            "((" + ", ".join(map(str, x)) + "), (" + ", ".join(map(str, y)) + "))"
            for x, y in self.pairs)
        return f"LinearRelation(n={self.space_dim}, dim={self.dim}, [{gens}])"

    # cached derived objects
    def _cached(self, key, fn):
        c = self._cache
        if key not in c:
            c[key] = fn(self)
        return c[key]

    @property
    def star(self) -> LinearRelation:
        return self._cached("adjoint", _adjoint)

    @property
    def domain(self) -> Subspace:
        return self._cached("domain", lambda t: t.graph.project(range(t.space_dim)))

    @property
    def range(self) -> Subspace:
        return self._cached(
            "range", lambda t: t.graph.project(range(t.space_dim, 2 * t.space_dim)))

    @property
    def kernel(self) -> Subspace:
        def f(t):
            n = t.space_dim
            return t.graph.restrict_kernel(range(n, 2 * n), range(n))
        return self._cached("kernel", f)

    @property
    def mul(self) -> Subspace:
        """``T(0)``, the multivalued part."""
        def f(t):
            n = t.space_dim
            return t.graph.restrict_kernel(range(n), range(n, 2 * n))
        return self._cached("mul", f)


class Parts(NamedTuple):
    domain: Subspace
    range: Subspace
    kernel: Subspace
    mul: Subspace


class ArensParts(NamedTuple):
    op_part: LinearRelation
    multi_part: LinearRelation


class DeficiencyPair(NamedTuple):
    n_plus: int
    n_minus: int


def _same(t: LinearRelation, a: LinearRelation):
    if t.space_dim != a.space_dim:
        raise DimensionMismatch(f"space dimensions differ: {t.space_dim} vs {a.space_dim}")


def _scalar_parts(alpha) -> tuple[int, int, int]:
    """``alpha == (a + b i) / q`` with integer ``a, b`` and ``q > 0``."""
    alpha = GaussianRational.coerce(alpha)
    q = lcm(alpha.re.denominator, alpha.im.denominator)
    return alpha.re.numerator * (q // alpha.re.denominator), alpha.im.numerator * (q // alpha.im.denominator), q


# ---------------------------------------------------------------------------
# construction


def from_pairs(n: int, pairs: Sequence[tuple[Sequence, Sequence]]) -> LinearRelation:
    vecs = []
    for x, y in pairs:
        if len(x) != n or len(y) != n:
            raise DimensionMismatch(f"pair of lengths ({len(x)}, {len(y)}) for space dimension {n}")
        vecs.append(tuple(x) + tuple(y))
    return LinearRelation(n, Subspace.span(vecs, 2 * n))


def from_matrix(matrix: Sequence[Sequence]) -> LinearRelation:
    """Graph ``{(x, M x)}`` of a square matrix given as a list of rows."""
    n = len(matrix)
    pairs = []
    for j in range(n):
        x = [GaussianRational(1 if k == j else 0) for k in range(n)]
        y = [GaussianRational.coerce(matrix[k][j]) for k in range(n)]
        pairs.append((x, y))
    return from_pairs(n, pairs)


def zero_relation(n: int) -> LinearRelation:
    """``{(0, 0)}``."""
    return LinearRelation(n, Subspace.zero(2 * n))


def full_relation(n: int) -> LinearRelation:
    return LinearRelation(n, Subspace.full(2 * n))


def block(first: LinearRelation, second: LinearRelation) -> LinearRelation:
    """``{((x1, x2), (y1, y2)) : (x1, y2) ∈ first, (x2, y1) ∈ second}`` on ``X ⊕ X``.

    Coordinates of the doubled space are laid out as ``(x1, x2 | y1, y2)``.
    """
    _same(first, second)
    n = first.space_dim
    z = [0] * n
    rows = []
    for re, im in first.graph.rows:
        rows.append((list(re[:n]) + z + z + list(re[n:]), list(im[:n]) + z + z + list(im[n:])))
    for re, im in second.graph.rows:
        rows.append((z + list(re[:n]) + list(re[n:]) + z, z + list(im[:n]) + list(im[n:]) + z))
    return LinearRelation(2 * n, Subspace(4 * n, rows))


# ---------------------------------------------------------------------------
# parts and values


def parts(t: LinearRelation) -> Parts:
    return Parts(t.domain, t.range, t.kernel, t.mul)


def image_of(t: LinearRelation, x: Sequence):
    """``T(x)`` as ``(representative, T(0))``; representative is ``None`` if ``x ∉ D(T)``."""
    n = t.space_dim
    if len(x) != n:
        raise DimensionMismatch(f"vector of length {len(x)} for space dimension {n}")
    gens = t.pairs
    sol, _ = solve([g[0] for g in gens], x)
    if sol is None:
        return None, t.mul
    y = [GaussianRational(0)] * n
    for c, (_, gy) in zip(sol, gens):
        if c:
            y = [a + c * b for a, b in zip(y, gy)]
    return tuple(y), t.mul


# ---------------------------------------------------------------------------
# algebra


def scalar_mul(t: LinearRelation, alpha) -> LinearRelation:
    """``αT = {(x, αy)}``."""
    a, b, q = _scalar_parts(alpha)
    n = t.space_dim
    rows = []
    for re, im in t.graph.rows:
        xr, xi, yr, yi = re[:n], im[:n], re[n:], im[n:]
        rows.append(([q * v for v in xr] + [a * u - b * v for u, v in zip(yr, yi)],
                     [q * v for v in xi] + [a * v + b * u for u, v in zip(yr, yi)]))
    return LinearRelation.from_rows(n, rows)


def shift(t: LinearRelation, alpha) -> LinearRelation:
    """``T - α = {(x, y - αx)}``."""
    a, b, q = _scalar_parts(alpha)
    n = t.space_dim
    rows = []
    for re, im in t.graph.rows:
        xr, xi, yr, yi = re[:n], im[:n], re[n:], im[n:]
        rows.append(([q * v for v in xr]
                     + [q * y - (a * u - b * v) for y, u, v in zip(yr, xr, xi)],
                     [q * v for v in xi]
                     + [q * y - (a * v + b * u) for y, u, v in zip(yi, xr, xi)]))
    return LinearRelation.from_rows(n, rows)


def inverse(t: LinearRelation) -> LinearRelation:
    n = t.space_dim
    rows = [(re[n:] + re[:n], im[n:] + im[:n]) for re, im in t.graph.rows]
    return LinearRelation.from_rows(n, rows)


def rel_sum(t: LinearRelation, a: LinearRelation) -> LinearRelation:
    """Operator-style sum ``T + A = {(x, y + z) : (x, y) ∈ T, (x, z) ∈ A}``."""
    _same(t, a)
    n = t.space_dim
    z = (0,) * n
    # rows (x | x | y) for T and (-x | 0 | z) for A; first block zero couples the x's
    rows = [(re[:n] + re, im[:n] + im) for re, im in t.graph.rows]
    rows += [(tuple(-v for v in re[:n]) + z + re[n:], tuple(-v for v in im[:n]) + z + im[n:])
             for re, im in a.graph.rows]
    return LinearRelation(n, Subspace(2 * n, slice_rows(rows, 3 * n, n)))


def direct_sum(t: LinearRelation, a: LinearRelation) -> LinearRelation:
    """``T ∔ A``; requires ``T ∩ A = {(0, 0)}``."""
    _same(t, a)
    if not (t.graph & a.graph).is_zero():
        raise PreconditionError("direct sum requires T ∩ A = {(0,0)}")
    return LinearRelation(t.space_dim, t.graph + a.graph)


def orth_sum(t: LinearRelation, a: LinearRelation) -> LinearRelation:
    """``T ⊕ A``; requires the graphs to be orthogonal in ``X ⊕ X``."""
    _same(t, a)
    for r in t.graph.rows:
        for s in a.graph.rows:
            if _row_inner_nonzero(r, s):
                raise PreconditionError("orthogonal sum requires orthogonal graphs")
    return direct_sum(t, a)


def product(a: LinearRelation, t: LinearRelation) -> LinearRelation:
    """``AT = {(x, z) : (x, y) ∈ T, (y, z) ∈ A for some y}``."""
    _same(a, t)
    n = t.space_dim
    z = (0,) * n
    # one stacked system over (y-mismatch | x | z): rows (y | x | 0) for T, (-y | 0 | z) for A
    rows = [(re[n:] + re[:n] + z, im[n:] + im[:n] + z) for re, im in t.graph.rows]
    rows += [(tuple(-v for v in re[:n]) + z + re[n:], tuple(-v for v in im[:n]) + z + im[n:])
             for re, im in a.graph.rows]
    return LinearRelation(n, Subspace(2 * n, slice_rows(rows, 3 * n, n)))


def _row_inner_nonzero(r, s) -> bool:
    rre, rim = r
    sre, sim = s
    re = sum(a * c + b * d for a, b, c, d in zip(rre, rim, sre, sim))
    im = sum(b * c - a * d for a, b, c, d in zip(rre, rim, sre, sim))
    return bool(re or im)


# ---------------------------------------------------------------------------
# adjoint and the Arens decomposition


def _adjoint(t: LinearRelation) -> LinearRelation:
    n = t.space_dim
    # (f, g) ∈ T*  <=>  (g, -f) ⊥ T, so T* is the image of T^⊥ under (u, v) -> (-v, u)
    perp = t.graph.orth()
    rows = [(tuple(-v for v in re[n:]) + re[:n], tuple(-v for v in im[n:]) + im[:n])
            for re, im in perp.rows]
    return LinearRelation.from_rows(n, rows)


def adjoint(t: LinearRelation) -> LinearRelation:
    return t.star


def _arens(t: LinearRelation) -> ArensParts:
    n = t.space_dim
    mul = t.mul
    z = (0,) * n
    multi = LinearRelation(n, Subspace(2 * n, [(z + re, z + im) for re, im in mul.rows],
                                       _canonical=True))
    op = LinearRelation(n, orth_complement_within(t.graph, multi.graph))

    if not op.mul.is_zero():
        raise ConsistencyError("operator part is multivalued")
    if op.dim + multi.dim != t.dim or not (op.graph + multi.graph) == t.graph:
        raise ConsistencyError("T != T_s ⊕ T_∞")
    if op.domain != t.domain:
        raise ConsistencyError("D(T_s) != D(T)")
    if not op.range.issubspace(mul.orth()):
        raise ConsistencyError("R(T_s) ⊄ T(0)^⊥")
    for r in op.graph.rows:
        for s in multi.graph.rows:
            if _row_inner_nonzero(r, s):
                raise ConsistencyError("T_s not orthogonal to T_∞")
    return ArensParts(op, multi)


def arens_decompose(t: LinearRelation) -> ArensParts:
    """``T = T_s ⊕ T_∞`` with ``T_∞ = {0} × T(0)``."""
    return t._cached("arens", _arens)


def apply_operator_part(t: LinearRelation, f: Sequence) -> Vector:
    """``T_s(f)``: the unique element of ``T(f)`` orthogonal to ``T(0)``."""
    n = t.space_dim
    if len(f) != n:
        raise DimensionMismatch(f"vector of length {len(f)} for space dimension {n}")
    op = arens_decompose(t).op_part
    fre, fim, fden = vec_to_row_den(f)
    rows = op.graph.rows
    pivots = op.graph.pivots
    scale = 1
    for p, (re, _) in zip(pivots, rows):
        scale = lcm(scale, re[p])
    # op's canonical rows pivot in the x-block; f = sum f[p] * x_row / d
    acc_re = [0] * (2 * n)
    acc_im = [0] * (2 * n)
    for p, (re, im) in zip(pivots, rows):
        cr, ci = fre[p], fim[p]
        if cr or ci:
            k = scale // re[p]
            for j in range(2 * n):
                acc_re[j] += k * (cr * re[j] - ci * im[j])
                acc_im[j] += k * (cr * im[j] + ci * re[j])
    if acc_re[:n] != [scale * v for v in fre] or acc_im[:n] != [scale * v for v in fim]:
        raise PreconditionError("vector is not in D(T)")
    return row_to_vec(acc_re[n:], acc_im[n:], scale * fden)


# ---------------------------------------------------------------------------
# Hermitian relations and deficiency


def is_hermitian(t: LinearRelation) -> bool:
    return t.graph.issubspace(t.star.graph)


def is_selfadjoint(t: LinearRelation) -> bool:
    return t == t.star


def m_lambda(t: LinearRelation, lam) -> Subspace:
    """``M_λ(T) = N(T* - λ) = {f : (f, λf) ∈ T*}``.

    Computed as ``R(T - conj(λ))^⊥``: ``(f, λf) ∈ T*`` iff ``<f, conj(λ)x - y> = 0``
    for all ``(x, y) ∈ T``.
    """
    a, b, q = _scalar_parts(lam)
    n = t.space_dim
    # conj(λ) x - y scaled by q: (a - b i) x - q y
    rows = []
    for re, im in t.graph.rows:
        xr, xi, yr, yi = re[:n], im[:n], re[n:], im[n:]
        rows.append(([a * u + b * v - q * y for u, v, y in zip(xr, xi, yr)],
                     [a * v - b * u - q * y for u, v, y in zip(xr, xi, yi)]))
    return Subspace(n, rows).orth()


def deficiency(t: LinearRelation) -> DeficiencyPair:
    """``(dim M_{+i}(T), dim M_{-i}(T))`` of a Hermitian relation."""
    if not is_hermitian(t):
        raise NotHermitianError("deficiency indices are defined for Hermitian relations")
    return DeficiencyPair(m_lambda(t, GaussianRational(0, 1)).dim,
                          m_lambda(t, GaussianRational(0, -1)).dim)


def eigen_relation(space: Subspace, lam) -> LinearRelation:
    """``{(f, λf) : f ∈ space}``."""
    a, b, q = _scalar_parts(lam)
    n = space.ambient_dim
    rows = [([q * u for u in re] + [a * u - b * v for u, v in zip(re, im)],
             [q * v for v in im] + [a * v + b * u for u, v in zip(re, im)])
            for re, im in space.rows]
    return LinearRelation.from_rows(n, rows)


def von_neumann_check(t: LinearRelation) -> bool:
    """First von Neumann formula ``T* = T ∔ N̂_+ ∔ N̂_-`` for Hermitian ``T``."""
    if not is_hermitian(t):
        raise NotHermitianError("von Neumann formula needs a Hermitian relation")
    n = t.space_dim
    i = GaussianRational(0, 1)
    n_plus = eigen_relation(m_lambda(t, i), i)
    n_minus = eigen_relation(m_lambda(t, -i), -i)
    g, p, m = t.graph, n_plus.graph, n_minus.graph
    if not ((g & p).is_zero() and (g & m).is_zero() and (p & m).is_zero()):
        return False
    if g.dim + p.dim + m.dim != 2 * n - g.dim:
        return False
    return g + p + m == t.star.graph
