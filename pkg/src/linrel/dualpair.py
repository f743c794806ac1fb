"""Dual pairs ``{A, B}`` (``A ⊆ B*``) and the block relation ``S``.

The four standing hypotheses are

* ``h1``: ``(A*)_s|D(B) = B_s``      (equivalently ``R(B_s) ⊆ D(A)``)
* ``h2``: ``(B*)_s|D(A) = A_s``      (equivalently ``R(A_s) ⊆ D(B)``)
* ``k1``: ``B*(0) ∩ N(A*) = {0}``    (equivalently ``D(B) + R(A) = X``)
* ``k2``: ``A*(0) ∩ N(B*) = {0}``    (equivalently ``D(A) + R(B) = X``)

Each check below is gated on the hypotheses its argument actually uses.
Passing ``override=True`` evaluates it anyway, which is how the necessity
probes record what happens outside the hypotheses.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import ConsistencyError, HypothesisError
from .gaussian import GaussianRational
from .linalg import (
    Subspace,
    inner,
    is_hermitian_positive_definite,
    quotient_dim,
    rref,
    solve,
    vec_to_row,
)
from .relation import (
    DeficiencyPair,
    LinearRelation,
    apply_operator_part,
    arens_decompose,
    block,
    deficiency,
    image_of,
    is_hermitian,
    is_selfadjoint,
    m_lambda,
    product,
    shift,
)

__all__ = [
    "DualPair",
    "NotADualPair",
    "HypothesisReport",
    "PlusGram",
    "E1Result",
    "new_dual_pair",
    "hypotheses",
    "surplus",
    "plus_gram",
    "kernel_spaces",
    "decompose_e1",
    "decompose_e2",
    "q_map",
    "check_e6",
    "check_e5",
    "dim_equality",
    "build_S",
    "s_adjoint_check",
    "s_deficiency",
    "p_map",
    "check_e13",
    "check_e12",
    "selfadjoint_criterion",
    "degeneracy_check",
    "analyze",
]

NA = "not-applicable"


class NotADualPair(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class HypothesisReport(NamedTuple):
    h1: bool
    h2: bool
    k1: bool
    k2: bool

    @property
    def k(self) -> bool:
        return self.k1 and self.k2

    @property
    def h(self) -> bool:
        return self.h1 and self.h2

    @property
    def all(self) -> bool:
        return self.h1 and self.h2 and self.k1 and self.k2


class PlusGram(NamedTuple):
    basis: tuple
    gram: tuple


class E1Result(NamedTuple):
    summands: tuple[Subspace, Subspace]
    holds: bool


class DualPair:
    """Validated dual pair with cached adjoints."""

    __slots__ = ("A", "B", "A_star", "B_star", "_cache")

    def __init__(self, a: LinearRelation, b: LinearRelation, *, _checked: bool = False):
        if a.space_dim != b.space_dim:
            raise NotADualPair(f"space dimensions differ: {a.space_dim} vs {b.space_dim}")
        if not _checked and not a.graph.issubspace(b.star.graph):
            raise NotADualPair("not a dual pair: A ⊄ B*", _witness(a, b))
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "A_star", a.star)
        object.__setattr__(self, "B_star", b.star)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("DualPair is immutable")

    @property
    def space_dim(self) -> int:
        return self.A.space_dim

    def swapped(self) -> DualPair:
        """``{B, A}``, also a dual pair."""
        c = self._cache
        if "swapped" not in c:
            c["swapped"] = DualPair(self.B, self.A, _checked=True)
        return c["swapped"]

    def _cached(self, key, fn):
        c = self._cache
        if key not in c:
            c[key] = fn(self)
        return c[key]

    def __eq__(self, other):
        if not isinstance(other, DualPair):
            return NotImplemented
        return self.A == other.A and self.B == other.B

    def __hash__(self):
        return hash((self.A, self.B))

    def __repr__(self):
        return f"DualPair(A={self.A!r}, B={self.B!r})"


def _witness(a: LinearRelation, b: LinearRelation):
    for f, g in a.pairs:
        for h, k in b.pairs:
            if inner(g, h) != inner(f, k):
                return (f, g), (h, k)
    return None


def new_dual_pair(a: LinearRelation, b: LinearRelation) -> DualPair:
    return DualPair(a, b)


# ---------------------------------------------------------------------------
# hypotheses


def _op_parts_agree(big: LinearRelation, small: LinearRelation) -> bool:
    """``big_s|D(small) == small_s`` checked on a basis of ``D(small)``."""
    for f in small.domain.basis:
        if apply_operator_part(big, f) != apply_operator_part(small, f):
            return False
    return True


def _hypotheses(p: DualPair) -> HypothesisReport:
    a, b, a_s, b_s = p.A, p.B, p.A_star, p.B_star
    n = p.space_dim
    full = Subspace.full(n)

    h1 = _op_parts_agree(a_s, b)
    h1_dual = arens_decompose(b).op_part.range.issubspace(a.domain)
    h2 = _op_parts_agree(b_s, a)
    h2_dual = arens_decompose(a).op_part.range.issubspace(b.domain)
    k1 = (b_s.mul & a_s.kernel).is_zero()
    k1_dual = (b.domain + a.range) == full
    k2 = (a_s.mul & b_s.kernel).is_zero()
    k2_dual = (a.domain + b.range) == full

    for name, x, y in (("h1", h1, h1_dual), ("h2", h2, h2_dual),
                       ("k1", k1, k1_dual), ("k2", k2, k2_dual)):
        if x != y:
            raise ConsistencyError(f"{name}: direct route {x} != duality route {y}")
    return HypothesisReport(h1, h2, k1, k2)


def hypotheses(p: DualPair) -> HypothesisReport:
    return p._cached("hypotheses", _hypotheses)


def _require(ok: bool, what: str, override: bool):
    if not ok and not override:
        raise HypothesisError(f"hypothesis violated: {what}")


# ---------------------------------------------------------------------------
# surplus, +A form, kernels


def surplus(p: DualPair) -> tuple[int, int]:
    """``(n(A*,B), n(B*,A)) = (dim D(A*)/D(B), dim D(B*)/D(A))``."""
    return (quotient_dim(p.A_star.domain, p.B.domain),
            quotient_dim(p.B_star.domain, p.A.domain))


def _plus_gram(p: DualPair) -> PlusGram:
    a_s = p.A_star
    basis = a_s.domain.basis
    images = [apply_operator_part(a_s, f) for f in basis]
    k = len(basis)
    gram = tuple(
        tuple(inner(basis[j], basis[l]) + inner(images[j], images[l]) for l in range(k))
        for j in range(k))
    if not is_hermitian_positive_definite(gram):
        raise ConsistencyError("+A form is not positive definite")
    return PlusGram(basis, gram)


def plus_gram(p: DualPair) -> PlusGram:
    """Gram matrix of ``<f,g> + <(A*)_s f, (A*)_s g>`` on the canonical basis of ``D(A*)``."""
    return p._cached("plus_gram", _plus_gram)


def _neg_one_kernel(r: LinearRelation) -> Subspace:
    # g ∈ N(1 + R)  <=>  (g, -g) ∈ R  <=>  (g, 0) ∈ R + 1
    return shift(r, -1).kernel


def kernel_spaces(p: DualPair) -> tuple[Subspace, Subspace]:
    """``(N(1 + B*A*), N(1 + A*B*))``."""
    def f(p):
        return (_neg_one_kernel(product(p.B_star, p.A_star)),
                _neg_one_kernel(product(p.A_star, p.B_star)))
    return p._cached("kernels", f)


def _form(gram, u, v) -> GaussianRational:
    total = GaussianRational(0)
    for j, uj in enumerate(u):
        if uj:
            for l, vl in enumerate(v):
                if vl:
                    total = total + uj * gram[j][l] * vl.conj()
    return total


def decompose_e1(p: DualPair, override: bool = False) -> E1Result:
    """``D(A*) = D(B) ⊕_A N(1 + B*A*)``; needs ``h1``."""
    _require(hypotheses(p).h1, "(A*)_s|D(B) = B_s", override)
    dom = p.A_star.domain
    db = p.B.domain
    k_ba = kernel_spaces(p)[0]
    gram = plus_gram(p).gram
    holds = (db & k_ba).is_zero() and (db + k_ba) == dom
    if holds:
        for f in db.basis:
            cf = dom.coords(f)
            for g in k_ba.basis:
                if _form(gram, cf, dom.coords(g)):
                    holds = False
                    break
            if not holds:
                break
    return E1Result((db, k_ba), holds)


def decompose_e2(p: DualPair, override: bool = False) -> E1Result:
    """``D(B*) = D(A) ⊕_B N(1 + A*B*)``; needs ``h2``."""
    _require(hypotheses(p).h2, "(B*)_s|D(A) = A_s", override)
    return decompose_e1(p.swapped(), override=True)


# ---------------------------------------------------------------------------
# the isomorphism Q and dimension equalities


def _matrix_rank(cols, k: int) -> int:
    """Rank of a matrix given by its columns (each of length ``k``)."""
    return len(rref([vec_to_row(c) for c in cols], k)[0]) if cols else 0


def _q_image(p: DualPair, g):
    """The unique ``h`` with ``(g, h) ∈ A*`` and ``(h, -g) ∈ B*``."""
    n = p.space_dim
    a_s, b_s = p.A_star, p.B_star
    # (g, h_a + u) ∈ A* for every u ∈ A*(0); pick u so that (h_a + u, -g) ∈ B*
    h_a, a_mul = image_of(a_s, g)
    if h_a is None:
        raise ConsistencyError("kernel vector outside D(A*)")
    zero = (GaussianRational(0),) * n
    b_gens = b_s.graph.basis
    z_gens = a_mul.basis
    cols = list(b_gens) + [tuple(-x for x in z) + zero for z in z_gens]
    rhs = tuple(h_a) + tuple(-x for x in g)
    sol, null = solve(cols, rhs)
    if sol is None:
        raise ConsistencyError("no h with (g,h) ∈ A*, (h,-g) ∈ B*")
    gamma = list(range(len(b_gens), len(cols)))
    if gamma and not null.project(gamma).is_zero():
        raise HypothesisError("hypothesis violated: Q(g) is not unique (A*(0) ∩ N(B*) ≠ {0})")
    h = list(h_a)
    for c, z in zip(sol[len(b_gens):], z_gens):
        if c:
            h = [x + c * y for x, y in zip(h, z)]
    return tuple(h)


def _in(rel: LinearRelation, x, y) -> bool:
    return (tuple(x) + tuple(y)) in rel.graph


def q_map(p: DualPair) -> tuple[tuple[GaussianRational, ...], ...]:
    """Matrix of ``Q : N(1+B*A*) -> N(1+A*B*)`` on canonical kernel bases.

    Column ``j`` holds the coordinates of ``Q(g_j)``.  Needs ``k1`` and ``k2``.
    """
    hyp = hypotheses(p)
    _require(hyp.k, "B*(0) ∩ N(A*) = {0} and A*(0) ∩ N(B*) = {0}", False)
    k_ba, k_ab = kernel_spaces(p)
    cols = []
    for g in k_ba.basis:
        h = _q_image(p, g)
        if not (_in(p.A_star, g, h) and _in(p.B_star, h, tuple(-x for x in g))):
            raise ConsistencyError("Q(g) violates its defining memberships")
        if h not in k_ab:
            raise ConsistencyError("Q(g) outside N(1 + A*B*)")
        cols.append(k_ab.coords(h))
    if k_ba.dim != k_ab.dim or _matrix_rank(cols, k_ab.dim) != k_ab.dim:
        raise ConsistencyError("Q is not bijective")
    k = k_ab.dim
    return tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(k))


def check_e6(p: DualPair, override: bool = False) -> bool:
    """``dim N(1+B*A*) = dim N(1+A*B*)``; needs ``k1`` and ``k2``."""
    _require(hypotheses(p).k, "k1 and k2", override)
    k_ba, k_ab = kernel_spaces(p)
    return k_ba.dim == k_ab.dim


def check_e5(p: DualPair, override: bool = False) -> bool:
    """``n(A*,B) = n(B*,A)``; needs all four hypotheses."""
    _require(hypotheses(p).all, "h1, h2, k1 and k2", override)
    n_ab, n_ba = surplus(p)
    return n_ab == n_ba


def dim_equality(p: DualPair) -> bool:
    """(e6) under ``k1 ∧ k2``, plus (e5) when all four hypotheses hold."""
    ok = check_e6(p)
    if hypotheses(p).all:
        ok = ok and check_e5(p)
    return ok


# ---------------------------------------------------------------------------
# the block relation S


def build_S(p: DualPair) -> LinearRelation:
    """``S = {((x1,x2),(y1,y2)) : (x1,y2) ∈ B, (x2,y1) ∈ A}`` on ``X ⊕ X``."""
    return p._cached("S", lambda p: block(p.B, p.A))


def s_adjoint_check(p: DualPair) -> bool:
    """``S*`` computed directly equals the block assembly with ``A*``, ``B*``."""
    return build_S(p).star == block(p.A_star, p.B_star)


def s_deficiency(p: DualPair) -> DeficiencyPair:
    return p._cached("s_deficiency", lambda p: deficiency(build_S(p)))


def p_map(p: DualPair) -> tuple[tuple[GaussianRational, ...], ...]:
    """Matrix of the first-component projection ``N(S* + i) -> N(1+B*A*)``."""
    _require(hypotheses(p).k, "k1 and k2", False)
    n = p.space_dim
    s = build_S(p)
    space = m_lambda(s, GaussianRational(0, -1))
    k_ba = kernel_spaces(p)[0]
    cols = []
    for f in space.basis:
        g = f[:n]
        if g not in k_ba:
            raise ConsistencyError("first component of N(S*+i) outside N(1+B*A*)")
        cols.append(k_ba.coords(g))
    if space.dim != k_ba.dim or _matrix_rank(cols, k_ba.dim) != k_ba.dim:
        raise ConsistencyError("P is not bijective")
    return tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(k_ba.dim))


def check_e13(p: DualPair, override: bool = False) -> bool:
    """``dim N(S* - i) = dim N(S* + i) = dim N(1+B*A*)``; needs ``k1`` and ``k2``."""
    _require(hypotheses(p).k, "k1 and k2", override)
    n_plus, n_minus = s_deficiency(p)
    k_ba = kernel_spaces(p)[0]
    return n_plus == n_minus == k_ba.dim


def check_e12(p: DualPair, override: bool = False) -> bool:
    """``n_+(S) = n_-(S) = n(A*,B) = n(B*,A)``; needs all four hypotheses."""
    _require(hypotheses(p).all, "h1, h2, k1 and k2", override)
    n_plus, n_minus = s_deficiency(p)
    n_ab, n_ba = surplus(p)
    return n_plus == n_minus == n_ab == n_ba


def selfadjoint_criterion(p: DualPair) -> bool:
    """Whether ``S = S*  <=>  A = B*`` holds for this pair."""
    return is_selfadjoint(build_S(p)) == (p.A == p.B_star)


def degeneracy_check(p: DualPair, override: bool = False) -> bool:
    """Under all four hypotheses, ``A = B*`` and ``B = A*``."""
    _require(hypotheses(p).all, "h1, h2, k1 and k2", override)
    return p.A == p.B_star and p.B == p.A_star


# ---------------------------------------------------------------------------
# report


def analyze(p: DualPair, override: bool = False) -> dict:
    """Full single-pair report.  Field order is part of the output format."""
    hyp = hypotheses(p)
    n_ab, n_ba = surplus(p)
    k_ba, k_ab = kernel_spaces(p)
    s = build_S(p)
    if not is_hermitian(s):
        raise ConsistencyError("S is not Hermitian for a dual pair")
    n_plus, n_minus = s_deficiency(p)

    def gated(ok, fn):
        if ok:
            return fn(False)
        if override:
            return fn(True)
        return NA

    def e13(force):
        holds = check_e13(p, override=force)
        if not force:
            p_map(p)
        return holds

    checks = {
        "e1": gated(hyp.h1, lambda f: decompose_e1(p, override=f).holds),
        "e2": gated(hyp.h2, lambda f: decompose_e2(p, override=f).holds),
        "e6": gated(hyp.k, lambda f: check_e6(p, override=f)),
        "e5": gated(hyp.all, lambda f: check_e5(p, override=f)),
        "e11": s_adjoint_check(p),
        "e12": gated(hyp.all, lambda f: check_e12(p, override=f)),
        "e13": gated(hyp.k, e13),
        "selfadjoint_criterion": selfadjoint_criterion(p),
        "degeneracy": gated(hyp.all, lambda f: degeneracy_check(p, override=f)),
    }
    if hyp.k:
        q_map(p)
    return {
        "hypotheses": {"h1": hyp.h1, "h2": hyp.h2, "k1": hyp.k1, "k2": hyp.k2},
        "dims": {
            "dimA": p.A.dim,
            "dimB": p.B.dim,
            "dimAstar": p.A_star.dim,
            "dimBstar": p.B_star.dim,
            "n_ab": n_ab,
            "n_ba": n_ba,
            "k_ba": k_ba.dim,
            "k_ab": k_ab.dim,
            "s_nplus": n_plus,
            "s_nminus": n_minus,
        },
        "checks": checks,
    }
