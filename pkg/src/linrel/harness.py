"""Seeded instance generation and verification campaigns.

Every trial is generated from its own counter-based stream keyed by
``(seed, index)``, so a campaign's report does not depend on execution order
or on how many worker processes ran it.

Checks have two tiers.  A check whose hypotheses hold is *asserted*: a failure
is a falsification and makes the campaign exit with status 1.  Outside its
hypotheses a check is only *recorded* (``recorded-pass``/``recorded-fail``),
which feeds the hypothesis-necessity statistics.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, NamedTuple

import numpy as np

from .dualpair import (
    DualPair,
    build_S,
    check_e5,
    check_e6,
    check_e12,
    check_e13,
    decompose_e1,
    decompose_e2,
    degeneracy_check,
    hypotheses,
    kernel_spaces,
    p_map,
    plus_gram,
    q_map,
    s_adjoint_check,
    s_deficiency,
    selfadjoint_criterion,
    surplus,
)
from .errors import ConsistencyError, HypothesisError
from .extension import (
    ProperExtension,
    check_thm33,
    check_thm34,
    quotient_profile,
    rng_for,
    sample_extension,
    tower_identities,
)
from .gaussian import GaussianRational
from .io import dump_json
from .linalg import Subspace, gram_orth_complement_within, inner, quotient_dim, solve, vec_to_row
from .relation import (
    DeficiencyPair,
    LinearRelation,
    arens_decompose,
    block,
    deficiency,
    image_of,
    is_hermitian,
    is_selfadjoint,
    m_lambda,
    von_neumann_check,
)

__all__ = [
    "STRATEGIES",
    "SUITES",
    "GenConfig",
    "ConfigError",
    "StrategyStarvation",
    "Lemma32Result",
    "random_relation",
    "random_subspace_of",
    "random_hermitian_matrix",
    "selfadjoint_relation",
    "random_selfadjoint",
    "random_isotropic",
    "generate",
    "lemma32_probe",
    "run_campaign",
    "report_json",
    "exit_code",
]

STRATEGIES = (
    "free",
    "dual-pair",
    "k-filtered",
    "h-filtered",
    "full-hypotheses",
    "selfadjoint-subspace",
    "isotropic",
)

SUITES = (
    "arens",
    "adjoint-duality",
    "e1e2",
    "q-iso",
    "surplus-eq",
    "s-block",
    "s-deficiency",
    "sa-criterion",
    "thm33",
    "thm34",
    "degeneracy",
    "lemma32-probe",
    "vn-formula",
)

PASS, FAIL = "pass", "fail"
RPASS, RFAIL = "recorded-pass", "recorded-fail"
NA = "not-applicable"
OUTCOMES = (PASS, FAIL, RPASS, RFAIL, NA)


class ConfigError(ValueError):
    pass


class StrategyStarvation(RuntimeError):
    pass


# keeps intermediate rationals small; there is no rounding to fall back on
MAX_DIM = 8
MAX_ENTRY = 3


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    dim_min: int = 1
    dim_max: int = 6
    entry_bound: int = 3
    strategy: str = "free"
    trials: int = 100
    retry_budget: int = 1000

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.dim_min < 1 or self.dim_max < self.dim_min:
            raise ConfigError("need 1 <= dim_min <= dim_max")
        if self.dim_max > MAX_DIM:
            raise ConfigError(f"dim_max is capped at {MAX_DIM}")
        if not 1 <= self.entry_bound <= MAX_ENTRY:
            raise ConfigError(f"entry_bound must lie in 1..{MAX_ENTRY}")
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"unknown strategy {self.strategy!r}")
        if self.trials < 0 or self.retry_budget < 1:
            raise ConfigError("trials must be >= 0 and retry_budget >= 1")


# ---------------------------------------------------------------------------
# random objects


def _gauss_ints(rng: np.random.Generator, shape, bound: int):
    re = rng.integers(-bound, bound + 1, size=shape).tolist()
    im = rng.integers(-bound, bound + 1, size=shape).tolist()
    return re, im


def _combine(cre, cim, rows, width):
    ore = [0] * width
    oim = [0] * width
    for cr, ci, (re, im) in zip(cre, cim, rows):
        if cr or ci:
            for t in range(width):
                ore[t] += cr * re[t] - ci * im[t]
                oim[t] += cr * im[t] + ci * re[t]
    return ore, oim


def random_subspace_of(u: Subspace, rng: np.random.Generator, bound: int = 3) -> Subspace:
    """Span of a random number of random Gaussian-integer combinations of ``u``'s basis."""
    k = int(rng.integers(0, u.dim + 1))
    if k == 0:
        return Subspace.zero(u.ambient_dim)
    if k == u.dim:
        if rng.integers(0, 2):
            return u
    cre, cim = _gauss_ints(rng, (k, u.dim), bound)
    rows = [_combine(cre[r], cim[r], u.rows, u.ambient_dim) for r in range(k)]
    return Subspace(u.ambient_dim, rows)


def random_relation(n: int, rng: np.random.Generator, bound: int = 3) -> LinearRelation:
    d = int(rng.integers(0, 2 * n + 1))
    re, im = _gauss_ints(rng, (d, 2 * n), bound)
    return LinearRelation.from_rows(n, list(zip(re, im)))


def random_hermitian_matrix(n: int, rng: np.random.Generator, bound: int = 3):
    re, im = _gauss_ints(rng, (n, n), bound)
    m = [[None] * n for _ in range(n)]
    for j in range(n):
        m[j][j] = (re[j][j], 0)
        for k in range(j + 1, n):
            m[j][k] = (re[j][k], im[j][k])
            m[k][j] = (re[j][k], -im[j][k])
    return m


def selfadjoint_relation(v_space: Subspace, m) -> LinearRelation:
    """``{(v, Mv + w) : v ∈ V, w ∈ V^⊥}``; self-adjoint for Hermitian ``M``.

    ``m[j][k]`` is an integer pair ``(re, im)``.
    """
    n = v_space.ambient_dim
    rows = []
    for re, im in v_space.rows:
        yre = [sum(m[j][k][0] * re[k] - m[j][k][1] * im[k] for k in range(n)) for j in range(n)]
        yim = [sum(m[j][k][0] * im[k] + m[j][k][1] * re[k] for k in range(n)) for j in range(n)]
        rows.append((list(re) + yre, list(im) + yim))
    z = [0] * n
    for re, im in v_space.orth().rows:
        rows.append((z + list(re), z + list(im)))
    return LinearRelation.from_rows(n, rows)


def random_selfadjoint(n: int, rng: np.random.Generator, bound: int = 3) -> LinearRelation:
    """Self-adjoint relation from a random ``V`` and a random Hermitian ``M``."""
    v_space = random_subspace_of(Subspace.full(n), rng, bound)
    return selfadjoint_relation(v_space, random_hermitian_matrix(n, rng, bound))


def random_isotropic(n: int, rng: np.random.Generator, bound: int = 3) -> LinearRelation:
    """Greedy Hermitian growth: add isotropic vectors of ``T*`` one at a time."""
    t = LinearRelation(n, Subspace.zero(2 * n))
    target = int(rng.integers(0, n + 1))
    for _ in range(4 * n):
        if t.dim >= target:
            break
        dom = t.domain
        if dom.is_full():
            break
        if rng.integers(0, 3) == 0:
            # pure multivalued candidate (0, z) with z ∈ D(T)^⊥ = T*(0)
            perp = dom.orth()
            cre, cim = _gauss_ints(rng, (perp.dim,), bound)
            zre, zim = _combine(cre, cim, perp.rows, n)
            cand = Subspace(2 * n, [([0] * n + zre, [0] * n + zim)])
        else:
            # f ∈ D(T*) = T(0)^⊥, outside D(T)
            room = t.star.domain
            cre, cim = _gauss_ints(rng, (room.dim,), bound)
            re, im = _combine(cre, cim, room.rows, n)
            f = Subspace(n, [(re, im)])
            if f.is_zero() or f.issubspace(dom):
                continue
            cand = _isotropic_through(t, f.basis[0])
        if cand.is_zero() or cand.issubspace(t.graph):
            continue
        t = LinearRelation(n, t.graph + cand)
    if not is_hermitian(t):
        raise ConsistencyError("isotropic growth produced a non-Hermitian relation")
    return t


def _isotropic_through(t: LinearRelation, f) -> Subspace:
    """A vector ``(f, y) ∈ T*`` with ``<y, f>`` real, for ``f ∈ D(T*)`` outside ``D(T)``."""
    n = t.space_dim
    y, _ = image_of(t.star, f)
    dom = t.domain
    # component of f orthogonal to D(T) lies in T*(0) and pairs positively with f
    w = [GaussianRational(0)] * n
    if dom.dim:
        basis = dom.basis
        gram = [[inner(b, c) for b in basis] for c in basis]
        rhs = [inner(f, c) for c in basis]
        sol, _ = solve([[gram[r][j] for r in range(len(basis))] for j in range(len(basis))], rhs)
        for c, b in zip(sol, basis):
            w = [x + c * v for x, v in zip(w, b)]
    z = [a - b for a, b in zip(f, w)]
    zz = inner(z, f)
    s = GaussianRational(0, -inner(y, f).im) / zz
    y = [a + s * b for a, b in zip(y, z)]
    return Subspace(2 * n, [vec_to_row(list(f) + y)])


def _draw_free(n, rng, bound) -> DualPair:
    b = random_relation(n, rng, bound)
    a = LinearRelation(n, random_subspace_of(b.star.graph, rng, bound))
    return DualPair(a, b, _checked=True)


def _draw_mirror(n, rng, bound) -> DualPair:
    a = random_relation(n, rng, bound)
    b = LinearRelation(n, random_subspace_of(a.star.graph, rng, bound))
    return DualPair(a, b, _checked=True)


def _draw_selfadjoint_subspace(n, rng, bound) -> DualPair:
    t = random_selfadjoint(n, rng, bound)
    a = LinearRelation(n, random_subspace_of(t.graph, rng, bound))
    return DualPair(a, a, _checked=True)


def _draw_isotropic(n, rng, bound) -> DualPair:
    a = random_isotropic(n, rng, bound)
    return DualPair(a, a, _checked=True)


def _k1(p):
    return p.B.domain + p.A.range == Subspace.full(p.space_dim)


def _k2(p):
    return p.A.domain + p.B.range == Subspace.full(p.space_dim)


def _h1(p):
    return arens_decompose(p.B).op_part.range.issubspace(p.A.domain)


def _h2(p):
    return arens_decompose(p.A).op_part.range.issubspace(p.B.domain)


# Rejection uses the cheap duality route of each flag, cheapest first, and
# stops at the first failure.  Accepted pairs go through ``hypotheses``, which
# cross-checks both routes.
_FILTERS: dict[str, tuple] = {
    "k-filtered": (_k1, _k2),
    "h-filtered": (_h1, _h2),
    "full-hypotheses": (_k1, _k2, _h1, _h2),
}


def generate(config: GenConfig, index: int) -> DualPair:
    """Deterministic dual pair number ``index`` of the campaign ``config``."""
    rng = rng_for(config.seed, 0, index)
    n = int(rng.integers(config.dim_min, config.dim_max + 1))
    bound = config.entry_bound
    s = config.strategy
    if s == "free":
        return _draw_free(n, rng, bound)
    if s == "dual-pair":
        return _draw_mirror(n, rng, bound)
    if s == "selfadjoint-subspace":
        return _draw_selfadjoint_subspace(n, rng, bound)
    if s == "isotropic":
        return _draw_isotropic(n, rng, bound)
    flags = _FILTERS[s]
    for _ in range(config.retry_budget):
        p = _draw_free(n, rng, bound)
        if all(f(p) for f in flags):
            hyp = hypotheses(p)
            if not all(getattr(hyp, f.__name__[1:]) for f in flags):
                raise ConsistencyError("rejection filter disagrees with hypotheses()")
            return p
    raise StrategyStarvation(f"{s}: no instance after {config.retry_budget} draws")


# ---------------------------------------------------------------------------
# graph- versus domain-version deficiency probe


class Lemma32Result(NamedTuple):
    n_pm: DeficiencyPair
    d1: int
    d2: int
    graph_version_holds: bool
    domain_version_holds: bool


def lemma32_probe(s: LinearRelation, t: LinearRelation) -> Lemma32Result:
    """Compare deficiency indices of ``S`` with quotients against a self-adjoint ``T ⊇ S``.

    The graph version ``dim T/S = n_± = dim S*/T`` always holds in finite
    dimensions; the domain version ``dim D(T)/D(S) = n_± = dim D(S*)/D(T)`` is
    reported separately.
    """
    if not is_hermitian(s):
        raise HypothesisError("S must be Hermitian")
    if not is_selfadjoint(t):
        raise HypothesisError("T must be self-adjoint")
    if not s.graph.issubspace(t.graph):
        raise HypothesisError("S ⊄ T")
    npm = deficiency(s)
    d1 = quotient_dim(t.domain, s.domain)
    d2 = quotient_dim(s.star.domain, t.domain)
    g1 = quotient_dim(t.graph, s.graph)
    g2 = quotient_dim(s.star.graph, t.graph)
    graph_ok = npm.n_plus == npm.n_minus == g1 == g2
    domain_ok = npm.n_plus == npm.n_minus == d1 == d2
    return Lemma32Result(npm, d1, d2, graph_ok, domain_ok)


# ---------------------------------------------------------------------------
# suites


class _Trial:
    """Per-trial check collector."""

    def __init__(self, pair: DualPair, config: GenConfig, index: int, override: bool):
        self.pair = pair
        self.override = override
        self.config = config
        self.index = index
        self.checks: dict[str, str] = {}
        self.notes: dict[str, int] = {}
        self.suite = ""
        self._ext = None

    def asserted(self, name: str, fn: Callable[[], bool]):
        try:
            ok = bool(fn())
        except (ConsistencyError, HypothesisError) as exc:
            ok = False
            self.note("errors")
            self.checks[name + ".error"] = f"{type(exc).__name__}: {exc}"
        self._put(name, PASS if ok else FAIL)

    def gated(self, name: str, applicable: bool, fn: Callable[[bool], bool]):
        if applicable:
            self.asserted(name, lambda: fn(False))
        elif not self.override:
            self.na(name)
        else:
            try:
                ok = bool(fn(True))
            except (ConsistencyError, HypothesisError):
                ok = False
            self._put(name, RPASS if ok else RFAIL)

    def _put(self, name, outcome):
        prev = self.checks.get(name)
        order = {FAIL: 0, RFAIL: 1, PASS: 2, RPASS: 3, NA: 4}
        if prev is None or order[outcome] < order[prev]:
            self.checks[name] = outcome

    def na(self, name: str):
        self.checks.setdefault(name, NA)

    def note(self, key: str, value: int = 1):
        key = f"{self.suite}.{key}"
        self.notes[key] = self.notes.get(key, 0) + value

    @property
    def extension(self) -> ProperExtension:
        if self._ext is None:
            p = self.pair
            m = p.B_star.dim - p.A.dim
            rng = rng_for(self.config.seed, 2, self.index)
            k = int(rng.integers(0, m + 1))
            self._ext = sample_extension(p, k, rng, self.config.entry_bound)
        return self._ext


def _suite_arens(tr: _Trial):
    for label, t in (("A", tr.pair.A), ("B", tr.pair.B)):
        def check(t=t):
            op, multi = arens_decompose(t)
            n = t.space_dim
            return (op.mul.is_zero()
                    and op.graph + multi.graph == t.graph
                    and op.dim + multi.dim == t.dim
                    and op.domain == t.domain
                    and op.range.issubspace(t.mul.orth())
                    and multi.domain.is_zero() and multi.mul == t.mul
                    and (op.graph & multi.graph.orth()) == op.graph
                    and n == t.space_dim)
        tr.asserted("arens", check)
        tr.note("relations")
        if not t.mul.is_zero():
            tr.note("multivalued")


def _suite_adjoint(tr: _Trial):
    for t in (tr.pair.A, tr.pair.B):
        s = t.star
        n = t.space_dim
        tr.asserted("involution", lambda: s.star == t)
        tr.asserted("dim-sum", lambda: t.dim + s.dim == 2 * n)
        tr.asserted("mul-duality", lambda: s.mul == t.domain.orth())
        tr.asserted("kernel-duality", lambda: s.kernel == t.range.orth())
        tr.asserted("domain-duality", lambda: s.domain == t.mul.orth())
        tr.note("relations")
        if not s.mul.is_zero():
            tr.note("multivalued_adjoint")


def _suite_e1e2(tr: _Trial):
    p = tr.pair
    hyp = hypotheses(p)
    tr.gated("e1", hyp.h1, lambda f: decompose_e1(p, override=f).holds)
    tr.gated("e2", hyp.h2, lambda f: decompose_e2(p, override=f).holds)
    if hyp.h1:
        k_ba = kernel_spaces(p)[0]
        tr.asserted("e1-gram-complement", lambda: gram_orth_complement_within(
            p.A_star.domain, p.B.domain, plus_gram(p).gram) == k_ba)
        if k_ba.dim:
            tr.note("nonzero_kernel_under_h1")
    else:
        tr.na("e1-gram-complement")
    if p.A == p.B_star:
        tr.asserted("kernels-trivial-if-A=B*",
                    lambda: all(k.is_zero() for k in kernel_spaces(p)))
        tr.note("adjoint_pairs")
    else:
        tr.na("kernels-trivial-if-A=B*")


def _suite_q(tr: _Trial):
    p = tr.pair
    hyp = hypotheses(p)
    if hyp.k:
        tr.asserted("q-bijective", lambda: q_map(p) is not None)
        if kernel_spaces(p)[0].dim:
            tr.note("nonzero_kernel")
    else:
        tr.na("q-bijective")
    tr.gated("e6", hyp.k, lambda f: check_e6(p, override=f))


def _suite_surplus(tr: _Trial):
    p = tr.pair
    hyp = hypotheses(p)
    tr.gated("e5", hyp.all, lambda f: check_e5(p, override=f))
    if hyp.all:
        tr.note("full_hypotheses")
        if surplus(p)[0]:
            tr.note("nonzero_surplus")


def _suite_s_block(tr: _Trial):
    p = tr.pair
    tr.asserted("s-hermitian", lambda: is_hermitian(build_S(p)))
    tr.asserted("e11", lambda: s_adjoint_check(p))


def _suite_s_deficiency(tr: _Trial):
    p = tr.pair
    hyp = hypotheses(p)

    def e13(force):
        ok = check_e13(p, override=force)
        if not force:
            p_map(p)
        return ok

    tr.gated("e13", hyp.k, e13)
    tr.gated("e12", hyp.all, lambda f: check_e12(p, override=f))
    if s_deficiency(p).n_plus:
        tr.note("nonzero_deficiency")
        if hyp.k:
            tr.note("nonzero_deficiency_under_k")


def _suite_sa(tr: _Trial):
    p = tr.pair
    tr.asserted("sa-criterion", lambda: selfadjoint_criterion(p))
    tr.note("selfadjoint_S" if p.A == p.B_star else "non_selfadjoint_S")


def _suite_thm33(tr: _Trial):
    p = tr.pair
    e = tr.extension
    res = check_thm33(e)
    tr.asserted("e36-tower", lambda: tower_identities(e))
    tr.asserted("extension-chain", lambda: (
        p.A.graph.issubspace(e.ext.graph) and e.ext.graph.issubspace(p.B_star.graph)
        and p.B.graph.issubspace(e.ext_star.graph) and e.ext_star.graph.issubspace(p.A_star.graph)))
    tr.note("extensions")
    hold = res.hypotheses_hold
    tr.gated("e32", hold, lambda f: res.e32_holds)
    if res.e33_holds is None:
        tr.na("e33")
        tr.na("parity")
    else:
        tr.gated("e33", hold, lambda f: res.e33_holds)
        tr.gated("parity", hold, lambda f: res.parity_ok)
        tr.note("quasi_selfadjoint")
    if hold:
        tr.note("full_hypotheses")


def _suite_thm34(tr: _Trial):
    e = tr.extension
    hold = hypotheses(tr.pair).all
    tr.gated("thm34", hold, lambda f: check_thm34(e))
    if hold:
        tr.note("full_hypotheses")


def _suite_degeneracy(tr: _Trial):
    p = tr.pair
    if hypotheses(p).all:
        tr.asserted("degeneracy", lambda: degeneracy_check(p))
        tr.asserted("zero-surplus", lambda: surplus(p) == (0, 0))
        tr.note("full_hypotheses")
    else:
        tr.na("degeneracy")
        tr.na("zero-surplus")


def _suite_lemma32(tr: _Trial):
    p = tr.pair
    e = tr.extension
    s = build_S(p)
    t = block(e.ext_star, e.ext)
    try:
        res = lemma32_probe(s, t)
    except HypothesisError as exc:
        tr.asserted("lemma32-setup", lambda: False)
        tr.checks["lemma32-setup.error"] = str(exc)
        return
    tr.asserted("lemma32-graph", lambda: res.graph_version_holds)
    tr._put("lemma32-domain", RPASS if res.domain_version_holds else RFAIL)
    if res.n_pm.n_plus:
        tr.note("nonzero_deficiency")
    if not res.domain_version_holds:
        tr.note("domain_version_fails")


_I = GaussianRational(0, 1)
_LAMBDAS_UP = (_I, GaussianRational(0, 2), GaussianRational(1, 1))
_LAMBDAS_DOWN = tuple(x.conj() for x in _LAMBDAS_UP)


def _constancy(t: LinearRelation) -> bool:
    up = {m_lambda(t, lam).dim for lam in _LAMBDAS_UP}
    down = {m_lambda(t, lam).dim for lam in _LAMBDAS_DOWN}
    return len(up) == 1 and len(down) == 1


def _suite_vn(tr: _Trial):
    p = tr.pair
    s = build_S(p)
    targets = [s]
    if is_hermitian(p.A):
        targets.append(p.A)
        npm = deficiency(p.A)
        tr.note("hermitian_A")
        if npm.n_plus != npm.n_minus:
            tr.note("unequal_deficiency")
    for t in targets:
        tr.asserted("vn-formula", lambda t=t: von_neumann_check(t))
        tr.asserted("m-lambda-constancy", lambda t=t: _constancy(t))
        if deficiency(t).n_plus:
            tr.note("nonzero_deficiency")


_SUITE_FNS = {
    "arens": _suite_arens,
    "adjoint-duality": _suite_adjoint,
    "e1e2": _suite_e1e2,
    "q-iso": _suite_q,
    "surplus-eq": _suite_surplus,
    "s-block": _suite_s_block,
    "s-deficiency": _suite_s_deficiency,
    "sa-criterion": _suite_sa,
    "thm33": _suite_thm33,
    "thm34": _suite_thm34,
    "degeneracy": _suite_degeneracy,
    "lemma32-probe": _suite_lemma32,
    "vn-formula": _suite_vn,
}

# coverage: suite -> counter that must be positive when the theory permits it
COVERAGE_KEYS = {
    "arens": "multivalued",
    "adjoint-duality": "multivalued_adjoint",
    "e1e2": "nonzero_kernel_under_h1",
    "q-iso": "nonzero_kernel",
    "surplus-eq": "full_hypotheses",
    "s-block": None,
    "s-deficiency": "nonzero_deficiency_under_k",
    "sa-criterion": "selfadjoint_S",
    "thm33": "full_hypotheses",
    "thm34": "full_hypotheses",
    "degeneracy": "full_hypotheses",
    "lemma32-probe": "nonzero_deficiency",
    "vn-formula": "nonzero_deficiency",
}


def _dims(p: DualPair) -> dict:
    n_ab, n_ba = surplus(p)
    k_ba, k_ab = kernel_spaces(p)
    npm = s_deficiency(p)
    return {
        "n": p.space_dim,
        "dimA": p.A.dim,
        "dimB": p.B.dim,
        "dimAstar": p.A_star.dim,
        "dimBstar": p.B_star.dim,
        "n_ab": n_ab,
        "n_ba": n_ba,
        "k_ba": k_ba.dim,
        "k_ab": k_ab.dim,
        "s_nplus": npm.n_plus,
        "s_nminus": npm.n_minus,
    }


def _run_trial(args) -> dict:
    config, suites, override, index = args
    try:
        pair = generate(config, index)
    except StrategyStarvation:
        return {"index": index, "status": "starved"}
    tr = _Trial(pair, config, index, override)
    for name in suites:
        tr.suite = name
        _SUITE_FNS[name](tr)
    hyp = hypotheses(pair)
    return {
        "index": index,
        "status": "ok",
        "hypotheses": {"h1": hyp.h1, "h2": hyp.h2, "k1": hyp.k1, "k2": hyp.k2},
        "dims": _dims(pair),
        "checks": tr.checks,
        "counters": tr.notes,
    }


def run_campaign(config: GenConfig, suites: Iterable[str], workers: int = 1,
                 override: bool = False) -> dict:
    """Run ``config.trials`` trials through the named suites and build the report.

    With ``override`` the checks whose hypotheses fail are still evaluated and
    recorded (necessity-probe mode); otherwise they are ``not-applicable``.
    """
    suites = list(dict.fromkeys(suites))
    unknown = [s for s in suites if s not in _SUITE_FNS]
    if unknown:
        raise ConfigError(f"unknown suite(s): {', '.join(unknown)}")
    if not suites:
        raise ConfigError("no suites selected")
    suites = [s for s in SUITES if s in suites]
    jobs = [(config, suites, override, i) for i in range(config.trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            records = list(ex.map(_run_trial, jobs, chunksize=16))
    else:
        records = [_run_trial(j) for j in jobs]
    records.sort(key=lambda r: r["index"])
    return _assemble(config, suites, override, records)


def _assemble(config: GenConfig, suites: list[str], override: bool, records: list[dict]) -> dict:
    aggregates: dict[str, dict[str, int]] = {}
    falsifications = []
    counters: dict[str, int] = {}
    starved = 0
    for rec in records:
        if rec["status"] != "ok":
            starved += 1
            continue
        for name, outcome in rec["checks"].items():
            if name.endswith(".error"):
                continue
            agg = aggregates.setdefault(name, {o: 0 for o in OUTCOMES})
            agg[outcome] += 1
            if outcome == FAIL:
                falsifications.append({
                    "index": rec["index"],
                    "check": name,
                    "detail": rec["checks"].get(name + ".error", ""),
                })
        for key, v in rec["counters"].items():
            counters[key] = counters.get(key, 0) + v
    coverage = {}
    for s in suites:
        key = COVERAGE_KEYS[s]
        if key is not None:
            count = counters.get(f"{s}.{key}", 0)
            coverage[s] = {"counter": key, "count": count, "ok": count > 0}
    return {
        "config": asdict(config),
        "suites": suites,
        "override": override,
        "trials": len(records),
        "population": len(records) - starved,
        "starved": starved,
        "aggregates": {k: aggregates[k] for k in sorted(aggregates)},
        "counters": {k: counters[k] for k in sorted(counters)},
        "coverage": coverage,
        "falsifications": falsifications,
        "records": records,
    }


def report_json(report: dict) -> str:
    return dump_json(report)


def exit_code(report: dict) -> int:
    return 1 if report["falsifications"] else 0
