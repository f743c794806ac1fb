"""Proper extensions ``A ⊆ Ã ⊆ B*`` of a dual pair and their quotient counts."""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

import numpy as np

from .dualpair import DualPair, hypotheses, surplus
from .errors import ConsistencyError, PreconditionError
from .linalg import Subspace, quotient_dim, vec_to_row
from .relation import LinearRelation

__all__ = [
    "ProperExtension",
    "QuotientProfile",
    "Thm33Result",
    "ProbeResult",
    "NotAnExtension",
    "make_extension",
    "quotient_profile",
    "is_quasi_selfadjoint",
    "check_thm33",
    "check_thm34",
    "tower_identities",
    "sample_extensions",
    "correctness_probe",
    "extension_report",
    "rng_for",
]


class NotAnExtension(ValueError):
    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class ProperExtension:
    __slots__ = ("pair", "ext", "ext_star")

    def __init__(self, pair: DualPair, ext: LinearRelation):
        if not pair.A.graph.issubspace(ext.graph):
            raise NotAnExtension("A ⊄ Ã")
        if not ext.graph.issubspace(pair.B_star.graph):
            raise NotAnExtension("Ã ⊄ B*")
        object.__setattr__(self, "pair", pair)
        object.__setattr__(self, "ext", ext)
        object.__setattr__(self, "ext_star", ext.star)

    def __setattr__(self, name, value):
        raise AttributeError("ProperExtension is immutable")

    def __eq__(self, other):
        if not isinstance(other, ProperExtension):
            return NotImplemented
        return self.pair == other.pair and self.ext == other.ext

    def __hash__(self):
        return hash(self.ext)

    def __repr__(self):
        return f"ProperExtension({self.ext!r})"


class QuotientProfile(NamedTuple):
    d_ext_over_a: int           # dim D(Ã)/D(A)
    d_extstar_over_b: int       # dim D(Ã*)/D(B)
    d_bstar_over_ext: int       # dim D(B*)/D(Ã)
    d_astar_over_extstar: int   # dim D(A*)/D(Ã*)


class Thm33Result(NamedTuple):
    e32_holds: bool
    e33_holds: Optional[bool]
    parity_ok: Optional[bool]
    hypotheses_hold: bool


class ProbeResult(NamedTuple):
    found: bool
    witness: Optional[ProperExtension]
    parity_ok: Optional[bool]
    tried: int


def make_extension(pair: DualPair, extra: Sequence[tuple[Sequence, Sequence]] = ()) -> ProperExtension:
    """``Ã = span(A ∪ extra)``; every extra generator must lie in ``B*``."""
    n = pair.space_dim
    rows = list(pair.A.graph.rows)
    for x, y in extra:
        if len(x) != n or len(y) != n:
            raise NotAnExtension(f"generator of lengths ({len(x)}, {len(y)}) for space dimension {n}")
        v = tuple(x) + tuple(y)
        if v not in pair.B_star.graph:
            raise NotAnExtension("extra generator is not in B*", (tuple(x), tuple(y)))
        rows.append(vec_to_row(v))
    return ProperExtension(pair, LinearRelation.from_rows(n, rows))


def quotient_profile(e: ProperExtension) -> QuotientProfile:
    p = e.pair
    d_ext = e.ext.domain
    d_extstar = e.ext_star.domain
    return QuotientProfile(
        quotient_dim(d_ext, p.A.domain),
        quotient_dim(d_extstar, p.B.domain),
        quotient_dim(p.B_star.domain, d_ext),
        quotient_dim(p.A_star.domain, d_extstar),
    )


def is_quasi_selfadjoint(e: ProperExtension) -> bool:
    prof = quotient_profile(e)
    return prof.d_ext_over_a == prof.d_extstar_over_b


def tower_identities(e: ProperExtension) -> bool:
    """Quotient-tower sums ``D(A) ⊆ D(Ã) ⊆ D(B*)`` and ``D(B) ⊆ D(Ã*) ⊆ D(A*)``.

    These hold for every proper extension regardless of hypotheses.
    """
    p = e.pair
    prof = quotient_profile(e)
    n_ab, n_ba = surplus(p)
    chain = (p.B.graph.issubspace(e.ext_star.graph)
             and e.ext_star.graph.issubspace(p.A_star.graph))
    return (chain
            and prof.d_ext_over_a + prof.d_bstar_over_ext == n_ba
            and prof.d_extstar_over_b + prof.d_astar_over_extstar == n_ab)


def check_thm33(e: ProperExtension) -> Thm33Result:
    """Evaluate the dimension formulas; the caller decides whether to assert.

    ``hypotheses_hold`` tells whether the pair satisfies all four standing
    hypotheses, i.e. whether a failure would be a genuine counterexample.
    """
    prof = quotient_profile(e)
    n_ab, _ = surplus(e.pair)
    e32 = (n_ab == prof.d_bstar_over_ext + prof.d_astar_over_extstar
           and n_ab == prof.d_ext_over_a + prof.d_extstar_over_b)
    e33 = parity = None
    if prof.d_ext_over_a == prof.d_extstar_over_b:
        parity = n_ab % 2 == 0
        e33 = parity and all(2 * d == n_ab for d in prof)
    return Thm33Result(e32, e33, parity, hypotheses(e.pair).all)


def check_thm34(e: ProperExtension) -> bool:
    """``dim D(B*)/D(Ã) = dim D(Ã)/D(A)`` implies quasi-selfadjointness."""
    prof = quotient_profile(e)
    if prof.d_bstar_over_ext != prof.d_ext_over_a:
        return True
    return prof.d_ext_over_a == prof.d_extstar_over_b


# ---------------------------------------------------------------------------
# sampling


def rng_for(seed: int, *key: int) -> np.random.Generator:
    """Counter-based generator keyed by ``(seed, *key)``; independent of call order."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, *key])))


def _completion(pair: DualPair) -> list:
    """Rows of ``B*`` whose span complements ``A`` inside ``B*``."""
    acc = pair.A.graph
    out = []
    for row in pair.B_star.graph.rows:
        if not acc.contains_row(*row):
            out.append(row)
            acc = Subspace(acc.ambient_dim, acc.rows + (row,))
    return out


def _random_gaussian(rng: np.random.Generator, shape, bound: int):
    re = rng.integers(-bound, bound + 1, size=shape).tolist()
    im = rng.integers(-bound, bound + 1, size=shape).tolist()
    return re, im


def _combine(coeff_re, coeff_im, rows, width):
    """Integer row ``sum_j c_j rows[j]``."""
    ore = [0] * width
    oim = [0] * width
    for cr, ci, (re, im) in zip(coeff_re, coeff_im, rows):
        if cr or ci:
            for t in range(width):
                ore[t] += cr * re[t] - ci * im[t]
                oim[t] += cr * im[t] + ci * re[t]
    return ore, oim


def sample_extension(pair: DualPair, k: int, rng: np.random.Generator, bound: int = 3) -> ProperExtension:
    comp = _completion(pair)
    m = len(comp)
    if k > m:
        raise PreconditionError(f"k = {k} exceeds dim B* - dim A = {m}")
    n = pair.space_dim
    if k == 0:
        return ProperExtension(pair, pair.A)
    while True:
        cre, cim = _random_gaussian(rng, (k, m), bound)
        new = [_combine(cre[r], cim[r], comp, 2 * n) for r in range(k)]
        span_new = Subspace(2 * n, new)
        if span_new.dim == k:
            break
    ext = LinearRelation.from_rows(n, list(pair.A.graph.rows) + new)
    if ext.dim != pair.A.dim + k:
        raise ConsistencyError("basis completion produced a dependent extension")
    return ProperExtension(pair, ext)


def sample_extensions(pair: DualPair, k: int, count: int, seed: int,
                      bound: int = 3) -> list[ProperExtension]:
    """``count`` extensions with ``dim Ã = dim A + k``, reproducible from ``seed``."""
    m = pair.B_star.dim - pair.A.dim
    if k < 0 or k > m:
        raise PreconditionError(f"k = {k} outside 0..{m}")
    return [sample_extension(pair, k, rng_for(seed, 0, idx), bound) for idx in range(count)]


def correctness_probe(pair: DualPair, budget: int, seed: int) -> ProbeResult:
    """Search sampled extensions for a quasi-selfadjoint one.

    ``parity_ok`` reports whether ``n(A*,B)`` is even when all four hypotheses
    hold (a necessary condition for a correct pair), else ``None``.
    """
    m = pair.B_star.dim - pair.A.dim
    parity = surplus(pair)[0] % 2 == 0 if hypotheses(pair).all else None
    for t in range(budget):
        k = t % (m + 1)
        e = sample_extension(pair, k, rng_for(seed, 1, t))
        if is_quasi_selfadjoint(e):
            return ProbeResult(True, e, parity, t + 1)
    return ProbeResult(False, None, parity, budget)


def extension_report(e: ProperExtension, override: bool = False) -> dict:
    """JSON-ready check report; formula fields are ``None`` outside the hypotheses
    unless ``override`` asks for the recorded values."""
    prof = quotient_profile(e)
    res = check_thm33(e)
    show = res.hypotheses_hold or override
    return {
        "profile": list(prof),
        "quasi": prof.d_ext_over_a == prof.d_extstar_over_b,
        "e32": res.e32_holds if show else None,
        "e33": res.e33_holds if show else None,
        "parity": res.parity_ok if show else None,
        "thm34": check_thm34(e) if show else None,
    }
