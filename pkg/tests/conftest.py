from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from linrel.dualpair import DualPair
from linrel.gaussian import GaussianRational
from linrel.linalg import Subspace
from linrel.relation import LinearRelation, from_pairs

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


gauss = st.builds(GaussianRational, st.integers(-2, 2), st.integers(-2, 2))


def vectors(n):
    return st.lists(gauss, min_size=n, max_size=n)


@st.composite
def subspaces(draw, n=None, max_n=4):
    if n is None:
        n = draw(st.integers(1, max_n))
    vecs = draw(st.lists(vectors(n), max_size=n + 1))
    return Subspace.span(vecs, n), vecs


@st.composite
def subspace_pairs(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    u, _ = draw(subspaces(n))
    v, _ = draw(subspaces(n))
    return u, v


@st.composite
def relations(draw, n=None, max_n=3):
    if n is None:
        n = draw(st.integers(1, max_n))
    gens = draw(st.lists(st.tuples(vectors(n), vectors(n)), max_size=2 * n))
    # sprinkle in pure multivalued and kernel generators so T(0), N(T) are often nonzero
    if draw(st.booleans()):
        gens.append(([GaussianRational(0)] * n, draw(vectors(n))))
    return from_pairs(n, gens), gens


@st.composite
def relation_pairs(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    a, ga = draw(relations(n))
    t, gt = draw(relations(n))
    return n, (a, ga), (t, gt)


@st.composite
def dual_pairs(draw, max_n=3):
    """B random, A a random subspace of B* (always a dual pair)."""
    n = draw(st.integers(1, max_n))
    b, _ = draw(relations(n))
    bs = b.star.graph.basis
    k = draw(st.integers(0, len(bs)))
    coeffs = draw(st.lists(st.lists(gauss, min_size=len(bs), max_size=len(bs)), min_size=k, max_size=k))
    if draw(st.booleans()) and k == len(bs):
        a_graph = b.star.graph
    else:
        vecs = [[sum((c * v[t] for c, v in zip(row, bs)), GaussianRational(0)) for t in range(2 * n)]
                for row in coeffs]
        a_graph = Subspace.span(vecs, 2 * n)
    return DualPair(LinearRelation(n, a_graph), b)


# acceptance criteria report: number -> (passed, description)
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, desc = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {desc}")
