import pytest
from hypothesis import given
from hypothesis import strategies as st

from linrel.dualpair import DualPair, hypotheses, surplus
from linrel.errors import PreconditionError
from linrel.extension import (
    NotAnExtension,
    ProperExtension,
    check_thm33,
    check_thm34,
    correctness_probe,
    extension_report,
    is_quasi_selfadjoint,
    make_extension,
    quotient_profile,
    rng_for,
    sample_extension,
    sample_extensions,
    tower_identities,
)
from linrel.instances import G1, SA2, SWAP
from linrel.linalg import unit

from conftest import dual_pairs

e1, e2 = unit(2, 0), unit(2, 1)
PG1 = DualPair(G1, G1)
PSA2 = DualPair(SA2, SA2)


def test_make_extension_examples():
    swap = make_extension(PG1, [(e2, e1)])
    assert swap.ext == SWAP
    assert make_extension(PG1).ext == G1
    with pytest.raises(NotAnExtension) as info:
        make_extension(PG1, [(e1, e1)])
    assert info.value.generator == (tuple(e1), tuple(e1))


def test_extension_validates_containments():
    with pytest.raises(NotAnExtension):
        ProperExtension(PG1, SA2)  # does not contain A = G1
    with pytest.raises(NotAnExtension):
        make_extension(PG1, [((1,), (1,))])  # wrong length


def test_profiles():
    swap = make_extension(PG1, [(e2, e1)])
    assert quotient_profile(swap) == (1, 1, 0, 0)
    assert is_quasi_selfadjoint(swap)
    assert quotient_profile(make_extension(PSA2)) == (0, 0, 0, 0)
    assert is_quasi_selfadjoint(make_extension(PSA2))
    a = make_extension(PG1)
    assert quotient_profile(a) == (0, 1, 1, 0)
    assert not is_quasi_selfadjoint(a)


def test_thm33_examples():
    res = check_thm33(make_extension(PSA2))
    assert res.e32_holds and res.e33_holds and res.parity_ok and res.hypotheses_hold
    res = check_thm33(make_extension(PG1, [(e2, e1)]))
    assert not res.e32_holds and not res.hypotheses_hold
    res = check_thm33(make_extension(PG1))
    assert res.e32_holds and res.e33_holds is None and res.parity_ok is None


def test_thm34_examples():
    assert check_thm34(make_extension(PSA2))
    assert check_thm34(make_extension(PG1, [(e2, e1)]))
    p = DualPair(SA2, SA2)
    assert check_thm34(ProperExtension(p, p.B_star))


def test_report():
    rep = extension_report(make_extension(PG1, [(e2, e1)]))
    assert rep == {"profile": [1, 1, 0, 0], "quasi": True, "e32": None,
                   "e33": None, "parity": None, "thm34": None}
    rep = extension_report(make_extension(PG1, [(e2, e1)]), override=True)
    assert rep["e32"] is False and rep["thm34"] is True
    rep = extension_report(make_extension(PSA2))
    assert rep == {"profile": [0, 0, 0, 0], "quasi": True, "e32": True,
                   "e33": True, "parity": True, "thm34": True}


def test_sampling_examples():
    for e in sample_extensions(PG1, 2, 4, seed=11):
        assert e.ext == PG1.B_star
    assert all(e.ext == G1 for e in sample_extensions(PG1, 0, 3, seed=0))
    first = sample_extensions(PG1, 1, 5, seed=7)
    again = sample_extensions(PG1, 1, 5, seed=7)
    assert [e.ext.graph.rows for e in first] == [e.ext.graph.rows for e in again]
    for e in first:
        assert e.ext.dim == 2 and ProperExtension(PG1, e.ext) == e
    with pytest.raises(PreconditionError):
        sample_extensions(PG1, 3, 1, seed=0)


def test_probe_examples():
    res = correctness_probe(PG1, budget=20, seed=0)
    assert res.found and is_quasi_selfadjoint(res.witness) and res.parity_ok is None
    res = correctness_probe(PSA2, budget=5, seed=0)
    assert res.found and res.witness.ext == SA2 and res.parity_ok is True


def test_rng_is_keyed():
    a = rng_for(5, 1, 2).integers(0, 10**9, size=4).tolist()
    b = rng_for(5, 1, 2).integers(0, 10**9, size=4).tolist()
    c = rng_for(5, 2, 1).integers(0, 10**9, size=4).tolist()
    assert a == b and a != c


@given(dual_pairs(), st.integers(0, 2**32 - 1), st.data())
def test_sampled_extension_properties(p, seed, data):
    m = p.B_star.dim - p.A.dim
    k = data.draw(st.integers(0, m))
    e = sample_extension(p, k, rng_for(seed, 0))
    assert e.ext.dim == p.A.dim + k
    assert p.A.graph.issubspace(e.ext.graph) and e.ext.graph.issubspace(p.B_star.graph)
    assert p.B.graph.issubspace(e.ext_star.graph) and e.ext_star.graph.issubspace(p.A_star.graph)
    # tower sums from raw dimensions, independent of quotient_profile
    n_ab, n_ba = surplus(p)
    d = e.ext.domain.dim
    ds = e.ext_star.domain.dim
    assert (d - p.A.domain.dim) + (p.B_star.domain.dim - d) == n_ba
    assert (ds - p.B.domain.dim) + (p.A_star.domain.dim - ds) == n_ab
    assert tower_identities(e)
    if hypotheses(p).all:
        res = check_thm33(e)
        assert res.e32_holds and res.e33_holds is not False and check_thm34(e)
