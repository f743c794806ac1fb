"""Acceptance criteria 1-10, exact and seeded.

Each test records one PASS/FAIL line, printed in the terminal summary.
"""

from contextlib import contextmanager

import pytest

from linrel import instances
from linrel.cli import main
from linrel.dualpair import DualPair, decompose_e1, kernel_spaces, q_map
from linrel.extension import check_thm33, extension_report, make_extension
from linrel.harness import STRATEGIES, GenConfig, lemma32_probe, run_campaign
from linrel.io import load_relation, serialize_relation
from linrel.linalg import unit

from conftest import ACCEPTANCE, FIXTURES

e1, e2 = unit(2, 0), unit(2, 1)
PG1 = DualPair(instances.G1, instances.G1)


@contextmanager
def criterion(n, desc):
    ACCEPTANCE[n] = (False, desc)
    yield
    ACCEPTANCE[n] = (True, desc)


def clean(rep, checks, at_least):
    """Every named check passed at least ``at_least`` times and never failed."""
    assert not rep["falsifications"], rep["falsifications"][:3]
    for name in checks:
        agg = rep["aggregates"][name]
        assert agg["fail"] == 0, name
        assert agg["pass"] >= at_least, (name, agg)


@pytest.fixture(scope="module")
def free_1000():
    cfg = GenConfig(seed=1, trials=1000, dim_min=1, dim_max=6, strategy="free")
    return run_campaign(cfg, ["adjoint-duality", "arens", "s-block", "sa-criterion"])


def test_c01_adjoint_calculus(free_1000):
    with criterion(1, "adjoint calculus on 2000 random relations"):
        rep = free_1000
        assert rep["population"] == 1000
        assert rep["counters"]["adjoint-duality.relations"] >= 1000
        clean(rep, ["involution", "dim-sum", "mul-duality", "kernel-duality", "domain-duality"], 1000)


def test_c02_arens(free_1000):
    with criterion(2, "Arens decomposition on the same corpus"):
        rep = free_1000
        clean(rep, ["arens"], 1000)
        assert rep["counters"]["arens.multivalued"] > 0


def test_c03_e1_e2():
    with criterion(3, "e1/e2 on 500 h-filtered pairs; G1 override breaks e1"):
        rep = run_campaign(GenConfig(seed=3, trials=500, strategy="h-filtered"), ["e1e2"])
        assert rep["population"] == 500
        clean(rep, ["e1", "e2", "e1-gram-complement"], 500)
        clean(rep, ["kernels-trivial-if-A=B*"], 1)
        res = decompose_e1(PG1, override=True)
        assert not res.holds
        assert sum(s.dim for s in res.summands) == 3 and PG1.A_star.domain.dim == 2


def test_c04_q_iso():
    with criterion(4, "Q bijective and e6 on 500 k-filtered pairs"):
        rep = run_campaign(GenConfig(seed=4, trials=500, strategy="k-filtered"), ["q-iso"])
        assert rep["population"] == 500
        clean(rep, ["q-bijective", "e6"], 500)
        assert rep["coverage"]["q-iso"]["count"] > 0
        assert [k.dim for k in kernel_spaces(PG1)] == [2, 2] and q_map(PG1) is not None


def test_c05_s_block(free_1000):
    with criterion(5, "S Hermitian, e11, sa-criterion; e13 with P under k-filter"):
        clean(free_1000, ["s-hermitian", "e11", "sa-criterion"], 1000)
        rep = run_campaign(GenConfig(seed=5, trials=500, strategy="k-filtered"), ["s-deficiency"])
        clean(rep, ["e13"], 500)
        assert rep["coverage"]["s-deficiency"]["count"] > 0


def test_c06_degeneracy():
    with criterion(6, "10^4 full-hypotheses pairs all satisfy A = B*"):
        cfg = GenConfig(seed=6, trials=10_000, strategy="full-hypotheses")
        rep = run_campaign(cfg, ["degeneracy", "surplus-eq", "s-deficiency", "thm33", "thm34"])
        assert rep["population"] == 10_000 and rep["starved"] == 0
        clean(rep, ["degeneracy", "zero-surplus", "e5", "e12", "e32", "e33", "thm34"], 10_000)


def test_c07_extension_bookkeeping():
    with criterion(7, "quotient tower on 1050 extensions; G1 extension table"):
        extensions = 0
        for strategy in STRATEGIES:
            rep = run_campaign(GenConfig(seed=7, trials=150, strategy=strategy), ["thm33"])
            clean(rep, ["e36-tower", "extension-chain"], 150)
            extensions += rep["counters"]["thm33.extensions"]
        assert extensions >= 1000
        swap = make_extension(PG1, [(e2, e1)])
        assert swap.ext == instances.SWAP
        rep = extension_report(swap, override=True)
        assert rep["profile"] == [1, 1, 0, 0] and rep["quasi"] is True and rep["e32"] is False
        same = make_extension(PG1)
        rep = extension_report(same, override=True)
        assert rep["profile"] == [0, 1, 1, 0] and rep["quasi"] is False and rep["e32"] is True
        assert not check_thm33(swap).hypotheses_hold


def test_c08_lemma32():
    with criterion(8, "graph-version equalities asserted; G1/SWAP domain counterexample"):
        total = 0
        for strategy in ("free", "dual-pair", "isotropic"):
            rep = run_campaign(GenConfig(seed=8, trials=200, strategy=strategy), ["lemma32-probe"])
            clean(rep, ["lemma32-graph"], 200)
            total += rep["counters"].get("lemma32-probe.domain_version_fails", 0)
        assert total > 0
        res = lemma32_probe(instances.G1, instances.SWAP)
        assert res.n_pm == (1, 1) and (res.d1, res.d2) == (1, 0)
        assert res.graph_version_holds and not res.domain_version_holds


def test_c09_von_neumann():
    with criterion(9, "first von Neumann formula on every Hermitian instance"):
        for strategy in ("free", "selfadjoint-subspace", "isotropic"):
            rep = run_campaign(GenConfig(seed=9, trials=200, strategy=strategy), ["vn-formula"])
            clean(rep, ["vn-formula", "m-lambda-constancy"], 200)


def test_c10_determinism(tmp_path, capsys):
    with criterion(10, "byte-identical verify reports and fixture round-trips"):
        argv = ["verify", "--seed", "10", "--trials", "40", "--dim-max", "4", "--strategy", "dual-pair"]
        outs = []
        for k, extra in enumerate([[], [], ["--workers", "2"]]):
            path = tmp_path / f"r{k}.json"
            assert main(argv + extra + ["--output", str(path)]) == 0
            outs.append(path.read_bytes())
        capsys.readouterr()
        assert outs[0] == outs[1] == outs[2]
        for path in sorted(FIXTURES.glob("*.json")):
            assert serialize_relation(load_relation(path)).encode() == path.read_bytes()
