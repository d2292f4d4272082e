"""One test per acceptance criterion, at the stated tolerance.

The terminal summary prints a PASS/FAIL line per criterion.
"""
import random
import time

import pytest

from odtool import cli
from odtool.algebra import gram, hadamard_product, mat_mul, transpose
from odtool.constructions import (
    aod16_vars, aod24_vars, aod2_split, aod512, combine_pd_aod, double_aod,
    get_entry, od1024, pd8, pd12, wolfe_sets,
)
from odtool.designs import is_full, verify_aod, verify_od
from odtool.numtheory import (
    DELTA, Status, decide_pd133, hilbert, radon_hurwitz, relevant_primes,
    rho_t_bound, wolfe_bound,
)

crit = pytest.mark.criterion


@crit(1, "AOD(48; 4,10,34; 4,44): CLI build + verify, both full, < 10 s")
def test_aod48_cli(tmp_path, capsys):
    t0 = time.perf_counter()
    assert cli.main(["build", "aod48_example_3_2", "-o", str(tmp_path), "-q"]) == 0
    C = tmp_path / "aod48_example_3_2.C.od"
    D = tmp_path / "aod48_example_3_2.D.od"
    assert cli.main(["verify", "aod", "--types", "4,10,34/4,44", str(C), str(D)]) == 0
    assert cli.main(["verify", "full", str(C), str(D)]) == 0
    assert time.perf_counter() - t0 < 10
    assert "PASS AOD(48; 4, 10, 34; 4, 44)" in capsys.readouterr().out


@crit(2, "full AOD(72; 18,54; 72) and AOD(168; 4,164; 4,164), < 30 s each")
@pytest.mark.parametrize("name,weights", [
    ("aod72_example_3_4", ((18, 54), (72,))),
    ("aod168_example_3_5", ((4, 164), (4, 164))),
])
def test_aod72_aod168(name, weights):
    t0 = time.perf_counter()
    aod = get_entry(name).build_verified()
    assert tuple(tuple(sorted(t.weights)) for t in aod.types) == weights
    assert verify_aod(aod.C, aod.D, aod.type_c, aod.type_d)
    assert is_full(aod.C) and is_full(aod.D)
    assert time.perf_counter() - t0 < 30


def _zero(M):
    return all(not p for _, _, p in M.entries())


@crit(3, "pd8 and pd12 pass verify_pd; conditions (i)-(iii) checked independently")
@pytest.mark.parametrize("build,n,heavy", [(pd8, 8, 5), (pd12, 12, 9)])
def test_product_designs(build, n, heavy):
    pd = build()
    assert pd.order == n
    assert [tuple(t.weights) for t in pd.types] == [(1, 1, 1), (1, 1, 1), (heavy,)]
    assert pd.verify()
    # (i) entrywise products vanish, computed polynomial by polynomial
    assert _zero(hadamard_product(pd.M1, pd.N)) and _zero(hadamard_product(pd.M2, pd.N))
    # (ii) M1 + N and M2 + N are ODs of the concatenated type
    assert verify_od(pd.M1 + pd.N, pd.type_m1.concat(pd.type_n))
    assert verify_od(pd.M2 + pd.N, pd.type_m2.concat(pd.type_n))
    # (iii) M1 M2^T = M2 M1^T by the direct product route
    assert mat_mul(pd.M1, transpose(pd.M2), "direct") == mat_mul(pd.M2, transpose(pd.M1), "direct")


@crit(4, "AOD(16; 2,2,2,10; 2,2,2,10), AOD(24; 2,2,2,18; 2,2,2,18); 4 vars = rho_t(24, 4)")
def test_single_variable_aods():
    a16, a24 = aod16_vars(), aod24_vars()
    assert a16.verify() and a24.verify()
    assert sorted(a16.type_c.weights) == sorted(a16.type_d.weights) == [2, 2, 2, 10]
    assert sorted(a24.type_c.weights) == sorted(a24.type_d.weights) == [2, 2, 2, 18]
    assert len(a24.type_c) == len(a24.type_d) == rho_t_bound(24, 4) == 4


@crit(5, "doubling gives AOD(48; 4,4,4,18,18; 4,4,4,36) and AOD(96; 8,8,8,18,18,36; 8,8,8,72)")
def test_doubling_chain():
    base = aod24_vars()
    heavy = base.type_c.weights.index(18)
    a48 = double_aod(base, 1, split=heavy)
    a96 = double_aod(base, 2, split=heavy)
    assert a48.order == 48 and a96.order == 96
    assert sorted(a48.type_c.weights) == [4, 4, 4, 18, 18]
    assert sorted(a48.type_d.weights) == [4, 4, 4, 36]
    assert sorted(a96.type_c.weights) == [8, 8, 8, 18, 18, 36]
    assert sorted(a96.type_d.weights) == [8, 8, 8, 72]
    assert a48.verify() and a96.verify()


@crit(6, "combine_pd_aod(pd12, AOD(2) split, ii) is a verified OD(24; 1_(6), 9, 9)")
def test_combiner_od24():
    od = combine_pd_aod(pd12(), aod2_split(), "ii")
    assert od.order == 24
    assert sorted(od.type.weights) == [1, 1, 1, 1, 1, 1, 9, 9]
    assert verify_od(od.matrix, od.type)
    assert is_full(od.matrix)


@crit(7, "AOD(512; 64_(8); 64_(8)) and full OD(1024; 64_(16)) < 5 min; direct Gram agrees")
def test_heavy_designs():
    t0 = time.perf_counter()
    aod = aod512()
    assert aod.verify()
    assert aod.type_c.weights == (64,) * 8 and aod.type_d.weights == (64,) * 8
    assert is_full(aod.C) and is_full(aod.D)
    od = od1024()
    assert od.order == 1024 and od.type.weights == (64,) * 16
    assert verify_od(od.matrix, od.type)
    assert is_full(od.matrix)
    assert time.perf_counter() - t0 < 300
    assert gram(aod.C, "direct") == gram(aod.C, "expanded")


@crit(8, "decide_pd133: Exists exactly on {4, 8, 12} for n <= 200, chains as expected, < 1 s")
def test_pd133_sweep():
    decide_pd133(8), decide_pd133(12)  # warm the cached live checks
    t0 = time.perf_counter()
    verdicts = {n: decide_pd133(n) for n in range(1, 201)}
    assert time.perf_counter() - t0 < 1
    assert {n for n, v in verdicts.items() if v.status is Status.EXISTS} == {4, 8, 12}
    assert all(v.status is Status.NOT_EXISTS for n, v in verdicts.items() if n not in (4, 8, 12))
    assert verdicts[20].chain[-1].value == "S_17(1,1,1,3,3,3,17,17,34) = -1"
    assert any("(9,9,9), (9,18), (12,15), (27)" in r for r in verdicts[16].rules())
    for n in range(21, 201):
        assert "N > 40" in verdicts[n].chain[-1].rule


_PRIMES = [p for p in range(2, 101) if all(p % q for q in range(2, p))]


@crit(9, "Hilbert symbol laws on 10^4 random triples; product formula for a, b <= 200")
def test_hilbert_properties():
    rng = random.Random(20240607)

    def nz():
        while True:
            x = rng.randint(-10 ** 4, 10 ** 4)
            if x:
                return x

    for _ in range(10 ** 4):
        a, a2, b, c = nz(), nz(), nz(), rng.randint(1, 100)
        p = rng.choice(_PRIMES)
        h = hilbert(a, b, p)
        assert h == hilbert(b, a, p)
        assert hilbert(a * a2, b, p) == h * hilbert(a2, b, p)
        assert hilbert(a, -a, p) == 1
        if a != 1:
            assert hilbert(a, 1 - a, p) == 1
        assert hilbert(a * c * c, b, p) == h
    for a in range(1, 201):
        for b in range(1, 201):
            prod = 1
            for p in relevant_primes((a, b)):
                prod *= hilbert(a, b, p)
            assert prod == 1, (a, b)


@crit(10, "signed permutation sets for s <= 7, d in {1,3,5} pass all pair checks, < 60 s")
def test_wolfe_sets():
    t0 = time.perf_counter()
    for s in range(1, 8):
        for d in (1, 3, 5):
            ws = wolfe_sets(s, d, check=False)
            assert len(ws.A) == len(ws.B) == s + 1
            assert ws.order == 2 ** s * d
            assert ws.check()
    assert time.perf_counter() - t0 < 60


def _rho_oracle(n):
    # the 2-part of n, written 16^c * r with r in {1, 2, 4, 8}, gives 8c + r
    two = 1
    while n % (2 * two) == 0:
        two *= 2
    extra = 0
    while two >= 16:
        two //= 16
        extra += 8
    return two + extra


@crit(11, "radon_hurwitz matches an oracle for n <= 4096; wolfe_bound(64) = 14; delta table exact")
def test_bounds():
    for n in range(1, 4097):
        assert radon_hurwitz(n) == _rho_oracle(n), n
    assert wolfe_bound(2 ** 6) == 14
    assert DELTA == ((0, 1, 3, 7), (1, 2, 3, 5), (-1, 3, 4, 5), (-1, 1, 5, 6))
