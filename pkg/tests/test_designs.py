import random

import pytest
from hypothesis import given, settings, strategies as st

from odtool.algebra import (
    DEFAULT_REGISTRY, PolyMatrix, Polynomial, Registry, RegistryFull, gram,
    is_scalar_identity, substitute, variables,
)
from odtool.constructions import aod48, base2_blocks, catalog, example_48_inputs, pd12
from odtool.designs import (
    OverlappingVariables, TypeVector, VerificationReport, collapse, fresh_vars,
    is_full, rename, type_of, verify_amicable, verify_antiamicable,
    verify_aod, verify_disjoint, verify_od, verify_pairwise_amicable,
    verify_pd,
)

a, b, c, d = variables("a b c d")
T_AB = TypeVector.of([("a", 1), ("b", 1)])
BB = base2_blocks()


def _catalog_designs(max_order=None, kind=None):
    for e in catalog():
        if max_order is not None and e.order > max_order:
            continue
        if kind is not None and e.kind != kind:
            continue
        yield e


# ---------------------------------------------------------------- type vector

def test_type_vector_invariants():
    with pytest.raises(ValueError):
        TypeVector.of([])
    with pytest.raises(ValueError):
        TypeVector.of([("a", 0)])
    with pytest.raises(ValueError):
        TypeVector.of([("a", 1), ("a", 2)])
    t = TypeVector.of([("b", 3), ("a", 1)])
    assert t.total == 4
    assert t.sorted().describe() == "(a:1, b:3)"


def test_failing_report_needs_witness():
    with pytest.raises(ValueError):
        VerificationReport(False, "od")


# -------------------------------------------------------------- verify_od

def test_od_2x2_passes():
    assert verify_od(PolyMatrix([[a, b], [b, -a]]), T_AB)


def test_od_wrong_gram_fails():
    r = verify_od(PolyMatrix([[a, a], [a, -a]]), T_AB)
    assert not r
    assert r.witness[:2] == ("type", "a")


def test_od_entry_shape_checked_first():
    r = verify_od(PolyMatrix([[a + b, 0], [0, a + b]]), T_AB)
    assert not r and r.witness[:2] == (0, 0)
    r = verify_od(PolyMatrix([[a, c], [c, -a]]), T_AB)
    assert not r and "declared" in r.detail


def test_od_surplus_claimed_variable_fails():
    t = TypeVector.of([("a", 1), ("b", 1), ("c", 1)])
    assert not verify_od(PolyMatrix([[a, b], [b, -a]]), t)


def test_od_non_scalar_gram_witness():
    r = verify_od(PolyMatrix([[a, b], [b, a]]), T_AB)
    assert not r
    i, j, _ = r.witness
    assert i != j


def test_od_48_example():
    aod = aod48()
    assert verify_od(aod.C, TypeVector.of([("a", 4), ("x", 10), ("b", 34)]))
    assert not verify_od(aod.C, TypeVector.of([("a", 4), ("x", 34), ("b", 10)]))


def test_zero_matrix_is_not_an_od():
    assert not verify_od(PolyMatrix.zeros(2), TypeVector.of([("a", 1)]))
    assert type_of(PolyMatrix.zeros(2)) is None


# ---------------------------------------------------------------- is_full

def test_is_full():
    assert not is_full(aod48("disjoint").C)
    assert is_full(aod48().C)
    assert not is_full(PolyMatrix.zeros(3))


# -------------------------------------------------------------- relations

def test_relation_examples():
    assert verify_amicable(BB.P, BB.I)
    assert verify_antiamicable(BB.R, BB.I)
    assert verify_disjoint(BB.Q, BB.R)
    assert not verify_amicable(BB.R, BB.I)
    assert not verify_disjoint(BB.I, BB.Q)


def test_disjoint_witness_is_first_position():
    A = PolyMatrix([[0, a], [b, 0]])
    B = PolyMatrix([[0, c], [d, 0]])
    r = verify_disjoint(A, B)
    assert not r and r.witness == (0, 1, a * c)


def test_pairwise_amicable():
    assert verify_pairwise_amicable(example_48_inputs())
    assert verify_pairwise_amicable([BB.I, BB.P])
    assert verify_pairwise_amicable([BB.I, BB.Q])
    # P Q^T = -Q P^T, so the three together are not pairwise amicable
    r = verify_pairwise_amicable([BB.I, BB.P, BB.Q])
    assert not r and r.witness[:2] == (1, 2)
    assert not verify_pairwise_amicable([BB.I, BB.R])


# -------------------------------------------------------------- verify_aod

def test_aod_examples():
    aod = aod48()
    assert verify_aod(aod.C, aod.D, aod.type_c, aod.type_d)
    C, D = BB.Q * a + BB.P * b, BB.I * c + BB.R * d
    assert verify_aod(C, D, T_AB, TypeVector.of([("c", 1), ("d", 1)]))


def test_aod_self_renamed_not_amicable():
    C = PolyMatrix([[a, b], [b, -a]])
    t_cd = TypeVector.of([("c", 1), ("d", 1)])
    D = rename(C, dict(zip((v.id for v in T_AB.vars), t_cd.vars)))
    assert D == PolyMatrix([[c, d], [d, -c]])
    r = verify_aod(C, D, T_AB, t_cd)
    assert not r and "amicable" in r.detail


def test_aod_overlapping_variables_raise():
    C = PolyMatrix([[a, b], [b, -a]])
    with pytest.raises(OverlappingVariables):
        verify_aod(C, C, T_AB, T_AB)


# --------------------------------------------------------------- verify_pd

def test_pd12_and_condition_failures():
    pd = pd12()
    assert verify_pd(*pd.matrices, *pd.types)
    r = verify_pd(pd.M1, pd.M2, pd.M1, pd.type_m1, pd.type_m2, pd.type_m1)
    assert not r and r.witness[0] == "condition (i)"
    r = verify_pd(pd.M1, pd.M1, pd.N, pd.type_m1, pd.type_m1, pd.type_n)
    assert not r and r.witness[0] == "variables"


# ---------------------------------------------------------- fresh / collapse

def test_fresh_vars_disjoint_and_invertible():
    aod = aod48()
    D2, mapping = fresh_vars(aod.D)
    assert not (D2.variables() & aod.D.variables())
    assert not (D2.variables() & aod.C.variables())
    inverse = {v.id: DEFAULT_REGISTRY.by_id(k) for k, v in mapping.items()}
    assert rename(D2, inverse) == aod.D
    const = PolyMatrix.identity(3)
    assert fresh_vars(const)[0] == const


def test_fresh_vars_registry_exhausted():
    reg = Registry(capacity=1)
    u = reg.var("u")
    with pytest.raises(RegistryFull):
        fresh_vars(PolyMatrix([[Polynomial.variable(u)]]), reg)


def test_verify_od_invariant_under_fresh_vars():
    for e in _catalog_designs(max_order=48, kind="od"):
        od = e.build()
        M, mapping = fresh_vars(od.matrix)
        assert verify_od(M, od.type.renamed(mapping))


def test_collapse_examples():
    W = collapse(PolyMatrix([[a, b], [b, -a]]), T_AB)
    assert is_scalar_identity(gram(W)) == 2
    aod = aod48()
    assert is_scalar_identity(gram(collapse(aod.C, aod.type_c))) == 48
    pd = pd12()
    assert is_scalar_identity(gram(collapse(pd.N, pd.type_n))) == 9
    with pytest.raises(ValueError):
        collapse(PolyMatrix([[a, a], [a, -a]]), T_AB)


# ------------------------------------------------------------- invariants

@pytest.mark.parametrize("entry", list(_catalog_designs(max_order=168, kind="aod")),
                         ids=lambda e: e.name)
def test_catalog_aod_invariants(entry):
    aod = entry.build()
    od = aod.doubled()
    assert verify_od(od.matrix, od.type)
    for M, t in zip(aod.matrices, aod.types):
        assert is_scalar_identity(gram(collapse(M, t))) == t.total
        if entry.full:
            H = substitute(M, {v: 1 for v in t.vars})
            assert is_scalar_identity(gram(H)) == aod.order


@settings(max_examples=20, deadline=None)
@given(st.randoms(use_true_random=False))
def test_verify_od_invariant_under_permutation(rnd: random.Random):
    aod = aod48()
    n = aod.order
    perm = list(range(n))
    rnd.shuffle(perm)
    rows = aod.C.rows
    M = PolyMatrix([[rows[perm[i]][perm[j]] for j in range(n)] for i in range(n)])
    assert verify_od(M, aod.type_c)
