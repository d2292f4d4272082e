"""Builders for the designs the package knows how to construct.

Every builder verifies its own output before returning it; a candidate that
fails verification raises :class:`ConstructionError` carrying the report.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import _tables
from .algebra import (
    DEFAULT_REGISTRY, ONE, ZERO, PolyMatrix, Polynomial, Var, backcirc, block,
    circ, is_scalar_identity, kron, mat_mul, substitute, transpose, var,
)
from .designs import (
    AodSplit, TypeVector, VerificationReport, fresh_vars, is_full, rename,
    type_of, verify_aod, verify_disjoint, verify_od, verify_pairwise_amicable,
    verify_pd, verify_amicable, verify_antiamicable,
)

__all__ = [
    "ConstructionError", "BaseBlocks", "OD", "AOD", "PD", "WolfeSets",
    "CatalogEntry", "base2_blocks", "sylvester_hadamard", "aod_2",
    "construction_blocks", "check_block_identities", "construction_16n", "construction_24n", "pd8",
    "pd12", "aod16_vars", "aod24_vars", "combine_pd_aod", "combined_weights",
    "double_aod", "wolfe_sets", "aod512", "od1024", "catalog", "get_entry",
]


class ConstructionError(ValueError):
    def __init__(self, message: str, report: VerificationReport | None = None):
        super().__init__(message if report is None else f"{message}\n{report.format()}")
        self.report = report


# ----------------------------------------------------------- design records

@dataclass(frozen=True)
class OD:
    matrix: PolyMatrix
    type: TypeVector
    kind = "od"

    @property
    def order(self):
        return self.matrix.order

    @property
    def matrices(self):
        return (self.matrix,)

    @property
    def types(self):
        return (self.type,)

    def verify(self) -> VerificationReport:
        return verify_od(self.matrix, self.type)


@dataclass(frozen=True)
class AOD:
    C: PolyMatrix
    D: PolyMatrix
    type_c: TypeVector
    type_d: TypeVector
    kind = "aod"

    @property
    def order(self):
        return self.C.order

    @property
    def matrices(self):
        return (self.C, self.D)

    @property
    def types(self):
        return (self.type_c, self.type_d)

    def verify(self) -> VerificationReport:
        return verify_aod(self.C, self.D, self.type_c, self.type_d)

    def doubled(self) -> OD:
        """``[[C, D], [D, -C]]``, an OD of twice the order."""
        M = block([[self.C, self.D], [self.D, -self.C]])
        return OD(M, self.type_c.concat(self.type_d))


@dataclass(frozen=True)
class PD:
    M1: PolyMatrix
    M2: PolyMatrix
    N: PolyMatrix
    type_m1: TypeVector
    type_m2: TypeVector
    type_n: TypeVector
    kind = "pd"

    @property
    def order(self):
        return self.M1.order

    @property
    def matrices(self):
        return (self.M1, self.M2, self.N)

    @property
    def types(self):
        return (self.type_m1, self.type_m2, self.type_n)

    def verify(self) -> VerificationReport:
        return verify_pd(*self.matrices, *self.types)


def _checked(design, what: str):
    r = design.verify()
    if not r:
        raise ConstructionError(f"{what} failed verification", r)
    return design


# -------------------------------------------------------------- primitives

@dataclass(frozen=True)
class BaseBlocks:
    I: PolyMatrix
    P: PolyMatrix
    Q: PolyMatrix
    R: PolyMatrix


@lru_cache(maxsize=None)
def base2_blocks() -> BaseBlocks:
    return BaseBlocks(
        I=PolyMatrix([[1, 0], [0, 1]]),
        P=PolyMatrix([[0, 1], [1, 0]]),
        Q=PolyMatrix([[1, 0], [0, -1]]),
        R=PolyMatrix([[0, 1], [-1, 0]]),
    )


def _sylvester_array(k: int) -> np.ndarray:
    H = np.ones((1, 1), dtype=np.int64)
    h2 = np.array([[1, 1], [1, -1]], dtype=np.int64)
    for _ in range(k):
        H = np.kron(H, h2)
    return H


def sylvester_hadamard(k: int) -> PolyMatrix:
    """Hadamard matrix of order 2**k as an iterated Kronecker power."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return PolyMatrix.from_array(_sylvester_array(k))


def aod_2() -> AOD:
    """AOD(2; 1, 1; 1, 1): C = aQ + bP, D = cI + dR."""
    a, b, c, d = (var(n) for n in "abcd")
    B = base2_blocks()
    aod = AOD(B.Q * a + B.P * b, B.I * c + B.R * d,
              TypeVector.of([("a", 1), ("b", 1)]), TypeVector.of([("c", 1), ("d", 1)]))
    return _checked(aod, "AOD(2)")


# ------------------------------------------------- 16n / 24n constructions

def _parse_table(text: str) -> list[list[tuple[int, str | None]]]:
    rows = []
    for line in text.strip().splitlines():
        row = []
        for tok in line.split():
            if tok == "0":
                row.append((0, None))
            elif tok.startswith("-"):
                row.append((-1, tok[1:]))
            else:
                row.append((1, tok))
        rows.append(row)
    return rows


_LAYOUTS = {
    16: tuple(_parse_table(t) for t in (_tables.M1_16, _tables.M2_16, _tables.N_16)),
    24: tuple(_parse_table(t) for t in (_tables.M1_24, _tables.M2_24, _tables.N_24)),
}


def _assemble(layout, blocks: dict[str, PolyMatrix]) -> PolyMatrix:
    grid = []
    for row in layout:
        out = []
        for sign, name in row:
            if name is None:
                out.append(0)
            else:
                M = blocks[name]
                out.append(M if sign > 0 else -M)
        grid.append(out)
    return block(grid)


def construction_blocks(size: int, A1, A2, B, C, D, E, F, G):
    """The block matrices ``(M1, M2, N1, N2)`` of the 16n (size 16) or
    24n (size 24) construction, without any precondition checks."""
    M1_l, M2_l, N_l = _LAYOUTS[size]
    M1 = _assemble(M1_l, {"B": B, "C": C, "D": D})
    M2 = _assemble(M2_l, {"E": E, "F": F, "G": G})
    N1 = _assemble(N_l, {"A": A1})
    N2 = _assemble(N_l, {"A": A2})
    return M1, M2, N1, N2


def check_block_identities(M1, M2, N1, N2) -> VerificationReport:
    """N1 N2^T = N2 N1^T, M1 M2^T = M2 M1^T, and for every i, j:
    M_j N_i^T = -N_i M_j^T and M_j * N_i = 0."""
    checks = [("N1, N2 amicable", verify_amicable, N1, N2),
              ("M1, M2 amicable", verify_amicable, M1, M2)]
    for j, M in ((1, M1), (2, M2)):
        for i, N in ((1, N1), (2, N2)):
            checks.append((f"M{j}, N{i} anti-amicable", verify_antiamicable, M, N))
            checks.append((f"M{j} * N{i} = 0", verify_disjoint, M, N))
    for label, check, X, Y in checks:
        r = check(X, Y)
        if not r:
            return VerificationReport(False, label, r.witness, r.detail)
    return VerificationReport(True, "block identities")


def _weighted_sum(scale: int, A, others) -> PolyMatrix:
    acc = mat_mul(A, transpose(A)) * scale
    for X in others:
        acc = acc + mat_mul(X, transpose(X))
    return acc


def _construction(size: int, inputs, mode: str, H: PolyMatrix | None):
    A1, A2, B, C, D, E, F, G = inputs
    n = A1.order
    if any(M.order != n for M in inputs):
        raise ConstructionError("all eight input blocks must share one order")
    r = verify_pairwise_amicable(inputs)
    if not r:
        raise ConstructionError("input blocks are not pairwise amicable", r)
    scale = 5 if size == 16 else 9
    lhs1 = f"{scale}*A1*A1^T + B*B^T + C*C^T + D*D^T"
    lhs2 = f"{scale}*A2*A2^T + E*E^T + F*F^T + G*G^T"
    if is_scalar_identity(_weighted_sum(scale, A1, (B, C, D))) is None:
        raise ConstructionError(f"{lhs1} is not a scalar multiple of I")
    if is_scalar_identity(_weighted_sum(scale, A2, (E, F, G))) is None:
        raise ConstructionError(f"{lhs2} is not a scalar multiple of I")

    M1, M2, N1, N2 = construction_blocks(size, *inputs)
    r = check_block_identities(M1, M2, N1, N2)
    if not r:
        raise ConstructionError(f"block identities of the {size}n construction fail", r)
    bb = base2_blocks()
    if mode == "disjoint":
        U = kron(N1, bb.I) + kron(M1, bb.Q)
        V = kron(N2, bb.P) + kron(M2, transpose(bb.R))
    elif mode == "full":
        H = H if H is not None else sylvester_hadamard(1)
        if H.order != 2 or not H.is_constant() or any(
                p.constant_value() not in (1, -1) for _, _, p in H.entries()):
            raise ConstructionError("H must be a +-1 matrix of order 2")
        if is_scalar_identity(mat_mul(H, transpose(H))) != 2:
            raise ConstructionError("H is not a Hadamard matrix")
        for k, M in enumerate(inputs):
            r = is_full(M)
            if not r:
                raise ConstructionError(f"input block {k} has a zero entry", r)
        U = kron(N1, H) + kron(M1, mat_mul(bb.Q, H))
        V = kron(N2, mat_mul(bb.P, H)) + kron(M2, mat_mul(transpose(bb.R), H))
    else:
        raise ValueError(f"unknown mode {mode!r}")

    tU, tV = type_of(U), type_of(V)
    if tU is None or tV is None:
        raise ConstructionError(f"U or V of the {size}n construction is not an OD")
    r = verify_aod(U, V, tU, tV)
    if not r:
        raise ConstructionError(f"(U; V) of the {size}n construction is not an AOD", r)
    r = verify_disjoint(U, V) if mode == "disjoint" else is_full(U)
    if r and mode == "full":
        r = is_full(V)
    if not r:
        raise ConstructionError(f"{mode} property failed", r)
    return U, V


def construction_16n(A1, A2, B, C, D, E, F, G, mode: str = "full",
                     H: PolyMatrix | None = None):
    """AOD of order 16n from eight pairwise amicable blocks of order n.

    ``mode="disjoint"`` gives U = N1(x)I + M1(x)Q, V = N2(x)P + M2(x)R^T;
    ``mode="full"`` multiplies the 2x2 factors on the right by a Hadamard
    matrix H of order 2.
    """
    return _construction(16, (A1, A2, B, C, D, E, F, G), mode, H)


def construction_24n(A1, A2, B, C, D, E, F, G, mode: str = "full",
                     H: PolyMatrix | None = None):
    """As :func:`construction_16n` with the 12-block layouts; order 24n."""
    return _construction(24, (A1, A2, B, C, D, E, F, G), mode, H)


def _aod_from(U, V) -> AOD:
    return AOD(U, V, type_of(U), type_of(V))


def example_48_inputs():
    a, b, c, d, x = (var(n) for n in "abcdx")
    return (backcirc([x, -b, b]), circ([-d, d, d]), circ([b, b, b]), circ([-a, b, b]),
            circ([a, b, b]), circ([d, d, d]), circ([-c, d, d]), circ([c, d, d]))


def example_72_inputs():
    b, d, x = var("b"), var("d"), var("x")
    return (backcirc([x, -b, b]), circ([-d, d, d]), circ([b, b, b]), circ([b, b, b]),
            circ([b, b, b]), circ([d, d, d]), circ([d, d, d]), circ([d, d, d]))


def example_168_inputs(as_printed: bool = False):
    """Order-7 inputs of the AOD(168; 4,164; 4,164).

    The +-1 pattern is skew apart from its first entry, so a circulant built
    from it is amicable with the symmetric circulants only when it is taken
    back-circulant.  With ``as_printed=True`` A2, D and G are circulant
    instead; that set fails the pairwise amicability precondition.
    """
    a, b, c, d = (var(n) for n in "abcd")
    pat = (1, -1, -1, 1, -1, 1, 1)
    skew = circ if as_printed else backcirc
    return (backcirc([s * a for s in pat]), skew([s * c for s in pat]),
            circ([b] + [a] * 6), circ([-b] + [a] * 6), skew([s * a for s in pat]),
            circ([d] + [c] * 6), circ([-d] + [c] * 6), skew([s * c for s in pat]))


def aod48(mode: str = "full") -> AOD:
    return _aod_from(*construction_16n(*example_48_inputs(), mode=mode))


def aod72(mode: str = "full") -> AOD:
    return _aod_from(*construction_24n(*example_72_inputs(), mode=mode))


def aod168() -> AOD:
    return _aod_from(*construction_24n(*example_168_inputs(), mode="full"))


# ------------------------------------------------ variable instantiations

def _scalar(p: Polynomial) -> PolyMatrix:
    return PolyMatrix([[p]])


def _pd(size: int) -> PD:
    names = {"A1": "a", "B": "b", "C": "c", "D": "d", "E": "e", "F": "f", "G": "g"}
    S = {k: _scalar(var(v)) for k, v in names.items()}
    M1, M2, N1, _ = construction_blocks(size, S["A1"], S["A1"], S["B"], S["C"], S["D"],
                                        S["E"], S["F"], S["G"])
    weight = 5 if size == 16 else 9
    pd = PD(M1, M2, N1,
            TypeVector.of([("b", 1), ("c", 1), ("d", 1)]),
            TypeVector.of([("e", 1), ("f", 1), ("g", 1)]),
            TypeVector.of([("a", weight)]))
    return _checked(pd, f"PD({size // 2})")


def pd8() -> PD:
    """PD(8; 1,1,1; 1,1,1; 5) from the 16n layouts with 1x1 variable blocks."""
    return _pd(16)


def pd12() -> PD:
    """PD(12; 1,1,1; 1,1,1; 9) from the 24n layouts with 1x1 variable blocks."""
    return _pd(24)


def _aod_vars(size: int) -> AOD:
    names = ("a", "e", "b", "c", "d", "f", "g", "h")
    U, V = _construction(size, tuple(_scalar(var(v)) for v in names), "full", None)
    big = 10 if size == 16 else 18
    tc = TypeVector.of([("b", 2), ("c", 2), ("d", 2), ("a", big)])
    td = TypeVector.of([("f", 2), ("g", 2), ("h", 2), ("e", big)])
    return _checked(AOD(U, V, tc, td), f"AOD({size})")


def aod16_vars() -> AOD:
    """Full AOD(16; 2,2,2,10; 2,2,2,10)."""
    return _aod_vars(16)


def aod24_vars() -> AOD:
    """Full AOD(24; 2,2,2,18; 2,2,2,18)."""
    return _aod_vars(24)


# ------------------------------------------------------ PD x AOD combiner

def combined_weights(a: Sequence[int], b: Sequence[int], u: Sequence[int],
                     c: Sequence[int], v: int, w: Sequence[int], variant: str) -> tuple[int, ...]:
    """Type of the OD obtained from PD(a; b; u) and AOD(c; v, w).

    ``variant`` is one of ``"i"``, ``"ii"``, ``"iii"``, ``"iv"``:
    i keeps the N and M2 variables, ii trades N's variables for C's,
    iii trades M2's variables for D2's, iv does both.
    """
    if variant not in ("i", "ii", "iii", "iv"):
        raise ValueError(f"unknown variant {variant!r}")
    out = [v * x for x in a]
    if variant in ("i", "ii"):
        out += [sum(w) * x for x in b]
    else:
        out += [x * sum(b) for x in w]
    if variant in ("i", "iii"):
        out += [sum(c) * x for x in u]
    else:
        out += [x * sum(u) for x in c]
    return tuple(out)


def _ones(t: TypeVector):
    return {v: ONE for v in t.vars}


def combine_pd_aod(pd: PD, aod: AodSplit, variant: str) -> OD:
    """OD of order m*n from a PD of order n and an AOD (C; D1 + D2) of order m.

    The candidate is ``M1(x)D1' + M2'(x)D2' + N'(x)C'`` where a primed factor
    has its variables set to 1; which factor of each pair keeps its variables
    is fixed by ``variant``.  The result is always verified.
    """
    if variant not in ("i", "ii", "iii", "iv"):
        raise ValueError(f"unknown variant {variant!r}")
    r = pd.verify()
    if not r:
        raise ConstructionError("product design failed verification", r)
    r = verify_aod(aod.C, aod.D, aod.type_c, aod.type_d)
    if not r:
        raise ConstructionError("amicable design failed verification", r)

    C, D1, D2 = aod.C, aod.D1, aod.D2
    tc, td1, td2 = aod.type_c, aod.type_d1, aod.type_d2
    pd_vars = pd.M1.variables() | pd.M2.variables() | pd.N.variables()
    aod_vars = C.variables() | D1.variables() | D2.variables()
    if pd_vars & aod_vars:
        # rename the AOD side as a unit so C and D stay consistent
        carrier = PolyMatrix([[sum((Polynomial.variable(v) for v in sorted(aod_vars)), ZERO)]])
        _, mapping = fresh_vars(carrier, avoid=pd_vars)
        C, D1, D2 = rename(C, mapping), rename(D1, mapping), rename(D2, mapping)
        tc, td1, td2 = tc.renamed(mapping), td1.renamed(mapping), td2.renamed(mapping)

    v = td1.weights[0]
    D1c = substitute(D1, _ones(td1))
    keep_m2 = variant in ("i", "ii")
    keep_n = variant in ("i", "iii")
    M2x = pd.M2 if keep_m2 else substitute(pd.M2, _ones(pd.type_m2))
    D2x = substitute(D2, _ones(td2)) if keep_m2 else D2
    Nx = pd.N if keep_n else substitute(pd.N, _ones(pd.type_n))
    Cx = substitute(C, _ones(tc)) if keep_n else C
    X = kron(pd.M1, D1c) + kron(M2x, D2x) + kron(Nx, Cx)

    weights = [v * x for x in pd.type_m1.weights]
    vars_ = list(pd.type_m1.vars)
    if keep_m2:
        weights += [td2.total * x for x in pd.type_m2.weights]
        vars_ += pd.type_m2.vars
    else:
        weights += [x * pd.type_m2.total for x in td2.weights]
        vars_ += td2.vars
    if keep_n:
        weights += [tc.total * x for x in pd.type_n.weights]
        vars_ += pd.type_n.vars
    else:
        weights += [x * pd.type_n.total for x in tc.weights]
        vars_ += tc.vars
    assert tuple(weights) == combined_weights(
        pd.type_m1.weights, pd.type_m2.weights, pd.type_n.weights,
        tc.weights, v, td2.weights, variant)
    return _checked(OD(X, TypeVector(tuple(weights), tuple(vars_))),
                    f"variant ({variant}) of the PD x AOD product")


def aod2_split() -> AodSplit:
    """AOD(2; 1,1; 1,1) with D1 = cI and D2 = dR."""
    aod = aod_2()
    c, d = var("c"), var("d")
    bb = base2_blocks()
    return AodSplit(aod.C, bb.I * c, bb.R * d, aod.type_c,
                    TypeVector.of([("c", 1)]), TypeVector.of([("d", 1)]))


# ---------------------------------------------------------------- doubling

def _doubling_gadgets():
    """2x2 triples (S, T, K): S, T disjoint signed permutations with
    S T^T = -T S^T, K K^T = 2I, and S, T, K pairwise amicable.

    The known-good triple (Q, P, I + R) comes first; the rest is a bounded
    enumeration used only if that candidate fails verification.
    """
    bb = base2_blocks()
    yield bb.Q, bb.P, bb.I + bb.R
    signed = []
    for perm in ((0, 1), (1, 0)):
        for s0, s1 in itertools.product((1, -1), repeat=2):
            M = [[0, 0], [0, 0]]
            M[0][perm[0]], M[1][perm[1]] = s0, s1
            signed.append(PolyMatrix(M))
    weight2 = [PolyMatrix([[p, q], [r, s]])
               for p, q, r, s in itertools.product((1, -1), repeat=4)]
    weight2 = [K for K in weight2 if is_scalar_identity(mat_mul(K, transpose(K))) == 2]
    for S, T in itertools.permutations(signed, 2):
        if not verify_disjoint(S, T) or not verify_antiamicable(S, T):
            continue
        for K in weight2:
            if verify_amicable(S, K) and verify_amicable(T, K):
                yield S, T, K


def _double_once(aod: AOD, split: Var) -> AOD:
    tc, td = aod.type_c, aod.type_d
    u1 = tc.weight_of(split)
    W = substitute(aod.C, {v: (ONE if v.id == split.id else ZERO) for v in tc.vars})
    X2 = aod.C - W * Polynomial.variable(split)
    z = DEFAULT_REGISTRY.fresh(split.name, avoid=aod.C.variables() | aod.D.variables())
    x1p, zp = Polynomial.variable(split), Polynomial.variable(z)
    rest = [(v, w) for v, w in zip(tc.vars, tc.weights) if v.id != split.id]
    new_tc = TypeVector((u1, u1) + tuple(2 * w for _, w in rest),
                        (split, z) + tuple(v for v, _ in rest))
    new_td = TypeVector(tuple(2 * w for w in td.weights), td.vars)
    last = None
    for S, T, K in _doubling_gadgets():
        M = S * x1p + T * zp
        cand = AOD(kron(W, M) + kron(X2, K), kron(aod.D, K), new_tc, new_td)
        last = cand.verify()
        if last:
            return cand
    raise ConstructionError("no doubling gadget produced a valid AOD", last)


def double_aod(aod: AOD, t: int = 1, split: Var | str | int = 0) -> AOD:
    """AOD of order 2**t * n.

    The variable ``split`` of C (a Var, its name, or an index into
    ``aod.type_c``) of weight u1 becomes weights u1, u1, 2u1, ..., 2**(t-1) u1;
    all other C weights and every D weight are multiplied by 2**t.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    r = aod.verify()
    if not r:
        raise ConstructionError("input is not an AOD", r)
    if isinstance(split, int):
        split = aod.type_c.vars[split]
    elif isinstance(split, str):
        split = DEFAULT_REGISTRY.var(split)
    aod.type_c.weight_of(split)
    for _ in range(t):
        aod = _double_once(aod, split)
    return aod


# -------------------------------------------------- signed permutation sets

@dataclass(frozen=True)
class WolfeSets:
    """Two families of s+1 signed permutation matrices of order 2**s * d."""

    s: int
    d: int
    A: tuple[PolyMatrix, ...]
    B: tuple[PolyMatrix, ...]

    @property
    def order(self):
        return 2 ** self.s * self.d

    def check(self) -> VerificationReport:
        """Signed-permutation shape, then (i) and (ii) for A and B, then (iii)."""
        for fam, mats in (("A", self.A), ("B", self.B)):
            for k, M in enumerate(mats):
                arr = M.to_array()
                if not ((np.abs(arr).sum(axis=0) == 1).all() and (np.abs(arr).sum(axis=1) == 1).all()):
                    return VerificationReport(False, "signed permutation", (fam, k + 1))
        for fam, mats in (("A", self.A), ("B", self.B)):
            for i, j in itertools.combinations(range(len(mats)), 2):
                for check in (verify_antiamicable, verify_disjoint):
                    r = check(mats[i], mats[j])
                    if not r:
                        return VerificationReport(False, f"{fam} {r.claim}",
                                                  (fam, i + 1, j + 1) + r.witness)
        for i, Ai in enumerate(self.A):
            for j, Bj in enumerate(self.B):
                r = verify_amicable(Ai, Bj)
                if not r:
                    return VerificationReport(False, "A/B amicable", (i + 1, j + 1) + r.witness)
        return VerificationReport(True, f"signed permutation sets of order {self.order}")


def _kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.int64)
    for f in factors:
        out = np.kron(out, f)
    return out


_I2 = np.array([[1, 0], [0, 1]], dtype=np.int64)
_P2 = np.array([[0, 1], [1, 0]], dtype=np.int64)
_Q2 = np.array([[1, 0], [0, -1]], dtype=np.int64)
_R2 = np.array([[0, 1], [-1, 0]], dtype=np.int64)


def _wolfe_arrays(s: int, d: int):
    Id = np.eye(d, dtype=np.int64)
    A = [_kron_all([_I2] * s + [Id])]
    B = [_kron_all([_P2] * s + [Id])]
    for k in range(2, s + 2):
        tail = [_P2] * (s - k + 1) + [Id]
        A.append(_kron_all([_I2] * (k - 2) + [_R2] + tail))
        B.append(_kron_all([_I2] * (k - 2) + [_Q2] + tail))
    return A, B


def wolfe_sets(s: int, d: int = 1, check: bool = True) -> WolfeSets:
    """Signed permutation matrices A_1..A_{s+1}, B_1..B_{s+1} of order 2**s * d.

    A_1 = I(x)...(x)I(x)I_d and A_k = I^(k-2) (x) R (x) P^(s-k+1) (x) I_d;
    the B family uses P^s for B_1 and Q in place of R.  Empty Kronecker
    products are the 1x1 identity.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    if d < 1 or d % 2 == 0:
        raise ValueError("d must be a positive odd integer")
    A, B = _wolfe_arrays(s, d)
    ws = WolfeSets(s, d, tuple(PolyMatrix.from_array(a) for a in A),
                   tuple(PolyMatrix.from_array(b) for b in B))
    if check:
        r = ws.check()
        if not r:
            raise ConstructionError("signed permutation sets failed", r)
    return ws


# ------------------------------------------------------- order 512 / 1024

def _half_blocks(A: Sequence[np.ndarray], H: np.ndarray, names: Sequence[str]):
    """X_j = 1/2 x_{2j-1} (A_{2j-1} - A_{2j}) H + 1/2 x_{2j} (A_{2j-1} + A_{2j}) H."""
    half = Fraction(1, 2)
    out = []
    for j in range(4):
        a, b = A[2 * j], A[2 * j + 1]
        lo = var(names[2 * j]) * half
        hi = var(names[2 * j + 1]) * half
        out.append(PolyMatrix.from_array((a - b) @ H) * lo
                   + PolyMatrix.from_array((a + b) @ H) * hi)
    return out


def aod512_blocks():
    """The order-128 blocks X_1..X_4 and Y_1..Y_4 of the order-512 AOD."""
    A, B = _wolfe_arrays(7, 1)
    H = _sylvester_array(7)
    X = _half_blocks(A, H, [f"x{i}" for i in range(1, 9)])
    Y = _half_blocks(B, H, [f"y{i}" for i in range(1, 9)])
    return X, Y


def _stack(Z):
    bb = base2_blocks()
    I, P = bb.I, bb.P
    return (kron(kron(I, I), Z[0]) + kron(kron(I, P), Z[1])
            + kron(kron(P, I), Z[2]) + kron(kron(P, P), Z[3]))


@lru_cache(maxsize=1)
def aod512() -> AOD:
    """Full AOD(512; 64 x 8; 64 x 8) in variables x1..x8 and y1..y8."""
    X, Y = aod512_blocks()
    tc = TypeVector.of([(f"x{i}", 64) for i in range(1, 9)])
    td = TypeVector.of([(f"y{i}", 64) for i in range(1, 9)])
    return _checked(AOD(_stack(X), _stack(Y), tc, td), "AOD(512)")


@lru_cache(maxsize=1)
def od1024() -> OD:
    """Full OD(1024; 64 x 16) as [[C, D], [D, -C]] of the order-512 AOD."""
    return _checked(aod512().doubled(), "OD(1024)")


# ------------------------------------------------------------------ catalog

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    order: int
    weights: tuple[tuple[int, ...], ...]
    build: Callable = field(repr=False)
    description: str = ""
    full: bool = False

    def claim(self) -> str:
        inner = "; ".join(", ".join(map(str, w)) for w in self.weights)
        return f"{self.kind.upper()}({self.order}; {inner})"

    def build_verified(self):
        """Build, check the claimed multiset of weights, and verify."""
        design = self.build()
        got = tuple(tuple(sorted(t.weights)) for t in design.types)
        want = tuple(tuple(sorted(w)) for w in self.weights)
        if design.order != self.order or got != want:
            raise ConstructionError(
                f"{self.name}: built {design.kind.upper()}({design.order}; {got}), "
                f"catalog claims {self.claim()}")
        _checked(design, self.name)
        if self.full:
            for M in design.matrices:
                r = is_full(M)
                if not r:
                    raise ConstructionError(f"{self.name} is not full", r)
        return design


def _double(base: Callable[[], AOD], t: int) -> Callable[[], AOD]:
    def build():
        src = base()
        heavy = max(range(len(src.type_c)), key=lambda i: src.type_c.weights[i])
        return double_aod(src, t, split=heavy)
    return build


def _product(pd_builder, variant):
    return lambda: combine_pd_aod(pd_builder(), aod2_split(), variant)


_R = lambda w, k: (w,) * k  # noqa: E731


@lru_cache(maxsize=1)
def catalog() -> tuple[CatalogEntry, ...]:
    return (
        CatalogEntry("aod2", "aod", 2, ((1, 1), (1, 1)), aod_2,
                     "C = aQ + bP, D = cI + dR", full=True),
        CatalogEntry("aod48_example_3_2", "aod", 48, ((4, 10, 34), (4, 44)), aod48,
                     "16n construction, circulant inputs of order 3, full", full=True),
        CatalogEntry("aod48_example_3_2_disjoint", "aod", 48, ((2, 5, 17), (2, 22)),
                     lambda: aod48("disjoint"), "16n construction, disjoint form"),
        CatalogEntry("aod72_example_3_4", "aod", 72, ((18, 54), (72,)), aod72,
                     "24n construction, circulant inputs of order 3, full", full=True),
        CatalogEntry("aod72_example_3_4_disjoint", "aod", 72, ((9, 27), (36,)),
                     lambda: aod72("disjoint"), "24n construction, disjoint form"),
        CatalogEntry("aod168_example_3_5", "aod", 168, ((4, 164), (4, 164)), aod168,
                     "24n construction, circulant inputs of order 7, full", full=True),
        CatalogEntry("pd8", "pd", 8, ((1, 1, 1), (1, 1, 1), (5,)), pd8,
                     "16n layouts with 1x1 variable blocks"),
        CatalogEntry("pd12", "pd", 12, ((1, 1, 1), (1, 1, 1), (9,)), pd12,
                     "24n layouts with 1x1 variable blocks"),
        CatalogEntry("aod16", "aod", 16, ((2, 2, 2, 10), (2, 2, 2, 10)), aod16_vars,
                     "16n construction on single variables", full=True),
        CatalogEntry("aod24", "aod", 24, ((2, 2, 2, 18), (2, 2, 2, 18)), aod24_vars,
                     "24n construction on single variables", full=True),
        CatalogEntry("aod32_doubled", "aod", 32, ((4, 4, 4, 10, 10), (4, 4, 4, 20)),
                     _double(aod16_vars, 1), "aod16 doubled once", full=True),
        CatalogEntry("aod48_doubled", "aod", 48, ((4, 4, 4, 18, 18), (4, 4, 4, 36)),
                     _double(aod24_vars, 1), "aod24 doubled once", full=True),
        CatalogEntry("aod96_doubled", "aod", 96, ((8, 8, 8, 18, 18, 36), (8, 8, 8, 72)),
                     _double(aod24_vars, 2), "aod24 doubled twice", full=True),
        CatalogEntry("od16_product", "od", 16, ((1, 1, 1, 1, 1, 1, 10),),
                     _product(pd8, "i"), "pd8 x aod2, variant (i)", full=True),
        CatalogEntry("od24_product", "od", 24, ((1, 1, 1, 1, 1, 1, 9, 9),),
                     _product(pd12, "ii"), "pd12 x aod2, variant (ii)", full=True),
        CatalogEntry("aod512", "aod", 512, (_R(64, 8), _R(64, 8)), aod512,
                     "signed permutation sets of order 128 and a Hadamard matrix", full=True),
        CatalogEntry("od1024", "od", 1024, (_R(64, 16),), od1024,
                     "[[C, D], [D, -C]] of aod512", full=True),
    )


def get_entry(name: str) -> CatalogEntry:
    for e in catalog():
        if e.name == name:
            return e
    raise KeyError(name)
