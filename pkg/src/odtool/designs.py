"""Axiom checks for orthogonal, amicable and product designs.

Every verifier returns a :class:`VerificationReport` instead of raising.
Checks run in a fixed order and stop at the first violation, so a failing
report is deterministic:

* entry shape (each entry 0 or +-x for a declared variable),
* Gram matrix is a scalar multiple of the identity,
* the scalar matches the claimed type variable by variable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from .algebra import (
    DEFAULT_REGISTRY, ONE, DimensionError, MatrixPolynomial, PolyMatrix,
    Polynomial, Registry, Var, gram, mono_exponents, mono_of,
    substitute,
)

__all__ = [
    "TypeVector", "VerificationReport", "AodSplit", "OverlappingVariables",
    "verify_od", "is_full", "verify_amicable", "verify_antiamicable",
    "verify_disjoint", "verify_aod", "verify_pd", "verify_pairwise_amicable",
    "fresh_vars", "rename", "collapse", "type_of",
]


class OverlappingVariables(ValueError):
    pass


@dataclass(frozen=True)
class TypeVector:
    """Weights bound to distinct variables, e.g. ``(4, 10, 34)`` on (a, x, b)."""

    weights: tuple[int, ...]
    vars: tuple[Var, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "vars", tuple(self.vars))
        if not self.weights:
            raise ValueError("a type vector needs at least one weight")
        if len(self.weights) != len(self.vars):
            raise ValueError("weights and variables differ in length")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        if len({v.id for v in self.vars}) != len(self.vars):
            raise ValueError("variables must be distinct")

    @classmethod
    def of(cls, pairs: Iterable[tuple[str | Var, int]],
           registry: Registry | None = None) -> "TypeVector":
        """``TypeVector.of([("a", 4), ("x", 10)])``"""
        reg = registry or DEFAULT_REGISTRY
        pairs = list(pairs)
        vs = tuple(v if isinstance(v, Var) else reg.var(v) for v, _ in pairs)
        return cls(tuple(w for _, w in pairs), vs)

    def __len__(self):
        return len(self.weights)

    @property
    def total(self) -> int:
        return sum(self.weights)

    def var_ids(self) -> frozenset[int]:
        return frozenset(v.id for v in self.vars)

    def form(self) -> Polynomial:
        """The quadratic form ``sum c_j x_j^2``."""
        return Polynomial._raw({mono_of(v.id, 2): w for v, w in zip(self.vars, self.weights)})

    def weight_of(self, v: Var) -> int:
        for u, w in zip(self.vars, self.weights):
            if u.id == v.id:
                return w
        raise KeyError(v.name)

    def concat(self, other: "TypeVector") -> "TypeVector":
        return TypeVector(self.weights + other.weights, self.vars + other.vars)

    def renamed(self, mapping: dict[int, Var]) -> "TypeVector":
        return TypeVector(self.weights, tuple(mapping.get(v.id, v) for v in self.vars))

    def sorted(self) -> "TypeVector":
        pairs = sorted(zip(self.weights, self.vars), key=lambda p: (p[0], p[1].id))
        return TypeVector(tuple(w for w, _ in pairs), tuple(v for _, v in pairs))

    def __str__(self):
        return "(" + ", ".join(str(w) for w in self.weights) + ")"

    def describe(self) -> str:
        return "(" + ", ".join(f"{v.name}:{w}" for v, w in zip(self.vars, self.weights)) + ")"


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    claim: str
    witness: tuple | None = None
    detail: str = ""

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError("a failing report needs a witness")

    def __bool__(self):
        return self.passed

    def format(self, registry: Registry | None = None) -> str:
        head = f"{'PASS' if self.passed else 'FAIL'} {self.claim}"
        if self.detail:
            head += f": {self.detail}"
        if self.witness is not None:
            head += "\n  witness: " + ", ".join(
                w.format(registry) if isinstance(w, Polynomial) else str(w)
                for w in self.witness)
        return head


def _pass(claim, detail=""):
    return VerificationReport(True, claim, None, detail)


def _fail(claim, witness, detail=""):
    return VerificationReport(False, claim, tuple(witness), detail)


@dataclass(frozen=True)
class AodSplit:
    """An AOD (C; D1 + D2) with D1 carrying a single variable."""

    C: PolyMatrix
    D1: PolyMatrix
    D2: PolyMatrix
    type_c: TypeVector
    type_d1: TypeVector
    type_d2: TypeVector

    def __post_init__(self):
        if len(self.type_d1) != 1:
            raise ValueError("D1 must be an OD in one variable")

    @property
    def D(self) -> PolyMatrix:
        return self.D1 + self.D2

    @property
    def type_d(self) -> TypeVector:
        return self.type_d1.concat(self.type_d2)


# ------------------------------------------------------------------ checks

def _gram_expanded(A: PolyMatrix) -> MatrixPolynomial:
    return A.expansion().gram()


def verify_od(A: PolyMatrix, t: TypeVector, claim: str | None = None) -> VerificationReport:
    claim = claim or f"OD({A.order}; {', '.join(map(str, t.weights))})"
    allowed = t.var_ids()
    for i, j, p in A.entries():
        if p:
            sv = p.signed_var()
            if sv is None or sv[0] not in allowed:
                return _fail(claim, (i, j, p), "entry is not 0 or +-x for a declared variable")
    try:
        G = _gram_expanded(A)
    except OverflowError:  # pragma: no cover - entries are +-1 here
        G = gram(A, "direct").expansion()
    q = G.scalar_identity()
    if q is None:
        off = _first_offending(G)
        return _fail(claim, off, "Gram matrix is not a scalar multiple of I")
    expected = t.form()
    if q != expected:
        for v, w in zip(t.vars, t.weights):
            got = q.coefficient(mono_of(v.id, 2))
            if got != w:
                return _fail(claim, ("type", v.name, w, got),
                             f"coefficient of {v.name}^2 is {got}, claimed {w}")
        return _fail(claim, ("type", q), "Gram form has terms outside the claimed type")
    return _pass(claim, f"A A^T = ({q.format()}) I")


def _first_offending(G: MatrixPolynomial):
    """First off-diagonal nonzero, or a diagonal entry differing from (0,0)."""
    hit = _offdiag(G).first_nonzero()
    if hit is not None:
        return hit
    q = G.entry(0, 0)
    for i in range(1, G.n):
        p = G.entry(i, i)
        if p != q:
            return (i, i, p)
    raise AssertionError("scalar_identity and witness search disagree")


def _offdiag(M: MatrixPolynomial) -> MatrixPolynomial:
    parts = {}
    for m, K in M.parts.items():
        K = sparse.csr_array(K - sparse.diags_array(K.diagonal(), format="csr"))
        K.eliminate_zeros()
        if K.nnz:
            parts[m] = K
    return MatrixPolynomial(M.n, parts, M.denominator)


def is_full(A: PolyMatrix) -> VerificationReport:
    for i, j, p in A.entries():
        if not p:
            return _fail("full", (i, j, p), "zero entry")
    return _pass("full")


def _relation(A: PolyMatrix, B: PolyMatrix, sign: int, claim: str) -> VerificationReport:
    if A.order != B.order:
        raise DimensionError(f"orders differ: {A.order} vs {B.order}")
    # B A^T = (A B^T)^T, so one product suffices
    P = A.expansion() @ B.expansion().T
    defect = P - P.T if sign > 0 else P + P.T
    hit = defect.first_nonzero()
    if hit is None:
        return _pass(claim)
    return _fail(claim, hit, "A B^T " + ("-" if sign > 0 else "+") + " B A^T is nonzero here")


def verify_amicable(A: PolyMatrix, B: PolyMatrix) -> VerificationReport:
    """A B^T = B A^T."""
    return _relation(A, B, 1, "amicable")


def verify_antiamicable(A: PolyMatrix, B: PolyMatrix) -> VerificationReport:
    """A B^T = -B A^T."""
    return _relation(A, B, -1, "anti-amicable")


def _support(A: PolyMatrix) -> sparse.csr_array:
    parts = A.expansion().parts.values()
    S = sparse.csr_array((A.order, A.order), dtype=np.int8)
    for K in parts:
        S = S + (K != 0).astype(np.int8)
    return S


def verify_disjoint(A: PolyMatrix, B: PolyMatrix) -> VerificationReport:
    """A * B = 0 entrywise.

    Polynomials have no zero divisors, so this holds exactly when no
    position carries a nonzero entry in both matrices.
    """
    if A.order != B.order:
        raise DimensionError(f"orders differ: {A.order} vs {B.order}")
    both = _support(A).multiply(_support(B)).tocoo()
    if both.nnz:
        k = min(range(both.nnz), key=lambda t: (both.row[t], both.col[t]))
        i, j = int(both.row[k]), int(both.col[k])
        return _fail("disjoint", (i, j, A[i, j] * B[i, j]), "entrywise product is nonzero")
    return _pass("disjoint")


def verify_aod(C: PolyMatrix, D: PolyMatrix, tC: TypeVector, tD: TypeVector) -> VerificationReport:
    overlap = tC.var_ids() & tD.var_ids()
    if overlap:
        names = sorted(DEFAULT_REGISTRY.name(v) for v in overlap)
        raise OverlappingVariables(f"variables shared by both sides: {', '.join(names)}")
    claim = (f"AOD({C.order}; {', '.join(map(str, tC.weights))}; "
             f"{', '.join(map(str, tD.weights))})")
    for side, M, t in (("C", C, tC), ("D", D, tD)):
        r = verify_od(M, t)
        if not r:
            return _fail(claim, r.witness, f"{side} is not an {r.claim}: {r.detail}")
    r = verify_amicable(C, D)
    if not r:
        return _fail(claim, r.witness, "C and D are not amicable")
    return _pass(claim)


def verify_pd(M1: PolyMatrix, M2: PolyMatrix, N: PolyMatrix,
              t1: TypeVector, t2: TypeVector, tN: TypeVector) -> VerificationReport:
    """Product design checks, each reported separately on failure.

    Order: the three component ODs, (i) M1*N = M2*N = 0, pairwise disjoint
    variable sets, (ii) M1+N and M2+N are ODs, (iii) M1 M2^T = M2 M1^T.
    """
    claim = (f"PD({M1.order}; {', '.join(map(str, t1.weights))}; "
             f"{', '.join(map(str, t2.weights))}; {', '.join(map(str, tN.weights))})")
    if not (M1.order == M2.order == N.order):
        return _fail(claim, ("order", M1.order, M2.order, N.order), "orders differ")
    for name, M, t in (("M1", M1, t1), ("M2", M2, t2), ("N", N, tN)):
        r = verify_od(M, t)
        if not r:
            return _fail(claim, r.witness, f"{name} is not an {r.claim}: {r.detail}")
    for name, M in (("M1", M1), ("M2", M2)):
        r = verify_disjoint(M, N)
        if not r:
            return _fail(claim, ("condition (i)",) + r.witness, f"{name}*N != 0")
    for (a, ta), (b, tb) in (((("M1", t1)), ("M2", t2)), (("M1", t1), ("N", tN)),
                               (("M2", t2), ("N", tN))):
        shared = ta.var_ids() & tb.var_ids()
        if shared:
            return _fail(claim, ("variables", a, b, sorted(shared)),
                         f"{a} and {b} share variables")
    for name, M, t in (("M1", M1, t1), ("M2", M2, t2)):
        r = verify_od(M + N, t.concat(tN))
        if not r:
            return _fail(claim, ("condition (ii)",) + r.witness, f"{name}+N is not an OD: {r.detail}")
    r = verify_amicable(M1, M2)
    if not r:
        return _fail(claim, ("condition (iii)",) + r.witness, "M1 M2^T != M2 M1^T")
    return _pass(claim, "conditions (i), (ii), (iii) hold")


def verify_pairwise_amicable(mats: Sequence[PolyMatrix]) -> VerificationReport:
    mats = list(mats)
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            r = verify_amicable(mats[a], mats[b])
            if not r:
                return _fail("pairwise amicable", (a, b) + r.witness,
                             f"matrices {a} and {b} are not amicable")
    return _pass("pairwise amicable")


# --------------------------------------------------------- variable hygiene

def rename(A: PolyMatrix, mapping: dict[int, Var]) -> PolyMatrix:
    return substitute(A, {vid: Polynomial.variable(v) for vid, v in mapping.items()})


def fresh_vars(A: PolyMatrix, registry: Registry | None = None,
               avoid: Iterable[int] | None = None) -> tuple[PolyMatrix, dict[int, Var]]:
    """Rename every variable of ``A`` injectively onto unused variables.

    Without ``avoid`` the targets are brand-new registry entries.  With
    ``avoid`` they only have to miss ``avoid`` and ``A``'s own variables,
    which keeps names stable across repeated calls.

    Returns the renamed matrix and the id -> new variable map, which callers
    apply to the matching type vectors with :meth:`TypeVector.renamed`.
    """
    reg = registry or DEFAULT_REGISTRY
    own = A.variables()
    taken = None if avoid is None else set(avoid) | own
    mapping = {}
    for vid in sorted(own):
        v = reg.fresh(reg.name(vid), taken)
        if taken is not None:
            taken.add(v.id)
        mapping[vid] = v
    return rename(A, mapping), mapping


def collapse(A: PolyMatrix, t: TypeVector) -> PolyMatrix:
    """Set every variable to 1 after checking that ``A`` is an OD of type ``t``."""
    r = verify_od(A, t)
    if not r:
        raise ValueError(f"cannot collapse: {r.format()}")
    return substitute(A, {v: ONE for v in t.vars})


def type_of(A: PolyMatrix, registry: Registry | None = None) -> TypeVector | None:
    """Read the type off the Gram form, or None when ``A`` is not an OD.

    Variables are listed by increasing weight, ties broken by variable id.
    """
    reg = registry or DEFAULT_REGISTRY
    q = _gram_expanded(A).scalar_identity()
    if q is None or not q:
        return None
    pairs = []
    for m, c in q.items():
        exps = mono_exponents(m)
        if len(exps) != 1 or list(exps.values()) != [2] or type(c) is not int or c <= 0:
            return None
        (vid,) = exps
        pairs.append((c, reg.by_id(vid)))
    pairs.sort(key=lambda p: (p[0], p[1].id))
    t = TypeVector(tuple(c for c, _ in pairs), tuple(v for _, v in pairs))
    return t if verify_od(A, t) else None
