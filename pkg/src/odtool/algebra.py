"""Exact symbolic matrices over commuting variables.

Entries are sparse multivariate polynomials with integer or
:class:`fractions.Fraction` coefficients.  A monomial is packed into a single
Python int holding one 16-bit exponent field per variable id, so multiplying
monomials is integer addition and monomials hash cheaply.

Two routes exist for matrix products.  The *direct* route multiplies
polynomial entries one by one.  The *expanded* route writes a matrix as
``sum(monomial * integer_matrix) / denominator`` (:class:`MatrixPolynomial`)
and multiplies sparse integer matrices with scipy.  Both give identical
results; the expanded route is the only practical one for orders in the
hundreds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

import numpy as np
from scipy import sparse

__all__ = [
    "Var", "Registry", "RegistryFull", "DEFAULT_REGISTRY", "var", "variables",
    "Polynomial", "ZERO", "ONE", "PolyMatrix", "MatrixPolynomial",
    "VarDecomposition", "NonlinearEntryError", "DimensionError",
    "mat_mul", "transpose", "kron", "hadamard_product", "circ", "backcirc",
    "block", "gram", "is_scalar_identity", "substitute", "decompose_by_variable",
]

_BITS = 16
_FIELD = (1 << _BITS) - 1
# dense python loops beat scipy call overhead below this order
_EXPAND_THRESHOLD = 12
_INT64_SAFE = 1 << 62

Scalar = Union[int, Fraction]


class DimensionError(ValueError):
    pass


class RegistryFull(RuntimeError):
    pass


class NonlinearEntryError(ValueError):
    def __init__(self, row, col, poly):
        super().__init__(f"entry ({row}, {col}) = {poly} is not a linear form")
        self.row, self.col, self.poly = row, col, poly


# ---------------------------------------------------------------- variables

@dataclass(frozen=True, order=True)
class Var:
    id: int
    name: str

    def __str__(self):
        return self.name


class Registry:
    """Name <-> id table for variables.  Ids are handed out densely from 0."""

    def __init__(self, capacity: int = 4096):
        self.capacity = capacity
        self._by_name: dict[str, Var] = {}
        self._by_id: list[Var] = []

    def __len__(self):
        return len(self._by_id)

    def var(self, name: str) -> Var:
        v = self._by_name.get(name)
        if v is None:
            if len(self._by_id) >= self.capacity:
                raise RegistryFull(f"registry holds {self.capacity} variables")
            v = Var(len(self._by_id), name)
            self._by_name[name] = v
            self._by_id.append(v)
        return v

    def lookup(self, name: str) -> Var | None:
        return self._by_name.get(name)

    def by_id(self, vid: int) -> Var:
        return self._by_id[vid]

    def name(self, vid: int) -> str:
        if vid < len(self._by_id):
            return self._by_id[vid].name
        return f"v{vid}"

    def fresh(self, base: str, avoid: Iterable[int] | None = None) -> Var:
        """A variable named ``base`` plus primes.

        Without ``avoid`` the variable is new to the registry.  With
        ``avoid`` the first primed name whose id is not in ``avoid`` is used,
        so repeated constructions reuse the same names.
        """
        avoid = None if avoid is None else set(avoid)
        name = base + "'"
        while True:
            v = self._by_name.get(name)
            if v is None:
                return self.var(name)
            if avoid is not None and v.id not in avoid:
                return v
            name += "'"


DEFAULT_REGISTRY = Registry()


def var(name: str, registry: Registry | None = None) -> "Polynomial":
    """The polynomial consisting of the single variable ``name``."""
    v = (registry or DEFAULT_REGISTRY).var(name)
    return Polynomial.variable(v)


def variables(names: str | Sequence[str], registry: Registry | None = None):
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return tuple(var(n, registry) for n in names)


# ---------------------------------------------------------------- monomials

def mono_of(vid: int, exp: int = 1) -> int:
    if not 0 <= exp <= _FIELD:
        raise OverflowError(f"exponent {exp} does not fit a monomial field")
    return exp << (_BITS * vid)


def mono_exponents(m: int) -> dict[int, int]:
    out = {}
    vid = 0
    while m:
        e = m & _FIELD
        if e:
            out[vid] = e
        m >>= _BITS
        vid += 1
    return out


def mono_degree(m: int) -> int:
    d = 0
    while m:
        d += m & _FIELD
        m >>= _BITS
    return d


def _linear_var(m: int) -> int | None:
    """Variable id when ``m`` is a single variable to the first power."""
    if m and m & (m - 1) == 0:
        pos = m.bit_length() - 1
        if pos % _BITS == 0:
            return pos // _BITS
    return None


def _normalize(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


# --------------------------------------------------------------- polynomial

class Polynomial:
    """Immutable sparse polynomial: ``{monomial: nonzero coefficient}``.

    Arithmetic accepts ints and Fractions on either side.  Results that are
    zero, or products with the constants +-1, reuse existing objects, which
    keeps large design matrices cheap in memory.
    """

    __slots__ = ("_terms", "_hash", "_neg", "_deg")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if m < 0:
                    raise ValueError("monomials are non-negative ints")
                if c:
                    if not isinstance(c, Rational):
                        raise TypeError(f"coefficient {c!r} is not exact")
                    clean[m] = _normalize(Fraction(c) if not isinstance(c, int) else c)
        self._terms = clean
        self._hash = None
        self._neg = None
        self._deg = None

    @classmethod
    def _raw(cls, terms):
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        p._neg = None
        p._deg = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> "Polynomial":
        if isinstance(c, Polynomial):
            return c
        if not c:
            return ZERO
        if c == 1:
            return ONE
        if c == -1:
            return MINUS_ONE
        return cls({0: c})

    @classmethod
    def variable(cls, v: Var | int, coeff: Scalar = 1) -> "Polynomial":
        vid = v.id if isinstance(v, Var) else v
        return cls._raw({mono_of(vid): coeff}) if coeff else ZERO

    # -- inspection
    @property
    def terms(self) -> dict[int, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        if self._deg is None:
            self._deg = max((mono_degree(m) for m in self._terms), default=-1)
        return self._deg

    def variables(self) -> set[int]:
        out = set()
        for m in self._terms:
            out.update(mono_exponents(m))
        return out

    def coefficient(self, monomial: int) -> Scalar:
        return self._terms.get(monomial, 0)

    def constant_value(self) -> Scalar | None:
        """The value if the polynomial is constant, else None."""
        if not self._terms:
            return 0
        if len(self._terms) == 1 and 0 in self._terms:
            return self._terms[0]
        return None

    def signed_var(self) -> tuple[int, int] | None:
        """``(var_id, sign)`` if this polynomial is exactly +x or -x."""
        if len(self._terms) != 1:
            return None
        (m, c), = self._terms.items()
        if c != 1 and c != -1:
            return None
        vid = _linear_var(m)
        return None if vid is None else (vid, int(c))

    def is_linear(self) -> bool:
        return all(m == 0 or _linear_var(m) is not None for m in self._terms)

    # -- arithmetic
    def __neg__(self):
        if self._neg is None:
            if not self._terms:
                return self
            n = Polynomial._raw({m: -c for m, c in self._terms.items()})
            n._neg = self
            self._neg = n
        return self._neg

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            if not isinstance(other, Rational):
                return NotImplemented
            other = Polynomial.const(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        frac = False
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
                frac = frac or type(s) is Fraction
            else:
                out.pop(m, None)
        if frac:
            out = {m: _normalize(c) for m, c in out.items()}
        return Polynomial._raw(out) if out else ZERO

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            if not isinstance(other, Rational):
                return NotImplemented
            other = Polynomial.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _scale(self, c):
        if not c or not self._terms:
            return ZERO
        if c == 1:
            return self
        if c == -1:
            return -self
        out = {m: _normalize(v * c) for m, v in self._terms.items()}
        return Polynomial._raw(out)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if not isinstance(other, Rational):
                return NotImplemented
            return self._scale(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) == 1 and 0 in a:
            return other._scale(a[0])
        if len(b) == 1 and 0 in b:
            return self._scale(b[0])
        if self.degree() + other.degree() > _FIELD:
            raise OverflowError("product degree exceeds the monomial field width")
        out: dict[int, Scalar] = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = m1 + m2
                out[m] = get(m, 0) + c1 * c2
        out = {m: _normalize(c) for m, c in out.items() if c}
        return Polynomial._raw(out) if out else ZERO

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def subs(self, values: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Replace variable ids by polynomials; unmapped variables stay."""
        acc = ZERO
        for m, c in self._terms.items():
            term = Polynomial.const(c)
            rest = 0
            for vid, e in mono_exponents(m).items():
                if vid in values:
                    term = term * values[vid] ** e
                else:
                    rest += mono_of(vid, e)
            if rest:
                term = term * Polynomial._raw({rest: 1})
            acc = acc + term
        return acc

    # -- comparison / display
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self is other or self._terms == other._terms
        if isinstance(other, Rational):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> list[tuple[int, Scalar]]:
        """Terms in graded lexicographic order, leading term first."""
        if not self._terms:
            return []
        width = max(m.bit_length() for m in self._terms) // _BITS + 1

        def key(item):
            m = item[0]
            exps = tuple((m >> (_BITS * v)) & _FIELD for v in range(width))
            return (mono_degree(m), exps)

        return sorted(self._terms.items(), key=key, reverse=True)

    def format(self, registry: Registry | None = None) -> str:
        reg = registry or DEFAULT_REGISTRY
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            names = []
            for vid, e in sorted(mono_exponents(m).items()):
                names.append(reg.name(vid) + (f"^{e}" if e > 1 else ""))
            mono = "*".join(names)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()})"


ZERO = Polynomial._raw({})
ONE = Polynomial._raw({0: 1})
MINUS_ONE = Polynomial._raw({0: -1})
ONE._neg, MINUS_ONE._neg = MINUS_ONE, ONE


def _coerce(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (bool, np.bool_)):
        x = int(x)
    if isinstance(x, np.integer):
        x = int(x)
    if isinstance(x, Rational):
        return Polynomial.const(x)
    raise TypeError(f"cannot use {x!r} as a matrix entry")


# ------------------------------------------------------------------ matrix

class PolyMatrix:
    """Square matrix of :class:`Polynomial` entries, stored row-major.

    Entries are shared references, so a matrix of order 1024 whose entries
    are +-x_i costs about one pointer per entry.  Derived data (variable set,
    expansion into integer matrices) is cached on first use.
    """

    __slots__ = ("_rows", "_n", "_vars", "_expansion", "__weakref__")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(_coerce(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0:
            raise DimensionError("matrix must have positive order")
        if any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square")
        self._init(rows)

    def _init(self, rows):
        self._rows = rows
        self._n = len(rows)
        self._vars = None
        self._expansion = None

    @classmethod
    def _from_rows(cls, rows) -> "PolyMatrix":
        m = object.__new__(cls)
        m._init(rows)
        return m

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls._from_rows(tuple(
            tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> "PolyMatrix":
        row = (ZERO,) * n
        return cls._from_rows((row,) * n)

    @classmethod
    def from_array(cls, arr) -> "PolyMatrix":
        """Constant matrix from an integer (or Fraction object) array."""
        arr = np.asarray(arr)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionError("need a square 2-d array")
        if arr.dtype.kind in "iub":
            arr = arr.astype(np.int64)
            lookup = {v: Polynomial.const(int(v)) for v in np.unique(arr).tolist()}
            M = cls._from_rows(tuple(tuple(map(lookup.__getitem__, row))
                                     for row in arr.tolist()))
            K = sparse.csr_array(arr)
            M._expansion = MatrixPolynomial(M._n, {0: K} if K.nnz else {}, 1)
            return M
        return cls._from_rows(tuple(
            tuple(Polynomial.const(_py_scalar(x)) for x in row) for row in arr))

    @property
    def order(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple[tuple[Polynomial, ...], ...]:
        return self._rows

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._rows[i][j]
        return self._rows[idx]

    def __iter__(self):
        return iter(self._rows)

    def entries(self):
        for i, row in enumerate(self._rows):
            for j, p in enumerate(row):
                yield i, j, p

    def variables(self) -> frozenset[int]:
        if self._vars is None:
            out = set()
            seen = set()
            for row in self._rows:
                for p in row:
                    if id(p) not in seen:
                        seen.add(id(p))
                        out |= p.variables()
            self._vars = frozenset(out)
        return self._vars

    def is_zero(self) -> bool:
        return all(not p for row in self._rows for p in row)

    def is_constant(self) -> bool:
        return not self.variables()

    def to_array(self) -> np.ndarray:
        """Integer array of a constant, integral matrix."""
        E = self._expansion
        if E is not None and E.denominator == 1 and set(E.parts) <= {0}:
            K = E.parts.get(0)
            return np.zeros((self._n, self._n), dtype=np.int64) if K is None else K.toarray()
        out = np.zeros((self._n, self._n), dtype=np.int64)
        for i, j, p in self.entries():
            c = p.constant_value()
            if c is None or type(c) is not int:
                raise ValueError(f"entry ({i}, {j}) = {p} is not an integer")
            out[i, j] = c
        return out

    def expansion(self) -> "MatrixPolynomial":
        if self._expansion is None:
            self._expansion = MatrixPolynomial.from_polymatrix(self)
        return self._expansion

    # -- arithmetic
    def _check(self, other):
        if not isinstance(other, PolyMatrix):
            raise TypeError("expected a PolyMatrix")
        if other._n != self._n:
            raise DimensionError(f"orders differ: {self._n} vs {other._n}")

    def __add__(self, other):
        self._check(other)
        return PolyMatrix._from_rows(tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self._rows, other._rows)))

    def __sub__(self, other):
        self._check(other)
        return PolyMatrix._from_rows(tuple(
            tuple(a - b for a, b in zip(ra, rb))
            for ra, rb in zip(self._rows, other._rows)))

    def __neg__(self):
        return PolyMatrix._from_rows(tuple(tuple(-a for a in r) for r in self._rows))

    def __mul__(self, scalar):
        """Scalar or polynomial times matrix (use ``@`` for matrix products)."""
        if isinstance(scalar, PolyMatrix):
            return NotImplemented
        s = _coerce(scalar)
        return PolyMatrix._from_rows(tuple(tuple(s * a for a in r) for r in self._rows))

    __rmul__ = __mul__

    def __matmul__(self, other):
        return mat_mul(self, other)

    @property
    def T(self) -> "PolyMatrix":
        return transpose(self)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self is other or self._rows == other._rows

    __hash__ = None

    def format(self, registry: Registry | None = None) -> str:
        cells = [[p.format(registry) for p in r] for r in self._rows]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"PolyMatrix(order={self._n})"


def _py_scalar(x):
    if isinstance(x, (np.integer, np.bool_)):
        return int(x)
    return x


# ------------------------------------------------------- expanded matrices

class MatrixPolynomial:
    """``sum(monomial * K_m) / denominator`` with integer sparse ``K_m``.

    Only nonzero parts are stored.  Products are computed part by part with
    scipy's sparse int64 kernels after checking that no intermediate value
    can leave the exact int64 range.
    """

    __slots__ = ("n", "parts", "denominator")

    def __init__(self, n: int, parts: dict, denominator: int = 1):
        self.n = n
        self.parts = parts
        self.denominator = denominator

    @classmethod
    def from_polymatrix(cls, A: PolyMatrix) -> "MatrixPolynomial":
        n = A.order
        coo: dict[int, tuple[list, list, list]] = {}
        den = 1
        for i, row in enumerate(A.rows):
            for j, p in enumerate(row):
                for m, c in p._terms.items():
                    slot = coo.get(m)
                    if slot is None:
                        slot = coo[m] = ([], [], [])
                    slot[0].append(i)
                    slot[1].append(j)
                    slot[2].append(c)
                    if type(c) is Fraction:
                        den = lcm(den, c.denominator)
        parts = {}
        for m, (ii, jj, cc) in coo.items():
            if den != 1:
                cc = [int(c * den) for c in cc]
            try:
                data = np.array(cc, dtype=np.int64)
            except OverflowError:
                raise OverflowError("coefficient too large for int64 expansion") from None
            K = sparse.csr_array((data, (ii, jj)), shape=(n, n))
            parts[m] = K
        return cls(n, parts, den)

    def to_polymatrix(self) -> PolyMatrix:
        n = self.n
        cells: dict[tuple[int, int], dict[int, Scalar]] = {}
        den = self.denominator
        for m, K in self.parts.items():
            C = K.tocoo()
            for i, j, v in zip(C.row.tolist(), C.col.tolist(), C.data.tolist()):
                if v:
                    cells.setdefault((i, j), {})[m] = v if den == 1 else _normalize(Fraction(v, den))
        rows = [[ZERO] * n for _ in range(n)]
        cache: dict = {}
        for (i, j), terms in cells.items():
            key = frozenset(terms.items())
            p = cache.get(key)
            if p is None:
                p = cache[key] = Polynomial._raw(terms)
            rows[i][j] = p
        return PolyMatrix._from_rows(tuple(tuple(r) for r in rows))

    def max_abs(self) -> int:
        return max((int(abs(K.data).max()) for K in self.parts.values() if K.nnz), default=0)

    @property
    def T(self) -> "MatrixPolynomial":
        return MatrixPolynomial(self.n, {m: K.T.tocsr() for m, K in self.parts.items()},
                                self.denominator)

    def _aligned(self, other):
        if other.n != self.n:
            raise DimensionError(f"orders differ: {self.n} vs {other.n}")
        den = lcm(self.denominator, other.denominator)
        fa, fb = den // self.denominator, den // other.denominator
        return den, fa, fb

    def _combine(self, other, sign):
        den, fa, fb = self._aligned(other)
        parts = {m: K * fa if fa != 1 else K for m, K in self.parts.items()}
        for m, K in other.parts.items():
            K = K * (sign * fb)
            parts[m] = parts[m] + K if m in parts else K
        return MatrixPolynomial(self.n, _prune(parts), den)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return MatrixPolynomial(self.n, {m: -K for m, K in self.parts.items()}, self.denominator)

    def __matmul__(self, other: "MatrixPolynomial") -> "MatrixPolynomial":
        if other.n != self.n:
            raise DimensionError(f"orders differ: {self.n} vs {other.n}")
        bound = self.max_abs() * other.max_abs() * self.n * len(self.parts) * len(other.parts)
        if bound >= _INT64_SAFE:
            raise OverflowError("expanded product may overflow int64")
        acc: dict[int, sparse.csr_array] = {}
        for m1, K1 in self.parts.items():
            for m2, K2 in other.parts.items():
                _check_degrees(m1, m2)
                P = K1 @ K2
                m = m1 + m2
                acc[m] = acc[m] + P if m in acc else P
        return MatrixPolynomial(self.n, _prune(acc), self.denominator * other.denominator)

    def gram(self) -> "MatrixPolynomial":
        """``self @ self.T`` using the symmetry of mixed terms."""
        bound = self.max_abs() ** 2 * self.n * len(self.parts) ** 2
        if bound >= _INT64_SAFE:
            raise OverflowError("expanded product may overflow int64")
        items = sorted(self.parts.items(), key=lambda kv: kv[0])
        acc: dict[int, sparse.csr_array] = {}
        for a, (m1, K1) in enumerate(items):
            for m2, K2 in items[a:]:
                _check_degrees(m1, m2)
                P = K1 @ K2.T
                if m1 != m2:
                    P = P + P.T
                m = m1 + m2
                acc[m] = acc[m] + P if m in acc else P
        return MatrixPolynomial(self.n, _prune(acc), self.denominator ** 2)

    def is_zero(self) -> bool:
        return not self.parts

    def scalar_identity(self) -> Polynomial | None:
        terms = {}
        diag_idx = np.arange(self.n)
        for m, K in self.parts.items():
            C = K.tocoo()
            if C.nnz != self.n:
                return None
            if not (np.array_equal(np.sort(C.row), diag_idx) and np.array_equal(C.row, C.col)):
                return None
            vals = C.data
            if not (vals == vals[0]).all():
                return None
            terms[m] = _normalize(Fraction(int(vals[0]), self.denominator))
        return Polynomial._raw(terms) if terms else ZERO

    def entry(self, i: int, j: int) -> Polynomial:
        terms = {}
        for m, K in self.parts.items():
            v = int(K[i, j])
            if v:
                terms[m] = _normalize(Fraction(v, self.denominator))
        return Polynomial._raw(terms) if terms else ZERO

    def first_nonzero(self) -> tuple[int, int, Polynomial] | None:
        """Row-major first nonzero entry."""
        best = None
        for K in self.parts.values():
            C = K.tocoo()
            if C.nnz:
                k = int((C.row.astype(np.int64) * self.n + C.col).min())
                best = k if best is None else min(best, k)
        if best is None:
            return None
        i, j = divmod(best, self.n)
        return i, j, self.entry(i, j)


def _check_degrees(m1, m2):
    if mono_degree(m1) + mono_degree(m2) > _FIELD:
        raise OverflowError("product degree exceeds the monomial field width")


def _prune(parts):
    out = {}
    for m, K in parts.items():
        K = sparse.csr_array(K)
        K.eliminate_zeros()
        if K.nnz:
            out[m] = K
    return out


# ------------------------------------------------------- var decomposition

@dataclass(frozen=True)
class VarDecomposition:
    """``A = (sum x_v * coefficients[v] + constant) / denominator``.

    Coefficient matrices are scipy sparse int64 arrays.  The denominator is
    1 unless the source matrix carried rational coefficients.
    """

    order: int
    coefficients: dict
    constant: object
    denominator: int = 1

    def dense(self, v: Var | int) -> np.ndarray:
        vid = v.id if isinstance(v, Var) else v
        K = self.coefficients.get(vid)
        if K is None:
            return np.zeros((self.order, self.order), dtype=np.int64)
        return K.toarray()

    def reassemble(self) -> PolyMatrix:
        parts = {mono_of(v): K for v, K in self.coefficients.items()}
        if self.constant.nnz:
            parts[0] = self.constant
        return MatrixPolynomial(self.order, parts, self.denominator).to_polymatrix()


def decompose_by_variable(A: PolyMatrix) -> VarDecomposition:
    """Split a matrix of linear forms into per-variable integer matrices."""
    for i, j, p in A.entries():
        if not p.is_linear():
            raise NonlinearEntryError(i, j, p)
    E = A.expansion()
    coeffs = {}
    const = sparse.csr_array((A.order, A.order), dtype=np.int64)
    for m, K in E.parts.items():
        if m == 0:
            const = K
        else:
            coeffs[_linear_var(m)] = K
    return VarDecomposition(A.order, coeffs, const, E.denominator)


# -------------------------------------------------------------- operations

def _use_expanded(*mats) -> bool:
    return mats[0].order >= _EXPAND_THRESHOLD


def _mat_mul_direct(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    n = A.order
    cols = [[(i, B._rows[i][j]) for i in range(n) if B._rows[i][j]] for j in range(n)]
    out = []
    for row in A._rows:
        new = []
        for col in cols:
            acc = ZERO
            for k, b in col:
                a = row[k]
                if a:
                    acc = acc + a * b
            new.append(acc)
        out.append(tuple(new))
    return PolyMatrix._from_rows(tuple(out))


def mat_mul(A: PolyMatrix, B: PolyMatrix, method: str = "auto") -> PolyMatrix:
    """Exact product ``A @ B``.

    ``method`` is ``"direct"``, ``"expanded"`` or ``"auto"``; the result does
    not depend on it.
    """
    A._check(B)
    if method == "direct" or (method == "auto" and not _use_expanded(A)):
        return _mat_mul_direct(A, B)
    try:
        return (A.expansion() @ B.expansion()).to_polymatrix()
    except OverflowError:
        if method == "expanded":
            raise
        return _mat_mul_direct(A, B)


def transpose(A: PolyMatrix) -> PolyMatrix:
    return PolyMatrix._from_rows(tuple(zip(*A.rows)))


def kron(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    rows = []
    for ra in A.rows:
        for rb in B.rows:
            rows.append(tuple(a * b for a in ra for b in rb))
    return PolyMatrix._from_rows(tuple(rows))


def hadamard_product(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    """Entrywise product."""
    A._check(B)
    return PolyMatrix._from_rows(tuple(
        tuple(a * b for a, b in zip(ra, rb)) for ra, rb in zip(A.rows, B.rows)))


def circ(entries: Sequence) -> PolyMatrix:
    """Circulant matrix: row i is the first row shifted right i places."""
    a = [_coerce(x) for x in entries]
    n = len(a)
    if n == 0:
        raise ValueError("circ needs at least one entry")
    return PolyMatrix._from_rows(tuple(
        tuple(a[(j - i) % n] for j in range(n)) for i in range(n)))


def backcirc(entries: Sequence) -> PolyMatrix:
    """Back-circulant matrix: row i is the first row shifted left i places."""
    a = [_coerce(x) for x in entries]
    n = len(a)
    if n == 0:
        raise ValueError("backcirc needs at least one entry")
    return PolyMatrix._from_rows(tuple(
        tuple(a[(i + j) % n] for j in range(n)) for i in range(n)))


def block(grid: Sequence[Sequence[PolyMatrix | int]]) -> PolyMatrix:
    """Assemble a square block matrix; the int 0 stands for a zero block."""
    k = len(grid)
    size = None
    for r in grid:
        if len(r) != k:
            raise DimensionError("block grid must be square")
        for b in r:
            if isinstance(b, PolyMatrix):
                if size is not None and b.order != size:
                    raise DimensionError("blocks must share one order")
                size = b.order
    if size is None:
        raise DimensionError("block grid has no matrix to fix the block order")
    zero = PolyMatrix.zeros(size)
    rows = []
    for r in grid:
        blocks = [b if isinstance(b, PolyMatrix) else _const_block(b, size, zero) for b in r]
        for i in range(size):
            rows.append(tuple(p for b in blocks for p in b.rows[i]))
    return PolyMatrix._from_rows(tuple(rows))


def _const_block(b, size, zero):
    if b == 0:
        return zero
    raise TypeError("non-matrix blocks must be 0")


def _gram_direct(A: PolyMatrix) -> PolyMatrix:
    n = A.order
    rows = []
    for row in A.rows:
        rows.append({k: tuple(p._terms.items()) for k, p in enumerate(row) if p._terms})
    out = [[ZERO] * n for _ in range(n)]
    cache: dict = {}
    for i in range(n):
        ri = list(rows[i].items())
        for j in range(i, n):
            rj = rows[j]
            acc: dict[int, Scalar] = {}
            get = acc.get
            for k, ti in ri:
                tj = rj.get(k)
                if tj is None:
                    continue
                for m1, c1 in ti:
                    for m2, c2 in tj:
                        m = m1 + m2
                        acc[m] = get(m, 0) + c1 * c2
            terms = {m: _normalize(c) for m, c in acc.items() if c}
            if terms:
                key = frozenset(terms.items())
                p = cache.get(key)
                if p is None:
                    p = cache[key] = Polynomial._raw(terms)
                out[i][j] = out[j][i] = p
    return PolyMatrix._from_rows(tuple(tuple(r) for r in out))


def gram(A: PolyMatrix, method: str = "auto") -> PolyMatrix:
    """``A @ A.T`` computed exactly.

    ``"expanded"`` goes through per-monomial integer matrices (the
    variable decomposition when entries are linear forms); ``"direct"``
    multiplies polynomial entries.  The results are identical.
    """
    if method == "direct" or (method == "auto" and not _use_expanded(A)):
        return _gram_direct(A)
    try:
        return A.expansion().gram().to_polymatrix()
    except OverflowError:
        if method == "expanded":
            raise
        return _gram_direct(A)


def is_scalar_identity(M: PolyMatrix) -> Polynomial | None:
    """Return q when ``M == q * I``, otherwise None."""
    q = M[0, 0]
    for i, row in enumerate(M.rows):
        for j, p in enumerate(row):
            if i == j:
                if p != q:
                    return None
            elif p:
                return None
    return q


def substitute(A: PolyMatrix, assignment: Mapping) -> PolyMatrix:
    """Replace variables (Var, id or name) by polynomials or numbers."""
    values = {}
    for k, v in assignment.items():
        if isinstance(k, str):
            k = DEFAULT_REGISTRY.var(k)
        vid = k.id if isinstance(k, Var) else int(k)
        values[vid] = _coerce(v)
    memo: dict[int, Polynomial] = {}

    def sub(p):
        r = memo.get(id(p))
        if r is None:
            r = memo[id(p)] = p.subs(values) if p._terms else p
        return r

    return PolyMatrix._from_rows(tuple(tuple(sub(p) for p in r) for r in A.rows))
