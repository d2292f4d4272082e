"""Symbols, bounds and existence decisions for designs.

Hilbert symbols are computed over the rationals.  For odd p the symbol is
reduced to Legendre symbols of the unit parts; for p = 2 the usual dyadic
formula is used.  Existence questions return an :class:`ExistenceVerdict`
whose chain lists every rule that was applied together with its inputs and
computed value, so a negative answer can be read back as a proof.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable

__all__ = [
    "Status", "ChainStep", "ExistenceVerdict", "RFType", "DELTA",
    "legendre", "is_prime", "factorize", "two_adic", "hilbert", "s_p",
    "relevant_primes", "rational_family_exists", "failing_primes", "radon_hurwitz",
    "wolfe_bound", "rho_t_bound", "delta", "decide_pd133",
    "FULL_OD32_WITH_FIVE_ONES", "NO_OD_ONE5_BEYOND",
]


# ------------------------------------------------------------ primitives

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` by trial division."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def two_adic(n: int) -> tuple[int, int]:
    """``(a, b)`` with ``n = 2**a * b`` and b odd."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    a = (n & -n).bit_length() - 1
    return a, n >> a


def legendre(r: int, p: int) -> int:
    """Legendre symbol (r/p) by Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if r % p == 0:
        raise ValueError(f"{r} is not prime to {p}")
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def _split(n: int, p: int) -> tuple[int, int]:
    """``(alpha, u)`` with ``n = p**alpha * u`` and u prime to p."""
    alpha = 0
    while n % p == 0:
        n //= p
        alpha += 1
    return alpha, n


def _as_integer_class(a) -> int:
    """An integer in the same square class as the nonzero rational ``a``."""
    if isinstance(a, int):
        n = a
    elif isinstance(a, Rational):
        f = Fraction(a)
        n = f.numerator * f.denominator
    else:
        raise TypeError(f"expected a rational number, got {type(a).__name__}")
    if n == 0:
        raise ValueError("Hilbert symbol of zero")
    return n


def hilbert(a, b, p: int) -> int:
    """The p-adic Hilbert symbol (a, b)_p of two nonzero rationals."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a, b = _as_integer_class(a), _as_integer_class(b)
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2  # noqa: E731
        omega = lambda x: ((x * x - 1) // 8) % 2  # noqa: E731
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = 1
    if alpha * beta % 2 and p % 4 == 3:
        sign = -sign
    if alpha % 2:
        sign *= legendre(v, p)
    if beta % 2:
        sign *= legendre(u, p)
    return sign


# ------------------------------------------------------- verdict records

class Status(enum.Enum):
    EXISTS = "Exists"
    NOT_EXISTS = "NotExists"
    UNDECIDED = "Undecided"

    @property
    def exit_code(self) -> int:
        return {Status.EXISTS: 0, Status.NOT_EXISTS: 1, Status.UNDECIDED: 2}[self]


@dataclass(frozen=True)
class ChainStep:
    rule: str
    inputs: str
    value: str

    def format(self) -> str:
        return f"{self.rule}: {self.inputs} => {self.value}"


@dataclass(frozen=True)
class ExistenceVerdict:
    status: Status
    query: str
    chain: tuple[ChainStep, ...] = field(default=())

    def __post_init__(self):
        if self.status is Status.NOT_EXISTS and not self.chain:
            raise ValueError("a negative verdict needs a reason")

    @property
    def exists(self) -> bool:
        return self.status is Status.EXISTS

    def rules(self) -> list[str]:
        return [s.rule for s in self.chain]

    def format(self, explain: bool = True) -> str:
        lines = [f"{self.query}: {self.status.value}"]
        if explain:
            lines += [f"  {i}. {s.format()}" for i, s in enumerate(self.chain, 1)]
        return "\n".join(lines)


@dataclass(frozen=True)
class RFType:
    """Type (s_1, ..., s_k) of a rational family; positions matter."""
    entries: tuple[int, ...]

    def __init__(self, entries: Iterable[int]):
        entries = tuple(int(s) for s in entries)
        if not entries or any(s <= 0 for s in entries):
            raise ValueError(f"rational family type needs positive entries, got {entries}")
        object.__setattr__(self, "entries", entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"


def _rf(t) -> RFType:
    return t if isinstance(t, RFType) else RFType(t)


# ------------------------------------------------------- rational families

def s_p(t, p: int) -> int:
    """Product of (s_i, s_j)_p over all position pairs i < j."""
    s = _rf(t).entries
    out = 1
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            out *= hilbert(s[i], s[j], p)
    return out


def relevant_primes(t) -> list[int]:
    """2 together with the odd primes dividing some entry.

    At any other prime every pair of entries is a pair of units, so every
    factor of s_p is +1.
    """
    ps = {2}
    for s in _rf(t):
        ps.update(factorize(s))
    return sorted(ps)


def rational_family_exists(t, order: int) -> ExistenceVerdict:
    t = _rf(t)
    query = f"rational family of type {t} and order {order}"
    a, b = two_adic(order)
    chain = []
    if b != 1:
        chain.append(ChainStep("odd part of the order is irrelevant",
                               f"order {order} = 2^{a}*{b}", f"order {2 ** a}"))
    if 2 ** a != 16 or len(t) != 9:
        chain.append(ChainStep(
            "scope of the order-16 criterion",
            f"k = {len(t)}, order {2 ** a}",
            "criterion applies only to nine entries at order 16"))
        return ExistenceVerdict(Status.UNDECIDED, query, tuple(chain))
    primes = relevant_primes(t)
    chain.append(ChainStep("only primes dividing an entry, and 2, can give -1",
                           str(t), "primes " + ",".join(map(str, primes))))
    failing = []
    for p in primes:
        v = s_p(t, p)
        chain.append(ChainStep("Hilbert symbol product", f"S_{p}{t}", f"{v:+d}"))
        if v == -1:
            failing.append(p)
    if failing:
        chain.append(ChainStep("order-16 criterion",
                               "S_p = -1 at p = " + ", ".join(map(str, failing)),
                               "no rational family"))
        return ExistenceVerdict(Status.NOT_EXISTS, query, tuple(chain))
    chain.append(ChainStep("order-16 criterion", "S_p = +1 at every prime",
                           "rational family exists"))
    return ExistenceVerdict(Status.EXISTS, query, tuple(chain))


def failing_primes(t) -> list[int]:
    """Primes p with S_p(t) = -1."""
    return [p for p in relevant_primes(t) if s_p(t, p) == -1]


# ------------------------------------------------------------------ bounds

def radon_hurwitz(n: int) -> int:
    """rho(n) = 8c + 2^d where n = 2^(4c+d) * odd, 0 <= d < 4."""
    a, _ = two_adic(n)
    c, d = divmod(a, 4)
    return 8 * c + 2 ** d


def wolfe_bound(n: int) -> int:
    """Upper bound 2a + 2 on the variables of an AOD of order 2^a * odd."""
    a, _ = two_adic(n)
    return 2 * a + 2


# rows t mod 4 = 0..3, columns b = 0..3
DELTA: tuple[tuple[int, ...], ...] = (
    (0, 1, 3, 7),
    (1, 2, 3, 5),
    (-1, 3, 4, 5),
    (-1, 1, 5, 6),
)


def delta(t: int, b: int) -> int:
    return DELTA[t % 4][b]


def rho_t_bound(n: int, t: int) -> int:
    """Bound 8a - t + delta(t mod 4, b) + 1 for n = 2^(4a+b) * odd."""
    if t < 1:
        raise ValueError("t must be positive")
    e, _ = two_adic(n)
    a, b = divmod(e, 4)
    return 8 * a - t + delta(t, b) + 1


# ---------------------------------------------------- cited fact tables

# Complements (u_1, ..., u_k) for which a full OD(32; 1_(5), u) exists
# (Kharaghani and Tayfeh-Rezaie).
FULL_OD32_WITH_FIVE_ONES: frozenset[tuple[int, ...]] = frozenset(
    {(9, 9, 9), (9, 18), (12, 15), (27,)})

# No OD(N; 1_(5), N - 5) exists for N beyond this value (Robinson).
NO_OD_ONE5_BEYOND = 40

# Orders with a known PD(n; 1_(3); 1_(3); n - 3) (Robinson).
_KNOWN_PD133 = (4, 8, 12)


@lru_cache(maxsize=None)
def _live_pd_check(n: int) -> str:
    from .constructions import pd8, pd12
    pd = {8: pd8, 12: pd12}[n]()
    r = pd.verify()
    if not r:
        raise AssertionError(f"pd{n} failed verification:\n{r.format()}")
    return f"verify_pd passed for {pd.types[0]}; {pd.types[1]}; {pd.types[2]}"


def _ones(k: int) -> str:
    return ",".join(["1"] * k)


def decide_pd133(n: int) -> ExistenceVerdict:
    """Does a PD(n; 1_(3); 1_(3); n - 3) exist?"""
    if n < 1:
        raise ValueError("n must be positive")
    query = f"PD({n}; 1,1,1; 1,1,1; {n - 3})"
    S = ChainStep
    if n in _KNOWN_PD133:
        chain = [S("known construction (Robinson)", f"n = {n}", "exists")]
        if n in (8, 12):
            chain.append(S("live verification", f"pd{n}", _live_pd_check(n)))
        return ExistenceVerdict(Status.EXISTS, query, tuple(chain))

    if n > 20:
        N = 2 * n
        chain = (
            S("combine with AOD(2; 1,1; 1,1), variant i", query,
              f"OD({N}; {_ones(6)}, {N - 6})"),
            S("equate a weight-1 variable with the heavy one",
              f"OD({N}; {_ones(6)}, {N - 6})", f"OD({N}; {_ones(5)}, {N - 5})"),
            S(f"no OD(N; 1_(5), N-5) for N > {NO_OD_ONE5_BEYOND} (Robinson)",
              f"N = {N}", "contradiction"),
        )
        return ExistenceVerdict(Status.NOT_EXISTS, query, chain)

    if n == 20:
        # AOD(4; 1,1,2; 1,1,2) split with v = 1, w = (1, 2), c = (1, 1, 2)
        from .constructions import combined_weights
        w = combined_weights((1, 1, 1), (1, 1, 1), (17,), (1, 1, 2), 1, (1, 2), "ii")
        rf = tuple(sorted(w))
        total = sum(rf)
        v = rational_family_exists(rf, total)
        chain = [
            S("combine with AOD(4; 1,1,2; 1,1,2), variant ii", query,
              f"OD({total}; {','.join(map(str, rf))})"),
            S("an OD gives a rational family of its type and order",
              f"OD({total})", f"rational family of type {RFType(rf)} and order {total}"),
            *v.chain,
        ]
        if v.status is not Status.NOT_EXISTS:
            return ExistenceVerdict(Status.UNDECIDED, query, tuple(chain))
        p = max(failing_primes(rf))
        chain.append(S("contradiction with the order-16 criterion",
                       "no such PD", f"S_{p}{RFType(rf)} = -1"))
        return ExistenceVerdict(Status.NOT_EXISTS, query, tuple(chain))

    if n == 16:
        u = (1, 26)
        chain = (
            S("combine with AOD(2; 1,1; 1,1), variant i", query,
              f"OD(32; {_ones(6)}, 26)"),
            S("full OD(32; 1_(5), u) only for u in {(9,9,9), (9,18), (12,15), (27)} "
              "(Kharaghani, Tayfeh-Rezaie)", f"u = {u}",
              "not listed" if u not in FULL_OD32_WITH_FIVE_ONES else "listed"),
        )
        return ExistenceVerdict(Status.NOT_EXISTS, query, chain)

    if n <= 3:
        chain = (S("definition of PD (weights must be positive)",
                   f"n - 3 = {n - 3}", "no such type"),)
        return ExistenceVerdict(Status.NOT_EXISTS, query, chain)

    rho = radon_hurwitz(n)
    if rho < 3:
        chain = (S("definition of PD (reconstructed): M1 alone is an OD(n; 1,1,1), "
                   "which needs rho(n) >= 3",
                   f"rho({n}) = {rho}", "no OD(n; 1,1,1)"),)
        return ExistenceVerdict(Status.NOT_EXISTS, query, chain)
    return ExistenceVerdict(
        Status.UNDECIDED, query,
        (S("no rule applies", f"n = {n}, rho(n) = {rho}", "undecided"),))
