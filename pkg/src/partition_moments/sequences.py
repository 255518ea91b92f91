"""Weighted integer sequences, their partition function and its small-t expansion.

A sequence is stored as a multiplicity map: each distinct value lambda carries
the number g(lambda) of times it occurs (degenerate states).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .combinatorics import bernoulli_numbers, barnes_degeneracy
from .errors import DomainError, InvalidArgument, InvalidSequence, UnsupportedFamily

__all__ = [
    "ThetaExpansion",
    "SequenceFamily",
    "WeightedSequence",
    "ThetaValue",
    "enumerate_sequence",
    "theta",
    "theta_expansion",
    "load_custom",
    "parse_family",
    "epstein_multiplicities",
]

_KINDS = ("naturals", "barnes", "epstein", "one_singularity", "custom")


@dataclass(frozen=True)
class ThetaExpansion:
    """Pairs (i_n, A_{i_n}) of the expansion Theta(t) ~ sum A t^i as t -> 0+."""

    terms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        terms = tuple((float(e), float(a)) for e, a in self.terms)
        if not terms:
            raise InvalidArgument("empty theta expansion")
        exps = [e for e, _ in terms]
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise InvalidArgument("theta expansion exponents must be strictly increasing")
        if exps[0] >= 0:
            raise InvalidArgument("first exponent of a theta expansion must be negative")
        object.__setattr__(self, "terms", terms)

    def coefficient(self, exponent: float) -> float:
        for e, a in self.terms:
            if abs(e - exponent) < 1e-12:
                return a
        return 0.0

    @property
    def poles(self) -> list[tuple[float, float]]:
        """(mu, A_{-mu}) for every negative exponent, largest mu first."""
        return [(-e, a) for e, a in self.terms if e < 0]

    @property
    def mu0(self) -> float:
        return -self.terms[0][0]

    @property
    def A0(self) -> float:
        return self.coefficient(0.0)

    @property
    def last_exponent(self) -> float:
        return self.terms[-1][0]

    def evaluate(self, t):
        return sum(a * t**e for e, a in self.terms)


@dataclass(frozen=True)
class SequenceFamily:
    """One of the supported sequence families.

    Build instances with the class-method constructors rather than directly.
    ``OneSingularity`` families are described only through their theta
    expansion; spectral values the asymptotic theorems need (zeta'(0), the
    finite part at mu = 1, zeta values at integers) can be attached.
    """

    kind: str
    d: int | None = None
    expansion: ThetaExpansion | None = None
    table: tuple[tuple[int, int], ...] | None = None
    zeta_prime_0: float | None = None
    finite_part: float | None = None
    zeta_values: tuple[tuple[int, float], ...] = field(default=())
    label: str | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidArgument(f"unknown family kind {self.kind!r}")
        if self.kind in ("barnes", "epstein") and self.d not in (2, 3):
            raise InvalidArgument(f"{self.kind} families are only available for d in {{2, 3}}")
        if self.kind == "custom":
            _check_table(self.table)
        if self.kind == "one_singularity":
            if self.expansion is None or len(self.expansion.poles) != 1:
                raise InvalidArgument("a one-singularity family needs exactly one negative exponent")

    @classmethod
    def naturals(cls):
        return cls("naturals")

    @classmethod
    def barnes(cls, d: int):
        return cls("barnes", d=d)

    @classmethod
    def epstein(cls, d: int):
        return cls("epstein", d=d)

    @classmethod
    def one_singularity(cls, mu, coefficients, *, zeta_prime_0=None, finite_part=None,
                        zeta_values=None, label=None):
        """``coefficients`` maps exponent -> A; it must contain -mu."""
        if isinstance(coefficients, ThetaExpansion):
            expansion = coefficients
        else:
            expansion = ThetaExpansion(tuple(sorted(dict(coefficients).items())))
        if abs(expansion.mu0 - mu) > 1e-12:
            raise InvalidArgument("mu does not match the leading exponent of the coefficients")
        zv = tuple(sorted((int(s), float(v)) for s, v in (zeta_values or {}).items()))
        return cls("one_singularity", expansion=expansion, zeta_prime_0=zeta_prime_0,
                   finite_part=finite_part, zeta_values=zv, label=label)

    @classmethod
    def custom(cls, table, label=None):
        items = table.items() if isinstance(table, dict) else table
        pairs = tuple(sorted((int(l), int(g)) for l, g in items if int(g) != 0))
        return cls("custom", table=pairs, label=label)

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.kind in ("barnes", "epstein"):
            return f"{self.kind}{self.d}"
        if self.kind == "one_singularity":
            return f"one_singularity(mu={self.expansion.mu0:g})"
        return self.kind

    @property
    def has_sequence(self) -> bool:
        return self.kind != "one_singularity"


def _check_table(table):
    if not table:
        raise InvalidSequence("empty custom table")
    lams = [l for l, _ in table]
    if any(b <= a for a, b in zip(lams, lams[1:])):
        raise InvalidSequence("custom table values must be strictly increasing")
    if lams[0] < 1 or any(g < 0 for _, g in table):
        raise InvalidSequence("custom table needs positive values and multiplicities")
    if lams[0] != 1:
        raise InvalidSequence("the sequence must contain 1")


@dataclass(frozen=True)
class WeightedSequence:
    """Finite truncation of a sequence: distinct values with multiplicities."""

    lambdas: tuple[int, ...]
    mults: tuple[int, ...]
    cutoff: int

    def __post_init__(self):
        if len(self.lambdas) != len(self.mults) or not self.lambdas:
            raise InvalidSequence("values and multiplicities must be non-empty and aligned")
        if any(b <= a for a, b in zip(self.lambdas, self.lambdas[1:])):
            raise InvalidSequence("values must be strictly increasing")
        if any(g < 1 for g in self.mults):
            raise InvalidSequence("multiplicities must be >= 1")
        if self.lambdas[0] != 1:
            raise InvalidSequence("the sequence must contain 1")
        if self.lambdas[-1] > self.cutoff:
            raise InvalidSequence("entries exceed the cutoff")

    @classmethod
    def from_pairs(cls, pairs, cutoff=None):
        pairs = sorted((int(l), int(g)) for l, g in pairs)
        lam = tuple(l for l, _ in pairs)
        g = tuple(m for _, m in pairs)
        return cls(lam, g, cutoff if cutoff is not None else lam[-1])

    @property
    def entries(self) -> list[tuple[int, int]]:
        return list(zip(self.lambdas, self.mults))

    def multiplicity(self, lam: int) -> int:
        i = np.searchsorted(self.values, lam)
        if i < len(self.lambdas) and self.lambdas[i] == lam:
            return self.mults[i]
        return 0

    @cached_property
    def values(self) -> np.ndarray:
        return np.asarray(self.lambdas, dtype=float)

    @cached_property
    def weights(self) -> np.ndarray:
        return np.asarray(self.mults, dtype=float)

    def truncate(self, cutoff: int) -> WeightedSequence:
        keep = [(l, g) for l, g in self.entries if l <= cutoff]
        return WeightedSequence.from_pairs(keep, cutoff)


def epstein_multiplicities(d: int, cutoff: int) -> np.ndarray:
    """counts[q] = #{m in N_0^d, m != 0 : m_1^2 + ... + m_d^2 = q} for q <= cutoff."""
    counts = np.zeros(cutoff + 1, dtype=np.int64)
    roots = np.arange(math.isqrt(cutoff) + 1)
    counts[roots**2] = 1
    squares = roots**2
    for _ in range(d - 1):
        nxt = np.zeros_like(counts)
        for q in squares:
            nxt[q:] += counts[: cutoff + 1 - q]
        counts = nxt
    counts[0] -= 1  # the origin is excluded
    return counts


def enumerate_sequence(family: SequenceFamily, cutoff: int) -> WeightedSequence:
    """Truncate ``family`` to values <= cutoff."""
    if cutoff < 1:
        raise InvalidArgument("cutoff must be >= 1")
    kind = family.kind
    if kind == "naturals":
        lam = tuple(range(1, cutoff + 1))
        return WeightedSequence(lam, (1,) * cutoff, cutoff)
    if kind == "barnes":
        lam = tuple(range(1, cutoff + 1))
        return WeightedSequence(lam, tuple(barnes_degeneracy(l, family.d) for l in lam), cutoff)
    if kind == "epstein":
        counts = epstein_multiplicities(family.d, cutoff)
        lam = np.nonzero(counts)[0]
        lam = lam[lam > 0]
        return WeightedSequence(tuple(int(l) for l in lam),
                                tuple(int(counts[l]) for l in lam), cutoff)
    if kind == "custom":
        pairs = [(l, g) for l, g in family.table if l <= cutoff]
        return WeightedSequence.from_pairs(pairs, cutoff)
    raise UnsupportedFamily(f"{family.name} has no explicit sequence")


class ThetaValue(NamedTuple):
    value: float
    tail_bound: float


def theta(seq: WeightedSequence, t: float) -> ThetaValue:
    """Theta(t) = sum g(lambda) exp(-lambda t) over the truncation."""
    if not t > 0:
        raise DomainError("theta needs t > 0")
    terms = seq.weights * np.exp(-seq.values * t)
    value = float(math.fsum(terms))
    g_last = seq.mults[-1]
    tail = g_last * math.exp(-seq.cutoff * t) / -math.expm1(-t)
    return ThetaValue(value, tail)


def _naturals_plus_half(order):
    """Coefficients of t * 1/(1 - e^{-t}) = sum B_m(1) t^m / m!, m = 0..order."""
    B = list(bernoulli_numbers(order))
    if order >= 1:
        B[1] = -B[1]  # B_1(1) = +1/2
    return [B[m] / math.factorial(m) for m in range(order + 1)]


def _exact_expansion(family, order) -> list[tuple[Fraction, Fraction]]:
    if family.kind == "naturals":
        # 1/(e^t - 1) = sum_m B_m t^{m-1}/m!
        B = bernoulli_numbers(order + 1)
        return [(Fraction(m - 1), B[m] / math.factorial(m)) for m in range(order + 2)]
    d = family.d
    base = _naturals_plus_half(order + d)
    acc = [Fraction(1)] + [Fraction(0)] * (order + d)
    for _ in range(d):
        nxt = [Fraction(0)] * (order + d + 1)
        for i, a in enumerate(acc):
            if a:
                for j, b in enumerate(base[: order + d + 1 - i]):
                    nxt[i + j] += a * b
        acc = nxt
    terms = [(Fraction(i - d), c) for i, c in enumerate(acc)]
    return [(e, c - 1 if e == 0 else c) for e, c in terms]


def theta_expansion(family: SequenceFamily, order: int = 2) -> ThetaExpansion:
    """Small-t expansion of Theta for ``family`` with exponents up to ``order``."""
    kind = family.kind
    if kind == "custom":
        raise UnsupportedFamily("custom sequences carry no closed-form theta expansion")
    if kind == "one_singularity":
        return family.expansion
    if kind in ("naturals", "barnes"):
        terms = [(float(e), float(c)) for e, c in _exact_expansion(family, order) if e <= order]
        return ThetaExpansion(tuple(terms))
    d = family.d
    terms = [(-n / 2, math.comb(d, n) * math.pi ** (n / 2) / 2**d) for n in range(d, 0, -1)]
    terms.append((0.0, 2.0**-d - 1.0))
    # positive powers vanish up to O(exp(-pi^2/t)) corrections
    terms += [(j / 2, 0.0) for j in range(1, 2 * order + 1)]
    return ThetaExpansion(tuple(terms))


def load_custom(path, label=None) -> SequenceFamily:
    """Read a two-column ``lambda multiplicity`` text file into a custom family."""
    pairs = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InvalidSequence(f"{path}:{lineno}: expected two columns")
            try:
                pairs.append((int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise InvalidSequence(f"{path}:{lineno}: {exc}") from None
    lams = [l for l, _ in pairs]
    if any(b <= a for a, b in zip(lams, lams[1:])):
        raise InvalidSequence(f"{path}: lambda column must be strictly increasing")
    return SequenceFamily.custom(pairs, label=label)


def parse_family(name: str) -> SequenceFamily:
    """Map a CLI family name (naturals, barnes2, epstein3, custom:PATH) to a family."""
    key = name.strip().lower()
    if key in ("naturals", "riemann", "n"):
        return SequenceFamily.naturals()
    for kind in ("barnes", "epstein"):
        if key.startswith(kind) and key[len(kind):] in ("2", "3"):
            return SequenceFamily(kind, d=int(key[len(kind):]))
    if key.startswith("custom:"):
        return load_custom(name.split(":", 1)[1])
    raise InvalidArgument(f"unknown family {name!r}")
