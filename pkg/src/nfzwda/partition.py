"""Natural-frequency zones: map NF values to zone indices and group occurrences."""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from decimal import Decimal
from functools import lru_cache

from .nf_dict import NFDictionary
from .text_ingest import TokenSequence

# 60 significant digits keeps r**k vs f comparisons exact for any realistic f.
_CTX = decimal.Context(prec=60)


@dataclass(frozen=True)
class PartitionScheme:
    """One of ``linear`` (L), ``radix`` (L, R) or ``log`` (r)."""

    kind: str
    L: int = 10
    R: int = 100000
    r: float = 1.0001

    def __post_init__(self):
        if self.kind not in ("linear", "radix", "log"):
            raise ValueError(f"unknown partition kind {self.kind!r}")
        if self.kind in ("linear", "radix") and (int(self.L) != self.L or self.L < 1):
            raise ValueError("L must be an integer >= 1")
        if self.kind == "radix" and (int(self.R) != self.R or self.R <= 1):
            raise ValueError("R must be an integer > 1")
        if self.kind == "log" and not self.r > 1:
            raise ValueError("r must be > 1")

    @classmethod
    def linear(cls, L: int = 10) -> PartitionScheme:
        return cls("linear", L=L)

    @classmethod
    def radix(cls, L: int = 10, R: int = 100000) -> PartitionScheme:
        return cls("radix", L=L, R=R)

    @classmethod
    def log(cls, r: float = 1.0001) -> PartitionScheme:
        return cls("log", r=r)

    def params(self) -> dict:
        if self.kind == "linear":
            return {"kind": "linear", "L": self.L}
        if self.kind == "radix":
            return {"kind": "radix", "L": self.L, "R": self.R}
        return {"kind": "log", "r": self.r}

    @classmethod
    def from_params(cls, p: dict) -> PartitionScheme:
        kind = p["kind"]
        if kind == "linear":
            return cls.linear(int(p["L"]))
        if kind == "radix":
            return cls.radix(int(p["L"]), int(p["R"]))
        return cls.log(float(p["r"]))

    def __str__(self):
        return ",".join(f"{k}={v}" for k, v in self.params().items())


DEFAULT_SCHEMES = {
    "linear": PartitionScheme.linear(10),
    "radix": PartitionScheme.radix(10, 100000),
    "log": PartitionScheme.log(1.0001),
}


def int_log_floor(value: int, base: int) -> int:
    """Largest E with base**E <= value, for value >= 1."""
    e, p = 0, base
    while p <= value:
        p *= base
        e += 1
    return e


@lru_cache(maxsize=1 << 16)
def real_log_floor(f: int, r: float) -> int:
    """Largest k with r**k <= f, with r read as its shortest decimal repr.

    The float log gives a starting guess; the answer is then settled by
    comparing powers in 60-digit decimal arithmetic.
    """
    base = Decimal(repr(r))
    target = Decimal(f)
    k = math.floor(math.log(f) / math.log(r))
    while _CTX.power(base, k + 1) <= target:
        k += 1
    while k > 0 and _CTX.power(base, k) > target:
        k -= 1
    return k


def zone_index(scheme: PartitionScheme, f: int) -> int:
    if f < 0:
        raise ValueError("NF value must be >= 0")
    if scheme.kind == "linear":
        return f // scheme.L
    if scheme.kind == "radix":
        b = f // scheme.L
        if b < scheme.R:
            return b
        e = int_log_floor(b, scheme.R)
        return (scheme.R - 1) * e + b // scheme.R**e
    if f == 0:
        return 0
    return real_log_floor(f, scheme.r)


def zone_count(scheme: PartitionScheme, f_max: int) -> int:
    return zone_index(scheme, f_max) + 1


@dataclass(frozen=True)
class ZoneOccurrences:
    k: int
    positions: tuple[float, ...]

    @property
    def n_k(self) -> int:
        return len(self.positions)


def partition(
    seq: TokenSequence, nf: NFDictionary, scheme: PartitionScheme
) -> dict[int, ZoneOccurrences]:
    """Group the positions of ``seq`` by zone; only occupied zones are returned."""
    index_of: dict[str, int] = {}
    grouped: dict[int, list[float]] = {}
    for tok, pos in zip(seq.tokens, seq.positions):
        k = index_of.get(tok)
        if k is None:
            k = index_of[tok] = zone_index(scheme, nf.lookup(tok))
        grouped.setdefault(k, []).append(pos)
    return {k: ZoneOccurrences(k, tuple(grouped[k])) for k in sorted(grouped)}
