"""Occurrence-distance style features (ODE / ODV per zone)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .nf_dict import NFDictionary
from .partition import PartitionScheme, ZoneOccurrences, partition
from .text_ingest import TokenSequence

ODV_MODES = ("variance", "rms")

# Values an empty zone evaluates to: a single gap of length 1.
FILL_ALPHA = 1.0
FILL_GAMMA = {"variance": 0.0, "rms": 1.0}


def occurrence_distances(zone: ZoneOccurrences | tuple[float, ...]) -> list[float]:
    """Gaps between neighbouring occurrences, with 0 and 1 as virtual end points."""
    positions = zone.positions if isinstance(zone, ZoneOccurrences) else tuple(zone)
    if not positions:
        return [1.0]
    out = [positions[0]]
    out.extend(b - a for a, b in zip(positions, positions[1:]))
    out.append(1.0 - positions[-1])
    return out


def ode(zone: ZoneOccurrences) -> float:
    return 1.0 / (zone.n_k + 1)


def odv(zone: ZoneOccurrences, mode: str = "variance") -> float:
    """Scale-free dispersion of the occurrence gaps.

    ``variance`` centres the gaps on their mean (the defining formula);
    ``rms`` uses the raw second moment, which is what reproduces the
    published worked example. Per zone, rms**2 == variance**2 + 1.
    """
    d = occurrence_distances(zone)
    alpha = 1.0 / len(d)
    if mode == "variance":
        s = math.fsum((x - alpha) ** 2 for x in d)
    elif mode == "rms":
        s = math.fsum(x * x for x in d)
    else:
        raise ValueError(f"unknown odv mode {mode!r}")
    return math.sqrt(s / len(d)) / alpha


@dataclass(frozen=True)
class StyleVector:
    features: Mapping[int, tuple[float, float]]
    n: int
    scheme: PartitionScheme
    odv_mode: str = "variance"
    source_id: str = ""
    author_label: str | None = None

    @property
    def config(self) -> tuple[PartitionScheme, str]:
        return (self.scheme, self.odv_mode)

    def value(self, k: int) -> tuple[float, float]:
        return self.features.get(k, (FILL_ALPHA, FILL_GAMMA[self.odv_mode]))

    def to_record(self) -> dict:
        return {
            "source_id": self.source_id,
            "author_label": self.author_label,
            "n": self.n,
            "scheme": self.scheme.params(),
            "odv_mode": self.odv_mode,
            "features": [[k, a, g] for k, (a, g) in sorted(self.features.items())],
        }

    @classmethod
    def from_record(cls, rec: dict) -> StyleVector:
        return cls(
            features={int(k): (float(a), float(g)) for k, a, g in rec["features"]},
            n=int(rec["n"]),
            scheme=PartitionScheme.from_params(rec["scheme"]),
            odv_mode=rec["odv_mode"],
            source_id=rec.get("source_id", ""),
            author_label=rec.get("author_label"),
        )


def style_vector(
    seq: TokenSequence,
    nf: NFDictionary,
    scheme: PartitionScheme,
    mode: str = "variance",
    source_id: str = "",
    author_label: str | None = None,
) -> StyleVector:
    if mode not in ODV_MODES:
        raise ValueError(f"unknown odv mode {mode!r}")
    zones = partition(seq, nf, scheme)
    feats = {k: (ode(z), odv(z, mode)) for k, z in zones.items()}
    return StyleVector(feats, seq.n, scheme, mode, source_id, author_label)
