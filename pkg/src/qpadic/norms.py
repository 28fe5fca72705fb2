"""Growth-modulus analysis of norms dominated by the sup norm.

A profile stores the exact log_p norms l_n of the binomial functions up to
index L, plus the global bound M_log that also governs the unstored tail.
Every query reports whether the truncated tail could change the answer, so a
"Regular" or exact-G verdict is a certificate, never a guess.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownTail
from .mahler import CoeffSeries, ZERO_TAIL
from .padic.element import CycloElement
from .padic.scalar import INF


@dataclass(frozen=True)
class NormProfile:
    p: int
    ells: tuple[Fraction, ...]  # l_0 .. l_L, exact rationals
    m_log: Fraction             # l_n <= m_log for all n, including the tail

    def __post_init__(self):
        if not self.ells:
            raise ValueError("profile needs at least l_0")
        if any(l > self.m_log for l in self.ells):
            raise ValueError("profile entries must respect the global bound M_log")

    @property
    def length(self) -> int:
        return len(self.ells) - 1

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "M_log": str(self.m_log),
            "ells": [str(l) for l in self.ells],
        }

    @staticmethod
    def from_json(data: dict) -> "NormProfile":
        return NormProfile(
            int(data["p"]),
            tuple(Fraction(s) for s in data["ells"]),
            Fraction(data["M_log"]),
        )

    @staticmethod
    def load(path: str) -> "NormProfile":
        with open(path) as fh:
            return NormProfile.from_json(json.load(fh))


@dataclass(frozen=True)
class GrowthValue:
    value: Fraction          # max over stored n of l_n + n log_r
    argmax: tuple[int, ...]  # stored indices attaining it
    certified: bool          # True when the tail bound cannot reach the max
    required_length: int | None = None  # L that would make the query certified


@dataclass(frozen=True)
class RegularityVerdict:
    kind: str                      # "regular" | "critical" | "inconclusive"
    witness: int | None = None     # Regular: the unique argmax
    ties: tuple[int, ...] = ()     # Critical: the tying index set
    reason: str | None = None
    required_length: int | None = None

    @property
    def is_regular(self) -> bool:
        return self.kind == "regular"


def _tail_ceiling(profile: NormProfile, log_r: Fraction) -> Fraction:
    """Upper bound on l_n + n log_r over the unstored tail n > L (log_r <= 0)."""
    return profile.m_log + (profile.length + 1) * log_r


def growth_modulus(profile: NormProfile, log_r: Fraction) -> GrowthValue:
    """G(r) in log scale: max_n (l_n + n log_r), certified against the tail."""
    log_r = Fraction(log_r)
    if log_r > 0:
        raise ValueError("radii are restricted to r <= 1 (log_r <= 0)")
    vals = [l + n * log_r for n, l in enumerate(profile.ells)]
    best = max(vals)
    argmax = tuple(n for n, v in enumerate(vals) if v == best)
    ceiling = _tail_ceiling(profile, log_r)
    if best >= ceiling:
        return GrowthValue(best, argmax, True)
    if log_r == 0:
        return GrowthValue(best, argmax, False, required_length=None)
    # M_log + (L'+1) log_r <= best  <=>  L' >= (best - M_log)/log_r - 1
    need = (best - profile.m_log) / log_r - 1
    required = max(profile.length + 1, -(-need.numerator // need.denominator))
    return GrowthValue(best, argmax, False, required_length=required)


def classify(profile: NormProfile, log_r: Fraction) -> RegularityVerdict:
    """Regular (unique strict argmax beating the tail), Critical, or Inconclusive."""
    log_r = Fraction(log_r)
    if log_r >= 0:
        raise ValueError("classification needs a strictly interior radius (log_r < 0)")
    g = growth_modulus(profile, log_r)
    ceiling = _tail_ceiling(profile, log_r)
    if g.value < ceiling:
        return RegularityVerdict(
            "inconclusive",
            reason="the unstored tail could attain the maximum",
            required_length=g.required_length,
        )
    if len(g.argmax) == 1:
        if g.value == ceiling:
            # a tail index could still tie the stored maximum
            return RegularityVerdict(
                "inconclusive",
                reason="the tail bound exactly matches the stored maximum",
                required_length=profile.length + 1,
            )
        return RegularityVerdict("regular", witness=g.argmax[0])
    return RegularityVerdict("critical", ties=g.argmax)


def critical_values(profile: NormProfile):
    """All certified critical radii, from the pairwise tie candidates
    (l_i - l_j) / (j - i); plus the candidates left inconclusive by the tail.
    """
    candidates = set()
    ells = profile.ells
    for i in range(len(ells)):
        for j in range(i + 1, len(ells)):
            t = Fraction(ells[i] - ells[j], j - i)
            if t < 0:
                candidates.add(t)
    critical = []
    inconclusive = []
    for t in sorted(candidates):
        verdict = classify(profile, t)
        if verdict.kind == "critical":
            critical.append((t, verdict.ties))
        elif verdict.kind == "inconclusive":
            inconclusive.append(t)
    return critical, inconclusive


def weighted_norm_from_valuations(valuations, weights: NormProfile, tail=None) -> Fraction:
    """log_p of sup_n |a_n| p^(w_n) given the coefficient valuations exactly.

    `tail` bounds v(a_n) for n beyond the stored coefficients (a DecayTail or
    ZERO_TAIL); weights beyond the stored profile are only bounded by M_log.
    """
    stored = [
        w - v
        for w, v in zip(weights.ells, valuations)
        if v != INF
    ]
    if len(valuations) > len(weights.ells):
        raise UnknownTail("weight profile is shorter than the coefficient series")
    best = max(stored) if stored else -INF
    k_next = len(valuations)
    if tail == ZERO_TAIL:
        return best
    if tail is None:
        raise UnknownTail("coefficient series has no tail bound")
    bound = weights.m_log - tail.bound_at(k_next, weights.p)
    if bound <= best:
        return best
    raise UnknownTail(
        "tail term bound exceeds the stored maximum; extend the series",
        required_length=k_next,
    )


def weighted_norm(series: CoeffSeries, weights: NormProfile) -> Fraction:
    """The test norm ||f||_w = sup_n |a_n| p^(w_n) on a classical (q = 1) series."""
    if not series.q.equals(CycloElement.from_int(series.q.field, 1)):
        raise ValueError("weighted test norms are defined for classical series (q = 1)")
    vals = [a.valuation().value for a in series.coeffs]
    return weighted_norm_from_valuations(vals, weights, series.tail)
