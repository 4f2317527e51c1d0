"""Spectra of alpha*S0 + chi*S+S- and alpha*K0 + chi*K+K-.

Exact levels come from the closed-form eigenvalues.  The two harmonic limits
are the RPA (two decoupled oscillators, valid near M = -S or K = k1 + k2)
and the SHA limit (oscillator plus rotor for su(2), one oscillator for
su(1,1), valid near M = 0 or at large N).  The limits are always evaluated;
whether the parameters sit inside their domain is reported as a flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .algebra import HalfInt, HalfIntLike
from .errors import DomainError, EnumerationCapError

DEFAULT_LEVEL_CAP = 10**6


@dataclass(frozen=True)
class CouplingParams:
    alpha: float
    chi: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.chi)):
            raise DomainError("alpha and chi must be finite")


@dataclass(frozen=True)
class SpectrumLevel:
    group: str
    label_names: tuple[str, ...]
    labels: tuple
    energy: float
    method: str
    outside_validity: bool = False
    validity: Optional[str] = None

    def label_dict(self) -> dict:
        return dict(zip(self.label_names, self.labels))


@dataclass(frozen=True)
class Su2Rep:
    s1: HalfInt
    s2: HalfInt

    @classmethod
    def of(cls, s1: HalfIntLike, s2: HalfIntLike) -> "Su2Rep":
        s1, s2 = HalfInt.of(s1), HalfInt.of(s2)
        if s1.twice < 0 or s2.twice < 0:
            raise DomainError("spins must be non-negative")
        return cls(s1, s2)

    @property
    def sigma(self) -> float:
        # here sigma = s1 + s2 (the stretched total spin), not the Casimir root
        return float(self.s1 + self.s2)


@dataclass(frozen=True)
class Su11Rep:
    k1: float
    k2: float
    N_max: int = 0

    def __post_init__(self):
        if not (self.k1 > 0 and self.k2 > 0):
            raise DomainError("k1 and k2 must be positive")
        if self.N_max < 0:
            raise DomainError("N_max must be non-negative")


def _su2_energy(p: CouplingParams, S: float, M: float) -> float:
    return p.alpha * M + p.chi * (S * (S + 1.0) - M * (M - 1.0))


def _su11_energy(p: CouplingParams, rep: Su11Rep, N: int, n: int) -> float:
    K = N - n + rep.k1 + rep.k2
    return p.alpha * (K + n) + p.chi * (2.0 * K + n - 1.0) * n


def exact_spectrum(group: str, params: CouplingParams, rep, cap: int = DEFAULT_LEVEL_CAP) -> list[SpectrumLevel]:
    if group == "su2":
        count = (rep.s1.twice + 1) * (rep.s2.twice + 1)
        if count > cap:
            raise EnumerationCapError(f"su(2) spectrum has {count} levels, cap is {cap}")
        levels = []
        top = rep.s1 + rep.s2
        S = abs(rep.s1 - rep.s2)
        while S.twice <= top.twice:
            for twice_M in range(-S.twice, S.twice + 1, 2):
                M = HalfInt(twice_M)
                levels.append(SpectrumLevel(
                    "su2", ("S", "M"), (S, M), _su2_energy(params, float(S), float(M)), "exact"))
            S = S + 1
        return levels
    if group == "su11":
        count = (rep.N_max + 1) * (rep.N_max + 2) // 2
        if count > cap:
            raise EnumerationCapError(f"su(1,1) spectrum has {count} levels, cap is {cap}")
        return [
            SpectrumLevel("su11", ("N", "n", "K"), (N, n, N - n + rep.k1 + rep.k2),
                          _su11_energy(params, rep, N, n), "exact")
            for N in range(rep.N_max + 1)
            for n in range(N + 1)
        ]
    raise ValueError(f"unknown group {group!r}")


def exact_level(group: str, params: CouplingParams, rep, labels) -> float:
    """Exact energy at (S, M) for su(2) or (N, n) for su(1,1)."""
    if group == "su2":
        S, M = labels
        return _su2_energy(params, float(S), float(M))
    N, n = labels
    return _su11_energy(params, rep, N, n)


def rpa_spectrum(group: str, params: CouplingParams, rep, labels) -> SpectrumLevel:
    """RPA level: su(2) labels (n, m) with n = sigma - S, m = S + M; su(1,1) labels (N, n)."""
    a, chi = params.alpha, params.chi
    if group == "su2":
        n, m = labels
        sigma = rep.sigma
        freq = a + chi * (2.0 * sigma + 1.0)
        energy = -a * sigma + a * n + freq * m
        ok = a > 0 and freq > 0
        cond = "alpha > 0 and alpha + chi*(2*sigma + 1) > 0"
        return SpectrumLevel("su2", ("n", "m"), (n, m), energy, "rpa", not ok, cond)
    if group == "su11":
        N, n = labels
        ksum = rep.k1 + rep.k2
        energy = a * ksum + a * N + chi * (2.0 * ksum - 1.0) * n
        ok = a > 0 and chi * (2.0 * ksum - 1.0) > 0
        cond = "alpha > 0 and chi*(2*(k1 + k2) - 1) > 0"
        return SpectrumLevel("su11", ("N", "n"), (N, n), energy, "rpa", not ok, cond)
    raise ValueError(f"unknown group {group!r}")


def sha_limit_spectrum(group: str, params: CouplingParams, rep, labels) -> SpectrumLevel:
    """SHA-limit level: su(2) labels (n, M) with n = sigma - S; su(1,1) labels (N, n)."""
    a, chi = params.alpha, params.chi
    if group == "su2":
        n, M = labels
        M = float(M)
        sigma = rep.sigma
        energy = chi * sigma * (sigma + 1.0) - chi * (2.0 * sigma + 1.0) * n + a * M - chi * M * (M - 1.0)
        ok = chi < -a
        cond = "chi < -alpha"
        return SpectrumLevel("su2", ("n", "M"), (n, M), energy, "sha_limit", not ok, cond)
    if group == "su11":
        N, n = labels
        total = rep.k1 + rep.k2 + N
        energy = a * total + 2.0 * chi * total * n
        ok = chi * total > 0
        cond = "chi*(k1 + k2 + N) > 0"
        return SpectrumLevel("su11", ("N", "n"), (N, n), energy, "sha_limit", not ok, cond)
    raise ValueError(f"unknown group {group!r}")


def ground_level(levels: list[SpectrumLevel]) -> SpectrumLevel:
    """Lowest level; ties go to the first one enumerated."""
    return min(levels, key=lambda lv: lv.energy)
