"""Experiment-facing quantities: driving frequencies, steepness-based
amplitude recommendations, the planetary amplitude bound, and basin
geometry sweeps."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .classify import class_counts
from .dispersion import (
    DispersionSpec,
    SpectralDomain,
    WaveVector,
    _rescaled_norm_sq,
    check_wavevector,
    rescale_for_basin,
)
from .errors import DomainError, UsageError
from .search import find_max_discrepancy_triads, find_near_triads

#: Steepness values above this leave the weakly nonlinear regime.
WEAKLY_NONLINEAR_EPS = 0.2


def steepness_amplitude(k: WaveVector, epsilon: float,
                        spec: DispersionSpec | None = None) -> float:
    """Wave amplitude a = epsilon / |k| (cm) for a target steepness.

    |k| is the basin-rescaled scalar wavenumber when a spec is given, the
    plain Euclidean norm otherwise.  Warns outside 0 < epsilon <= 0.2.
    """
    k = check_wavevector(WaveVector(*k))
    if epsilon < 0:
        raise DomainError("steepness must be non-negative")
    if epsilon == 0:
        warnings.warn("steepness 0 gives a degenerate zero amplitude")
    elif epsilon > WEAKLY_NONLINEAR_EPS:
        warnings.warn(
            f"steepness {epsilon} exceeds the weakly nonlinear range "
            f"(<= {WEAKLY_NONLINEAR_EPS})")
    if spec is not None:
        norm = math.sqrt(_rescaled_norm_sq(spec, k.m, k.n))
    else:
        norm = math.sqrt(k.m * k.m + k.n * k.n)
    return epsilon / norm


def planetary_amplitude_bound(m: int, n: int) -> Fraction:
    """Upper bound on the amplitude of planetary wave (m, n).

    Exact rational via big-integer factorials and powers:
    6 m n! 2^(2n+1-m) / [5n (n+1)^(m+n+3) (n-m) (5n-m-3)].
    Defined for n > m >= 1 with 5n - m - 3 > 0; singular inputs raise.
    """
    if m < 1 or int(m) != m or int(n) != n:
        raise DomainError("wavenumbers must be integers with m >= 1")
    if n == m:
        raise DomainError("amplitude bound is singular at n = m")
    if n < m:
        raise DomainError("amplitude bound requires n > m")
    if 5 * n - m - 3 <= 0:
        raise DomainError("amplitude bound requires 5n - m - 3 > 0")
    num = 6 * m * math.factorial(n) * 2 ** (2 * n + 1 - m)
    den = 5 * n * (n + 1) ** (m + n + 3) * (n - m) * (5 * n - m - 3)
    return Fraction(num, den)


@dataclass
class ExperimentPlan:
    """Frequencies to drive and amplitudes to set for one liquid/basin.

    ``type_a`` are near-resonant triads (d_ratio <= d_max, observable
    periodic energy exchange); ``type_b`` have d_ratio >= d_min (no
    periodic exchange at comparable amplitudes).  Amplitudes are in cm
    under c.g.s. units.
    """

    spec: DispersionSpec
    domain: SpectralDomain
    d_max: float
    d_min: float
    epsilon: float
    type_a: list
    type_b: list
    amplitudes: dict
    notes: str = ""

    def waves(self) -> list:
        seen = set()
        for t in list(self.type_a) + list(self.type_b):
            seen.update(t.members())
        return sorted(seen)


def plan_experiment(spec: DispersionSpec, domain: SpectralDomain,
                    d_max: float, d_min: float, epsilon: float,
                    workers: int = 1) -> ExperimentPlan:
    """Assemble driving frequencies and amplitudes for a laboratory run.

    d_max is the Type-A ceiling and d_min the Type-B floor; the plan
    records that d_max should stay above the achievable generator
    precision.  Empty triad lists are reported, not an error.
    """
    if not (0 < d_max < d_min):
        raise UsageError("thresholds must satisfy 0 < d_max < d_min")
    type_a = find_near_triads(spec, domain, d_max, workers=workers)
    type_b = find_max_discrepancy_triads(spec, domain, d_min, workers=workers)
    amplitudes = {}
    for t in list(type_a) + list(type_b):
        for k in t.members():
            if k not in amplitudes:
                amplitudes[k] = steepness_amplitude(k, epsilon, spec)
    notes = (f"amplitudes in cm (c.g.s.), steepness eps={epsilon}; "
             f"driving-frequency precision must be finer than d_max={d_max}")
    return ExperimentPlan(spec, domain, d_max, d_min, epsilon,
                          type_a, type_b, amplitudes, notes)


@dataclass
class SweepCell:
    lx: float
    ly: float
    triads: list
    triad_count: int
    counts: tuple  # (active, passive, neutral)
    resonance_free: bool


@dataclass
class GeometrySweepReport:
    spec: DispersionSpec
    domain: SpectralDomain
    d_max: float
    omega_max: float
    cells: list = field(default_factory=list)

    def cell(self, lx: float, ly: float) -> SweepCell:
        for c in self.cells:
            if c.lx == lx and c.ly == ly:
                return c
        raise KeyError((lx, ly))


def geometry_sweep(base_spec: DispersionSpec, domain: SpectralDomain,
                   lx_values, ly_values, d_max: float, omega_max: float,
                   workers: int = 1, **class_convention) -> GeometrySweepReport:
    """Rescale the spec over an (Lx, Ly) grid; report triad inventories and
    class counts per cell.  A cell with no near triad at d_max is flagged
    resonance-free."""
    lxs = list(lx_values)
    lys = list(ly_values)
    if not lxs or not lys:
        raise UsageError("geometry grids must be nonempty")
    report = GeometrySweepReport(base_spec, domain, float(d_max),
                                 float(omega_max))
    for lx, ly in product(lxs, lys):
        spec = rescale_for_basin(base_spec, lx, ly)
        triads = find_near_triads(spec, domain, d_max, workers=workers)
        counts = class_counts(spec, domain, omega_max, **class_convention)
        report.cells.append(SweepCell(lx, ly, triads, len(triads), counts,
                                      resonance_free=not triads))
    return report
