"""Shared fixtures: dispersion specs, domains, and the published triad
tables the acceptance suite reproduces (wave numbers in brackets,
frequencies in Hz)."""

import pytest

from wavetriads import DispersionSpec, SpectralDomain, WaveVector

# Near-resonant ("Type A") triads per surface-tension ratio:
# (k1, k2, k3, (hz1, hz2, hz3))
TYPE_A = {
    75: ((1, 2), (9, 1), (10, 3), (8.7638, 40.4435, 49.2073)),
    47: ((1, 26), (16, 4), (17, 30), (147.0295, 75.8317, 222.8612)),
    27: ((1, 10), (28, 6), (29, 16), (30.7235, 129.5023, 160.2258)),
    16: ((1, 6), (4, 5), (5, 11), (15.5681, 16.2945, 31.8626)),
}

# Large-discrepancy ("Type B") triads.
TYPE_B = {
    75: ((11, 15), (14, 15), (25, 30), (112.6460, 130.0788, 337.7987)),
    47: ((14, 14), (15, 16), (29, 30), (98.6504, 114.4728, 295.8396)),
    27: ((4, 4), (26, 26), (30, 30), (16.2595, 186.8502, 230.8321)),
    16: ((5, 5), (25, 25), (30, 30), (17.8606, 137.0759, 178.8991)),
}

# The resonant triad of the L=2 square basin at mu/nu = 16.
L2_TRIAD = ((1, 14), (23, 13), (24, 27), (25.0785, 50.2490, 75.3275))

# Published mode-count table: resonator -> truncation -> (active, neutral).
PUBLISHED_COUNTS = {
    "sphere": {10: (4, 3), 20: (51, 3)},
    "square": {10: (15, 0), 20: (53, 0)},
    "rectangle": {10: (4, 75), 20: (16, 300)},
}


def gc_spec(mu: float) -> DispersionSpec:
    return DispersionSpec("gravity_capillary", mu_over_nu=float(mu))


@pytest.fixture
def sphere():
    return DispersionSpec("rossby_sphere")


@pytest.fixture
def sphere_t14():
    return SpectralDomain(14, "triangular")


@pytest.fixture
def square_t30():
    return SpectralDomain(30, "square")


def wv(m, n):
    return WaveVector(m, n)
