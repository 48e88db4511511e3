"""Wave vectors, spectral domains and dispersion relations.

Frequencies are angular (rad/s) everywhere inside the library; Hz appears
only at presentation time via :func:`to_hz`.  The spherical dispersion is
evaluated in exact rational arithmetic (`fractions.Fraction`), every other
relation in floating point.

Supported dispersion kinds
--------------------------
``rossby_sphere``     omega = -2 m / (n (n + 1))          (exact rational)
``capillary``         omega = (m^2 + n^2)^(3/2)
``gravity_capillary`` omega^2 = g k + (mu/nu) k^3,  k = |(m, n)|
``gravity_tanh``      omega = k tanh(alpha k)
``bve_plane``         omega = kx / (1 + kx + ky)          (printed form)
                      omega = kx / (kx^2 + ky^2)          (squared form)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, NamedTuple, Union

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi

#: c.g.s. defaults: g in cm/s^2, mu/nu in cm^3/s^2.
DEFAULT_G = 981.0

#: Surface tension over density for the four liquids quoted with the
#: gravity-capillary tables (c.g.s. units).
LIQUID_PRESETS = {
    "water": 75.0,          # clear water, 8 C
    "glycerine": 47.0,      # glycerine C3H5(OH)3, 20 C
    "benzol": 27.0,         # benzol C6H6, 60 C
    "benzaldehyde": 16.0,   # benzaldehyde C6H5CHO film on water, 20 C
}

OmegaValue = Union[Fraction, float]


class WaveVector(NamedTuple):
    """Integer wave vector (m, n), both components >= 1."""

    m: int
    n: int

    def norm_sq(self) -> int:
        return self.m * self.m + self.n * self.n

    def __str__(self) -> str:
        return f"[{self.m},{self.n}]"


def check_wavevector(k: WaveVector) -> WaveVector:
    """Validate positive integer components, returning the vector."""
    m, n = k
    if int(m) != m or int(n) != n:
        raise DomainError(f"wave vector components must be integers, got {k!r}")
    if m < 1 or n < 1:
        raise DomainError(f"wave vector components must be >= 1, got {k!r}")
    return WaveVector(int(m), int(n))


@dataclass(frozen=True)
class BasinGeometry:
    """Basin shape and side lengths (cm).  ``sphere`` and ``plane`` carry no
    usable side lengths; ``unit_square`` fixes Lx = Ly = 1."""

    kind: str = "unit_square"  # unit_square | rectangle | sphere | plane
    lx: float = 1.0
    ly: float = 1.0

    _KINDS = ("unit_square", "rectangle", "sphere", "plane")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise DomainError(f"unknown basin kind {self.kind!r}")
        if self.lx <= 0 or self.ly <= 0:
            raise DomainError("basin side lengths must be positive")
        if self.kind == "unit_square" and (self.lx != 1.0 or self.ly != 1.0):
            raise DomainError("unit_square basin requires Lx = Ly = 1")


@dataclass(frozen=True)
class DispersionSpec:
    """A named, parameterised dispersion relation.

    ``exactness`` is derived: only ``rossby_sphere`` evaluates to exact
    rationals; every other kind is floating point.
    ``plane_form`` selects between the printed plane dispersion
    (``"printed"``: kx/(1+kx+ky)) and the standard squared-wavenumber form
    (``"squared"``: kx/(kx^2+ky^2)); it is meaningful for ``bve_plane`` only.
    """

    kind: str
    g: float = DEFAULT_G
    mu_over_nu: float | None = None
    alpha: float | None = None
    basin: BasinGeometry = field(default_factory=BasinGeometry)
    plane_form: str = "printed"

    _KINDS = ("rossby_sphere", "capillary", "gravity_capillary",
              "gravity_tanh", "bve_plane")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise DomainError(f"unknown dispersion kind {self.kind!r}")
        if self.g <= 0:
            raise DomainError("g must be positive")
        if self.kind == "gravity_capillary":
            if self.mu_over_nu is None or self.mu_over_nu <= 0:
                raise DomainError("gravity_capillary requires mu_over_nu > 0")
        if self.kind == "gravity_tanh":
            if self.alpha is None or self.alpha <= 0:
                raise DomainError("gravity_tanh requires alpha > 0")
        if self.plane_form not in ("printed", "squared"):
            raise DomainError(f"unknown plane_form {self.plane_form!r}")
        if self.kind == "rossby_sphere" and self.basin.kind not in ("sphere",):
            # Allow construction with the default basin, but normalise it.
            object.__setattr__(self, "basin", BasinGeometry(kind="sphere"))

    @property
    def exactness(self) -> bool:
        """True iff frequencies are exact rationals of the integer arguments."""
        return self.kind == "rossby_sphere"

    # -- serialisation ----------------------------------------------------

    def to_config(self) -> dict:
        cfg = {
            "kind": self.kind,
            "g": self.g,
            "basin": {"kind": self.basin.kind, "lx": self.basin.lx,
                      "ly": self.basin.ly},
        }
        if self.mu_over_nu is not None:
            cfg["mu_over_nu"] = self.mu_over_nu
        if self.alpha is not None:
            cfg["alpha"] = self.alpha
        if self.kind == "bve_plane":
            cfg["plane_form"] = self.plane_form
        return cfg

    @classmethod
    def from_config(cls, cfg: dict) -> "DispersionSpec":
        known = {"kind", "g", "mu_over_nu", "alpha", "basin", "plane_form"}
        unknown = set(cfg) - known
        if unknown:
            raise DomainError(f"unknown configuration keys: {sorted(unknown)}")
        basin_cfg = cfg.get("basin", {})
        if basin_cfg:
            unknown_b = set(basin_cfg) - {"kind", "lx", "ly"}
            if unknown_b:
                raise DomainError(
                    f"unknown basin configuration keys: {sorted(unknown_b)}")
            basin = BasinGeometry(kind=basin_cfg.get("kind", "unit_square"),
                                  lx=float(basin_cfg.get("lx", 1.0)),
                                  ly=float(basin_cfg.get("ly", 1.0)))
        else:
            basin = BasinGeometry()
        return cls(kind=cfg["kind"], g=float(cfg.get("g", DEFAULT_G)),
                   mu_over_nu=(None if cfg.get("mu_over_nu") is None
                               else float(cfg["mu_over_nu"])),
                   alpha=(None if cfg.get("alpha") is None
                          else float(cfg["alpha"])),
                   basin=basin, plane_form=cfg.get("plane_form", "printed"))


@dataclass(frozen=True)
class SpectralDomain:
    """Finite truncation of the integer lattice.

    ``square``: 1 <= m, n <= T (T^2 modes).
    ``triangular``: 1 <= m <= n <= T (T(T+1)/2 modes), the spherical shape.
    """

    truncation: int
    shape: str = "square"

    def __post_init__(self):
        if self.truncation < 1:
            raise DomainError("truncation must be >= 1")
        if self.shape not in ("square", "triangular"):
            raise DomainError(f"unknown domain shape {self.shape!r}")

    def __len__(self) -> int:
        T = self.truncation
        return T * T if self.shape == "square" else T * (T + 1) // 2

    def __contains__(self, k: WaveVector) -> bool:
        m, n = k
        T = self.truncation
        if not (1 <= m <= T and 1 <= n <= T):
            return False
        return self.shape == "square" or m <= n

    def modes(self) -> Iterator[WaveVector]:
        T = self.truncation
        for m in range(1, T + 1):
            lo = m if self.shape == "triangular" else 1
            for n in range(lo, T + 1):
                yield WaveVector(m, n)


def domain_for(spec: DispersionSpec, truncation: int) -> SpectralDomain:
    """Default domain shape for a spec: triangular on the sphere, square
    otherwise."""
    shape = "triangular" if spec.kind == "rossby_sphere" else "square"
    return SpectralDomain(truncation, shape)


@dataclass(frozen=True)
class Frequency:
    """Angular frequency; exact Fraction on the spherical path, float
    elsewhere.  ``hz`` is always a float."""

    omega: OmegaValue

    @property
    def hz(self) -> float:
        return float(self.omega) / TWO_PI

    @property
    def is_exact(self) -> bool:
        return isinstance(self.omega, Fraction)


def to_hz(omega: OmegaValue) -> float:
    """Convert an angular frequency (rad/s) to Hz."""
    return float(omega) / TWO_PI


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _rescaled_norm_sq(spec: DispersionSpec, m: int, n: int) -> float:
    """Basin-scaled squared scalar wavenumber S/(Lx*Ly) with
    S = (m Ly)^2 + (n Lx)^2; reduces to m^2 + n^2 on the unit square and on
    any square basin."""
    lx, ly = spec.basin.lx, spec.basin.ly
    return ((m * ly) ** 2 + (n * lx) ** 2) / (lx * ly)


def _omega_gravity_capillary(spec: DispersionSpec, m: int, n: int) -> float:
    g, mu = spec.g, spec.mu_over_nu
    lx, ly = spec.basin.lx, spec.basin.ly
    if lx == ly:
        # Square of side L.  The published L=2 triad frequencies are
        # reproduced exactly by omega^2 = g k + (mu/nu) k^3 / L^2 with
        # k = sqrt(m^2+n^2); this differs from the L-rescaled square form
        # only by the constant factor 1/L, so resonances and discrepancy
        # ratios are identical.  L = 1 is the plain unit-square relation.
        k = math.sqrt(m * m + n * n)
        return math.sqrt(g * k + mu * (k * k * k) / (lx * lx))
    # True rectangle: the two-term rectangular formula.
    s = (m * ly) ** 2 + (n * lx) ** 2
    area = lx * ly
    return math.sqrt(g * math.sqrt(s) / area + mu * s ** 1.5 / (area * area))


def eval_frequency(spec: DispersionSpec, k: WaveVector) -> Frequency:
    """Evaluate the dispersion relation at an integer wave vector.

    Returns an exact rational for ``rossby_sphere`` and a float for every
    other kind.  Raises :class:`DomainError` for invalid wave vectors.
    """
    m, n = check_wavevector(k)
    kind = spec.kind
    if kind == "rossby_sphere":
        # Exact path: big-integer rationals, never floats.
        return Frequency(Fraction(-2 * m, n * (n + 1)))
    if kind == "capillary":
        return Frequency(_rescaled_norm_sq(spec, m, n) ** 1.5)
    if kind == "gravity_capillary":
        return Frequency(_omega_gravity_capillary(spec, m, n))
    if kind == "gravity_tanh":
        kk = math.sqrt(_rescaled_norm_sq(spec, m, n))
        return Frequency(kk * math.tanh(spec.alpha * kk))
    if kind == "bve_plane":
        kx = m / spec.basin.lx
        ky = n / spec.basin.ly
        if spec.plane_form == "printed":
            return Frequency(kx / (1.0 + kx + ky))
        return Frequency(kx / (kx * kx + ky * ky))
    raise DomainError(f"unknown dispersion kind {kind!r}")


def omega_grid(spec: DispersionSpec, truncation: int) -> np.ndarray:
    """Frequency table W[m, n] for 1 <= m, n <= truncation as float64.

    Index 0 rows/columns are NaN padding so W[m, n] addresses wavenumbers
    directly.  Used by the vectorised searches; the exact spherical path
    never goes through this table.
    """
    T = truncation
    w = np.full((T + 1, T + 1), np.nan, dtype=np.float64)
    mm = np.arange(1, T + 1, dtype=np.float64)[:, None]
    nn = np.arange(1, T + 1, dtype=np.float64)[None, :]
    kind = spec.kind
    if kind == "rossby_sphere":
        w[1:, 1:] = -2.0 * mm / (nn * (nn + 1.0))
        return w
    if kind == "capillary":
        lx, ly = spec.basin.lx, spec.basin.ly
        w[1:, 1:] = (((mm * ly) ** 2 + (nn * lx) ** 2) / (lx * ly)) ** 1.5
        return w
    if kind == "gravity_capillary":
        g, mu = spec.g, spec.mu_over_nu
        lx, ly = spec.basin.lx, spec.basin.ly
        if lx == ly:
            kk = np.sqrt(mm * mm + nn * nn)
            w[1:, 1:] = np.sqrt(g * kk + mu * (kk * kk * kk) / (lx * lx))
        else:
            s = (mm * ly) ** 2 + (nn * lx) ** 2
            area = lx * ly
            w[1:, 1:] = np.sqrt(g * np.sqrt(s) / area
                                + mu * s ** 1.5 / (area * area))
        return w
    if kind == "gravity_tanh":
        lx, ly = spec.basin.lx, spec.basin.ly
        kk = np.sqrt(((mm * ly) ** 2 + (nn * lx) ** 2) / (lx * ly))
        w[1:, 1:] = kk * np.tanh(spec.alpha * kk)
        return w
    if kind == "bve_plane":
        kx = mm / spec.basin.lx
        ky = nn / spec.basin.ly
        if spec.plane_form == "printed":
            w[1:, 1:] = kx / (1.0 + kx + ky)
        else:
            w[1:, 1:] = kx / (kx * kx + ky * ky)
        return w
    raise DomainError(f"unknown dispersion kind {kind!r}")


def rescale_for_basin(spec: DispersionSpec, lx: float, ly: float) -> DispersionSpec:
    """Return a spec evaluated on an Lx x Ly basin.

    Lx = Ly = 1 is the identity (unit square).  The spherical dispersion has
    no side lengths and refuses to rescale.
    """
    if lx <= 0 or ly <= 0:
        raise DomainError("basin side lengths must be positive")
    if spec.kind == "rossby_sphere":
        raise DomainError("rossby_sphere has a spherical basin; "
                          "side lengths do not apply")
    if lx == 1.0 and ly == 1.0:
        basin = BasinGeometry("unit_square")
    else:
        basin = BasinGeometry("rectangle", lx=float(lx), ly=float(ly))
    return replace(spec, basin=basin)
