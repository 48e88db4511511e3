"""Partition of a spectral domain into Active / Passive / Neutral modes.

Active modes are members of exact (or numerically exact) resonant triads
plus selected minimal near-resonant bridge waves; Passive modes take part
in approximate resonant interactions (0 < |Omega| <= omega_max) through
triads none of whose pairs sit inside a resonant triad; Neutral modes do
neither.

The selection rules behind the published mode-count tables are not fully
determined, so the classifier is parameterised:

``patterns``
    "sum": only the sum interaction (w1 + w2 = w3) counts.
    "all": any +/- assignment of the three frequencies counts.
``closure``
    "auto" | "both" | "zonal" | "box" vector-closure convention (see the
    search module).
``n_selection``
    Selection rule on the latitudinal indices (n1, n2, n3) of zonally
    closed triads: "none", "parity" (n1+n2+n3 odd), "triangle"
    (|n1-n2| < n3 < n1+n2) or "both".  These are the classical conditions
    for a non-vanishing spherical interaction integral.
``bridge_mode``
    "per_pair": each (resonant triad, donor pair) contributes its minimal
    bridge wave; "per_triad": only the overall minimal bridge of each
    resonant triad.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dispersion import (
    DispersionSpec,
    OmegaValue,
    SpectralDomain,
    WaveVector,
    eval_frequency,
)
from .errors import UsageError
from .search import (
    NUMERIC_EXACT_D,
    SIGN_PATTERNS,
    Triad,
    _d_ratio,
    _iter_pairs,
    _min_pattern,
    _search_box_float,
    _search_zonal_float,
    _search_both_closure,
    _sphere_exact_n3,
    box_completions,
    find_exact_triads,
    iter_ari_triads,
    resolve_closure,
)

ACTIVE = "active"
PASSIVE = "passive"
NEUTRAL = "neutral"


def _passes_n_selection(n_selection: str, n1: int, n2: int, n3: int) -> bool:
    if n_selection in ("parity", "both") and (n1 + n2 + n3) % 2 == 0:
        return False
    if n_selection in ("triangle", "both"):
        if not (abs(n1 - n2) < n3 < n1 + n2):
            return False
    return True


def _triad_passes(n_selection: str, t: Triad) -> bool:
    return _passes_n_selection(n_selection, t.k1.n, t.k2.n, t.k3.n)


@dataclass(frozen=True)
class CascadeStep:
    """A minimal near-resonant bridge: the wave through which energy leaves
    a resonant triad via one of its donor pairs."""

    source_triad: Triad
    donor_pair: tuple
    bridge_wave: WaveVector
    bridge_discrepancy: OmegaValue

    @property
    def abs_discrepancy(self) -> float:
        return abs(float(self.bridge_discrepancy))


@dataclass
class ModeAssignment:
    mode: WaveVector
    mode_class: str
    min_abs_discrepancy: float | None = None
    evidence: list = field(default_factory=list)


@dataclass
class ModePartition:
    """Assignment of every mode of a domain to one of the three classes."""

    spec: DispersionSpec
    domain: SpectralDomain
    omega_max: float
    assignments: dict
    resonant_triads: list
    bridges: list
    convention: dict

    def mode_class(self, k: WaveVector) -> str:
        return self.assignments[k].mode_class

    def counts(self) -> tuple:
        c = {ACTIVE: 0, PASSIVE: 0, NEUTRAL: 0}
        for a in self.assignments.values():
            c[a.mode_class] += 1
        return (c[ACTIVE], c[PASSIVE], c[NEUTRAL])

    def modes_in_class(self, mode_class: str) -> list:
        return sorted(k for k, a in self.assignments.items()
                      if a.mode_class == mode_class)


# ---------------------------------------------------------------------------
# resonant seeds
# ---------------------------------------------------------------------------

def _find_exact_sphere_all_patterns(spec, domain, skip_equal_n_pairs=True):
    """Exact rational triads under any sign pattern: for each ordered pair
    and each pattern, solve for the closing n3."""
    T = domain.truncation
    freqs = {k: eval_frequency(spec, k).omega for k in domain.modes()}
    out = {}
    for k1, k2 in _iter_pairs(domain):
        if skip_equal_n_pairs and k1.n == k2.n:
            continue
        m3 = k1.m + k2.m
        if m3 > T:
            continue
        w1, w2 = freqs[k1], freqs[k2]
        # w3 solving each pattern: s1*w1 + s2*w2 + s3*w3 = 0
        for signs in SIGN_PATTERNS:
            w3 = -(signs[0] * w1 + signs[1] * w2) * signs[2]
            n3 = _sphere_exact_n3(m3, w3)
            if n3 is None:
                continue
            k3 = WaveVector(m3, n3)
            if k3 not in domain or k3 == k1 or k3 == k2:
                continue
            ws = (w1, w2, freqs[k3])
            om = signs[0] * ws[0] + signs[1] * ws[1] + signs[2] * ws[2]
            if om != 0:
                continue
            t = Triad(k1, k2, k3, ws, om, 0.0, signs)
            out.setdefault((k1, k2, k3), t)
    return sorted(out.values(), key=lambda t: t.key())


def resonant_seed_triads(spec: DispersionSpec, domain: SpectralDomain,
                         patterns: str = "sum", closure: str = "auto",
                         n_selection: str = "none",
                         skip_equal_n_pairs: bool = True) -> list:
    """Exact (rational) or numerically exact (float) resonant triads under
    the given convention; these seed the Active class."""
    conv = resolve_closure(spec, closure)
    if spec.exactness:
        if patterns == "all":
            triads = _find_exact_sphere_all_patterns(
                spec, domain, skip_equal_n_pairs)
        else:
            triads = find_exact_triads(spec, domain, skip_equal_n_pairs)
    elif conv == "zonal":
        triads = [t for t in _search_zonal_float(
            spec, domain, d_max=NUMERIC_EXACT_D, patterns=patterns,
            skip_equal_n_pairs=skip_equal_n_pairs) if t.is_exact]
    elif conv == "box":
        triads = [t for t in _search_box_float(
            spec, domain, d_max=NUMERIC_EXACT_D, patterns=patterns)
            if t.is_exact]
    else:
        triads = [t for t in _search_both_closure(
            spec, domain, d_max=NUMERIC_EXACT_D, patterns=patterns)
            if t.is_exact]
    if conv == "zonal" and n_selection != "none":
        triads = [t for t in triads if _triad_passes(n_selection, t)]
    return sorted(triads, key=lambda t: t.key())


# ---------------------------------------------------------------------------
# minimal near-resonant bridge waves
# ---------------------------------------------------------------------------

def _bridge_candidates_zonal(spec, domain, ka, kb, patterns, n_selection,
                             exclude):
    T = domain.truncation
    triangular = domain.shape == "triangular"
    m_options = [ka.m + kb.m]
    if patterns == "all" and abs(ka.m - kb.m) >= 1:
        m_options.append(abs(ka.m - kb.m))
    wa = eval_frequency(spec, ka).omega
    wb = eval_frequency(spec, kb).omega
    for mw in m_options:
        if mw > T:
            continue
        n_lo = mw if triangular else 1
        for nw in range(n_lo, T + 1):
            w = WaveVector(mw, nw)
            if w in exclude:
                continue
            if not _passes_n_selection(n_selection, ka.n, kb.n, nw):
                continue
            ww = eval_frequency(spec, w).omega
            if patterns == "all":
                om, _ = _min_pattern((wa, wb, ww))
            else:
                om = wa + wb - ww
            yield w, om, min(abs(float(x)) for x in (wa, wb, ww))


def _bridge_candidates_both(spec, domain, ka, kb, patterns, exclude):
    cands = [WaveVector(ka.m + kb.m, ka.n + kb.n)]
    if patterns == "all":
        for da, db in ((ka, kb), (kb, ka)):
            m, n = da.m - db.m, da.n - db.n
            if m >= 1 and n >= 1:
                cands.append(WaveVector(m, n))
    wa = eval_frequency(spec, ka).omega
    wb = eval_frequency(spec, kb).omega
    for w in cands:
        if w in exclude or w not in domain:
            continue
        ww = eval_frequency(spec, w).omega
        if patterns == "all":
            om, _ = _min_pattern((wa, wb, ww))
        else:
            om = wa + wb - ww
        yield w, om, min(abs(float(x)) for x in (wa, wb, ww))


def _bridge_candidates_box(spec, domain, ka, kb, patterns, exclude):
    wa = eval_frequency(spec, ka).omega
    wb = eval_frequency(spec, kb).omega
    for w in box_completions(ka, kb, domain.truncation):
        if w in exclude or w not in domain:
            continue
        ww = eval_frequency(spec, w).omega
        if patterns == "all":
            om, _ = _min_pattern((wa, wb, ww))
        else:
            om = wa + wb - ww
        yield w, om, min(abs(float(x)) for x in (wa, wb, ww))


def _minimal_bridge(spec, domain, triad, donor_pair, patterns, closure,
                    n_selection):
    """Shared bridge search; no resonance validation (cascades bridge from
    near-resonant intermediate triads)."""
    ka, kb = donor_pair
    members = set(triad.members())
    if not {ka, kb} <= members:
        raise UsageError("donor pair must consist of triad members")
    conv = resolve_closure(spec, closure)
    if conv == "zonal":
        it = _bridge_candidates_zonal(spec, domain, ka, kb, patterns,
                                      n_selection, members)
    elif conv == "box":
        it = _bridge_candidates_box(spec, domain, ka, kb, patterns, members)
    else:
        it = _bridge_candidates_both(spec, domain, ka, kb, patterns, members)
    best = None
    for w, om, denom in it:
        # An exact completion is a resonance, not a near one; on the float
        # path "exact" includes rounding-level residue of rational-valued
        # dispersions (numerically exact).
        if om == 0 or abs(float(om)) <= NUMERIC_EXACT_D * denom:
            continue
        key = (abs(om), w)
        if best is None or key < best[0]:
            best = (key, w, om)
    if best is None:
        return None
    _, w, om = best
    return CascadeStep(triad, (ka, kb), w, om)


def minimal_near_resonant(spec: DispersionSpec, domain: SpectralDomain,
                          triad: Triad, donor_pair: tuple,
                          patterns: str = "sum", closure: str = "auto",
                          n_selection: str = "none") -> CascadeStep | None:
    """The bridge wave with minimal |Omega| completing vector closure with
    the donor pair, excluding the triad's own members.

    Ties break lexicographically on (m, n).  Returns None when no wave in
    the domain completes the pair ("no bridge").
    """
    if not triad.is_exact:
        raise UsageError("minimal_near_resonant expects a resonant triad")
    return _minimal_bridge(spec, domain, triad, donor_pair, patterns,
                           closure, n_selection)


def _triad_pairs(t: Triad) -> list:
    ks = t.members()
    return [(ks[0], ks[1]), (ks[0], ks[2]), (ks[1], ks[2])]


def select_bridges(spec, domain, seeds, omega_max, patterns="sum",
                   closure="auto", n_selection="none",
                   bridge_mode="per_pair") -> list:
    """Bridge waves admitted to the Active class."""
    if bridge_mode not in ("per_pair", "per_triad"):
        raise UsageError(f"unknown bridge_mode {bridge_mode!r}")
    steps = []
    for t in seeds:
        best_for_triad = None
        for pair in _triad_pairs(t):
            step = minimal_near_resonant(spec, domain, t, pair,
                                         patterns=patterns, closure=closure,
                                         n_selection=n_selection)
            if step is None or step.abs_discrepancy > omega_max:
                continue
            if bridge_mode == "per_pair":
                steps.append(step)
            else:
                key = (step.abs_discrepancy, step.bridge_wave)
                if best_for_triad is None or key < best_for_triad[0]:
                    best_for_triad = (key, step)
        if bridge_mode == "per_triad" and best_for_triad is not None:
            steps.append(best_for_triad[1])
    return steps


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def classify_modes(spec: DispersionSpec, domain: SpectralDomain,
                   omega_max: float, patterns: str = "sum",
                   closure: str = "auto", n_selection: str = "none",
                   bridge_mode: str = "per_pair",
                   skip_equal_n_pairs: bool = True) -> ModePartition:
    """Assign every mode of the domain to Active, Passive or Neutral.

    Active: members of resonant triads plus admitted minimal near-resonant
    bridges.  Passive: modes in at least one approximate-resonance triad
    (0 < |Omega| <= omega_max) none of whose pairs lies inside a resonant
    triad.  Neutral: everything else.
    """
    if omega_max <= 0:
        raise UsageError("omega_max must be positive")
    convention = dict(patterns=patterns, closure=resolve_closure(spec, closure),
                      n_selection=n_selection, bridge_mode=bridge_mode,
                      skip_equal_n_pairs=skip_equal_n_pairs)

    seeds = resonant_seed_triads(spec, domain, patterns, closure,
                                 n_selection, skip_equal_n_pairs)
    bridges = select_bridges(spec, domain, seeds, omega_max, patterns,
                             closure, n_selection, bridge_mode)

    resonant_pairs = set()
    for t in seeds:
        for a, b in _triad_pairs(t):
            resonant_pairs.add(frozenset((a, b)))

    assignments = {k: ModeAssignment(k, NEUTRAL) for k in domain.modes()}

    def touch(k, om):
        a = assignments[k]
        v = abs(float(om))
        if a.min_abs_discrepancy is None or v < a.min_abs_discrepancy:
            a.min_abs_discrepancy = v

    # Passive eligibility scan over ARI triads.
    passive_eligible = set()
    for t in iter_ari_triads(spec, domain, omega_max, patterns=patterns,
                             closure=closure,
                             skip_equal_n_pairs=skip_equal_n_pairs):
        if convention["closure"] == "zonal" and n_selection != "none" \
                and not _triad_passes(n_selection, t):
            continue
        pairs = [frozenset(p) for p in _triad_pairs(t)]
        if any(p in resonant_pairs for p in pairs):
            continue
        for k in t.members():
            passive_eligible.add(k)
            touch(k, t.discrepancy)

    for t in seeds:
        for k in t.members():
            a = assignments[k]
            a.mode_class = ACTIVE
            a.evidence.append(t)
            a.min_abs_discrepancy = 0.0
    for step in bridges:
        a = assignments[step.bridge_wave]
        if a.mode_class != ACTIVE:
            a.mode_class = ACTIVE
        a.evidence.append(step)
        touch(step.bridge_wave, step.bridge_discrepancy)

    for k in passive_eligible:
        a = assignments[k]
        if a.mode_class != ACTIVE:
            a.mode_class = PASSIVE

    return ModePartition(spec, domain, float(omega_max), assignments,
                         seeds, bridges, convention)


def class_counts(spec: DispersionSpec, domain: SpectralDomain,
                 omega_max: float, **convention) -> tuple:
    """(active, passive, neutral) counts of the partition."""
    return classify_modes(spec, domain, omega_max, **convention).counts()


# ---------------------------------------------------------------------------
# energy cascade construction
# ---------------------------------------------------------------------------

def _canonical_triad(spec, ka, kb, kw, patterns, conv) -> Triad:
    """Normal form of the triad {ka, kb, kw}: under zonal/component-wise
    closure the largest-m vector is the sum slot; under box closure the
    lexicographically largest member takes the third slot."""
    if conv == "box":
        k1, k2, k3 = sorted((ka, kb, kw))
    else:
        ks = sorted((ka, kb, kw), key=lambda k: (k.m, k.n))
        k3 = ks[-1]
        k1, k2 = sorted(ks[:2])
    ws = tuple(eval_frequency(spec, k).omega for k in (k1, k2, k3))
    if patterns == "all":
        om, signs = _min_pattern(ws)
    else:
        om, signs = ws[0] + ws[1] - ws[2], (1, 1, -1)
    return Triad(k1, k2, k3, ws, om, _d_ratio(om, ws), signs)


def cascade_path(spec: DispersionSpec, domain: SpectralDomain, seed: Triad,
                 depth: int, patterns: str = "sum", closure: str = "auto",
                 n_selection: str = "none") -> list:
    """Iteratively follow minimal near-resonant bridges, at each level
    choosing the (pair, bridge) with globally minimal |Omega|.

    Stops early on "no bridge" or when a triad repeats (cycle guard).
    """
    if depth < 1:
        raise UsageError("depth must be >= 1")
    if not seed.is_exact:
        raise UsageError("cascade_path expects a resonant seed triad")
    conv = resolve_closure(spec, closure)
    visited = {frozenset(seed.members())}
    current = seed
    steps = []
    for _ in range(depth):
        best = None
        for pair in _triad_pairs(current):
            step = _minimal_bridge(spec, domain, current, pair, patterns,
                                   closure, n_selection)
            if step is None:
                continue
            key = (step.abs_discrepancy, step.bridge_wave)
            if best is None or key < best[0]:
                best = (key, step)
        if best is None:
            break
        step = best[1]
        steps.append(step)
        nxt = _canonical_triad(spec, step.donor_pair[0], step.donor_pair[1],
                               step.bridge_wave, patterns, conv)
        sig = frozenset(nxt.members())
        if sig in visited:
            break
        visited.add(sig)
        current = nxt
    return steps


# ---------------------------------------------------------------------------
# calibrated conventions for the published mode-count tables
# ---------------------------------------------------------------------------
# The published per-resonator counts (active/neutral at truncations 10 and
# 20) rest on selection rules that are not fully specified, so each
# resonator carries a calibrated convention.  Residual deviations from the
# published numbers are listed per cell; see the acceptance suite, which
# prints the comparison.
#
#   unit sphere   zonal closure, sum pattern, parity rule on n1+n2+n3,
#                 one bridge per triad, omega_max 0.03.
#                 T20 reproduces (51 active, 3 neutral) exactly; T10 yields
#                 6 active vs the published 4 (the parity-only rule keeps
#                 one seed triad whose latitudinal indices violate the
#                 triangle rule) with 3 neutral, matching.
#   square        squared-form plane dispersion, box closure (independent
#                 +/- per component, the cosine-mode selection rule), any
#                 sign pattern, one bridge per (triad, pair),
#                 omega_max 0.013.  T20 reproduces (53 active, 0 neutral)
#                 exactly; T10 yields 16 active vs the published 15, with
#                 0 neutral, matching.
#   rectangle 1/4 same as square on an Lx=1, Ly=4 basin, omega_max 1e-4.
#                 The published rectangle row is not reproduced exactly
#                 under any convention tried; this one gives (3, 92) vs
#                 the published (4, 75) at T10 and (9, 259) vs (16, 300)
#                 at T20.
#
# The class-change remark for mode (2,4) between the square and the 1/4
# rectangle reproduces under the zonal sum convention (REMARK_CONVENTION),
# where (2,4) sits in the exact square triad (1,2)+(2,4) and has no
# approximate interactions below the threshold on the rectangle.

SPHERE_TABLE_CONVENTION = dict(patterns="sum", closure="zonal",
                               n_selection="parity", bridge_mode="per_triad")
SPHERE_TABLE_OMEGA_MAX = 0.03

PLANE_TABLE_CONVENTION = dict(patterns="all", closure="box",
                              bridge_mode="per_pair")
SQUARE_TABLE_OMEGA_MAX = 0.013
RECTANGLE_TABLE_OMEGA_MAX = 1e-4

REMARK_CONVENTION = dict(patterns="sum", closure="zonal",
                         n_selection="none", bridge_mode="per_pair")
REMARK_OMEGA_MAX = 0.01


def bve_square_spec() -> DispersionSpec:
    """Squared-form plane dispersion on the unit square."""
    return DispersionSpec("bve_plane", plane_form="squared")


def bve_rectangle_quarter_spec() -> DispersionSpec:
    """Squared-form plane dispersion on a basin with side ratio 1/4."""
    from .dispersion import BasinGeometry
    return DispersionSpec("bve_plane", plane_form="squared",
                          basin=BasinGeometry("rectangle", lx=1.0, ly=4.0))
