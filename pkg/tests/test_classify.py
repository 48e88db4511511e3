from fractions import Fraction

import pytest

from wavetriads import (
    DispersionSpec,
    SpectralDomain,
    UsageError,
    WaveVector,
    cascade_path,
    class_counts,
    classify_modes,
    eval_frequency,
    find_exact_triads,
    minimal_near_resonant,
)
from wavetriads.classify import (
    ACTIVE,
    NEUTRAL,
    PASSIVE,
    REMARK_CONVENTION,
    REMARK_OMEGA_MAX,
    bve_rectangle_quarter_spec,
    bve_square_spec,
    resonant_seed_triads,
)
from wavetriads.search import discrepancy_lower_bound
from conftest import gc_spec, wv

CLASSIC = (wv(4, 12), wv(5, 14), wv(9, 13))


def classic_triad(sphere, sphere_t14):
    return [t for t in find_exact_triads(sphere, sphere_t14)
            if t.key() == CLASSIC][0]


# -- partition structure ------------------------------------------------------

@pytest.mark.parametrize("omega_max", [1e-6, 0.03, 0.3])
def test_classic_members_active_for_any_threshold(sphere, sphere_t14, omega_max):
    part = classify_modes(sphere, sphere_t14, omega_max)
    for k in CLASSIC:
        assert part.mode_class(k) == ACTIVE


def test_trivial_domain_is_all_neutral(sphere):
    part = classify_modes(sphere, SpectralDomain(1, "triangular"), 0.3)
    assert part.counts() == (0, 0, 1)
    part = classify_modes(gc_spec(75), SpectralDomain(1, "square"), 0.3)
    assert part.counts() == (0, 0, 1)


@pytest.mark.parametrize("spec_name,convention", [
    ("sphere", dict()),
    ("sphere", dict(n_selection="parity", bridge_mode="per_triad")),
    ("square", dict(patterns="all", closure="box")),
    ("square", dict(closure="zonal")),
    ("gc", dict()),
])
def test_partition_is_disjoint_and_exhaustive(spec_name, convention):
    spec = {"sphere": DispersionSpec("rossby_sphere"),
            "square": bve_square_spec(),
            "gc": gc_spec(16)}[spec_name]
    shape = "triangular" if spec.kind == "rossby_sphere" else "square"
    domain = SpectralDomain(10, shape)
    part = classify_modes(spec, domain, 0.05, **convention)
    assert set(part.assignments) == set(domain.modes())
    a, p, n = part.counts()
    assert a + p + n == len(domain)
    for asg in part.assignments.values():
        assert asg.mode_class in (ACTIVE, PASSIVE, NEUTRAL)


@pytest.mark.parametrize("spec_name", ["sphere", "square"])
def test_neutral_nonincreasing_in_threshold(spec_name):
    spec = (DispersionSpec("rossby_sphere") if spec_name == "sphere"
            else bve_square_spec())
    shape = "triangular" if spec.kind == "rossby_sphere" else "square"
    domain = SpectralDomain(10, shape)
    neutrals = [class_counts(spec, domain, om)[2]
                for om in (0.01, 0.03, 0.1, 0.3)]
    assert all(a >= b for a, b in zip(neutrals, neutrals[1:]))


def test_active_evidence_revalidates(sphere, sphere_t14):
    part = classify_modes(sphere, sphere_t14, 0.03)
    seen_any = False
    for asg in part.assignments.values():
        if asg.mode_class != ACTIVE:
            continue
        for ev in asg.evidence:
            if hasattr(ev, "members"):  # a resonant Triad
                seen_any = True
                assert ev.k1.m + ev.k2.m == ev.k3.m
                ws = [eval_frequency(sphere, k).omega for k in ev.members()]
                assert ws[0] + ws[1] - ws[2] == 0
            else:  # a CascadeStep bridge
                assert 0 < ev.abs_discrepancy <= part.omega_max
    assert seen_any


def test_passive_modes_carry_min_discrepancy(sphere):
    part = classify_modes(sphere, SpectralDomain(8, "triangular"), 0.3)
    for asg in part.assignments.values():
        if asg.mode_class == PASSIVE:
            assert asg.min_abs_discrepancy is not None
            assert 0 < asg.min_abs_discrepancy <= 0.3


# -- minimal near-resonant bridges -------------------------------------------

def test_minimal_bridge_matches_brute_force(sphere, sphere_t14):
    triad = classic_triad(sphere, sphere_t14)
    pair = (wv(4, 12), wv(5, 14))
    step = minimal_near_resonant(sphere, sphere_t14, triad, pair)
    # brute force over all candidate completions (9, n), n <= 14; the
    # magnitude form |2/39 + 1/21 - 2*9/(n(n+1))| mirrors the signed
    # residual of the stored negative frequencies
    target = Fraction(2, 39) + Fraction(1, 21)
    best = None
    for n in range(9, 15):
        if (9, n) == (9, 13):
            continue
        om = target - Fraction(2 * 9, n * (n + 1))
        if best is None or abs(om) < abs(best[1]):
            best = (wv(9, n), om)
    assert step.bridge_wave == best[0] == wv(9, 14)
    assert abs(step.bridge_discrepancy) == abs(best[1]) == Fraction(6, 455)
    ws = [eval_frequency(sphere, k).omega for k in (*pair, step.bridge_wave)]
    assert step.bridge_discrepancy == ws[0] + ws[1] - ws[2]


def test_minimal_bridge_no_completion_is_none(sphere):
    domain = SpectralDomain(5, "triangular")
    triads = find_exact_triads(sphere, domain)
    triad = triads[0]  # ((1,3),(2,5),(3,4))
    # donor pair (2,5),(3,4): zonal sum needs m=5 <= 5 with n >= 5: only
    # (5,5) exists; exclude-own-members never triggers, so a bridge exists;
    # instead use a pair whose sum exceeds the truncation
    pair = (wv(2, 5), wv(3, 4))
    step = minimal_near_resonant(sphere, domain, triad, pair)
    assert step is not None
    domain4 = SpectralDomain(4, "triangular")
    # same pair in T=4: m=5 > 4, no completion at all
    step = minimal_near_resonant(sphere, domain4, triad, pair)
    assert step is None


def test_minimal_bridge_requires_resonant_triad(sphere, sphere_t14):
    near = [t for t in
            __import__("wavetriads").find_near_triads(sphere, sphere_t14, 0.2)
            if t.discrepancy != 0]
    with pytest.raises(UsageError):
        minimal_near_resonant(sphere, sphere_t14, near[0],
                              (near[0].k1, near[0].k2))


def test_bridge_not_below_domain_minimum(sphere, sphere_t14):
    bound = discrepancy_lower_bound(sphere, sphere_t14).finite_min.value
    triad = classic_triad(sphere, sphere_t14)
    for pair in ((triad.k1, triad.k2), (triad.k1, triad.k3),
                 (triad.k2, triad.k3)):
        step = minimal_near_resonant(sphere, sphere_t14, triad, pair)
        if step is not None:
            assert abs(step.bridge_discrepancy) >= bound


# -- cascades -----------------------------------------------------------------

def test_cascade_depth_one_is_min_over_pairs(sphere, sphere_t14):
    triad = classic_triad(sphere, sphere_t14)
    steps = cascade_path(sphere, sphere_t14, triad, depth=1)
    assert len(steps) == 1
    per_pair = [minimal_near_resonant(sphere, sphere_t14, triad, p)
                for p in ((triad.k1, triad.k2), (triad.k1, triad.k3),
                          (triad.k2, triad.k3))]
    best = min((s.abs_discrepancy, s.bridge_wave) for s in per_pair if s)
    assert (steps[0].abs_discrepancy, steps[0].bridge_wave) == best


def test_cascade_three_steps_stable(sphere, sphere_t14):
    triad = classic_triad(sphere, sphere_t14)
    first = cascade_path(sphere, sphere_t14, triad, depth=3)
    second = cascade_path(sphere, sphere_t14, triad, depth=3)
    assert [(s.bridge_wave, s.bridge_discrepancy) for s in first] == \
           [(s.bridge_wave, s.bridge_discrepancy) for s in second]
    assert 1 <= len(first) <= 3
    for s in first:
        assert s.abs_discrepancy > 0


def test_cascade_validates_input(sphere, sphere_t14):
    triad = classic_triad(sphere, sphere_t14)
    with pytest.raises(UsageError):
        cascade_path(sphere, sphere_t14, triad, depth=0)


def test_cascade_steps_minimal_by_brute_force(sphere, sphere_t14):
    """Each step's bridge beats every other completion of every donor pair
    of its source triad (independent enumeration over the sum wavenumber
    and all latitudinal indices)."""
    triad = classic_triad(sphere, sphere_t14)
    T = sphere_t14.truncation
    freqs = {k: eval_frequency(sphere, k).omega
             for k in sphere_t14.modes()}
    for step in cascade_path(sphere, sphere_t14, triad, depth=3):
        src = set(step.source_triad.members())
        best = None
        for ka, kb in [(a, b) for a in src for b in src if a < b]:
            m3 = ka.m + kb.m
            if m3 > T:
                continue
            for n3 in range(m3, T + 1):
                w = WaveVector(m3, n3)
                if w in src:
                    continue
                om = freqs[ka] + freqs[kb] - freqs[w]
                if om == 0:
                    continue
                if best is None or abs(om) < abs(best):
                    best = om
        assert best is not None
        assert abs(step.bridge_discrepancy) == abs(best)


# -- geometry sensitivity -----------------------------------------------------

def test_mode_2_4_changes_class_between_square_and_rectangle():
    domain = SpectralDomain(10, "square")
    sq = classify_modes(bve_square_spec(), domain, REMARK_OMEGA_MAX,
                        **REMARK_CONVENTION)
    rect = classify_modes(bve_rectangle_quarter_spec(), domain,
                          REMARK_OMEGA_MAX, **REMARK_CONVENTION)
    k = wv(2, 4)
    assert sq.mode_class(k) == ACTIVE
    assert rect.mode_class(k) == NEUTRAL


def test_zonal_square_seed_contains_2_4():
    seeds = resonant_seed_triads(bve_square_spec(),
                                 SpectralDomain(10, "square"),
                                 patterns="sum", closure="zonal")
    assert any(wv(2, 4) in t.members() for t in seeds)
