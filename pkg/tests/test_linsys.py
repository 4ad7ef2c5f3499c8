import pytest
from hypothesis import given, strategies as st

from dlv import (
    Inconclusive,
    MismatchedModel,
    NonEffectivityCertificate,
    NotACover,
    NotAStrictTransformShape,
    NotCertified,
    UniqueMember,
    UnknownCurve,
    WrongSurfaceKind,
    blowup_section_transfer,
    build_tower,
    certify_not_effective,
    cover_section_split,
    fixed_part_forcing,
    h0_unique_member,
    pullback,
)


# -- non-effectivity certificates ---------------------------------------------


def test_certificate_below_threshold(tower_5):
    base = tower_5.classes
    target = 3 * base["A"] - base["R"]
    cert = certify_not_effective(tower_5.base, target, base["G_n"])
    assert cert.pairing_value == 4 * (3 - 1) - 25  # == -17
    assert cert.pairing_value == -17
    assert cert.witness_label == "Gamma_n"


def test_certificate_refused_at_boundary(tower_3):
    base = tower_3.classes
    target = 4 * base["A"] - base["R"]
    with pytest.raises(NotCertified) as excinfo:
        certify_not_effective(tower_3.base, target, base["G_n"])
    assert excinfo.value.pairing_value == 4 * (4 - 1) - 9  # == 3, the boundary
    assert excinfo.value.pairing_value == 3


def test_certificate_for_negated_fiber(tower_3):
    cert = certify_not_effective(
        tower_3.base, -tower_3.classes["F"], tower_3.classes["G_n"]
    )
    assert cert.pairing_value == -4


def test_certificate_needs_abelian_model(tower_3):
    bb = tower_3.base_blowup
    with pytest.raises(WrongSurfaceKind):
        certify_not_effective(bb, -bb.curve("F'").cls, bb.curve("Gamma_n'").cls)


def test_certificate_needs_registered_witness(tower_3):
    strange = tower_3.base.divisor_class((1, 1, 1))
    with pytest.raises(UnknownCurve):
        certify_not_effective(tower_3.base, -tower_3.classes["F"], strange)


def test_certificate_constructor_refuses_nonnegative_pairing(tower_3):
    f = tower_3.classes["F"]
    kernel = tower_3.classes["G_n"]
    with pytest.raises(NotCertified):
        NonEffectivityCertificate(
            target=f, witness=kernel, witness_label="Gamma_n", pairing_value=0
        )


# -- cover section split ------------------------------------------------------


def test_cover_split_returns_both_summands(tower_3):
    member, half = tower_3.classes["A"], tower_3.classes["R"]
    first, second = cover_section_split(tower_3.cover_map, 2 * member)
    assert first == 2 * member
    assert second == 2 * member - half


def test_cover_split_of_half_branch_is_zero(tower_3):
    half = tower_3.classes["R"]
    first, second = cover_section_split(tower_3.cover_map, half)
    assert first == half
    assert second.is_zero


def test_cover_split_second_summand_pairing(tower_3):
    member, half, kernel = (
        tower_3.classes["A"],
        tower_3.classes["R"],
        tower_3.classes["G_n"],
    )
    _, second = cover_section_split(tower_3.cover_map, 1 * member)
    assert tower_3.base.pair(second, kernel) == 4 * 0 - 9  # == -9


def test_cover_split_needs_cover(tower_3):
    with pytest.raises(NotACover):
        cover_section_split(tower_3.base_blowup_map, tower_3.classes["A"])


# -- blow-up section transfer -------------------------------------------------


@pytest.mark.parametrize("m", [1, 2, 5])
def test_transfer_from_top_surface(tower_3, m):
    down, orders = blowup_section_transfer(
        tower_3.cover_blowup_map, m * tower_3.classes["D"]
    )
    assert orders == [2 * m] * 3
    assert down == pullback(tower_3.cover_map, m * tower_3.classes["A"])


@pytest.mark.parametrize("m", [1, 3])
def test_transfer_from_blown_up_base(tower_3, m):
    down, orders = blowup_section_transfer(
        tower_3.base_blowup_map, m * tower_3.classes["L"]
    )
    assert orders == [2 * m] * 3
    assert down == m * tower_3.classes["A"]


def test_transfer_of_pure_pullback(tower_3):
    up_f = pullback(tower_3.base_blowup_map, tower_3.classes["F"])
    down, orders = blowup_section_transfer(tower_3.base_blowup_map, up_f)
    assert down == tower_3.classes["F"]
    assert orders == [0, 0, 0]


def test_transfer_rejects_positive_exceptional_part(tower_3):
    bb = tower_3.base_blowup
    bad = pullback(tower_3.base_blowup_map, tower_3.classes["F"]) + bb.basis_class("e_1")
    with pytest.raises(NotAStrictTransformShape):
        blowup_section_transfer(tower_3.base_blowup_map, bad)


def test_transfer_rejects_wrong_model(tower_3):
    with pytest.raises(MismatchedModel):
        blowup_section_transfer(tower_3.base_blowup_map, tower_3.classes["A"])


# -- fixed-component forcing --------------------------------------------------


def test_forcing_two_multiples(tower_3):
    trace = fixed_part_forcing(tower_3.base_blowup, 2 * tower_3.classes["L"])
    assert isinstance(trace.conclusion, UniqueMember)
    assert trace.conclusion.as_dict() == {"F'": 2, "Gamma_n'": 2}
    assert trace.steps[0].curve_label == "F'"
    assert trace.steps[0].pairing_value == -4
    assert trace.steps[1].pairing_value == -5


def test_forcing_single_multiple(tower_5):
    trace = fixed_part_forcing(tower_5.base_blowup, tower_5.classes["L"])
    assert isinstance(trace.conclusion, UniqueMember)
    assert trace.conclusion.as_dict() == {"F'": 1, "Gamma_n'": 1}
    assert [s.pairing_value for s in trace.steps] == [-2, -3]


def test_forcing_zero_class(tower_3):
    trace = fixed_part_forcing(tower_3.base_blowup, tower_3.base_blowup.zero())
    assert isinstance(trace.conclusion, UniqueMember)
    assert trace.conclusion.as_dict() == {}
    assert trace.steps == ()


@pytest.mark.parametrize("n", [3, 5, 7])
@pytest.mark.parametrize("m", [1, 2, 3, 4, 7])
def test_forcing_step_values_match_closed_forms(n, m):
    tower = build_tower(n)
    trace = fixed_part_forcing(tower.base_blowup, m * tower.classes["L"])
    assert isinstance(trace.conclusion, UniqueMember)
    assert trace.conclusion.as_dict() == {"F'": m, "Gamma_n'": m}
    pairings = [s.pairing_value for s in trace.steps]
    expected = []
    for k in range(m, 0, -1):
        expected += [-2 * k, -2 * k - 1]
    assert pairings == expected


def test_forcing_residual_chain(tower_3):
    start = 3 * tower_3.classes["L"]
    trace = fixed_part_forcing(tower_3.base_blowup, start)
    residual = start
    for step in trace.steps:
        residual = residual - tower_3.base_blowup.curve(step.curve_label).cls
        assert step.residual_after == residual
    assert residual.is_zero


def test_forcing_terminates_within_initial_measure(tower_3):
    # the measure of m*L over the registered curves is 2m
    for m in (1, 2, 6):
        trace = fixed_part_forcing(tower_3.base_blowup, m * tower_3.classes["L"])
        assert isinstance(trace.conclusion, UniqueMember)
        assert len(trace.steps) == 2 * m


def test_forcing_cap(tower_3):
    trace = fixed_part_forcing(tower_3.base_blowup, 5 * tower_3.classes["L"], step_cap=3)
    assert isinstance(trace.conclusion, Inconclusive)
    assert trace.conclusion.reason == "cap"
    assert len(trace.steps) == 3


def test_forcing_without_negative_pairing(tower_3):
    up_member = pullback(tower_3.base_blowup_map, tower_3.classes["A"])
    trace = fixed_part_forcing(tower_3.base_blowup, up_member)
    assert isinstance(trace.conclusion, Inconclusive)
    assert trace.conclusion.reason == "no forcing curve"


def test_forcing_outside_registry_cone(tower_3):
    bb = tower_3.base_blowup
    # -Gamma_n' pairs negatively with F' but has no positive coefficient
    # left to subtract, so the engine abstains instead of over-claiming.
    start = -bb.curve("Gamma_n'").cls
    assert bb.pair(start, bb.curve("F'").cls) < 0
    trace = fixed_part_forcing(bb, start)
    assert isinstance(trace.conclusion, Inconclusive)
    assert trace.conclusion.reason == "outside registry cone"


# -- section counts -----------------------------------------------------------


def test_h0_of_forced_multiple(tower_3):
    trace = fixed_part_forcing(tower_3.base_blowup, 3 * tower_3.classes["L"])
    result = h0_unique_member(trace)
    assert result.value == 1
    assert result.is_known
    rules = [app.rule for app in result.certificate_chain]
    assert "fixed-component-forcing" in rules
    assert "unique-member-section-count" in rules


def test_h0_of_zero_class(tower_3):
    trace = fixed_part_forcing(tower_3.base_blowup, tower_3.base_blowup.zero())
    result = h0_unique_member(trace)
    assert result.value == 1


def test_h0_unknown_without_certificate(tower_3):
    up_member = pullback(tower_3.base_blowup_map, tower_3.classes["A"])
    trace = fixed_part_forcing(tower_3.base_blowup, up_member)
    result = h0_unique_member(trace)
    assert result.value is None
    assert not result.is_known
    assert result.certificate_chain  # the refusal is still recorded


@given(st.integers(min_value=1, max_value=30))
def test_forcing_decomposition_closed_form(m):
    tower = build_tower(3)
    trace = fixed_part_forcing(tower.base_blowup, m * tower.classes["L"])
    assert isinstance(trace.conclusion, UniqueMember)
    assert trace.conclusion.as_dict() == {"F'": m, "Gamma_n'": m}
