import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from depthcue.decompose import decompose
from depthcue.depth import ContinuousProfile, TwoLayerProfile, two_layer_from_map
from depthcue.errors import ShapeError
from depthcue.image import S_MAX, luminance_of
from depthcue.metrics import detail_variance, erode_mask, psnr, rms_contrast
from depthcue.retarget import (
    AblationToggles,
    RetargetParams,
    apply_shading_contrast,
    boost_detail,
    depth_weight,
    enhance,
    identity_params,
    recompose,
    retarget,
    retarget_base,
    tone_map_albedo,
)
from depthcue.testcards import bimodal_card


def test_params_validation():
    with pytest.raises(ValueError):
        RetargetParams(gamma=0.0)
    with pytest.raises(ValueError):
        RetargetParams(trunc_lo=2.0, trunc_hi=1.0)
    with pytest.raises(ValueError):
        RetargetParams(alpha_shading=1.0)
    with pytest.raises(ValueError):
        RetargetParams(albedo_pivot=1.5)


# --- base shading ---

def test_base_identity_configuration():
    s = np.linspace(0, S_MAX, 32).reshape(4, 8)
    p = RetargetParams(gamma=1.0, trunc_lo=0.0, trunc_hi=S_MAX)
    assert np.array_equal(retarget_base(s, p), s)


def test_base_analytic_point():
    p = RetargetParams(gamma=0.5, trunc_lo=0.0, trunc_hi=2.0)
    out = retarget_base(np.array([[0.5]]), p)
    assert out[0, 0] == pytest.approx(1.0, abs=1e-12)  # 2 * (0.25)^0.5


def test_base_truncation():
    p = RetargetParams(gamma=1.0, trunc_lo=0.0, trunc_hi=2.0)
    assert retarget_base(np.array([[3.0]]), p)[0, 0] == 2.0


def test_base_toggle_off_is_identity():
    s = np.array([[5.0, -1.0]])  # out of truncation range on purpose
    p = RetargetParams(ablation=AblationToggles(base_shading=False))
    assert retarget_base(s, p) is s


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 4.0), st.integers(0, 2**32 - 1))
def test_base_monotone_on_truncation_interval(gamma, seed):
    rng = np.random.default_rng(seed)
    p = RetargetParams(gamma=gamma, trunc_lo=0.05, trunc_hi=2.0)
    s = np.sort(rng.uniform(0.05, 2.0, 64)).reshape(1, 64)
    out = retarget_base(s, p)
    assert np.all(np.diff(out[0]) >= -1e-12)


# --- detail shading ---

def test_detail_gain_one_is_identity():
    d = np.array([[0.25, -0.5]])
    assert np.array_equal(boost_detail(d, RetargetParams(detail_gain=1.0)), d)


def test_detail_analytic():
    out = boost_detail(np.array([[-0.1]]), RetargetParams(detail_gain=2.0))
    assert out[0, 0] == pytest.approx(-0.2, abs=1e-15)


def test_detail_zero_stays_zero():
    out = boost_detail(np.zeros((3, 3)), RetargetParams(detail_gain=1.8))
    assert np.array_equal(out, np.zeros((3, 3)))


def test_detail_variance_scales_exactly():
    rng = np.random.default_rng(0)
    d = rng.normal(0, 0.1, (16, 16))
    out = boost_detail(d, RetargetParams(detail_gain=1.8))
    assert np.var(out) == pytest.approx(1.8 ** 2 * np.var(d), rel=1e-12)


# --- depth weights ---

def test_depth_weight_endpoints_exact():
    prof = ContinuousProfile(np.array([[0.0, 0.5, 1.0]]))
    w = depth_weight(prof, 0.3)
    assert w[0, 0] == 0.7
    assert w[0, 1] == 1.0
    assert w[0, 2] == 1.3
    assert np.array_equal(depth_weight(prof, 0.0), np.ones((1, 3)))


def test_depth_weight_two_layer_uses_side_means():
    prof = TwoLayerProfile(np.array([[False, True]]), 0.9, 0.2)
    w = depth_weight(prof, 0.5)
    assert w[0, 0] == pytest.approx(1 + 0.5 * (2 * 0.2 - 1))
    assert w[0, 1] == pytest.approx(1 + 0.5 * (2 * 0.9 - 1))


def test_depth_weight_shape_mismatch():
    prof = ContinuousProfile(np.zeros((2, 2)))
    with pytest.raises(ShapeError):
        depth_weight(prof, 0.3, shape=(3, 3))


# --- shading contrast ---

def test_shading_contrast_zero_gains_unchanged():
    prof = ContinuousProfile(np.random.default_rng(1).random((4, 4)))
    p = RetargetParams(alpha_shading=0.0, beta_texture=0.0)
    base = np.random.default_rng(2).random((4, 4)) + 0.5
    detail = np.random.default_rng(3).random((4, 4)) - 0.5
    b2, d2 = apply_shading_contrast(base, detail, prof, p)
    assert b2 is base and d2 is detail


def test_shading_contrast_neutral_fixed_point():
    prof = ContinuousProfile(np.random.default_rng(4).random((4, 4)))
    base = np.ones((4, 4))
    b2, _ = apply_shading_contrast(base, np.zeros((4, 4)), prof, RetargetParams())
    assert np.max(np.abs(b2 - 1.0)) <= 1e-12


def test_shading_contrast_analytic():
    prof = ContinuousProfile(np.full((1, 1), 1.0))
    p = RetargetParams(alpha_shading=0.3)
    b2, _ = apply_shading_contrast(np.array([[1.5]]), np.zeros((1, 1)), prof, p)
    assert b2[0, 0] == pytest.approx(1 + 1.3 * 0.5, abs=1e-12)


def test_shading_contrast_mid_depth_neutral():
    prof = ContinuousProfile(np.full((3, 3), 0.5))
    rng = np.random.default_rng(5)
    base, detail = rng.random((3, 3)) + 0.5, rng.random((3, 3)) - 0.5
    for alpha, beta in [(0.2, 0.6), (0.9, 0.1)]:
        p = RetargetParams(alpha_shading=alpha, beta_texture=beta)
        b2, d2 = apply_shading_contrast(base, detail, prof, p)
        assert np.max(np.abs(b2 - base)) <= 1e-12
        assert np.max(np.abs(d2 - detail)) <= 1e-12


# --- albedo tone map ---

def test_tone_map_identity_when_c1():
    a = np.random.default_rng(6).random((4, 4))
    assert tone_map_albedo(a, RetargetParams(albedo_contrast=1.0)) is a


def test_tone_map_analytic_with_clamp():
    p = RetargetParams(albedo_contrast=1.25, albedo_pivot=0.5)
    out = tone_map_albedo(np.array([[0.9]]), p)
    assert out[0, 0] == pytest.approx(1.0, abs=1e-12)


def test_tone_map_pivot_fixed_point():
    p = RetargetParams(albedo_contrast=1.25, albedo_pivot=0.4)
    out = tone_map_albedo(np.full((3, 3), 0.4), p)
    assert np.max(np.abs(out - 0.4)) <= 1e-12


def test_tone_map_rms_scales_exactly_preclamp():
    rng = np.random.default_rng(7)
    a = rng.uniform(0.3, 0.7, (16, 16))
    pivot = float(a.mean())
    c = 1.25
    stretched = pivot + c * (a - pivot)  # stays inside [0,1]: no clamp
    out = tone_map_albedo(a, RetargetParams(albedo_contrast=c, albedo_pivot=pivot))
    assert np.array_equal(out, stretched)
    assert rms_contrast(out) == pytest.approx(c * rms_contrast(a), rel=1e-12)


# --- recompose / enhance ---

def test_recompose_gray_midpoint():
    a = np.full((2, 2), 0.5)
    base = np.ones((2, 2))
    detail = np.zeros((2, 2))
    chroma = np.ones((2, 2, 3))
    out = recompose(a, base, detail, chroma, a)
    assert np.allclose(out, 0.5)


def test_recompose_negative_shading_clamps_to_zero():
    a = np.full((1, 1), 0.5)
    out = recompose(a, np.array([[-2.0]]), np.array([[0.5]]), np.ones((1, 1, 3)), a)
    assert np.array_equal(out, np.zeros((1, 1, 3)))


def test_recompose_shape_mismatch():
    with pytest.raises(ShapeError):
        recompose(
            np.zeros((2, 2)),
            np.zeros((2, 2)),
            np.zeros((2, 2)),
            np.zeros((3, 3, 3)),
            np.zeros((2, 2)),
        )


def test_enhance_identity_round_trip(fixtures):
    for name, rgb, near in fixtures:
        out = enhance(rgb, ContinuousProfile(near), retarget_params=identity_params())
        assert psnr(rgb, out) >= 60.0, name


def test_enhance_profile_shape_mismatch(fixtures):
    _, rgb, _ = fixtures[0]
    with pytest.raises(ShapeError):
        enhance(rgb, ContinuousProfile(np.zeros((2, 2))))


def test_enhance_bimodal_card_detail_variance():
    rgb, near = bimodal_card(256)
    prof = two_layer_from_map(near)
    out = enhance(rgb, prof)  # defaults
    y_in = luminance_of(rgb)
    y_out = luminance_of(out)
    fg = prof.mask
    # background probe must stay clear of the decomposition's full filter
    # support (albedo + shading stages) plus the probe's own box radius
    bg = erode_mask(~prof.mask, 2 * (16 + 8) + 8 + 2)
    assert bg.sum() > 500
    assert detail_variance(y_out, fg) > detail_variance(y_in, fg)
    assert detail_variance(y_out, bg) <= detail_variance(y_in, bg) + 1e-12


def test_enhance_defaults_raise_rms_contrast(fixtures):
    for name, rgb, near in fixtures:
        d = decompose(rgb)
        res = retarget(d, ContinuousProfile(near), RetargetParams())
        assert rms_contrast(res.luminance_raw) > rms_contrast(d.luminance), name


def test_toggle_ladder_changes_output_monotonically(fixtures):
    _, rgb, near = fixtures[0]
    prof = ContinuousProfile(near)
    d = decompose(rgb)
    outputs = [
        retarget(d, prof, RetargetParams().with_ablation(AblationToggles.cumulative(n))).rgb
        for n in range(5)
    ]
    assert psnr(rgb, outputs[0]) >= 60.0
    for i in range(4):
        # each newly enabled sub-operator visibly changes the output
        assert np.max(np.abs(outputs[i + 1] - outputs[i])) > 1e-6
