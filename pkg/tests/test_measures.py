import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bjaudit import (
    DiscreteMeasureSpace,
    DomainError,
    SimpleFunction,
    UsageError,
    decreasing_rearrangement,
    distribution_function,
    gaussian_measure_space,
    instance_csv_text,
    load_instance_csv,
    lp_from_rearrangement,
    lp_norm,
    sorted_mass_profile,
)

# Shared instance strategy: small positive weights, magnitudes with
# deliberate ties (rounding) and zeros.
weights_st = st.lists(
    st.floats(min_value=0.05, max_value=4.0), min_size=1, max_size=10
)


@st.composite
def instances(draw):
    ws = draw(weights_st)
    n = len(ws)
    mags = draw(
        st.lists(
            st.floats(min_value=0.0, max_value=6.0), min_size=n, max_size=n
        )
    )
    round_mask = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    mags = [round(m, 1) if r else m for m, r in zip(mags, round_mask)]
    sp = DiscreteMeasureSpace(weights=np.array(ws))
    return sp, SimpleFunction(np.array(mags))


def test_space_validation():
    with pytest.raises(DomainError):
        DiscreteMeasureSpace(weights=np.array([1.0, 0.0]))
    with pytest.raises(DomainError):
        DiscreteMeasureSpace(weights=np.array([1.0, -2.0]))
    with pytest.raises(DomainError):
        DiscreteMeasureSpace(weights=np.array([np.inf]))
    with pytest.raises(UsageError):
        DiscreteMeasureSpace(weights=np.array([1.0, 1.0]), atom_ids=("a",))


def test_default_atom_ids():
    sp = DiscreteMeasureSpace(weights=np.array([1.0, 2.0]))
    assert sp.atom_ids == ("a0", "a1")
    assert sp.total_mass == 3.0


def test_weights_are_read_only():
    sp = DiscreteMeasureSpace(weights=np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        sp.weights[0] = 7.0


def test_distribution_function_step_instance():
    sp = DiscreteMeasureSpace(weights=np.array([0.5, 1.0, 2.0]))
    f = SimpleFunction(np.array([5.0, 3.0, 1.0]))
    assert distribution_function(f, sp, 0.0) == 3.5
    assert distribution_function(f, sp, 1.0) == 1.5  # strict >
    assert distribution_function(f, sp, 2.9) == 1.5
    assert distribution_function(f, sp, 3.0) == 0.5
    assert distribution_function(f, sp, 5.0) == 0.0
    with pytest.raises(DomainError):
        distribution_function(f, sp, -1.0)


@given(inst=instances())
@settings(max_examples=150)
def test_equimeasurability_exact(inst):
    # m(sigma, f) must equal the length of {f* > sigma} with float equality;
    # both sides are defined through the same sorted mass profile, so this is
    # a hard == check, not approximate.
    sp, f = inst
    sf = decreasing_rearrangement(f, sp)
    mags, _ = sorted_mass_profile(f, sp)
    probe = set(float(m) for m in mags)
    probe.update(float(m) / 2.0 for m in mags)
    probe.add(0.0)
    for sigma in probe:
        m_direct = distribution_function(f, sp, sigma)
        if sf.n_steps == 0:
            m_star = 0.0
        else:
            above = sf.values > sigma
            m_star = float(sf.breaks[1:][above][-1]) if above.any() else 0.0
        assert m_direct == m_star


@given(inst=instances())
@settings(max_examples=150)
def test_lp_matches_rearranged_lp(inst):
    sp, f = inst
    sf = decreasing_rearrangement(f, sp)
    for p in (0.5, 1.0, 2.0, math.inf):
        direct = lp_norm(f, sp, p)
        via_star = lp_from_rearrangement(sf, p)
        assert via_star == pytest.approx(direct, rel=1e-12, abs=1e-300)


@given(inst=instances())
@settings(max_examples=100)
def test_layer_cake(inst):
    # ||f||_p^p = p * int_0^inf sigma^(p-1) m(sigma) dsigma, evaluated in
    # closed form over the constancy intervals of m.
    sp, f = inst
    p = 2.0
    mags, _ = sorted_mass_profile(f, sp)
    levels = np.unique(np.concatenate([[0.0], mags]))
    total = 0.0
    for lo, hi in zip(levels[:-1], levels[1:]):
        m_here = distribution_function(f, sp, float(lo))
        total += m_here * (hi**p - lo**p)
    assert total == pytest.approx(lp_norm(f, sp, p) ** p, rel=1e-12, abs=1e-300)


def test_lp_norm_support_threshold():
    sp = DiscreteMeasureSpace(weights=np.array([1.0, 2.0, 4.0]))
    f = SimpleFunction(np.array([5.0, 0.1, 0.0]), support_threshold=0.5)
    assert lp_norm(f, sp, 0) == 1.0  # only the 5.0 atom exceeds the threshold
    f_plain = SimpleFunction(np.array([5.0, 0.1, 0.0]))
    assert lp_norm(f_plain, sp, 0) == 3.0


def test_lp_norm_rejects_bad_p():
    sp = DiscreteMeasureSpace(weights=np.array([1.0]))
    f = SimpleFunction(np.array([1.0]))
    with pytest.raises(DomainError):
        lp_norm(f, sp, -1.0)


def test_gaussian_measure_space_mass():
    space = gaussian_measure_space(0.0, 4.0, 2000)
    sp = space.compile()
    # midpoint rule vs Phi(4) - Phi(0); O(h^2) accuracy
    expected = 0.4999683287581669
    assert sp.total_mass == pytest.approx(expected, abs=1e-7)
    with pytest.raises(DomainError):
        gaussian_measure_space(1.0, 1.0, 100)
    with pytest.raises(DomainError):
        gaussian_measure_space(0.0, 1.0, 1)


def test_sampled_space_drops_zero_weight_cells():
    from bjaudit import SampledDensitySpace

    space = SampledDensitySpace(
        grid=np.array([1.0, 2.0, 3.0]),
        cell_widths=np.array([1.0, 1.0, 1.0]),
        density=np.array([0.5, 0.0, 0.25]),
    )
    sp = space.compile()
    assert sp.n_atoms == 2
    assert sp.atom_ids == ("cell0", "cell2")
    f = space.sample(lambda t: t)
    assert np.array_equal(f.magnitudes, [1.0, 3.0])


def test_instance_csv_round_trip():
    sp = DiscreteMeasureSpace(
        weights=np.array([0.5, 1.25]), atom_ids=("left", "right")
    )
    f = SimpleFunction(np.array([3.0, 0.7]))
    text = instance_csv_text(sp, f)
    sp2, f2 = load_instance_csv(text)
    assert sp2.atom_ids == sp.atom_ids
    assert np.array_equal(sp2.weights, sp.weights)
    assert np.array_equal(f2.magnitudes, f.magnitudes)


def test_instance_csv_from_file(tmp_path):
    path = tmp_path / "inst.csv"
    path.write_text("atom_id,weight,magnitude\nx,2.0,1.0\n")
    sp, f = load_instance_csv(str(path))
    assert sp.total_mass == 2.0
    assert f.magnitudes[0] == 1.0


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("weight,magnitude\n1.0,2.0\n", "row 1"),
        ("atom_id,weight,magnitude\na,1.0\n", "row 2"),
        ("atom_id,weight,magnitude\na,zebra,2.0\n", "row 2"),
        ("atom_id,weight,magnitude\na,-1.0,2.0\n", "row 2"),
        ("atom_id,weight,magnitude\na,1.0,-2.0\n", "row 2"),
        ("atom_id,weight,magnitude\na,1.0,2.0\nb,0.0,1.0\n", "row 3"),
        ("atom_id,weight,magnitude\n", "no data rows"),
    ],
)
def test_instance_csv_errors_carry_row_numbers(text, fragment):
    with pytest.raises(UsageError) as exc:
        load_instance_csv(text)
    assert fragment in str(exc.value)


def test_instance_csv_missing_file():
    with pytest.raises(UsageError):
        load_instance_csv("/no/such/file.csv")
