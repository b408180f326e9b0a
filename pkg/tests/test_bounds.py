import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tbcomplexity.bounds import (
    LIMIT_CONSTANT,
    BoundReport,
    LowerBound,
    UpperBound,
    cn_constant,
    lens_constant,
    lens_lower_bound,
    log5,
    mn_combined_lower_bound,
    mp_lower_bound,
    volume_lower_bound,
)
from tbcomplexity.errors import DomainError, InternalInconsistency
from tbcomplexity.exactnum import fibonacci, torsion_order
from tbcomplexity.geometry import max_tetrahedron_volume

V = max_tetrahedron_volume()


def test_log5_big_integers():
    assert log5(1) == 0
    assert log5(5 ** 300) == pytest.approx(300, rel=1e-14)
    x = fibonacci(5000)
    # reference via decimal digit count and leading digits
    s = str(x)
    ref = (math.log10(int(s[:17])) + len(s) - 17) / math.log10(5)
    assert log5(x) == pytest.approx(ref, rel=1e-13)


def test_mp_bound_examples():
    b = mp_lower_bound(1, 0)
    assert b.value == 0 and b.raw == -1
    assert any("clamped" in note for note in b.notes)
    b = mp_lower_bound(5, 1)
    assert b.value == 2 and b.raw == 2.0 and not b.boundary


def test_mp_bound_reproduces_corollary_constant():
    for n in range(1, 60):
        b = mp_lower_bound(torsion_order(n), 1)
        assert b.raw == pytest.approx(2 * cn_constant(n) * n, abs=1e-12)


def test_mp_bound_rejects_zero_torsion():
    with pytest.raises(DomainError):
        mp_lower_bound(0, 1)


def test_lens_examples():
    assert lens_lower_bound(5).value == 1
    assert lens_lower_bound(5).raw == 1.0
    b = lens_lower_bound(2)
    assert b.value == 0 and b.raw == pytest.approx(-0.13865, abs=1e-5)
    assert lens_lower_bound(3).value == 0
    with pytest.raises(DomainError):
        lens_lower_bound(1)


def test_lens_fibonacci_family_identity():
    for n in range(4, 120):
        raw = lens_lower_bound(fibonacci(n)).raw
        assert raw == pytest.approx(lens_constant(n) * n - 2, abs=1e-11)


def test_lens_consistent_with_cited_upper_bound():
    for n in range(9, 201):
        assert lens_lower_bound(fibonacci(n)).value <= n - 4


def test_cn_constant_examples():
    assert cn_constant(1) == 0.0
    assert cn_constant(2) == pytest.approx(0.5, abs=1e-15)
    assert 0.597 < cn_constant(6) < 0.5975


def test_cn_constant_monotone_and_limit():
    values = [cn_constant(n) for n in range(6, 1001)]
    assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))
    assert abs(values[-1] - LIMIT_CONSTANT) < 1e-3
    assert LIMIT_CONSTANT == pytest.approx(0.598, abs=5e-4)


@pytest.mark.parametrize("n, expected", [(1, 7), (2, 7), (20, 24)])
def test_combined_examples(n, expected):
    b = mn_combined_lower_bound(n)
    assert b.value == expected and b.source == "combined"


def test_combined_n20_raw():
    assert mn_combined_lower_bound(20).raw == pytest.approx(23.92, abs=5e-3)


def test_combined_exceeds_linear_rate():
    for n in range(1, 1001):
        assert mn_combined_lower_bound(n).value > 1.19 * n


def test_volume_bound_examples():
    for n in range(1, 51):
        assert volume_lower_bound(2 * V * n, 1e-12).value == 2 * n
    assert volume_lower_bound(0.94, 0).value == 1
    assert volume_lower_bound(0.5 * V, 0).value == 1


def test_volume_bound_rejects_vacuous_input():
    with pytest.raises(DomainError):
        volume_lower_bound(1.0, 1.0)
    with pytest.raises(DomainError):
        volume_lower_bound(1.0, -0.1)


def test_volume_bound_flags_boundary():
    b = volume_lower_bound(2 * V, 1e-12)
    assert b.boundary
    assert not volume_lower_bound(2.5 * V, 0).boundary


@given(st.floats(0.01, 500), st.floats(0.01, 500), st.floats(0, 0.005))
def test_volume_bound_monotone_in_volume(a, b, err):
    lo, hi = sorted((a, b))
    assert volume_lower_bound(lo, err).value <= volume_lower_bound(hi, err).value


@given(st.floats(0.01, 500), st.floats(0, 0.005), st.floats(0, 0.005))
def test_volume_bound_antitone_in_error(vol, e1, e2):
    lo, hi = sorted((e1, e2))
    assert volume_lower_bound(vol, hi).value <= volume_lower_bound(vol, lo).value


def test_bounds_deterministic():
    assert [mn_combined_lower_bound(n) for n in range(1, 50)] == \
        [mn_combined_lower_bound(n) for n in range(1, 50)]


def test_bound_report_rejects_inverted_bounds():
    with pytest.raises(InternalInconsistency):
        BoundReport(1, "M_n", (LowerBound(8, "torsion"),), UpperBound(7, "cited"))
