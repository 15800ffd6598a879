import math

import numpy as np
import pytest
from scipy import integrate

from src.core import pointproc
from src.core.fades import FadeDistribution
from src.core.pointproc import RngStream, Window
from src.utils.errors import ParameterError


def test_window_validation():
    with pytest.raises(ParameterError):
        Window(2, 2.0, 1.0)
    with pytest.raises(ParameterError):
        Window(4, 0.0, 1.0)
    assert Window(2, 1.0, 2.0).volume == pytest.approx(3.0 * math.pi)


def test_batch_is_reproducible():
    window = Window(2, 0.0, 5.0)
    a = pointproc.sample_ppp_batch(0.1, window, RngStream(11, 3), 500)
    b = pointproc.sample_ppp_batch(0.1, window, RngStream(11, 3), 500)
    c = pointproc.sample_ppp_batch(0.1, window, RngStream(11, 4), 500)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
    assert not np.array_equal(a[1], c[1])


def test_batch_counts_and_order():
    window = Window(2, 0.5, 5.0)
    trials = 20000
    counts, radii = pointproc.sample_ppp_batch(0.1, window, RngStream(5), trials)
    mean = 0.1 * window.volume
    assert abs(counts.mean() - mean) <= 4.0 * math.sqrt(mean / trials)
    assert radii.size == counts.sum()
    assert np.all((radii >= 0.5) & (radii <= 5.0))
    start = 0
    for n in counts[:200]:
        segment = radii[start:start + n]
        assert np.all(np.diff(segment) >= 0)
        start += n


def test_zero_intensity():
    counts, radii = pointproc.sample_ppp_batch(0.0, Window(2, 0.0, 1.0), RngStream(1), 10)
    assert counts.sum() == 0 and radii.size == 0
    assert len(pointproc.sample_ppp(0.0, Window(2, 0.0, 1.0), RngStream(1))) == 0


def test_child_streams_are_independent():
    stream = RngStream(3)
    assert stream.child(1).generator().random() != stream.generator().random()
    assert stream.child(1).generator().random() == RngStream(3).child(1).generator().random()


def test_nearest_distance_matches_void_probability():
    for t in (0.5, 1.0, 2.5):
        cdf = pointproc.ordered_distance_cdf(1, 0.2, 2, t)
        assert cdf == pytest.approx(1.0 - pointproc.void_probability(0.2, 2, t), rel=1e-12)


def test_ordered_distance_pdf_integrates_to_cdf():
    for k, d in ((1, 2), (3, 2), (2, 3)):
        mass, _ = integrate.quad(lambda t: pointproc.ordered_distance_pdf(k, 0.3, d, t), 0.0, 1.7)
        assert mass == pytest.approx(pointproc.ordered_distance_cdf(k, 0.3, d, 1.7), abs=1e-9)


def test_map_to_unit_process():
    assert pointproc.map_distance_to_unit_1d(2.0, 0.5, 2) == pytest.approx(0.5 * math.pi * 4.0 / 2.0)
    with pytest.raises(ParameterError):
        pointproc.map_distance_to_unit_1d(-1.0, 0.5, 2)


def test_bpp_interference_tail():
    P, radius, d, alpha = 1.0, 2.0, 2, 4.0
    floor = P * radius ** -alpha
    assert pointproc.bpp_interference_ccdf(floor / 2.0, P, radius, d, alpha) == 1.0
    assert pointproc.bpp_interference_ccdf(floor, P, radius, d, alpha) == 1.0
    y = 4.0 * floor
    assert pointproc.bpp_interference_ccdf(y, P, radius, d, alpha) == pytest.approx(0.5)
    assert pointproc.bpp_interference_hazard(y, P, radius, d, alpha) == pytest.approx(0.5 / y)
    assert math.isinf(pointproc.bpp_interference_moment(0.5, P, radius, d, alpha))


def test_bpp_sample_inside_ball():
    snap = pointproc.sample_bpp(50, 3.0, 2, RngStream(9))
    assert len(snap) == 50
    assert np.all(snap.points <= 3.0)
    marked = pointproc.attach_marks(snap, FadeDistribution.degenerate(), RngStream(9))
    assert np.all(marked.marks == 1.0)

