import math

import numpy as np
import pytest

from alpwitness.bounds import (
    Classification,
    ExclusionRegion,
    classify_against,
    classify_curve,
    classify_points,
    combine,
    load_exclusion,
    summarize,
)
from alpwitness.config import PRESETS, RunConfig
from alpwitness.errors import ExclusionFormatError, KindMismatchError
from alpwitness.scan import run_scan

HEADER = "# name: test\n# abscissa: range_m\n# coupling: alpha_g\n"


def _region(x=(1e-6, 1e-4, 1e-2), y=(1e6, 1e2, 1e1)):
    return ExclusionRegion("t", "", np.array(x), np.array(y), "range_m", "alpha_g")


def test_load(bound_file):
    region = load_exclusion(bound_file(HEADER + "# source: placeholder\n1e-6, 1e6\n1e-4 1e2\n\n1e-2\t1e1\n"))
    assert region.name == "test" and region.source == "placeholder"
    assert np.array_equal(region.abscissa, [1e-6, 1e-4, 1e-2])
    assert not region.is_proxy


def test_proxy_flag(bound_file):
    assert load_exclusion(bound_file(HEADER + "# proxy: true\n1 2\n3 4\n")).is_proxy


@pytest.mark.parametrize(
    "body, lineno",
    [
        ("1e-6, abc\n1e-4, 1\n", 4),
        ("1e-6, 1, 2\n", 4),
        ("1e-6, 1\n1e-7, 1\n", 5),
        ("1e-6, 1\n1e-4, -1\n", 5),
        ("1e-6, 1\n-1e-4, 1\n", 5),
        ("1e-6, nan\n", 4),
    ],
)
def test_malformed_rows_name_the_line(bound_file, body, lineno):
    with pytest.raises(ExclusionFormatError, match=f"line {lineno}:") as info:
        load_exclusion(bound_file(HEADER + body))
    assert info.value.lineno == lineno


@pytest.mark.parametrize(
    "text, match",
    [
        (HEADER, "no data"),
        (HEADER + "1 2\n", "at least two"),
        ("# coupling: g_S\n1 2\n3 4\n", "abscissa"),
        ("# abscissa: mass_eV\n# coupling: g_X\n1 2\n3 4\n", "coupling kind"),
    ],
)
def test_malformed_files(bound_file, text, match):
    with pytest.raises(ExclusionFormatError, match=match):
        load_exclusion(bound_file(text))


def test_missing_file(tmp_path):
    with pytest.raises(ExclusionFormatError):
        load_exclusion(tmp_path / "absent.txt")


def test_interpolation_is_exact_at_nodes():
    region = _region()
    assert np.array_equal(region.upper_limit(region.abscissa), region.limit)


def test_interpolation_is_log_linear():
    assert _region().upper_limit(1e-5)[0] == pytest.approx(1e4, rel=1e-12)


def test_no_extrapolation():
    assert np.isnan(_region().upper_limit([1e-7, 1e-1])).all()


def test_classification_boundaries():
    labels = classify_points([1e-4, 1e-4, 1e-4, 1e-1, 1e-4], [1e2, 99.0, -200.0, 1.0, math.nan], _region())
    assert labels == [
        Classification.EXCLUDED,
        Classification.ALLOWED,
        Classification.EXCLUDED,
        Classification.OUTSIDE,
        Classification.OUTSIDE,
    ]


def test_monotone_in_coupling(rng):
    x = np.geomspace(1e-6, 1e-2, 50)
    g = 10 ** rng.uniform(0, 6, 50)
    before = classify_points(x, g, _region())
    after = classify_points(x, 2 * g, _region())
    for b, a in zip(before, after):
        assert not (b is Classification.EXCLUDED and a is Classification.ALLOWED)


def test_combine():
    e, a, o = Classification.EXCLUDED, Classification.ALLOWED, Classification.OUTSIDE
    assert combine([[e, a, o, o], [a, a, a, o]]) == [e, a, a, o]


def test_kind_mismatch():
    curve = run_scan(RunConfig.from_dict(dict(PRESETS["fig2"], points=3)).to_request())
    with pytest.raises(KindMismatchError):
        classify_curve(curve, _region())


def test_curve_partition_and_empty_list():
    curve = run_scan(RunConfig.from_dict(dict(PRESETS["fig3"], points=30)).to_request())
    labels = classify_against(curve, [_region(y=(1e30, 1e2, 1e-3))])
    counts = summarize(labels)
    assert sum(counts.values()) == 30
    assert counts["excluded"] > 0 and counts["allowed"] > 0
    assert summarize(classify_against(curve, [])) == {"excluded": 0, "allowed": 0, "outside_region_support": 30}


def test_shipped_demo_region():
    from pathlib import Path

    region = load_exclusion(Path(__file__).parent.parent / "data" / "exclusions" / "demo_alpha_g.txt")
    assert region.is_proxy and region.coupling_kind == "alpha_g" and len(region) == 5
