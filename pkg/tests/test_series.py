import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnmarkers import (BoundsError, ConfigError, DataError, EmptyInput,
                       FormatError, MultivariateSeries, ParseError, Window,
                       extract_window, load_csv, moving_average,
                       node_variances, write_csv)
from cnmarkers.markers import MarkerSeries


def make_series(data, dt=0.5):
    data = np.asarray(data, dtype=np.float64)
    names = tuple(f"x{k+1}" for k in range(data.shape[0]))
    return MultivariateSeries(channel_names=names, dt=dt, data=data)


class TestMultivariateSeries:
    def test_shape_and_times(self):
        s = make_series(np.arange(12.0).reshape(3, 4), dt=0.25)
        assert s.n_channels == 3 and s.n_samples == 4
        assert np.allclose(s.times, [0.0, 0.25, 0.5, 0.75])

    def test_requires_2d(self):
        with pytest.raises(FormatError):
            MultivariateSeries(channel_names=("a",), dt=1.0, data=np.arange(4.0))

    def test_name_count_must_match(self):
        with pytest.raises(FormatError):
            MultivariateSeries(channel_names=("a",), dt=1.0,
                               data=np.zeros((2, 5)))

    def test_dt_positive(self):
        with pytest.raises(ConfigError):
            make_series(np.zeros((2, 5)), dt=0.0)

    def test_rejects_non_finite(self):
        data = np.zeros((2, 5))
        data[1, 3] = np.nan
        with pytest.raises(DataError):
            make_series(data)


class TestWindow:
    def test_minimum_length(self):
        s = make_series(np.random.default_rng(0).standard_normal((2, 20)))
        with pytest.raises(BoundsError):
            Window(series=s, start=0, length=2)
        with pytest.raises(BoundsError):
            Window(series=s, start=18, length=3)

    def test_end_time_is_last_sample(self):
        s = make_series(np.zeros((2, 20)), dt=0.5)
        w = extract_window(s, start=4, length=6)
        assert w.end_time == pytest.approx((4 + 6 - 1) * 0.5)
        assert w.data().shape == (2, 6)


class TestCsvRoundTrip:
    def test_write_then_load_is_exact(self, tmp_path):
        rng = np.random.default_rng(3)
        s = make_series(rng.standard_normal((3, 40)) * 1e3, dt=0.01)
        path = tmp_path / "series.csv"
        write_csv(s, path)
        back = load_csv(path)
        assert back.channel_names == s.channel_names
        assert back.dt == pytest.approx(s.dt, rel=1e-9)
        assert np.array_equal(back.data, s.data)

    def test_no_time_column_needs_dt(self, tmp_path):
        path = tmp_path / "plain.csv"
        path.write_text("a,b\n1,2\n3,4\n")
        with pytest.raises(ConfigError):
            load_csv(path)
        s = load_csv(path, dt=2.0)
        assert s.dt == 2.0 and s.n_samples == 2

    def test_row_arity_error_names_row(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("t,a,b\n0,1,2\n1,3\n")
        with pytest.raises(ParseError, match="3"):
            load_csv(path)

    def test_non_numeric_cell(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("t,a,b\n0,1,2\n1,x,4\n")
        with pytest.raises(ParseError):
            load_csv(path)

    def test_non_uniform_time(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("t,a,b\n0,1,2\n1,1,2\n3,1,2\n")
        with pytest.raises(FormatError):
            load_csv(path)

    def test_non_finite_value(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("t,a,b\n0,1,2\n1,inf,2\n")
        with pytest.raises(DataError):
            load_csv(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(EmptyInput):
            load_csv(path)

    def test_header_only(self, tmp_path):
        path = tmp_path / "hdr.csv"
        path.write_text("t,a,b\n")
        with pytest.raises(EmptyInput):
            load_csv(path)


def test_node_variances_uses_sample_variance():
    rng = np.random.default_rng(4)
    s = make_series(rng.standard_normal((3, 25)))
    w = extract_window(s, 0, 25)
    assert np.allclose(node_variances(w), s.data.var(axis=1, ddof=1))


class TestMovingAverage:
    def stream(self, values, dt=1.0):
        values = np.asarray(values, dtype=np.float64)
        times = np.arange(len(values)) * dt
        return MarkerSeries(kind="dnb", times=times, values=values,
                            window_length=3, stride=1)

    def test_trailing_window_with_leading_partials(self):
        m = self.stream([1.0, 2.0, 3.0, 4.0])
        out = moving_average(m, 2.0)
        assert np.allclose(out.values, [1.0, 1.5, 2.5, 3.5])
        assert np.array_equal(out.times, m.times)

    def test_width_one_spacing_is_identity(self):
        # the mix of magnitudes breaks running-sum implementations
        m = self.stream([1e16, 1.0, 7.25])
        out = moving_average(m, 1.0)
        assert np.array_equal(out.values, m.values)

    def test_width_must_be_positive(self):
        with pytest.raises(ConfigError):
            moving_average(self.stream([1.0, 2.0, 3.0]), 0.0)

    def test_empty_stream(self):
        m = MarkerSeries(kind="dnb", times=np.array([]), values=np.array([]),
                         window_length=3, stride=1)
        with pytest.raises(EmptyInput):
            moving_average(m, 2.0)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.floats(min_value=0.0, max_value=1e6,
                              allow_nan=False, allow_infinity=False),
                    min_size=1, max_size=40),
           st.floats(min_value=0.5, max_value=20.0))
    def test_output_bounded_by_window_extremes(self, values, width):
        m = self.stream(values)
        out = moving_average(m, width)
        for i, v in enumerate(out.values):
            lo = max(0, i - int(np.ceil(width)))
            window = values[lo:i + 1]
            assert min(window) - 1e-9 <= v <= max(window) + 1e-9
