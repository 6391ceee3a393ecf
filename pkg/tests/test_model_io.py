"""Model file format: bit-exact round trips and corruption diagnostics."""

import numpy as np
import pytest

from udeed import EnsembleModel, UdeedError, load_model, save_model

GNARLY = np.array(
    [
        [0.1, -1e-300, 3.141592653589793, 0.0],
        [1e300, -0.0, 2.2250738585072014e-308, 123456789.123456789],
        [-7.0, 1.5e-5, 0.3333333333333333, -2.718281828459045],
    ]
)


class TestRoundTrip:
    def test_bit_exact(self, tmp_path):
        path = tmp_path / "model.txt"
        save_model(EnsembleModel(GNARLY), path)
        loaded = load_model(path)
        assert np.array_equal(loaded.weights, GNARLY)
        assert loaded.m == 3
        assert loaded.dimension == 4

    def test_random_round_trips(self, tmp_path):
        rng = np.random.default_rng(0)
        for i in range(5):
            weights = rng.normal(scale=10.0 ** rng.integers(-5, 6),
                                 size=(int(rng.integers(2, 6)),
                                       int(rng.integers(1, 5))))
            path = tmp_path / f"m{i}.txt"
            save_model(EnsembleModel(weights), path)
            assert np.array_equal(load_model(path).weights, weights)

    def test_header_layout(self, tmp_path):
        path = tmp_path / "model.txt"
        save_model(EnsembleModel([[1.5, -2.0], [0.25, 4.0]]), path)
        lines = path.read_text().splitlines()
        assert lines[0] == "UDEED-ENSEMBLE 1"
        assert lines[1] == "2 2"
        assert lines[2] == "1.5 -2.0"
        assert len(lines) == 4

    def test_save_twice_identical_bytes(self, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        model = EnsembleModel(GNARLY)
        save_model(model, a)
        save_model(model, b)
        assert a.read_bytes() == b.read_bytes()


class TestLoadErrors:
    def test_missing_file(self, tmp_path):
        path = tmp_path / "absent.txt"
        with pytest.raises(UdeedError, match="model file not found"):
            load_model(path)

    def test_wrong_magic(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("SOMETHING-ELSE 1\n2 2\n1 2\n3 4\n")
        with pytest.raises(UdeedError, match="not a UDEED-ENSEMBLE"):
            load_model(path)

    def test_wrong_version(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("UDEED-ENSEMBLE 2\n2 2\n1 2\n3 4\n")
        with pytest.raises(UdeedError, match="version 1"):
            load_model(path)

    def test_missing_dimension_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("UDEED-ENSEMBLE 1\n")
        with pytest.raises(UdeedError, match="missing dimension"):
            load_model(path)

    def test_malformed_dimension_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("UDEED-ENSEMBLE 1\ntwo 2\n")
        with pytest.raises(UdeedError, match="malformed dimension"):
            load_model(path)

    def test_row_count_mismatch(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("UDEED-ENSEMBLE 1\n3 2\n1 2\n3 4\n")
        with pytest.raises(UdeedError, match="expected 3 weight rows, found 2"):
            load_model(path)

    def test_column_count_mismatch_names_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("UDEED-ENSEMBLE 1\n2 2\n1 2\n3 4 5\n")
        with pytest.raises(UdeedError, match="line 4 has 3 weights, expected 2"):
            load_model(path)

    def test_non_numeric_weight(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("UDEED-ENSEMBLE 1\n2 2\n1 2\nx 4\n")
        with pytest.raises(UdeedError, match="non-numeric weight"):
            load_model(path)

    def test_loaded_model_revalidated(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("UDEED-ENSEMBLE 1\n2 2\n1 2\nnan 4\n")
        with pytest.raises(UdeedError, match="non-finite"):
            load_model(path)
