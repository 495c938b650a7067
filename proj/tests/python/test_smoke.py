import pytest

import saxl


def test_verify_psl13_d14():
    r = saxl.verify(13, "d-plus")
    assert r["omega_size"] == 78
    assert r["base_size"] == 2
    assert r["regular_suborbits"] == 3
    assert r["diameter"] == 2
    assert r["verdict"] == "match"


def test_verify_matches_base_size():
    assert saxl.base_size(13, "borel", "PGL") == 3
    assert saxl.verify(13, "borel", "PGL")["base_size"] == 3
    assert saxl.base_size(11, "a5") == 3
    assert saxl.base_size(23, "s4") == 2


def test_field_and_bounds():
    assert saxl.field_modulus(5) == [0, 1]
    assert saxl.field_modulus(27) == [1, 0, 2, 1]
    assert saxl.feng_lower_bound(17) == 1
    assert saxl.feng_lower_bound(13) == 0
    assert saxl.feng_lower_bound(49) == 4


def test_feng_rows():
    rows = saxl.feng(17)
    assert len(rows) == 15
    with pytest.raises(saxl.SaxlError):
        saxl.feng(16)


def test_survey_rows():
    rows = saxl.survey(11, 13, "d-plus")
    assert [r["q"] for r in rows] == ["11", "11", "13", "13"]
    assert all(r["status"] != "mismatch" for r in rows)
    with pytest.raises(saxl.SaxlError):
        saxl.survey(11, 13, [])


def test_errors_are_raised():
    with pytest.raises(saxl.SaxlError, match="BadParameters"):
        saxl.verify(13, "nonsense")
    with pytest.raises(ValueError):
        saxl.verify(12, "d-plus")


def test_cache_dir(tmp_path):
    a = saxl.verify(11, "d-minus", cache_dir=str(tmp_path))
    b = saxl.verify(11, "d-minus", cache_dir=str(tmp_path))
    assert a == b
    assert len(list(tmp_path.iterdir())) == 1
