import pytest
from hypothesis import given

from conftest import structure_tables
from parakod import catalog, scfile


@given(structure_tables())
def test_roundtrip(sc):
    assert scfile.loads(scfile.dumps(sc, comment="x\ny")) == sc


def test_su2_roundtrip_through_file(tmp_path):
    sc = catalog.get("su2").sc
    path = tmp_path / "su2.sc"
    path.write_text(scfile.dumps(sc))
    assert scfile.load(path) == sc


def test_comments_and_blank_lines():
    sc = scfile.loads("# header\n\ndim 3\n  # inner\nmu 1 2 3 -2\nmu 2 1 3 2/1\n")
    assert sc.mu(1, 2, 3) == -2
    assert sc.mu(2, 3, 1) == -2


@pytest.mark.parametrize("text, fragment", [
    ("mu 1 2 3 1\n", "first definition"),
    ("", "missing"),
    ("dim 0\n", "positive"),
    ("dim 3\ndim 3\n", "duplicate 'dim'"),
    ("dim 3\nmu 1 2 2 1\n", "j < k"),
    ("dim 3\nmu 1 3 2 1\n", "j < k"),
    ("dim 3\nmu 4 1 2 1\n", "out of range"),
    ("dim 3\nmu 1 1 2 1\nmu 1 1 2 2\n", "duplicate triple"),
    ("dim 3\nmu 1 1 2 1/0\n", "zero denominator"),
    ("dim 3\nmu 1 1 2\n", "expected"),
    ("dim x\n", "bad dimension"),
])
def test_errors(text, fragment):
    with pytest.raises(scfile.ParseError) as err:
        scfile.loads(text)
    assert fragment in str(err.value)


def test_error_line_number():
    with pytest.raises(scfile.ParseError) as err:
        scfile.loads("dim 3\n\nmu 1 3 2 1\n")
    assert err.value.line == 3
