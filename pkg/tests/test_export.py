import numpy as np

from opshift.arnoldi import arnoldi
from opshift.export import (atomic_write, basis_rows, hessenberg_rows, kappa_rows, provenance,
                            render_csv, series_rows)
from opshift.laurent import joukowski
from opshift.measure import make_disk_area


def test_render_csv_round_trips_floats():
    x = 0.1 + 0.2
    text = render_csv(("a", "b", "c"), [(1, x, True)], ["opshift test"])
    lines = text.splitlines()
    assert lines[0] == "# opshift test" and lines[1] == "a,b,c"
    a, b, c = lines[2].split(",")
    assert float(b) == x and a == "1" and c == "1"


def test_atomic_write_leaves_no_temp(tmp_path):
    target = tmp_path / "sub" / "out.csv"
    atomic_write(target, "x\n")
    atomic_write(target, "y\n")
    assert target.read_text() == "y\n"
    assert sorted(p.name for p in target.parent.iterdir()) == ["out.csv"]


def test_provenance_has_version_and_digest():
    lines = provenance("abc", degree=3)
    assert lines[0].startswith("opshift ") and "config_sha256 abc" in lines and "degree 3" in lines


def test_row_generators():
    basis, M = arnoldi(make_disk_area(1.0, 7), 3)
    assert len(list(basis_rows(basis))) == 1 + 2 + 3 + 4
    assert [n for n, _ in kappa_rows(basis)] == [0, 1, 2, 3]
    rows = list(hessenberg_rows(M))
    assert all(j <= k + 1 for j, k, *_ in rows)
    assert len(rows) == 2 + 3 + 4 + 4
    s = list(series_rows(joukowski(1.0, order=2)))
    assert [r[0] for r in s] == [-1, 0, 1, 2] and np.isclose(s[2][1], 1)
