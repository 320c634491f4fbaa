import numpy as np
import pytest

from nfisac_render.readers import SchemaError, read_heatmap, read_table


def test_read_table_parses_values_verbatim(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("a,b,kind\n1.5,2.25e-3,alpha\n-0.5,inf,beta\n")
    table = read_table(path, ("a", "b"), string_columns=("kind",))
    assert table["a"].tolist() == [1.5, -0.5]
    assert table["b"][0] == 2.25e-3 and np.isinf(table["b"][1])
    assert table["kind"].tolist() == ["alpha", "beta"]


def test_read_table_names_missing_columns(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(SchemaError) as err:
        read_table(path, ("a", "c", "d"))
    assert "c" in str(err.value) and "d" in str(err.value)


def test_empty_and_header_only_files_rejected(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(SchemaError):
        read_table(empty, ("a",))
    header_only = tmp_path / "h.csv"
    header_only.write_text("a,b\n")
    with pytest.raises(SchemaError):
        read_table(header_only, ("a",))


def test_read_heatmap_layout(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("bin,-1,0,1\n1,-3.0,0.0,-6.0\n2,-9.0,-12.0,-15.0\n")
    rows, cols, values = read_heatmap(path)
    assert rows.tolist() == [1, 2]
    assert cols.tolist() == [-1, 0, 1]
    assert values[0].tolist() == [-3.0, 0.0, -6.0]


def test_read_heatmap_requires_bin_column(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("x,-1,0\n1,0.0,0.0\n")
    with pytest.raises(SchemaError) as err:
        read_heatmap(path)
    assert "bin" in str(err.value)
