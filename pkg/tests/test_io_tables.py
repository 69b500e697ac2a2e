import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from infodyn.exceptions import DataError
from infodyn.io_tables import DataTable, read_csv, read_octave_text, read_table, write_table


class TestCsv:
    def test_two_columns_with_header(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("a,b\n0,1\n1,0\n")
        table = read_csv(path)
        assert table.names == ["a", "b"]
        assert table.column("a").tolist() == [0.0, 1.0]
        assert table.column("b").tolist() == [1.0, 0.0]

    def test_headerless(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("0.5,1\n0.25,2\n")
        table = read_csv(path)
        assert table.names == ["col0", "col1"]
        assert table.column(0).tolist() == [0.5, 0.25]

    def test_ragged_row_names_line(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("a,b\n0,1\n1,0,9\n")
        with pytest.raises(DataError, match="line 3"):
            read_csv(path)

    def test_nan_rejected(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("a\nnan\n")
        with pytest.raises(DataError, match="non-finite"):
            read_csv(path)

    def test_colspec_selection(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("a,b,c\n1,2,3\n4,5,6\n")
        table = read_csv(path)
        assert table.select("c,a").tolist() == [[3.0, 1.0], [6.0, 4.0]]
        assert table.select("1").tolist() == [[2.0], [5.0]]
        with pytest.raises(DataError, match="unknown column"):
            table.select("zz")


class TestOctave:
    def test_single_column(self, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("# name: x\n# type: matrix\n# rows: 2\n# columns: 1\n0.5\n0.7\n")
        table = read_octave_text(path)
        assert table.names == ["x"]
        assert table.column("x").tolist() == [0.5, 0.7]

    def test_multi_matrix(self, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text(
            "# name: x\n# type: matrix\n# rows: 2\n# columns: 1\n1\n2\n"
            "# name: y\n# type: matrix\n# rows: 2\n# columns: 2\n3 4\n5 6\n")
        table = read_octave_text(path)
        assert table.names == ["x", "y_0", "y_1"]
        assert table.column("y_1").tolist() == [4.0, 6.0]

    def test_unknown_type_tag(self, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("# name: x\n# type: string\n# rows: 1\n# columns: 1\nhello\n")
        with pytest.raises(DataError, match="unknown type tag"):
            read_octave_text(path)

    def test_ragged_row(self, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("# name: x\n# type: matrix\n# rows: 2\n# columns: 2\n1 2\n3\n")
        with pytest.raises(DataError, match="ragged row at line 6"):
            read_octave_text(path)


class TestRoundTrip:
    @pytest.mark.parametrize("fmt", ["csv", "octave"])
    def test_symbols_bit_exact(self, tmp_path, fmt):
        table = DataTable(names=["s", "t"],
                          data=np.array([[0.0, 3.0], [1.0, 2.0], [2.0, 2.0]]))
        path = tmp_path / f"t.{fmt}"
        write_table(table, path, fmt)
        back = read_table(path, fmt)
        assert back.names == table.names
        np.testing.assert_array_equal(back.data, table.data)

    @pytest.mark.parametrize("fmt", ["csv", "octave"])
    @given(st.lists(st.floats(allow_nan=False, allow_infinity=False, width=64),
                    min_size=1, max_size=25))
    @settings(max_examples=40, deadline=None,
              suppress_health_check=[HealthCheck.function_scoped_fixture])
    def test_reals_round_trip_exactly(self, tmp_path, fmt, values):
        import uuid
        table = DataTable(names=["v"], data=np.array(values)[:, None])
        path = tmp_path / f"{uuid.uuid4().hex}.{fmt}"
        write_table(table, path, fmt)
        back = read_table(path, fmt)
        np.testing.assert_array_equal(back.data, table.data)
