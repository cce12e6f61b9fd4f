import pytest
from hypothesis import given, strategies as st

from gdwm.errors import InputError
from gdwm.ingest import RecordSet, build_token_stats, make_record, merge_sources, normalize_and_tokenize


def _write(path, lines):
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path


def test_tokenize_examples():
    assert normalize_and_tokenize("Lloyd  Aaron-Dean") == ["LLOYD", "AARON", "DEAN"]
    assert normalize_and_tokenize("") == []
    assert normalize_and_tokenize("456 18 2098") == ["456", "18", "2098"]


def test_merge_two_files(tmp_path):
    a = _write(tmp_path / "a.txt", ["r1,one", "r2,two", "r3,three"])
    b = _write(tmp_path / "b.txt", ["r4,four", "r5,five"])
    rs = merge_sources([a, b])
    assert len(rs) == 5
    assert rs.ids == ["r1", "r2", "r3", "r4", "r5"]


def test_merge_table1_record(tmp_path):
    f = _write(tmp_path / "t.txt", ["A985464,LLOYD AARON DEAN 2475 SPICEWOOD DR WINSTON SALEM NC 27106"])
    (rec,) = merge_sources([f]).records
    assert rec.id == "A985464"
    assert rec.tokens == ("LLOYD", "AARON", "DEAN", "2475", "SPICEWOOD", "DR", "WINSTON", "SALEM", "NC", "27106")


def test_merge_duplicate_id(tmp_path):
    a = _write(tmp_path / "a.txt", ["x1,foo"])
    b = _write(tmp_path / "b.txt", ["x1,bar"])
    with pytest.raises(InputError, match="duplicate id 'x1'"):
        merge_sources([a, b])


def test_merge_bad_line_reports_location(tmp_path):
    f = _write(tmp_path / "bad.txt", ["ok,fine", "no delimiter here"])
    with pytest.raises(InputError, match=r"bad.txt:2"):
        merge_sources([f])


def test_body_keeps_later_commas(tmp_path):
    f = _write(tmp_path / "c.txt", ["id9,SMITH, JOHN,NC"])
    (rec,) = merge_sources([f]).records
    assert rec.body == "SMITH, JOHN,NC"
    assert rec.tokens == ("SMITH", "JOHN", "NC")


def test_token_stats_examples():
    rs = RecordSet([make_record("1", "A B"), make_record("2", "B C")])
    assert build_token_stats(rs) == {"A": 1, "B": 2, "C": 1}
    assert build_token_stats(RecordSet([])) == {}
    # repeats inside one record count every occurrence
    assert build_token_stats(RecordSet([make_record("1", "X X")])) == {"X": 2}


@given(st.text())
def test_tokens_are_clean(body):
    for tok in normalize_and_tokenize(body):
        assert tok
        assert all(c.isascii() and (c.isdigit() or c.isupper()) for c in tok)


@given(st.text())
def test_tokenize_idempotent(body):
    tokens = normalize_and_tokenize(body)
    assert normalize_and_tokenize(" ".join(tokens)) == tokens


@given(st.lists(st.text(max_size=30), max_size=20))
def test_stats_sum_equals_occurrences(bodies):
    rs = RecordSet([make_record(f"id{i}", b) for i, b in enumerate(bodies)])
    stats = build_token_stats(rs)
    assert sum(stats.values()) == sum(len(r.tokens) for r in rs)
    assert all(stats[t] > 0 for r in rs for t in r.tokens)


@given(st.lists(st.integers(0, 5), min_size=1, max_size=5))
def test_merge_size_is_sum_of_lines(tmp_path_factory, sizes):
    d = tmp_path_factory.mktemp("m")
    paths, n = [], 0
    for f, size in enumerate(sizes):
        paths.append(_write(d / f"f{f}.txt", [f"f{f}r{i},body {i}" for i in range(size)]))
        n += size
    assert len(merge_sources(paths)) == n
