import pytest

from colorcount.cli import main


@pytest.fixture
def abra_file(tmp_path):
    p = tmp_path / "abra.txt"
    p.write_bytes(b"abracadabra")
    return p


def build(tmp_path, src, *extra):
    out = tmp_path / "abra.ccs"
    assert main(["build", str(src), "-o", str(out), *extra]) == 0
    return out


def test_build_bytes(tmp_path, abra_file, capsys):
    build(tmp_path, abra_file)
    line = capsys.readouterr().out
    assert "n=11" in line and "sigma=5" in line


def test_build_tokens(tmp_path, capsys):
    src = tmp_path / "t.txt"
    src.write_text("5 5 7\n")
    build(tmp_path, src, "--alphabet", "tokens")
    assert "n=3 sigma=2" in capsys.readouterr().out


def test_build_empty(tmp_path, capsys):
    src = tmp_path / "empty"
    src.write_bytes(b"")
    assert main(["build", str(src), "-o", str(tmp_path / "x")]) == 3
    assert main(["build", str(tmp_path / "missing"), "-o", str(tmp_path / "x")]) == 3


def test_build_unwritable_output(tmp_path, abra_file):
    assert main(["build", str(abra_file), "-o", str(tmp_path / "no" / "dir" / "x")]) == 5


@pytest.mark.parametrize("scheme", ["baseline", "simple", "multisize", "dynamic"])
def test_query(tmp_path, abra_file, capsys, scheme):
    idx = build(tmp_path, abra_file, "--scheme", scheme)
    capsys.readouterr()
    assert main(["query", str(idx), "4", "8"]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert main(["query", str(idx), "0", "3"]) == 3
    assert main(["query", str(idx), "5", "12"]) == 3


def test_query_batch(tmp_path, abra_file, capsys):
    idx = build(tmp_path, abra_file)
    batch = tmp_path / "q.txt"
    batch.write_text("1 11\n4 8\n\n1 1\n")
    capsys.readouterr()
    assert main(["query", str(idx), "--batch", str(batch), "--threads", "2"]) == 0
    assert capsys.readouterr().out.split() == ["5", "3", "1"]
    batch.write_text("1 2\n3 x\n")
    assert main(["query", str(idx), "--batch", str(batch)]) == 3
    assert "line 2" in capsys.readouterr().err
    batch.write_text("1 2\n9 4\n")
    assert main(["query", str(idx), "--batch", str(batch)]) == 3
    assert "line 2" in capsys.readouterr().err


def test_query_without_range(tmp_path, abra_file):
    assert main(["query", str(build(tmp_path, abra_file))]) == 2


def test_edit(tmp_path, abra_file, capsys):
    idx = build(tmp_path, abra_file)
    script = tmp_path / "e.txt"
    script.write_text("R 5 1\nQ 4 8\n")
    capsys.readouterr()
    assert main(["edit", str(idx), "--script", str(script)]) == 0
    assert capsys.readouterr().out.split() == ["3"]
    snap = tmp_path / "snap.ccs"
    script.write_text("D 5\nQ 4 8\n")
    assert main(["edit", str(idx), "--script", str(script), "-o", str(snap)]) == 0
    assert capsys.readouterr().out.split() == ["2"]
    script.write_text("")
    assert main(["edit", str(snap), "--script", str(script)]) == 0
    assert main(["query", str(snap), "4", "8"]) == 0
    assert capsys.readouterr().out.split() == ["2"]


def test_edit_in_place_for_dynamic(tmp_path, abra_file, capsys):
    idx = build(tmp_path, abra_file, "--scheme", "dynamic")
    script = tmp_path / "e.txt"
    script.write_text("A 2\n")
    assert main(["edit", str(idx), "--script", str(script)]) == 0
    capsys.readouterr()
    assert main(["query", str(idx), "1", "12"]) == 0
    assert capsys.readouterr().out.strip() == "5"


def test_edit_rejects_non_multisize(tmp_path, abra_file):
    idx = build(tmp_path, abra_file, "--scheme", "baseline")
    script = tmp_path / "e.txt"
    script.write_text("Q 1 2\n")
    assert main(["edit", str(idx), "--script", str(script)]) == 3


@pytest.mark.parametrize("bad", ["X 1\n", "R 5 9\n", "D 20\n", "R 1\n", "D 5\nD 5\n"])
def test_edit_errors(tmp_path, abra_file, capsys, bad):
    idx = build(tmp_path, abra_file)
    script = tmp_path / "e.txt"
    script.write_text(bad)
    assert main(["edit", str(idx), "--script", str(script)]) == 3
    assert "line" in capsys.readouterr().err


def test_stats(tmp_path, abra_file, capsys):
    idx = build(tmp_path, abra_file, "--delta", "1")
    capsys.readouterr()
    assert main(["stats", str(idx), "--format", "kv"]) == 0
    out = capsys.readouterr().out
    assert "offset_payload=18" in out
    assert main(["stats", str(idx)]) == 0


def test_corrupt_index(tmp_path, abra_file, capsys):
    idx = build(tmp_path, abra_file)
    data = bytearray(idx.read_bytes())
    data[0] ^= 0xFF
    idx.write_bytes(bytes(data))
    for argv in (["query", str(idx), "1", "2"], ["stats", str(idx)]):
        assert main(argv) == 4
    assert "corrupt" in capsys.readouterr().err


def test_bench_deterministic(tmp_path, capsys):
    argv = ["bench", "--min-exp", "6", "--max-exp", "10", "--step", "2", "--sigma", "16",
            "--queries", "50", "--no-timing"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    lines = first.splitlines()
    header = lines[0].split(",")
    assert "bits_per_symbol" in header and "query_us" not in header
    rows = [dict(zip(header, ln.split(","))) for ln in lines[1:]]
    assert {r["n"] for r in rows} == {"64", "256", "1024"}
    for key in {(r["corpus"], r["n"]) for r in rows}:
        sums = {r["answer_sum"] for r in rows if (r["corpus"], r["n"]) == key}
        assert len(sums) == 1


def test_bench_csv_file(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--min-exp", "6", "--max-exp", "6", "--corpora", "unary",
                 "--queries", "10", "--repeat", "1", "--csv", str(out)]) == 0
    assert "query_us" in out.read_text().splitlines()[0]
