import shutil
from pathlib import Path

import pytest

from twkernel.cli import ExitStatus, main
from twkernel.formats import read_graph, read_instance

FIX = Path(__file__).parent / "fixtures"


def report(out):
    """Parse ``key value`` lines into a dict of strings."""
    rows = {}
    for line in out.splitlines():
        key, _, value = line.partition(" ")
        rows[key] = value
    return rows


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, report(out.out), out.err


@pytest.fixture
def work(tmp_path):
    for f in FIX.iterdir():
        shutil.copy(f, tmp_path / f.name)
    return tmp_path


def test_exit_codes_documented():
    assert [int(s) for s in ExitStatus] == [0, 1, 2, 3, 4]


def test_treewidth_k4(capsys):
    code, rep, _ = run(capsys, "treewidth", FIX / "k4.gr")
    assert code == 0 and rep["treewidth"] == "3"
    assert sorted(rep["witness"].split()) == ["1", "2", "3", "4"]


def test_treewidth_decision(capsys):
    assert run(capsys, "treewidth", FIX / "p5.gr", "--k", 1)[0] == ExitStatus.OK
    code, rep, _ = run(capsys, "treewidth", FIX / "petersen.gr", "--k", 3)
    assert code == ExitStatus.NO and rep["decision"] == "no"


def test_treewidth_bruteforce_cap(capsys):
    code, _, err = run(capsys, "treewidth", FIX / "path30.gr", "--method", "bruteforce")
    assert code == ExitStatus.CAPACITY and "cap" in err
    code, rep, _ = run(capsys, "treewidth", FIX / "c5.gr", "--method", "bruteforce")
    assert code == 0 and rep["treewidth"] == "2"


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "treewidth")[0] == ExitStatus.USAGE
    assert run(capsys, "frobnicate")[0] == ExitStatus.USAGE
    assert run(capsys, "treewidth", tmp_path / "missing.gr")[0] == ExitStatus.USAGE


def test_malformed_graph_is_validation_error(capsys, tmp_path):
    bad = tmp_path / "bad.gr"
    bad.write_text("p tw 3 2\ne 1 2\ne 1 2\n")
    code, _, err = run(capsys, "treewidth", bad)
    assert code == ExitStatus.VALIDATION and "line 3" in err


def test_kernelize_star(capsys, work):
    code, rep, _ = run(capsys, "kernelize", work / "star50.gr", work / "star50.ann", "--trace", work / "t.txt")
    assert code == 0
    assert rep["original_vertices"] == "51" and rep["final_vertices"] == "1"
    assert rep["delta_max"] == "1" and rep["bound"] == "1" and rep["within_bound"] == "yes"
    reduced = read_instance((work / "star50.kernel.gr").read_text(), (work / "star50.kernel.ann").read_text())
    assert reduced.graph.n == 1 and reduced.cover == {0}
    assert (work / "t.txt").read_text().count("\nt ") == 50


def test_kernelize_no_instance(capsys, work):
    code, rep, _ = run(capsys, "kernelize", work / "apex10.gr", work / "apex10.ann")
    assert code == ExitStatus.NO and rep["outcome"] == "NO_INSTANCE"
    code, rep, _ = run(capsys, "kernelize", work / "apex10.gr", work / "apex10.ann", "--k", 3)
    assert code == 0 and rep["final_vertices"] == "3"


def test_kernelize_missing_and_invalid_cover(capsys, work):
    assert run(capsys, "kernelize", work / "star50.gr", work / "nope.ann")[0] == ExitStatus.USAGE
    (work / "bad.ann").write_text("s cover\n2\n")
    assert run(capsys, "kernelize", work / "star50.gr", work / "bad.ann")[0] == ExitStatus.VALIDATION
    assert run(capsys, "kernelize", work / "cob4_0.gr", work / "cob4_0.ann")[0] == ExitStatus.VALIDATION


def test_kernelize_compact_and_figure(capsys, work):
    code, rep, _ = run(
        capsys, "kernelize", work / "vc12.gr", work / "vc12.ann",
        "--out", work / "red", "--compact", work / "red.bin", "--figure", work / "trace.png",
    )
    assert code == 0
    assert (work / "red.gr").exists() and (work / "red.ann").exists()
    assert int(rep["compact_bytes"]) == (work / "red.bin").stat().st_size
    assert (work / "trace.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


@pytest.mark.parametrize("name", ["vc12", "apex10"])  # within the oracle cap
def test_kernelize_then_treewidth_reproduces_original(capsys, work, name):
    _, orig, _ = run(capsys, "treewidth", work / f"{name}.gr")
    # a k at least n never triggers the high-degree rule
    _, kern, _ = run(capsys, "kernelize", work / f"{name}.gr", work / f"{name}.ann", "--k", 20)
    _, red, _ = run(capsys, "treewidth", work / f"{name}.kernel.gr")
    assert max(int(kern["delta_max"]), int(red["treewidth"])) == int(orig["treewidth"])


def test_compose_one_instance(capsys, work):
    code, rep, _ = run(capsys, "compose", work / "cob4_0.gr", "--out", work / "c")
    assert code == 0
    assert (rep["r"], rep["k_prime"], rep["vertices"]) == ("1", "15", "18")
    assert rep["group_X"] == "2" and rep["duplicated"] == "none"
    c = read_instance((work / "c.gr").read_text(), (work / "c.ann").read_text())
    assert c.k_prime == 15


def test_compose_three_reports_duplicates(capsys, work):
    files = [work / f"cob4_{s}.gr" for s in (0, 3, 4)]
    code, rep, _ = run(capsys, "compose", *files, "--out", work / "c3", "--figure", work / "adj.png")
    assert code == 0 and rep["r"] == "2" and rep["duplicated"] == "2,2=1"
    assert read_graph((work / "c3.gr").read_text()) == read_graph((work / "composed_r2.gr").read_text())
    assert (work / "c3.ann").read_text() == (work / "composed_r2.ann").read_text()
    assert (work / "adj.png").exists()


def test_compose_mixed_parameters(capsys, work):
    run(capsys, "generate", "--n", 6, "--k", 1, "--out-dir", work / "six")
    code, _, err = run(capsys, "compose", work / "cob4_0.gr", work / "six" / "inst_000.gr")
    assert code == ExitStatus.VALIDATION and "uniform-n" in err


def test_verify_oracle_r1(capsys, work):
    code, rep, _ = run(capsys, "verify", work / "composed_r1.gr", work / "cob4_0.gr", "--mode", "oracle")
    assert code == 0 and rep["method"] == "oracle" and rep["composed_yes"] == "yes"
    run(capsys, "compose", work / "cob4_3.gr", "--out", work / "no")
    code, rep, _ = run(capsys, "verify", work / "no.gr", work / "cob4_3.gr", "--mode", "oracle")
    assert code == 0 and rep["composed_yes"] == "no" and rep["or_holds"] == "yes"


def test_verify_canonical_r2(capsys, work):
    files = [work / f"cob4_{s}.gr" for s in (0, 3, 4)]
    code, rep, _ = run(capsys, "verify", work / "composed_r2.gr", *files, "--mode", "canonical")
    assert code == 0 and rep["method"] == "canonical" and rep["input_yes"] == "yes no no"


def test_verify_capacity_hint(capsys, work):
    files = [work / f"cob4_{s}.gr" for s in (0, 3, 4)]
    code, _, err = run(capsys, "verify", work / "composed_r2.gr", *files, "--mode", "oracle")
    assert code == ExitStatus.CAPACITY and "--mode canonical" in err


def test_verify_corrupted(capsys, work):
    text = (work / "composed_r1.gr").read_text().replace("e 1 2\n", "")
    header = next(l for l in text.splitlines() if l.startswith("p "))
    n, m = header.split()[2:]
    (work / "composed_r1.gr").write_text(text.replace(header, f"p tw {n} {int(m) - 1}"))
    code, _, _ = run(capsys, "verify", work / "composed_r1.gr", work / "cob4_0.gr")
    assert code == ExitStatus.VALIDATION


def test_verify_wrong_inputs(capsys, work):
    code, _, err = run(capsys, "verify", work / "composed_r1.gr", work / "cob4_3.gr")
    assert code == ExitStatus.VALIDATION and "matches-inputs" in err


def test_generate_validates_and_is_deterministic(capsys, tmp_path):
    code, rep, _ = run(capsys, "generate", "--n", 4, "--k", 1, "--seed", 7, "--out-dir", tmp_path / "a")
    assert code == 0 and rep["count"] == "1"
    run(capsys, "generate", "--n", 4, "--k", 1, "--seed", 7, "--out-dir", tmp_path / "b")
    for ext in (".gr", ".ann"):
        assert (tmp_path / "a" / f"inst_000{ext}").read_bytes() == (tmp_path / "b" / f"inst_000{ext}").read_bytes()
    inst = read_instance((tmp_path / "a" / "inst_000.gr").read_text(), (tmp_path / "a" / "inst_000.ann").read_text())
    assert inst.n == 4 and inst.k == 1


@pytest.mark.parametrize("flags", [["--n", 5, "--k", 1], ["--n", 4, "--k", 2], ["--n", 4, "--k", 1, "--p", 2]])
def test_generate_bad_parameters(capsys, tmp_path, flags):
    assert run(capsys, "generate", *flags, "--out-dir", tmp_path)[0] == ExitStatus.USAGE


def test_vc_examples(capsys, work):
    code, rep, _ = run(capsys, "vc", work / "c5.gr")
    assert code == 0 and rep["cover_size"] == "3" and rep["exact"] == "yes"
    code, rep, _ = run(capsys, "vc", work / "k35.gr", "--out", work / "k35.cover")
    assert rep["cover"] == "1 2 3"
    inst = read_instance((work / "k35.gr").read_text(), (work / "k35.cover").read_text())
    assert inst.cover == {0, 1, 2}


def test_vc_capacity_and_approx(capsys, work, tmp_path):
    big = tmp_path / "big.gr"
    lines = [f"e {i} {i + 1}" for i in range(1, 60)]
    big.write_text(f"p tw 60 59\n" + "\n".join(lines) + "\n")
    assert run(capsys, "vc", big)[0] == ExitStatus.CAPACITY
    code, rep, _ = run(capsys, "vc", big, "--approx")
    assert code == 0 and rep["exact"] == "no"
    assert "approximate" in (tmp_path / "big.cover").read_text()
    G = read_graph(big.read_text())
    cover = {int(v) - 1 for v in rep["cover"].split()}
    assert all(u in cover or v in cover for u, v in G.edges())


def test_verbose_summary(capsys, work):
    code = main(["--verbose", "kernelize", str(work / "star50.gr"), str(work / "star50.ann")])
    err = capsys.readouterr().err
    assert code == 0 and "51 -> 1" in err
