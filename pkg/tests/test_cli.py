import pathlib

from kgraphs import Degree, dual, load_kgraph, serialize_kgraph
from kgraphs.cli import main
from kgraphs import samples

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
T1 = str(FIXTURES / "t1.kg")
FLIP2 = str(FIXTURES / "flip2.kg")
TORS = str(FIXTURES / "tors.kg")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", T1)
    assert code == 0
    assert "OK" in out


def test_validate_reports_problems(tmp_path, capsys):
    bad = tmp_path / "bad.kg"
    bad.write_text("kgraph 1\nk 2\nvertex v\nedge b 1 v v\nedge r 2 v v\n")
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1
    assert "has no square" in out


def test_validate_parse_error_with_line(tmp_path, capsys):
    bad = tmp_path / "bad.kg"
    bad.write_text("kgraph 1\nk 2\nvertex v\nedge b 3 v v\n")
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1
    assert ":4:" in out and "color out of range" in out


def test_info(capsys):
    code, out, _ = run(capsys, "info", TORS)
    assert code == 0
    assert "strongly_connected = true" in out
    assert "3 0" in out  # M_1 rows


def test_dual_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "dual.kg"
    code, _, _ = run(capsys, "dual", T1, "--p", "1,1", "-o", str(out_file))
    assert code == 0
    g = load_kgraph(str(out_file))
    assert g.vertices == ("[b,r]",)
    expected = serialize_kgraph(dual(samples.t1(), Degree((1, 1))))
    assert out_file.read_text() == expected


def test_dual_to_stdout_deterministic(capsys):
    code, out1, _ = run(capsys, "dual", FLIP2, "--p", "1,1")
    code2, out2, _ = run(capsys, "dual", FLIP2, "--p", "1,1")
    assert code == code2 == 0
    assert out1 == out2


def test_matrices_dual_flag(capsys):
    code, out, _ = run(capsys, "matrices", FLIP2, "--dual", "1,1")
    assert code == 0
    assert "M^{1,1}_1" in out


def test_rs_check(capsys):
    code, out, _ = run(capsys, "rs-check", TORS, "--h3-bound", "1")
    assert code == 0
    assert "h3_verdict = pass-on-window" in out
    code, out, _ = run(capsys, "rs-check", T1, "--h3-bound", "1")
    assert code == 0
    assert "h3_verdict = fail" in out


def test_ktheory_output(capsys):
    code, out, _ = run(capsys, "ktheory", TORS, "--no-h3")
    assert code == 0
    assert "K0 = Z/2 (+) Z/2" in out
    assert "K1 = Z/2 (+) Z/2" in out
    assert "k0_torsion = 2,2" in out
    assert "aperiodic_on_window = unchecked" in out
    code, out, _ = run(capsys, "ktheory", T1, "--mode", "direct", "--no-h3")
    assert "K0 = Z^2" in out


def test_ktheory_rejects_sinks(tmp_path, capsys):
    g = samples.t1()
    text = serialize_kgraph(g).replace("vertex v", "vertex v\nvertex w")
    bad = tmp_path / "sink.kg"
    bad.write_text(text)
    code, _, err = run(capsys, "ktheory", str(bad))
    assert code == 1
    assert "no sinks and no sources" in err


def test_paths(capsys):
    code, out, _ = run(capsys, "paths", FLIP2, "--from", "v", "--degree", "1,1")
    assert code == 0
    assert "paths with range v and degree 1,1: 2" in out
    assert "[b1,r1]" in out and "[b2,r1]" in out


def test_compare_duals(capsys):
    code, out, _ = run(capsys, "compare-duals", TORS, "--p", "1,0", "--q", "0,1")
    assert code == 0
    assert "true" in out


def test_report_writes_figures(tmp_path, capsys):
    outdir = tmp_path / "report"
    code, out, _ = run(capsys, "report", TORS, "-o", str(outdir), "--h3-bound", "1")
    assert code == 0
    summary = (outdir / "summary.txt").read_text()
    assert "K0 = Z/2 (+) Z/2" in summary
    assert (outdir / "skeleton.png").stat().st_size > 0
    assert (outdir / "dual_skeleton.png").stat().st_size > 0


def test_info_and_ktheory_deterministic(capsys):
    runs = [run(capsys, "info", TORS)[1] for _ in range(2)]
    assert runs[0] == runs[1]
    runs = [run(capsys, "ktheory", TORS, "--no-h3")[1] for _ in range(2)]
    assert runs[0] == runs[1]
    runs = [run(capsys, "rs-check", FLIP2, "--h3-bound", "1")[1] for _ in range(2)]
    assert runs[0] == runs[1]


def test_usage_error_exit_code(capsys):
    assert main(["dual", T1, "--p", "nope"]) == 2
    assert main(["paths", FLIP2, "--from", "zz", "--degree", "1,1"]) == 2


def test_missing_file(capsys):
    assert main(["info", "/nonexistent/path.kg"]) == 2
