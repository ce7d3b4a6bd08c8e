import re

import pytest

from isocount import cli
from isocount.cli import (CKPT_VERSION, Checkpoint, checkpoint_roundtrip, load_checkpoint, parse_grid,
                          parse_height, read_csv, render_plot, run_command, run_jobs, save_checkpoint,
                          write_csv)
from isocount.counting import CensusResult, census


def rows_for(N, pairs, engine="census"):
    return [CensusResult(N, X, c, engine) for X, c in pairs]


# -- csv ------------------------------------------------------------------------------------

def test_write_csv_one_row(tmp_path):
    p = tmp_path / "a.csv"
    write_csv([CensusResult(2, 10, 5, "census")], str(p))
    assert p.read_bytes() == b"N,X,count,engine\n2,10,5,census\n"


def test_write_csv_sorted_and_duplicates(tmp_path):
    p = tmp_path / "a.csv"
    rows = [CensusResult(3, 100, 7, "param"), CensusResult(2, 1000, 9, "census"),
            CensusResult(3, 100, 7, "census"), CensusResult(2, 10, 1, "census")]
    write_csv(rows, str(p))
    assert p.read_text().splitlines() == [
        "N,X,count,engine", "2,10,1,census", "2,1000,9,census", "3,100,7,census", "3,100,7,param"]
    assert [(r.N, r.X, r.engine) for r in read_csv(str(p))] == [
        (2, 10, "census"), (2, 1000, "census"), (3, 100, "census"), (3, 100, "param")]


def test_write_csv_empty(tmp_path):
    with pytest.raises(ValueError):
        write_csv([], str(tmp_path / "a.csv"))


# -- checkpoints ------------------------------------------------------------------------------

def test_checkpoint_roundtrip(tmp_path):
    p = str(tmp_path / "ck")
    assert checkpoint_roundtrip(Checkpoint(), p) == Checkpoint()
    ck = Checkpoint()
    ck.record("census", 2, 10 ** 6, 3, 41)
    ck.record("census", 2, 10 ** 6, 0, 17)
    ck.record("param", 9, 10 ** 5, 1, 2)
    back = checkpoint_roundtrip(ck, p)
    assert back == ck
    lines = open(p).read().splitlines()
    assert lines[0] == CKPT_VERSION
    assert lines[1] == "census 2 1000000 0 17 1"


def test_checkpoint_bad_version(tmp_path):
    p = tmp_path / "ck"
    p.write_text("isogeny-census-ckpt v0\ncensus 2 100 0 5 1\n")
    with pytest.raises(cli.UsageError):
        load_checkpoint(str(p))
    p.write_text(CKPT_VERSION + "\ncensus 2 100 zero 5 1\n")
    with pytest.raises(cli.UsageError):
        load_checkpoint(str(p))


def test_resume_refuses_bad_version_without_counting(tmp_path, capsys):
    ck = tmp_path / "ck"
    ck.write_text("garbage\n")
    out = tmp_path / "c.csv"
    code = run_command(["census", "--n", "2", "--x", "1e4", "--checkpoint", str(ck), "--resume", "--out", str(out)])
    assert code == 2
    assert not out.exists()
    assert ck.read_text() == "garbage\n"


def test_kill_and_resume_every_boundary(tmp_path):
    X, parts = 10 ** 5, 6
    full = census(2, X).count
    for stop in range(1, parts):
        p = str(tmp_path / ("ck%d" % stop))
        with pytest.raises(KeyboardInterrupt):
            run_jobs("census", [2], [X], parts=parts, checkpoint=p, stop_after=stop)
        assert len(load_checkpoint(p).done("census", 2, X)) == stop
        (row,) = run_jobs("census", [2], [X], parts=parts, checkpoint=p, resume=True)
        assert row.count == full
        assert len(load_checkpoint(p).done("census", 2, X)) == parts


def test_resume_partition_mismatch(tmp_path):
    p = str(tmp_path / "ck")
    run_jobs("census", [2], [1000], parts=8, checkpoint=p)
    with pytest.raises(cli.UsageError):
        run_jobs("census", [2], [1000], parts=4, checkpoint=p, resume=True)


# -- plots --------------------------------------------------------------------------------------

def test_render_plot(tmp_path):
    p = tmp_path / "a.svg"
    render_plot(rows_for(2, [(10 ** 3, 104), (10 ** 4, 360)]), str(p))
    svg = p.read_text()
    assert svg.startswith("<svg") and svg.count("<polyline") == 1
    render_plot(rows_for(2, [(10 ** 3, 104), (10 ** 4, 360)]) + rows_for(3, [(10 ** 3, 74), (10 ** 4, 236)]), str(p))
    svg = p.read_text()
    assert svg.count("<polyline") == 2
    assert "N=2 census" in svg and "N=3 census" in svg


def test_render_plot_errors(tmp_path):
    with pytest.raises(ValueError):
        render_plot([], str(tmp_path / "a.svg"))
    with pytest.raises(ValueError):
        render_plot(rows_for(2, [(100, 3)]), str(tmp_path / "a.svg"))


# -- argument handling --------------------------------------------------------------------------

def test_parse_height_and_grid():
    assert parse_height("1e6") == 10 ** 6
    assert parse_height("1000") == 1000
    assert parse_height("2.5e3") == 2500
    assert parse_height("1e20") == 10 ** 20
    assert parse_grid("1e3,1e4") == [1000, 10000]
    for bad in ("abc", "1.5", "1e400"):
        with pytest.raises(cli.UsageError):
            parse_height(bad)
    with pytest.raises(cli.UsageError):
        parse_grid("1e4,1e3")
    with pytest.raises(cli.UsageError):
        parse_grid("")


def test_census_command(tmp_path):
    out = tmp_path / "c.csv"
    assert run_command(["census", "--n", "2", "--x", "1e6", "--out", str(out)]) == 0
    assert out.read_text() == "N,X,count,engine\n2,1000000,3790,census\n"


def test_exit_codes(tmp_path, capsys):
    assert run_command(["census", "--n", "7", "--x", "100"]) == 4
    assert "13t + 49" in capsys.readouterr().err
    assert run_command(["param", "--n", "2", "--x", "100"]) == 4
    assert run_command(["census", "--n", "2", "--x-grid", "100,10"]) == 2
    assert "increasing" in capsys.readouterr().err
    assert run_command(["census", "--n", "2"]) == 2
    assert run_command(["bogus"]) == 2
    assert run_command(["census", "--n", "2", "--x", "100", "--out", str(tmp_path / "no" / "c.csv")]) == 3
    assert run_command(["fit", "--in", str(tmp_path / "missing.csv")]) == 3


def test_fit_command(tmp_path, capsys):
    p = tmp_path / "c.csv"
    p.write_text("N,X,count,engine\n2,1000000,3790,census\n")
    assert run_command(["fit", "--in", str(p)]) == 2
    assert "need ≥ 4 samples" in capsys.readouterr().err
    write_csv(rows_for(2, [(10 ** 4, 360), (10 ** 5, 1190), (10 ** 6, 3790), (10 ** 7, 12212)]), str(p))
    assert run_command(["fit", "--in", str(p)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "N,engine,alpha,beta,c,residual"
    assert out[1].startswith("2,census,0.5")


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    cfg.write_text("# sample\nn = 2,3\nx_grid = 1e3,1e4\nthreads = 1\nout = %s\n" % out1)
    assert run_command(["census", "--config", str(cfg)]) == 0
    assert len(out1.read_text().splitlines()) == 5
    assert run_command(["census", "--config", str(cfg), "--n", "3", "--out", str(out2)]) == 0
    assert out2.read_text() == "N,X,count,engine\n3,1000,74,census\n3,10000,236,census\n"
    cfg.write_text("n 2\n")
    assert run_command(["census", "--config", str(cfg)]) == 2


def test_other_commands(tmp_path, capsys):
    assert run_command(["quadric5", "--x-grid", "1e6,1e12"]) == 0
    assert capsys.readouterr().out.splitlines()[1:] == ["5,1000000,34,quadric5", "5,1000000000000,816,quadric5"]
    assert run_command(["stack", "--n", "2", "--x", "1e6"]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "2,1000000,3708,stack"
    assert run_command(["summatory", "--x", "5,1e4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "T,sum,ratio" and lines[1].startswith("5,9,")
    reg = tmp_path / "reg.txt"
    assert run_command(["dump", "--out", str(reg)]) == 0
    assert reg.read_text().startswith("# N=2 jmap numerator")


def test_table1_command(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert run_command(["table1", "--xmax", "1e6", "--out", str(out), "--plot", str(tmp_path / "t.svg")]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "N,engine,alpha,beta,expected_alpha,expected_beta"
    assert [l.split(",")[0] for l in lines[1:]] == ["2", "3", "4", "5", "6", "8", "9", "12", "16", "18"]
    assert all(re.match(r"^\d+,\w+,-?\d+\.\d{4},[012],", l) for l in lines[1:])
    assert run_command(["table1", "--xmax", "1e5"]) == 2


@pytest.mark.parametrize("engine,N", [("census", 2), ("param", 9)])
def test_determinism_across_threads(tmp_path, engine, N):
    outs = []
    for threads in (1, 4, 16):
        p = tmp_path / ("%s%d.csv" % (engine, threads))
        assert run_command([engine, "--n", str(N), "--x-grid", "1e4,1e5", "--threads", str(threads), "--out", str(p)]) == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1] == outs[2]
