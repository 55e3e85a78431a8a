"""Command-line driver: scenarios, reports, exit codes, caching."""

import json

import pytest

from loopyang import cli
from loopyang.report import CheckReport


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_semisimple_text_passes(capsys, tmp_path):
    code, out = run(
        capsys,
        [
            "verify",
            "semisimple",
            "--type",
            "A1",
            "--order",
            "3",
            "--cache-dir",
            str(tmp_path),
        ],
    )
    assert code == 0
    assert "# command = verify semisimple" in out
    assert out.strip().endswith("checks passed")
    # the cache now holds the solution-family series
    assert any(p.suffix == ".txt" for p in tmp_path.iterdir())


def test_json_is_deterministic_and_embeds_scenario(capsys, tmp_path):
    argv = [
        "verify",
        "drinfeld",
        "--m-max",
        "1",
        "--r-window",
        "1",
        "--order",
        "4",
        "--format",
        "json",
        "--cache-dir",
        str(tmp_path),
    ]
    payloads = []
    for _ in range(2):
        code, out = run(capsys, argv)
        assert code == 0
        payloads.append(json.loads(out))
    for p in payloads:
        for c in p["checks"]:
            c["millis"] = 0.0
    assert payloads[0] == payloads[1]
    scn = payloads[0]["scenario"]
    assert scn["command"] == "verify drinfeld"
    assert scn["m_max"] == "1" and scn["order"] == "4"
    assert payloads[0]["passed"] == payloads[0]["total"] > 0


def test_parallel_matches_serial(capsys, tmp_path):
    base = [
        "verify",
        "gln",
        "--n",
        "2",
        "--d",
        "1",
        "--order",
        "3",
        "--format",
        "json",
        "--cache-dir",
        str(tmp_path),
    ]
    outs = []
    for jobs in ("1", "2"):
        code, out = run(capsys, base + ["--jobs", jobs])
        assert code == 0
        p = json.loads(out)
        for c in p["checks"]:
            c["millis"] = 0.0
        p["scenario"]["jobs"] = "0"
        outs.append(p)
    assert outs[0] == outs[1]


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "opts.cfg"
    cfg.write_text("order = 3\ntype = A1\nformat = json\n")
    code, out = run(
        capsys,
        [
            "verify",
            "semisimple",
            "--config",
            str(cfg),
            "--order",
            "2",
            "--cache-dir",
            str(tmp_path),
        ],
    )
    assert code == 0
    scn = json.loads(out)["scenario"]
    assert scn["order"] == "2"  # flag beats file
    assert scn["type"] == "A1"  # file beats default


def test_unknown_config_key_is_an_error(capsys, tmp_path):
    cfg = tmp_path / "opts.cfg"
    cfg.write_text("frobnicate = 1\n")
    code = cli.main(["verify", "semisimple", "--config", str(cfg)])
    assert code == 2
    assert "unknown config key" in capsys.readouterr().err


def test_truncation_cap(capsys):
    code = cli.main(["verify", "semisimple", "--type", "A1", "--order", "11"])
    assert code == 2
    assert "truncation cap" in capsys.readouterr().err
    # the cap itself is overridable, and the raised value lands in the
    # scenario (order 11 on A1 would be slow, so only check resolution
    # via a small order with a lowered cap)
    code = cli.main(
        ["verify", "drinfeld", "--order", "2", "--m-max", "1", "--max-order", "2"]
    )
    assert code == 0


def test_failing_check_gives_exit_one(capsys, monkeypatch):
    def broken(m, r_window, order):
        return [
            CheckReport(
                check_id="MUT[intentional]",
                params={"m": m},
                passed=False,
                first_failing_monomial="h^1",
            )
        ]

    monkeypatch.setitem(cli._TASKS, "drinfeld", broken)
    code, out = run(capsys, ["verify", "drinfeld", "--m-max", "1"])
    assert code == 1
    assert "FAIL" in out and "h^1" in out


def test_cache_purge_and_reuse(capsys, tmp_path):
    argv = [
        "verify",
        "semisimple",
        "--type",
        "A1",
        "--order",
        "3",
        "--format",
        "json",
        "--cache-dir",
        str(tmp_path),
    ]
    code, cold = run(capsys, argv)
    assert code == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files
    code, warm = run(capsys, argv)
    assert code == 0
    a, b = json.loads(cold), json.loads(warm)
    for p in (a, b):
        for c in p["checks"]:
            c["millis"] = 0.0
    assert a == b  # cache may change timing, never content
    code, out = run(capsys, ["cache", "purge", "--cache-dir", str(tmp_path)])
    assert code == 0
    assert f"removed {len(files)}" in out
    assert not any(p.suffix == ".txt" for p in tmp_path.iterdir())


def test_gauge_roundtrip_verb(capsys, tmp_path):
    code, out = run(
        capsys,
        [
            "gauge",
            "roundtrip",
            "--type",
            "A1",
            "--order",
            "4",
            "--seeds",
            "2",
            "--cache-dir",
            str(tmp_path),
        ],
    )
    assert code == 0
    assert "GAUGE-RT[A1;seed=0]" in out and "GAUGE-RT[A1;seed=1]" in out


def test_cartan_file_input(capsys, tmp_path):
    mat = tmp_path / "rank1.cartan"
    mat.write_text("1\n2\n")
    code, out = run(
        capsys,
        [
            "verify",
            "semisimple",
            "--cartan",
            str(mat),
            "--order",
            "3",
            "--format",
            "json",
            "--cache-dir",
            str(tmp_path),
        ],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] == payload["total"] > 0
