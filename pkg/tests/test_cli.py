"""CLI behavior: determinism, exit codes, report schema, cache handling."""

import json

import pytest

from rslocal import cli, suites
from rslocal.characters import char_B2
from rslocal.suites import CheckConfig, CheckReport, emit_report, run_suite


def run_main(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_chain_small_box_passes(capsys):
    code, out, _ = run_main(capsys, ["chain", "--deg-u", "2", "--deg-v", "2", "--no-timing"])
    assert code == 0
    assert "chain/local-vs-mult-m" in out


def test_json_report_round_trips(capsys):
    code, out, _ = run_main(
        capsys,
        ["coeffs", "--radius", "2", "--format", "json", "--no-timing", "--seed", "3"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["version"] == suites.REPORT_VERSION
    assert doc["config"]["radius"] == 2
    assert all(ch["status"] == "pass" for ch in doc["checks"])
    ids = [ch["id"] for ch in doc["checks"]]
    assert ids == sorted(ids)
    assert all("elapsed_ms" not in ch for ch in doc["checks"])


def test_byte_identical_reports(capsys):
    argv = ["coeffs", "--radius", "2", "--format", "json", "--no-timing"]
    _, out1, _ = run_main(capsys, argv)
    _, out2, _ = run_main(capsys, argv)
    assert out1 == out2


def test_config_error_exit_code(capsys):
    code, _, err = run_main(capsys, ["coeffs", "--prime", "7", "--no-timing"])
    assert code == 2
    assert "primes" in err


def test_sw_validation_only_for_padic(capsys):
    code, _, err = run_main(capsys, ["padic", "--sw", "2,7", "--no-timing"])
    assert code == 2
    assert "convergence" in err
    # the same point is accepted when the p-adic suite is not selected
    code, _, _ = run_main(
        capsys, ["coeffs", "--sw", "2,7", "--radius", "1", "--no-timing"]
    )
    assert code == 0


def test_unknown_suite_exits_2():
    with pytest.raises(SystemExit) as err:
        cli.main(["nonsense"])
    assert err.value.code == 2


def test_failing_check_exit_code_and_digest(capsys, monkeypatch):
    def fake_suite(cfg, reports):
        reports.append(
            CheckReport("characters/forced-failure", {}, "fail", "lhs-digest", "rhs-digest", 0)
        )

    monkeypatch.setitem(suites._SUITE_BODIES, "characters", fake_suite)
    code, out, _ = run_main(capsys, ["characters", "--no-timing"])
    assert code == 1
    assert "lhs-digest" in out and "rhs-digest" in out


def test_emit_report_empty_list():
    cfg = CheckConfig(suite="chain", fmt="json", no_timing=True)
    doc = json.loads(emit_report([], cfg))
    assert doc["checks"] == []
    assert doc["version"] == suites.REPORT_VERSION


def test_config_file_defaults_and_flag_precedence(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"radius": 1, "deg_u": 2, "deg_v": 2, "no_timing": True}))
    code, out, _ = run_main(
        capsys, ["coeffs", "--config", str(path), "--format", "json"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["radius"] == 1
    # the flag wins over the config file
    code, out, _ = run_main(
        capsys,
        ["coeffs", "--config", str(path), "--radius", "2", "--format", "json"],
    )
    doc = json.loads(out)
    assert doc["config"]["radius"] == 2


def test_cache_round_trip(tmp_path, capsys):
    path = tmp_path / "chars.json"
    code, _, _ = run_main(
        capsys,
        ["characters", "--cache", str(path), "--no-timing"],
    )
    assert code == 0 and path.exists()
    doc = json.loads(path.read_text())
    assert doc["format"] == suites.CACHE_FORMAT
    assert doc["version"] == suites.CACHE_VERSION
    assert doc["entries"]
    # dropping an entry from the live table and reloading restores it
    from rslocal import characters

    key = tuple(doc["entries"][0][0])
    characters._B2_CACHE.pop(key, None)
    assert suites.load_cache(str(path)) >= 1
    loaded = sorted((d1, d2, c) for (_, d1, d2), c in char_B2(*key).items())
    characters._B2_CACHE.pop(key, None)
    recomputed = sorted((d1, d2, c) for (_, d1, d2), c in char_B2(*key).items())
    assert loaded == recomputed
    # a bumped version is ignored
    doc["version"] = suites.CACHE_VERSION + 1
    path.write_text(json.dumps(doc))
    assert suites.load_cache(str(path)) == 0


def test_cache_env_override(tmp_path, capsys, monkeypatch):
    path = tmp_path / "env-cache.json"
    monkeypatch.setenv(cli.CACHE_ENV, str(path))
    code, _, _ = run_main(capsys, ["characters", "--no-timing"])
    assert code == 0
    assert path.exists()


def test_cache_contents_match_live_table(tmp_path):
    from rslocal.characters import b2_cache_items

    cfg = CheckConfig(suite="characters", no_timing=True)
    run_suite(cfg)
    path = tmp_path / "c.json"
    suites.save_cache(str(path))
    doc = json.loads(path.read_text())
    live = {tuple(key): terms for key, terms in
            (((a, b), [list(t) for t in terms]) for (a, b), terms in b2_cache_items())}
    stored = {tuple(key): terms for key, terms in doc["entries"]}
    assert stored == live
    # a cached entry reproduces the character exactly
    a, b = next(iter(stored))
    poly = char_B2(a, b)
    want = sorted([d1, d2, c] for (_, d1, d2), c in poly.items())
    assert sorted(stored[(a, b)]) == want
