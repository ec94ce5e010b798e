import json

import pytest

from siegelcong.cache import cache_path
from siegelcong.checks import (
    CHECK_IDS, RunContext, SuiteConfig, exit_code, load_config, parse_config, resolve_params,
    run_check, run_suite,
)
from siegelcong.errors import ConfigError, UnknownCheck
from siegelcong.report import CongruenceReport, Status, to_csv, to_json, to_text

SCHEMA = {"check": str, "params": dict, "status": str, "violations": list,
          "violation_count": int, "elapsed_ms": int, "artifact_version": str}


def without_time(report):
    d = report.to_dict()
    d.pop("elapsed_ms")
    return json.dumps(d, sort_keys=True)


def test_registry_is_closed():
    assert set(CHECK_IDS) == {"M1", "M2", "M3", "WILTON", "MOD691", "LEECH23", "PADIC",
                              "RING_IDENTITY", "PHI_CONSISTENCY", "HURWITZ_ORACLE",
                              "CLASSNUM_CONGRUENCE"}
    with pytest.raises(UnknownCheck):
        run_check("M4")
    with pytest.raises(ConfigError):
        resolve_params("M1", {"primes": 11})


def test_report_schema():
    report = run_check("M2", {"prime": 7, "det2_bound": 200})
    d = json.loads(to_json(report))
    assert set(d) == set(SCHEMA) | {"certificate"}
    for key, kind in SCHEMA.items():
        assert isinstance(d[key], kind), key
    assert d["status"] == "PASS" and d["violations"] == []
    assert d["certificate"] is None or isinstance(d["certificate"], dict)


def test_reports_are_reproducible():
    a = run_check("M1", {"prime": 11, "det2_bound": 300, "t_bound": 2000})
    b = run_check("M1", {"prime": 11, "det2_bound": 300, "t_bound": 2000})
    assert without_time(a) == without_time(b)


@pytest.mark.parametrize("check, params, status", [
    ("M1", {"prime": 13}, Status.INAPPLICABLE),
    ("M1", {"prime": 7}, Status.INAPPLICABLE),
    ("M2", {"prime": 5}, Status.INAPPLICABLE),
    ("M3", {"n": 3, "prime": 11}, Status.INAPPLICABLE),
    ("PADIC", {"prime": 13}, Status.INAPPLICABLE),
    ("RING_IDENTITY", {}, Status.PASS),
    ("WILTON", {"t_bound": 3000}, Status.PASS),
    ("MOD691", {"t_bound": 3000}, Status.PASS),
])
def test_check_statuses(check, params, status):
    assert run_check(check, params).status is status


def test_corrupted_cache_coefficient_produces_fail(tmp_path):
    params = {"prime": 11, "det2_bound": 60, "t_bound": 100}
    ctx = RunContext(cache_dir=str(tmp_path))
    assert run_check("M1", params, ctx).status is Status.PASS
    [path] = list(tmp_path.iterdir())
    data = json.loads(path.read_text())
    data["coefficients"]["1,1,1"] = "44353/1"
    path.write_text(json.dumps(data))
    report = run_check("M1", params, ctx)
    assert report.status is Status.FAIL
    assert report.violation_count == 1
    assert any(v.endswith("1,1,1") for v in report.violations)
    assert "1,1,1" in to_text(report)
    assert exit_code([report]) == 1


def test_unreadable_cache_falls_back_to_recomputation(tmp_path):
    params = {"prime": 11, "det2_bound": 60, "t_bound": 100}
    ctx = RunContext(cache_dir=str(tmp_path))
    run_check("M1", params, ctx)
    [path] = list(tmp_path.iterdir())
    path.write_text("{not json")
    assert run_check("M1", params, ctx).status is Status.PASS
    json.loads(path.read_text())


def test_cache_key_carries_format_version(tmp_path):
    name = cache_path(tmp_path, "eis", 2, 6, 12, det2_bound=40).name
    assert name.startswith("eis-deg2-k6-b12") and name.endswith("-v1.json")


def test_violation_cap():
    report = CongruenceReport("M1", {})
    report.add_violations("x", range(250))
    assert len(report.violations) == 100 and report.violation_count == 250
    assert report.settle().status is Status.FAIL


def test_certificate_rendering():
    report = run_check("M1", {"prime": 23, "det2_bound": 40, "t_bound": 100})
    text = to_text(report)
    assert "ord_p(22/B_22) = 1" in text or "22/B_22" in text
    cert = report.certificate
    factors = cert["M1_DEG3"]["factors"] if "M1_DEG3" in cert else cert["factors"]
    assert {f["expression"]: f["valuation"] for f in factors}["22/B_22"] == 1


def test_csv_flattens_violations():
    bad = CongruenceReport("M1", {"prime": 11})
    bad.add_violations("theta-kernel", [(1, 1, 1), (2, 1, 3)])
    bad.settle()
    lines = to_csv([bad]).strip().splitlines()
    assert lines[0].startswith("check,status")
    assert len(lines) == 3 and "2,1,3" in lines[2]


def test_config_parsing(tmp_path):
    cfg = parse_config({"checks": [{"id": "M2", "params": {"prime": p}} for p in (7, 11, 13)],
                        "jobs": 1})
    assert isinstance(cfg, SuiteConfig) and len(cfg.checks) == 3
    for bad, fragment in [({"checks": [{"params": {}}]}, "checks[0]"),
                          ({"checks": [{"id": "M2", "params": {"prime": "x"}}]}, "prime"),
                          ({"checks": "M1"}, "checks"), ({"checks": [], "jobs": 0}, "jobs")]:
        with pytest.raises(ConfigError) as info:
            parse_config(bad)
        assert fragment in str(info.value)
    path = tmp_path / "broken.json"
    path.write_text('{"checks": [\n  {"id": "M1",}\n]}')
    with pytest.raises(ConfigError) as info:
        load_config(path)
    assert "line 2" in str(info.value)


def test_empty_suite():
    reports = run_suite(SuiteConfig(checks=[]))
    assert reports == [] and exit_code(reports) == 0


def test_suite_of_m2_primes():
    cfg = parse_config({"checks": [{"id": "M2", "params": {"prime": p, "det2_bound": 150}}
                                   for p in (7, 11, 13)]})
    reports = run_suite(cfg, jobs=2)
    assert [r.status for r in reports] == [Status.PASS] * 3
    assert [r.params["prime"] for r in reports] == [7, 11, 13]
