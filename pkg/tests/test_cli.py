"""Command-line contract tests: schema, determinism, exit codes, config."""

import json
import os
import re
import subprocess
import sys

import pytest

from finsum import cli
from finsum.series import Variant

_RUNNER = ("-c", "import sys; from finsum.cli import main; sys.exit(main(sys.argv[1:]))")


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("FINSUM_CONFIG", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, *_RUNNER, *args],
                         capture_output=True, text=True, env=env)


class TestRunApi:
    def test_oracle_record_is_first(self):
        report = cli.run("k", 100, method="all")
        assert report["results"][0]["method"] == "oracle"
        assert report["results"][0]["value"]["re"] == 5050.0
        names = [r["method"] for r in report["results"]]
        assert names == list(cli.METHODS)

    def test_single_method_still_reports_the_oracle(self):
        report = cli.run("1/k", 5, method="laplace")
        names = [r["method"] for r in report["results"]]
        assert names == ["oracle", "laplace"]
        lap = report["results"][1]
        assert lap["abs_err_vs_oracle"] <= 1e-10
        assert lap["flags"] == []

    def test_closed_form_route(self):
        report = cli.run("sin(0.5*k)", 20, method="closed-form")
        rec = report["results"][1]
        assert rec["abs_err_vs_oracle"] <= 1e-12
        assert rec["flags"] == []

    def test_unsupported_route_becomes_an_error_record(self):
        report = cli.run("exp(-k^2)", 5, method="all")
        by_name = {r["method"]: r for r in report["results"]}
        assert by_name["fourier"]["abs_err_vs_oracle"] <= 1e-7
        assert by_name["laplace"]["flags"] == ["error"]
        assert "error" in by_name["laplace"]

    def test_variant_plumbing(self):
        report = cli.run("exp(-0.5*k)", 6, method="laplace",
                         variant=Variant.SHIFTED, beta=0.4 + 0j)
        assert report["meta"]["variant"] == "shifted"
        assert report["results"][1]["abs_err_vs_oracle"] <= 1e-12

    def test_alpha_scaling_reaches_every_route(self):
        report = cli.run("exp(-0.3*k)", 8, method="all", alpha=1.6 + 0j)
        by_name = {r["method"]: r for r in report["results"]}
        for name in ("laplace", "telescope", "closed-form"):
            assert by_name[name]["abs_err_vs_oracle"] <= 1e-9, name
        # the unit-lattice correction route is honest rather than sharp here
        em = by_name["euler-maclaurin"]
        assert em["abs_err_vs_oracle"] <= em["error_estimate"]

    def test_closed_form_requires_standard_variant(self):
        report = cli.run("exp(-0.5*k)", 4, method="closed-form",
                         variant=Variant.ALTERNATING)
        assert report["results"][1]["flags"] == ["error"]

    def test_meta_field_order(self):
        report = cli.run("1/k", 3, method="oracle")
        assert list(report["meta"]) == ["expr", "n", "alpha", "variant",
                                        "beta", "tol", "version"]
        rec = report["results"][0]
        assert list(rec) == ["method", "value", "abs_err_vs_oracle",
                             "error_estimate", "flags", "diagnostics"]
        assert list(rec["diagnostics"]) == ["nodes", "truncation_index",
                                            "converged", "notes", "runtime_ns"]


class TestReports:
    def test_json_round_trips_and_ends_with_newline(self):
        report = cli.run("1/k", 4, method="oracle")
        text = cli.report_json(report)
        assert text.endswith("\n")
        assert json.loads(text) == report

    def test_csv_shape(self):
        report = cli.run("1/k^2", 6, method="all")
        text = cli.report_csv(report)
        lines = text.strip().splitlines()
        assert lines[0] == ("method,value_re,value_im,abs_err_vs_oracle,"
                            "error_estimate,flags,nodes,runtime_ns")
        assert len(lines) == 1 + len(report["results"])

    def test_csv_error_rows_are_marked(self):
        report = cli.run("log(k)", 5, method="laplace")
        text = cli.report_csv(report)
        assert "error:" in text


class TestDeterminism:
    def test_json_identical_across_processes(self):
        args = ("eval", "--expr", "1/(k^2+1)", "--n", "10",
                "--method", "all", "--format", "json")
        a = run_cli(*args, env_extra={"PYTHONHASHSEED": "1"})
        b = run_cli(*args, env_extra={"PYTHONHASHSEED": "77"})
        assert a.returncode == 0 and b.returncode == 0
        strip = lambda s: re.sub(r'"runtime_ns": \d+', '"runtime_ns": 0', s)
        assert strip(a.stdout) == strip(b.stdout)
        assert a.stdout.startswith("{")

    def test_runtime_is_the_only_moving_part(self):
        a = run_cli("eval", "--expr", "exp(-k)", "--n", "3")
        b = run_cli("eval", "--expr", "exp(-k)", "--n", "3")
        da = json.loads(a.stdout)
        db = json.loads(b.stdout)
        for ra, rb in zip(da["results"], db["results"]):
            for rec in (ra, rb):
                if "diagnostics" in rec:
                    rec["diagnostics"]["runtime_ns"] = 0
        assert da == db


class TestExitCodes:
    def test_success(self):
        res = run_cli("eval", "--expr", "1/k", "--n", "5")
        assert res.returncode == 0

    def test_all_requested_methods_failing_gives_one(self):
        res = run_cli("eval", "--expr", "exp(-k^2)", "--n", "4",
                      "--method", "laplace")
        assert res.returncode == 1

    def test_parse_error_gives_two(self):
        res = run_cli("eval", "--expr", "1/(k", "--n", "5")
        assert res.returncode == 2
        assert "offset" in res.stderr

    def test_unknown_function_gives_two(self):
        res = run_cli("eval", "--expr", "foo(k)", "--n", "5")
        assert res.returncode == 2

    def test_bad_flag_gives_two(self):
        res = run_cli("eval", "--expr", "1/k", "--n", "5",
                      "--method", "sorcery")
        assert res.returncode == 2

    def test_missing_n_gives_two(self):
        res = run_cli("eval", "--expr", "1/k")
        assert res.returncode == 2

    def test_odd_alternating_length_gives_two(self):
        res = run_cli("eval", "--expr", "1/k", "--n", "5",
                      "--variant", "alternating")
        assert res.returncode == 2

    def test_identities_verify_passes(self):
        res = run_cli("identities", "verify")
        assert res.returncode == 0, res.stdout + res.stderr
        for line in res.stdout.strip().splitlines():
            assert ": PASS" in line


class TestConfigFile:
    def test_config_supplies_defaults(self, tmp_path):
        cfg = tmp_path / "finsum.cfg"
        cfg.write_text("expr = 1/k\nn = 4\n# a comment\nformat = csv\n")
        res = run_cli("eval", env_extra={"FINSUM_CONFIG": str(cfg)})
        assert res.returncode == 0
        assert res.stdout.startswith("method,")

    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "finsum.cfg"
        cfg.write_text("expr = 1/k\nn = 4\n")
        res = run_cli("eval", "--expr", "k", "--n", "2", "--method", "oracle",
                      env_extra={"FINSUM_CONFIG": str(cfg)})
        data = json.loads(res.stdout)
        assert data["meta"]["expr"] == "k"
        assert data["results"][0]["value"]["re"] == 3.0

    def test_malformed_config_gives_two(self, tmp_path):
        cfg = tmp_path / "finsum.cfg"
        cfg.write_text("this line has no equals sign\n")
        res = run_cli("eval", "--expr", "1/k", "--n", "3",
                      env_extra={"FINSUM_CONFIG": str(cfg)})
        assert res.returncode == 2


class TestBench:
    def test_standard_suite_csv(self):
        res = run_cli("bench", "--suite", "standard")
        assert res.returncode == 0
        lines = res.stdout.strip().splitlines()
        assert lines[0] == "expr,N,method,value_re,value_im,abs_err,nodes,runtime_ns"
        assert len(lines) > 10
        exprs = {line.split(",")[0] for line in lines[1:]}
        assert "1/k" in exprs
