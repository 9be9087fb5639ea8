import json
import os
from pathlib import Path

import jsonschema
import pytest
from click.testing import CliRunner

from smoothlab.cli import main

SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "schemas" / "output-schema.json").read_text()
)


@pytest.fixture
def runner():
    return CliRunner()


def invoke_json(runner, args):
    result = runner.invoke(main, args)
    assert result.exit_code == 0, result.output
    doc = json.loads(result.output)
    jsonschema.validate(doc, SCHEMA)
    return doc


class TestMembershipCommand:
    def test_example(self, runner):
        doc = invoke_json(runner, ["membership", "--base", "2", "--n", "6", "--K", "1", "--c", "6/5"])
        assert doc["results"][0]["member"] is True
        assert doc["parameters"]["c"] == "6/5"

    def test_decimal_c_parsed_exactly(self, runner):
        doc = invoke_json(runner, ["membership", "--base", "2", "--n", "6", "--K", "1", "--c", "1.2"])
        assert doc["parameters"]["c"] == "6/5"

    def test_theta_cutoff(self, runner):
        doc = invoke_json(
            runner, ["membership", "--base", "2", "--n", "9", "--theta", "3/2", "--c", "6/5"]
        )
        assert doc["results"][0]["cutoff_y"] == 27

    def test_usage_error_both_cutoffs(self, runner):
        result = runner.invoke(main, ["membership", "--base", "2", "--n", "6", "--K", "1",
                                      "--theta", "1/2", "--c", "6/5"])
        assert result.exit_code == 2

    def test_domain_error_c(self, runner):
        result = runner.invoke(main, ["membership", "--base", "2", "--n", "6", "--K", "1",
                                      "--c", "1"])
        assert result.exit_code == 2


class TestEnumerateCommand:
    def test_json(self, runner):
        doc = invoke_json(runner, ["enumerate", "--base", "2", "--K", "1", "--c", "6/5",
                                   "--N", "10"])
        assert [r["n"] for r in doc["results"]] == [4, 6, 8, 9]

    def test_csv(self, runner):
        result = runner.invoke(main, ["enumerate", "--base", "2", "--K", "1", "--c", "6/5",
                                      "--N", "10", "--format", "csv"])
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        assert lines[0] == "n"
        assert lines[1:] == ["4", "6", "8", "9"]

    def test_threads_byte_identical(self, runner):
        args = ["enumerate", "--base", "3", "--K", "2", "--c", "3/2", "--N", "50"]
        one = runner.invoke(main, args + ["--threads", "1"]).output
        eight = runner.invoke(main, args + ["--threads", "8"]).output
        assert one.replace('"threads": 1', "") == eight.replace('"threads": 8', "")


class TestSvalueCommand:
    def test_materialize(self, runner):
        doc = invoke_json(runner, ["svalue", "--base", "2", "--n", "6", "--y", "6",
                                   "--materialize"])
        row = doc["results"][0]
        assert row["factors"] == [[3, 2]]
        assert row["exact_value"] == "9"


class TestSnkCommand:
    def test_report(self, runner):
        doc = invoke_json(runner, ["snk", "--base", "2", "--n", "6", "--K", "1"])
        row = doc["results"][0]
        assert row["prime_count"] == 1
        assert row["bound"] == 8
        assert row["bound_holds"] is True
        assert row["records"] == [[3, 2, 1]]


class TestWindowCommand:
    def test_report(self, runner):
        doc = invoke_json(runner, ["window", "--base", "2", "--N", "4", "--K", "1"])
        row = doc["results"][0]
        assert row["log_Q"] == pytest.approx(1.0986122886681098)
        assert row["agreement_delta"] < 1e-12


class TestDyadicCommand:
    def test_report(self, runner):
        doc = invoke_json(runner, ["dyadic", "--base", "2", "--N", "8", "--K", "1",
                                   "--y", "1.0"])
        row = doc["results"][0]
        assert row["Q1_size"] + row["Q2_size"] == 3


class TestBoundsCommand:
    def test_example(self, runner):
        doc = invoke_json(runner, ["bounds", "--N", "1000000"])
        row = doc["results"][0]
        assert row["density_bound"] == pytest.approx(966835.0902104966, rel=1e-9)

    def test_domain_error(self, runner):
        result = runner.invoke(main, ["bounds", "--N", "2"])
        assert result.exit_code == 2

    def test_density_table(self, runner):
        doc = invoke_json(runner, ["bounds", "--N", "64", "--check-base", "2",
                                   "--K", "1", "--check-c", "6/5"])
        assert len(doc["results"]) == 1 + 6  # summary row + ceil(log2 64) windows


class TestAbcCommand:
    def test_example(self, runner):
        doc = invoke_json(runner, ["abc", "--base", "2", "--n", "6", "--K", "1",
                                   "--c", "6/5"])
        row = doc["results"][0]
        assert row["rad_ABC"] == "42"
        assert row["quality"] == pytest.approx(1.1126941404922133)


class TestFactoringFailureExit:
    def test_exit_code_3(self, runner, monkeypatch):
        from smoothlab.arith import Factorization, FactorizationError
        import smoothlab.cli as cli

        def boom(*args, **kwargs):
            raise FactorizationError("rho budget exhausted", Factorization(), 91)

        monkeypatch.setattr(cli, "abc_quality", boom)
        result = runner.invoke(main, ["abc", "--base", "2", "--n", "6", "--K", "1",
                                      "--c", "6/5"])
        assert result.exit_code == 3


class TestBinomialCommand:
    def test_single(self, runner):
        doc = invoke_json(runner, ["binomial", "--n", "5"])
        assert doc["results"][0]["member"] is True

    def test_range_csv(self, runner):
        result = runner.invoke(main, ["binomial", "--N", "3", "--format", "csv"])
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        assert lines[0].startswith("n,")
        assert len(lines) == 4


class TestOutFile:
    def test_out_path(self, runner, tmp_path):
        out = tmp_path / "result.json"
        result = runner.invoke(main, ["bounds", "--N", "100", "--out", str(out)])
        assert result.exit_code == 0
        doc = json.loads(out.read_text())
        jsonschema.validate(doc, SCHEMA)


class TestSieveEnv:
    def test_presized_sieve(self, runner):
        env = dict(os.environ, SMOOTHLAB_SIEVE_LIMIT="5000")
        result = runner.invoke(main, ["membership", "--base", "2", "--n", "6", "--K", "1",
                                      "--c", "6/5"], env=env)
        assert result.exit_code == 0
