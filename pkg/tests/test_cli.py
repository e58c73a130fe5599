"""Command-line behavior: subcommands, exit codes, output stability."""
from __future__ import annotations

import json

import pytest

from screenoff.cli import main


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture(scope="module")
def model_dir(tmp_path_factory):
    """Corpus models emitted to files once for the whole module."""
    root = tmp_path_factory.mktemp("models")
    import io
    from contextlib import redirect_stdout

    for name in (
        "illusionist_coins",
        "wizard_simpson",
        "pr_box",
        "bernstein_xor",
        "entangled_rank1",
        "product_quantal",
    ):
        buf = io.StringIO()
        with redirect_stdout(buf):
            assert main(["corpus", "emit", name]) == 0
        (root / f"{name}.json").write_text(buf.getvalue())
    return root


# -- validate ---------------------------------------------------------------


class TestValidate:
    def test_stochastic(self, capsys, model_dir):
        code, out, _ = run(capsys, "validate", str(model_dir / "illusionist_coins.json"))
        assert code == 0
        assert "valid stochastic model: 3 sites, 8 histories" in out

    def test_quantal(self, capsys, model_dir):
        code, out, _ = run(capsys, "validate", str(model_dir / "entangled_rank1.json"))
        assert code == 0
        assert "valid quantal model" in out
        assert "quantal-axioms: holds" in out

    def test_json_shape(self, capsys, model_dir):
        code, out, _ = run(
            capsys,
            "validate",
            str(model_dir / "illusionist_coins.json"),
            "--format",
            "json",
        )
        assert code == 0
        data = json.loads(out)
        assert data["model"] == {"kind": "stochastic", "sites": 3, "histories": 8}
        assert isinstance(data["runtime_ms"], int)

    def test_invalid_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 2
        assert "model file error" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "validate", str(tmp_path / "none.json"))
        assert code == 2
        assert "model file error" in err


# -- check ------------------------------------------------------------------


class TestCheck:
    def test_holds_exits_zero(self, capsys, model_dir):
        code, out, _ = run(
            capsys, "check", "so1", str(model_dir / "illusionist_coins.json")
        )
        assert code == 0
        assert out.startswith("so1: holds")

    def test_violated_exits_one(self, capsys, model_dir):
        code, out, _ = run(
            capsys, "check", "so1", str(model_dir / "wizard_simpson.json")
        )
        assert code == 1
        assert "so1: violated" in out
        assert "sel=0" in out

    def test_vacuous_exits_zero(self, capsys, model_dir):
        # anticorrelated events are not positively correlated
        code, out, _ = run(
            capsys,
            "check",
            "pcc-original",
            str(model_dir / "illusionist_coins.json"),
            "--a",
            "A",
            "--b",
            "B",
        )
        assert code == 0
        assert "pcc-original: vacuous" in out

    def test_named_and_literal_events_mix(self, capsys, model_dir):
        code, out, _ = run(
            capsys,
            "check",
            "pcc-rev1",
            str(model_dir / "illusionist_coins.json"),
            "--a",
            "A",
            "--b",
            "b_s=0",
        )
        assert code == 0
        assert "pcc-rev1: holds" in out

    def test_pair_condition_needs_events(self, capsys, model_dir):
        code, _, err = run(
            capsys, "check", "pcc-rev2", str(model_dir / "illusionist_coins.json")
        )
        assert code == 2
        assert "--a and --b" in err

    def test_non_pair_condition_rejects_events(self, capsys, model_dir):
        code, _, err = run(
            capsys,
            "check",
            "so1",
            str(model_dir / "illusionist_coins.json"),
            "--a",
            "zzz=0",
            "--b",
            "B",
        )
        assert code == 2
        assert "does not take --a/--b" in err

    def test_unknown_named_event(self, capsys, model_dir):
        code, _, err = run(
            capsys,
            "check",
            "pcc-rev1",
            str(model_dir / "illusionist_coins.json"),
            "--a",
            "NOPE",
            "--b",
            "B",
        )
        assert code == 2
        assert "not a named event" in err
        assert "A, B, C" in err

    def test_bad_expression(self, capsys, model_dir):
        code, _, err = run(
            capsys,
            "check",
            "pcc-rev1",
            str(model_dir / "illusionist_coins.json"),
            "--a",
            "a_s=9",
            "--b",
            "B",
        )
        assert code == 2

    def test_multi_so(self, capsys, model_dir):
        code, out, _ = run(
            capsys,
            "check",
            "multi-so",
            str(model_dir / "bernstein_xor.json"),
            "--n",
            "3",
        )
        assert code == 1
        assert "multi-so[n=3]: violated" in out

    def test_multi_so_bad_arity(self, capsys, model_dir):
        code, _, err = run(
            capsys,
            "check",
            "multi-so",
            str(model_dir / "bernstein_xor.json"),
            "--n",
            "1",
        )
        assert code == 2
        assert "n >= 2" in err

    def test_gen_so_selector(self, capsys, model_dir):
        code, out, _ = run(
            capsys,
            "check",
            "gen-so",
            str(model_dir / "pr_box.json"),
            "--selector",
            "joint",
        )
        assert code == 1
        assert "gen-so[joint]: violated" in out

    def test_quantal_conditions(self, capsys, model_dir):
        code, out, _ = run(
            capsys, "check", "qso1", str(model_dir / "entangled_rank1.json")
        )
        assert code == 1
        code, out, _ = run(
            capsys, "check", "qso2", str(model_dir / "product_quantal.json")
        )
        assert code == 0

    def test_kind_mismatch(self, capsys, model_dir):
        code, _, err = run(
            capsys, "check", "qso1", str(model_dir / "illusionist_coins.json")
        )
        assert code == 2
        assert "needs a quantal model" in err
        code, _, err = run(
            capsys, "check", "so1", str(model_dir / "entangled_rank1.json")
        )
        assert code == 2
        assert "needs a stochastic model" in err

    def test_rev2_partition_cap(self, capsys, model_dir):
        code, out, _ = run(
            capsys,
            "check",
            "pcc-rev2",
            str(model_dir / "illusionist_coins.json"),
            "--a",
            "A",
            "--b",
            "B",
            "--max-partition",
            "1",
        )
        assert code == 1
        assert "pcc-rev2: violated" in out

    def test_json_stability_modulo_runtime(self, capsys, model_dir):
        path = str(model_dir / "wizard_simpson.json")
        _, out1, _ = run(capsys, "check", "so1", path, "--format", "json")
        _, out2, _ = run(capsys, "--format", "json", "check", "so1", path)
        d1, d2 = json.loads(out1), json.loads(out2)
        d1.pop("runtime_ms")
        d2.pop("runtime_ms")
        assert d1 == d2
        assert d1["verdict"] == "violated"
        assert d1["counterexample"]["events"]["C"]["expr"] == "sel=0"


# -- find -------------------------------------------------------------------


class TestFind:
    def test_screening_counts(self, capsys, model_dir):
        code, out, _ = run(
            capsys,
            "find",
            "screening",
            str(model_dir / "illusionist_coins.json"),
            "--a",
            "A",
            "--b",
            "B",
            "--format",
            "json",
        )
        assert code == 0
        data = json.loads(out)
        assert data["op"] == "find-screening"
        assert data["count"] == 128
        assert data["events"][0]["mask"] == "0x2"

    def test_simpson_includes_the_selector(self, capsys, model_dir):
        code, out, _ = run(
            capsys,
            "find",
            "simpson",
            str(model_dir / "wizard_simpson.json"),
            "--a",
            "A",
            "--b",
            "B",
        )
        assert code == 0
        assert "0xf\n" in out

    def test_precondition_failure_is_an_input_error(self, capsys, model_dir):
        # screening events are sought for correlated pairs; the wizard pair
        # is marginally independent
        code, _, err = run(
            capsys,
            "find",
            "screening",
            str(model_dir / "wizard_simpson.json"),
            "--a",
            "A",
            "--b",
            "B",
        )
        assert code == 2
        assert "precondition error" in err

    def test_find_needs_stochastic(self, capsys, model_dir):
        code, _, err = run(
            capsys,
            "find",
            "screening",
            str(model_dir / "entangled_rank1.json"),
            "--a",
            "s1=0",
            "--b",
            "s2=0",
        )
        assert code == 2
        assert "stochastic" in err


# -- fuzz -------------------------------------------------------------------


class TestFuzz:
    def test_agreement_run(self, capsys):
        code, out, _ = run(
            capsys, "fuzz", "--pair", "so1-so2", "--seed", "7", "--count", "50"
        )
        assert code == 0
        assert "50/50 agree" in out

    def test_json_jobs_stability(self, capsys):
        args = ["fuzz", "--pair", "so1-so2", "--seed", "3", "--count", "30",
                "--format", "json"]
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args, "--jobs", "2")
        d1, d2 = json.loads(out1), json.loads(out2)
        d1.pop("runtime_ms")
        d2.pop("runtime_ms")
        assert d1 == d2
        assert d1["stats"]["agreements"] == 30

    def test_bad_pair_is_usage_error(self, capsys):
        code, _, err = run(
            capsys, "fuzz", "--pair", "so1-so9", "--seed", "1", "--count", "1"
        )
        assert code == 2


# -- corpus -----------------------------------------------------------------


class TestCorpus:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "corpus", "list")
        assert code == 0
        assert "wizard_simpson (stochastic): " in out
        assert "entangled_rank1 (quantal): " in out
        assert len(out.strip().splitlines()) == 16

    def test_list_json(self, capsys):
        code, out, _ = run(capsys, "corpus", "list", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert len(data["entries"]) == 16
        byname = {e["name"]: e for e in data["entries"]}
        assert byname["pr_box"]["expected"]["so1"] == "violated"

    def test_emit_parses_back(self, capsys, tmp_path):
        code, out, _ = run(capsys, "corpus", "emit", "three_pair_coins")
        assert code == 0
        from screenoff.modelfile import parse_model_text

        loaded = parse_model_text(out)
        assert loaded.named_events["A"] == "a=0"

    def test_emit_unknown(self, capsys):
        code, _, err = run(capsys, "corpus", "emit", "nope")
        assert code == 2
        assert "unknown model" in err

    def test_emit_without_name(self, capsys):
        code, _, err = run(capsys, "corpus", "emit")
        assert code == 2

    def test_verify(self, capsys):
        code, out, _ = run(capsys, "corpus", "verify")
        assert code == 0
        assert "corpus-verify: holds" in out


# -- argument handling ------------------------------------------------------


class TestUsage:
    def test_no_arguments(self, capsys):
        assert main([]) == 2

    def test_unknown_condition(self, capsys):
        assert main(["check", "so9", "x.json"]) == 2

    def test_unknown_flag(self, capsys):
        assert main(["corpus", "list", "--frobnicate"]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        out = capsys.readouterr().out
        assert "validate" in out and "fuzz" in out
