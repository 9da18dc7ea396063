import json

import pytest

from whitefact.cli import main
from whitefact import jsonio
from whitefact.autos import factorize, identity_auto, tuple_auto
from whitefact.words import word


K3_SYSTEM = {
    "factors": [
        {"kind": "cyclic", "order": 2},
        {"kind": "cyclic", "order": 2},
        {"kind": "cyclic", "order": 2},
    ]
}


@pytest.fixture()
def system_file(tmp_path):
    path = tmp_path / "k3.json"
    path.write_text(json.dumps(K3_SYSTEM))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestNormalize:
    def test_reduces(self, capsys, system_file):
        code, out, _ = run(
            capsys, "--system", system_file, "normalize", "[[1,1],[1,1],[2,1]]"
        )
        assert code == 0
        assert json.loads(out) == [[2, 1]]

    def test_parse_error_is_exit_2(self, capsys, system_file):
        code, _, err = run(capsys, "--system", system_file, "normalize", "{oops")
        assert code == 2
        assert "error" in err

    def test_missing_system_is_exit_2(self, capsys):
        code, _, err = run(capsys, "normalize", "[[1,1]]")
        assert code == 2
        assert "--system" in err


class TestDistanceAndGeodesic:
    def test_distance(self, capsys, system_file):
        code, out, _ = run(
            capsys, "--system", system_file, "distance", "U:[]", "U:[[1,1],[2,1]]"
        )
        assert code == 0 and out.strip() == "4"

    def test_geodesic(self, capsys, system_file):
        code, out, _ = run(
            capsys, "--system", system_file, "geodesic", "U:[]", "C3:[[2,1],[1,1]]"
        )
        assert code == 0
        names = json.loads(out)
        assert names[0] == "U:[]" and names[-1] == "C3:[[2,1],[1,1]]"
        assert len(names) == 6


class TestVolumeAndReduce:
    def test_volume_example(self, capsys, system_file):
        label = '{"alpha":[[],[],[[2,1],[1,1]]]}'
        code, out, _ = run(capsys, "--system", system_file, "volume", label)
        assert code == 0 and out.strip() == "7"

    def test_reduce_trace(self, capsys, system_file):
        label = '{"alpha":[[],[],[[2,1],[1,1]]]}'
        code, out, _ = run(capsys, "--system", system_file, "reduce", label)
        assert code == 0
        payload = json.loads(out)
        assert payload["final"] == [[], [], []]
        assert [m["vol_before"] for m in payload["moves"]] == [7, 5]
        assert payload["moves"][0]["a"] == [1, 1]

    def test_nonsplitting_is_exit_1(self, capsys, system_file):
        label = '{"alpha":[[],[],[[2,1],[3,1]]]}'
        code, _, err = run(capsys, "--system", system_file, "reduce", label)
        assert code == 1
        assert "non-splitting" in err


class TestFactorizeAndVerify:
    def test_factorize_identity(self, capsys, system_file, tmp_path):
        system = jsonio.system_from_json(K3_SYSTEM)
        auto_path = tmp_path / "identity.json"
        auto_path.write_text(json.dumps(jsonio.auto_to_json(identity_auto(system))))
        code, out, _ = run(capsys, "--system", system_file, "factorize", str(auto_path))
        assert code == 0
        payload = json.loads(out)
        assert payload["whitehead"] == [] and payload["inner"] == []

    def test_verify_roundtrip(self, capsys, system_file, tmp_path):
        system = jsonio.system_from_json(K3_SYSTEM)
        psi = tuple_auto(
            system,
            [
                word(system, []),
                word(system, []),
                word(system, [(2, 1), (1, 1)]),
            ],
        )
        auto_path = tmp_path / "psi.json"
        auto_path.write_text(json.dumps(jsonio.auto_to_json(psi)))
        fact_path = tmp_path / "fact.json"
        fact_path.write_text(
            json.dumps(jsonio.factorization_to_json(system, factorize(psi)))
        )
        code, out, _ = run(
            capsys, "--system", system_file, "verify", str(auto_path), str(fact_path)
        )
        assert code == 0 and out.strip() == "OK"

    def test_verify_failure_is_exit_1(self, capsys, system_file, tmp_path):
        system = jsonio.system_from_json(K3_SYSTEM)
        psi = tuple_auto(
            system,
            [word(system, []), word(system, []), word(system, [(2, 1), (1, 1)])],
        )
        auto_path = tmp_path / "psi.json"
        auto_path.write_text(json.dumps(jsonio.auto_to_json(psi)))
        fact = factorize(psi)
        payload = jsonio.factorization_to_json(system, fact)
        payload["whitehead"] = payload["whitehead"][1:]
        fact_path = tmp_path / "fact.json"
        fact_path.write_text(json.dumps(payload))
        code, out, _ = run(
            capsys, "--system", system_file, "verify", str(auto_path), str(fact_path)
        )
        assert code == 1 and out.strip() == "FAIL"


class TestExplore:
    def test_json_output(self, capsys, system_file):
        code, out, _ = run(
            capsys, "--system", system_file, "explore", "--max-volume", "5"
        )
        assert code == 0
        payload = json.loads(out)
        assert len(payload["alpha_classes"]) == 4

    def test_dot_output(self, capsys, system_file):
        code, out, _ = run(
            capsys,
            "--system",
            system_file,
            "--format",
            "dot",
            "explore",
            "--max-volume",
            "3",
        )
        assert code == 0
        assert out.startswith("graph complex {")

    def test_byte_identical_across_runs(self, capsys, system_file):
        _, first, _ = run(
            capsys, "--system", system_file, "explore", "--max-volume", "7"
        )
        _, second, _ = run(
            capsys, "--system", system_file, "explore", "--max-volume", "7"
        )
        assert first == second


class TestEnvironment:
    def test_threads_env_validated(self, capsys, system_file, monkeypatch):
        monkeypatch.setenv("WHITEFACT_THREADS", "banana")
        code, _, err = run(capsys, "--system", system_file, "normalize", "[]")
        assert code == 2
        assert "WHITEFACT_THREADS" in err

    def test_threads_env_accepted(self, capsys, system_file, monkeypatch):
        monkeypatch.setenv("WHITEFACT_THREADS", "4")
        code, _, _ = run(capsys, "--system", system_file, "normalize", "[]")
        assert code == 0
