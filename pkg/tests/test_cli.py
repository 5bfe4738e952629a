import json

from cbeta.cli import main


def write_query(tmp_path, **kw):
    q = {"n": 1, "beta": "2", "x_conj": [], "x_plain": [], "u": [], "v": []}
    q.update(kw)
    path = tmp_path / "q.json"
    path.write_text(json.dumps(q))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def jack_terms(capsys, *argv):
    code, out, _ = run(capsys, ["jack", *argv])
    assert code == 0
    return {tuple(t["part"]): t["coeff"] for t in json.loads(out)["terms"]}


def test_jack_examples(capsys):
    assert jack_terms(capsys, "--part", "1,1", "--alpha", "1/2") == {(1, 1): "1"}
    assert jack_terms(capsys, "--part", "2", "--alpha", "1") == {(2,): "1", (1, 1): "1"}
    assert jack_terms(capsys, "--part", "2", "--alpha", "1/2") == {(2,): "1", (1, 1): "4/3"}


def test_jack_bad_input(capsys):
    for argv in (["--part", "1,2", "--alpha", "1"], ["--part", "2", "--alpha", "-1"],
                 ["--part", "x", "--alpha", "1"], ["--part", "2", "--alpha", "1", "--basis", "nope"]):
        code, _, err = run(capsys, ["jack", *argv])
        assert code == 2
        assert "error" in json.loads(err)


def test_average_product(tmp_path, capsys):
    path = write_query(tmp_path, x_conj=["2"], x_plain=["1/3"])
    code, out, _ = run(capsys, ["average", "--query", path, "--routes", "prop21,quadrature"])
    rep = json.loads(out)
    assert code == 0 and rep["exit_code"] == 0
    assert [e["name"] for e in rep["routes"]] == ["prop21", "quadrature"]
    assert rep["routes"][0]["value"] == "7/6"
    assert rep["agreement"]["all_agree"]


def test_average_coe_four_routes(tmp_path, capsys):
    path = write_query(tmp_path, n=2, beta="1", x_conj=["2"], v=["1/5"])
    code, out, _ = run(capsys, ["average", "--query", path, "--routes",
                                "specialP,pfaffian,hyperdet_dual,quadrature,pfaffian"])
    rep = json.loads(out)
    assert code == 0
    assert [e["name"] for e in rep["routes"]] == ["specialP", "pfaffian", "hyperdet_dual", "quadrature"]
    exact = {e["value"] for e in rep["routes"] if e["exact"]}
    assert len(exact) == 1


def test_average_default_routes_and_csv(tmp_path, capsys):
    path = write_query(tmp_path, n=2, beta="4", x_conj=["2"], v=["1/4"])
    code, out, _ = run(capsys, ["average", "--query", path, "--csv", "--no-timings", "--quad-points", "32"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("route,status,value")
    assert {l.split(",")[0] for l in lines[1:]} == {"thm1", "thm2", "hyperdet_even", "pfaffian", "quadrature"}


def test_reports_are_reproducible(tmp_path, capsys):
    path = write_query(tmp_path, n=2, beta="2/3", x_conj=["3"], x_plain=["1/4"])
    argv = ["average", "--query", path, "--no-timings", "--quad-points", "16"]
    _, a, _ = run(capsys, argv)
    _, b, _ = run(capsys, argv)
    assert a == b


def test_input_errors(tmp_path, capsys):
    bad = write_query(tmp_path, v=["1"])
    assert run(capsys, ["average", "--query", bad])[0] == 2
    assert run(capsys, ["average", "--query", str(tmp_path / "missing.json")])[0] == 2
    ok = write_query(tmp_path, beta="1", x_conj=["2"])
    assert run(capsys, ["average", "--query", ok, "--routes", "bogus"])[0] == 2
    code, out, _ = run(capsys, ["average", "--query", ok, "--routes", "hyperdet_even,quadrature"])
    rep = json.loads(out)
    assert code == 2 and rep["routes"][0]["status"] == "input_error"


def test_not_converged_exit(tmp_path, capsys):
    path = write_query(tmp_path, n=2, beta="1", x_conj=["2"], u=["1/3"], v=["1/4"])
    code, out, _ = run(capsys, ["average", "--query", path, "--routes", "thm1,quadrature",
                                "--max-weight", "2", "--series-tol", "1e-15"])
    rep = json.loads(out)
    assert code == 4
    assert rep["routes"][0]["status"] == "not_converged"
    assert rep["agreement"]["verdicts"]["thm1"]["agree"] is None


def test_disagreement_exit(tmp_path, capsys):
    path = write_query(tmp_path, n=2, beta="1", x_conj=["2"], v=["9/10"])
    code, out, _ = run(capsys, ["average", "--query", path, "--routes", "thm1,quadrature",
                                "--quad-points", "4", "--tol", "1e-12"])
    assert code == 3
    assert not json.loads(out)["agreement"]["all_agree"]


def test_budget_failure(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CBETA_WORK_BUDGET", "1")
    path = write_query(tmp_path, n=3, beta="4", x_conj=["2"])
    code, out, _ = run(capsys, ["average", "--query", path, "--routes", "thm1,hyperdet_even"])
    rep = json.loads(out)
    assert code == 3
    assert rep["config"]["work_budget"] == 1
    assert rep["routes"][1]["status"] == "failed"


def test_verify(capsys):
    code, out, _ = run(capsys, ["verify", "dualities"])
    assert code == 0
    assert "PASS" in out.splitlines()[0]
    code, out, _ = run(capsys, ["verify", "superjack", "--json"])
    rep = json.loads(out)
    assert code == 0 and rep["failed"] == 0
    assert run(capsys, ["verify", "nope"])[0] == 2


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["--version"]) == 0
    assert "cbeta" in capsys.readouterr().out
