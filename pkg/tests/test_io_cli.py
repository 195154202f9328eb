import json
from fractions import Fraction

import pytest

from periodforge.graphs import Graph, GraphError, banana, wheel
from periodforge.io import parse_graph, parse_matrix, write_graph, write_matrix
from periodforge.voronoi import QuadraticForm
from periodforge.cli import evaluate_target, main
from periodforge.zeta import zeta


SUNRISE_FILE = """\
# sunrise: 2 vertices, 3 parallel edges
v 1
v 2
e 1 1 2
e 2 1 2
e 3 1 2
"""


def test_parse_graph_roundtrip():
    g = parse_graph(SUNRISE_FILE)
    assert g == banana(3)
    assert parse_graph(write_graph(g)) == g
    weighted = Graph((0, 2), ((1, 2), (2, 2)))
    assert parse_graph(write_graph(weighted)) == weighted


def test_parse_graph_errors():
    with pytest.raises(GraphError):
        parse_graph("v 1\ne 2 1 1\n")  # edge ids must start at 1
    with pytest.raises(GraphError):
        parse_graph("v 1\ne 1 1 2\n")  # undeclared vertex
    with pytest.raises(GraphError):
        parse_graph("x 1\n")
    with pytest.raises(GraphError):
        parse_graph("")


def test_parse_matrix_roundtrip():
    q = QuadraticForm([[2, 1], [1, 2]])
    assert parse_matrix(write_matrix(q)) == q
    text = "2\n2 -1\n-1 5/3\n"
    q2 = parse_matrix(text)
    assert q2.matrix[1][1] == Fraction(5, 3)


def test_evaluate_target():
    assert abs(float(evaluate_target("6*zeta(3)")) - float(6 * zeta(3))) < 1e-12
    assert abs(float(evaluate_target("441/8*zeta(7)"))
               - float(Fraction(441, 8)) * float(zeta(7))) < 1e-9
    v = evaluate_target("(360*zeta2(5,3) + 1)*2")
    assert float(v) > 2
    assert abs(float(evaluate_target("pi^2/6")) - float(zeta(2))) < 1e-12
    with pytest.raises(ValueError):
        evaluate_target("__import__('os')")
    with pytest.raises(ValueError):
        evaluate_target("zeta(3); 1")


@pytest.fixture
def files(tmp_path):
    g = tmp_path / "sunrise.g"
    g.write_text(SUNRISE_FILE)
    w3 = tmp_path / "w3.g"
    from periodforge.io import write_graph as wg

    w3.write_text(wg(wheel(3)))
    m = tmp_path / "hex.mat"
    m.write_text("2\n2 1\n1 2\n")
    return {"sunrise": str(g), "w3": str(w3), "hex": str(m)}


def test_cli_psi(files, capsys):
    assert main(["psi", files["sunrise"]]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "x1*x2 + x1*x3 + x2*x3"


def test_cli_psi_json_roundtrip(files, capsys):
    assert main(["psi", files["sunrise"], "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["psi"] == [[1, [1, 2]], [1, [1, 3]], [1, [2, 3]]]
    assert payload["manifest"]["command"] == "psi"


def test_cli_divergences(files, capsys):
    assert main(["divergences", files["sunrise"]]) == 0
    out = capsys.readouterr().out
    assert out.splitlines() == ["1 2", "1 3", "2 3"]
    assert main(["divergences", files["w3"], "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["subdivergence_free"] is True


def test_cli_residue_target_pass(files, capsys):
    code = main(["residue", files["w3"], "--samples", "150000",
                 "--seed", "1", "--target", "6*zeta(3)", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert abs(payload["z"]) <= 3
    assert payload["samples"] == 150000


def test_cli_residue_target_fail(files, capsys):
    code = main(["residue", files["w3"], "--samples", "40000",
                 "--seed", "1", "--target", "8*zeta(3)"])
    capsys.readouterr()
    assert code == 3


def test_cli_residue_divergent_graph(files, capsys):
    code = main(["residue", files["sunrise"]])
    err = capsys.readouterr().err
    assert code == 2
    assert "non-projective" in err


def test_cli_missing_file(capsys):
    assert main(["psi", "/definitely/not/here.g"]) == 2


def test_cli_manifest_reproducible(files, capsys):
    def run():
        main(["residue", files["w3"], "--samples", "30000", "--seed", "5",
              "--json"])
        payload = json.loads(capsys.readouterr().out)
        payload["manifest"].pop("wall_time_s")
        return payload

    assert run() == run()


def test_cli_gc_homology(files, capsys):
    assert main(["gc-homology", "--loops", "4", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["homology"] == {}
    assert main(["gc-homology", "--loops", "3", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["homology"] == {"0": 1}


def test_cli_stable(capsys):
    assert main(["stable", "--genus", "2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["count"] == 7


def test_cli_minvec_cell(files, capsys):
    assert main(["minvec", files["hex"]]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 6
    assert main(["cell", files["hex"], "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["generators"]) == 3


def test_cli_torelli(files, capsys):
    assert main(["torelli", files["sunrise"], "--lengths", "1,1,1",
                 "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["positive_definite"] is True


def test_cli_canonical(files, capsys):
    code = main(["canonical", files["w3"], "--form", "5", "--samples",
                 "60000", "--seed", "2", "--target", "60*zeta(3)", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert abs(payload["z"]) <= 3


def test_parse_graph_arbitrary_vertex_ids():
    text = "v 10\nv 20 1\nv 30\ne 1 10 20\ne 2 20 30\ne 3 30 10\n"
    g = parse_graph(text)
    assert g.nv == 3 and g.ne == 3
    assert g.weights == (0, 1, 0)
    assert g.edges == ((1, 2), (2, 3), (3, 1))


def test_rational_form_text_dump():
    from periodforge.forms import canonical_form_symbolic
    from periodforge.polynomials import generic_2x2

    f = canonical_form_symbolic(generic_2x2(), 3)
    text = f.to_text()
    assert "over det^2" in text
    assert text.count("dx") == 12  # four 3-component wedge keys
