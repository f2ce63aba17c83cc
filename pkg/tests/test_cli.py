"""Command-line surface: determinism, formats, exit codes, JSON round-trips."""

import io
import json
from fractions import Fraction

import pytest

from valgeo.cli import main
from valgeo.geometry import (
    convex_hull, polytope_from_json, polytope_to_json, standard_simplex,
)


def run_cli(args):
    out = io.StringIO()
    import valgeo.cli as cli
    parsed = cli.build_parser().parse_args(args)
    code = parsed.fn(parsed, out)
    return code, out.getvalue()


@pytest.fixture
def t3_file(tmp_path):
    path = tmp_path / "t3.json"
    path.write_text(polytope_to_json(standard_simplex(3)))
    return str(path)


def test_polytope_json_round_trip():
    P = convex_hull([(Fraction(1, 3), Fraction(-2, 7)), (1, 0), (0, 1)])
    Q = polytope_from_json(polytope_to_json(P))
    assert Q.vertices == P.vertices


def test_hull_command(t3_file):
    code, out = run_cli(["hull", "--input", t3_file])
    assert code == 0
    payload = json.loads(out)
    assert payload["dim"] == 3
    assert len(payload["vertices"]) == 4
    assert len(payload["facets"]) == 4


def test_faces_command(t3_file):
    code, out = run_cli(["faces", "--input", t3_file])
    payload = json.loads(out)
    assert payload["f_vector"] == [4, 6, 4, 1]
    assert payload["euler_alternating_sum"] == 1
    origin_vertex = next(f for f in payload["faces"]
                         if f["dim"] == 0 and f["vertices"] == [0])
    assert origin_vertex["in_minus_class"]


def test_profile_command(t3_file):
    code, out = run_cli(["profile", "--input", t3_file, "--direction", "1,0,0"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "row,a,b,value"
    assert "piece,0,1,1/2;-1;1/2" in lines


def test_moment_command_exact(t3_file):
    code, out = run_cli(["moment", "--input", t3_file,
                         "--weight", '{"kind":"power","p":0}',
                         "--grid", "axes"])
    lines = out.splitlines()
    assert lines[0] == "x1,x2,x3,value,error"
    assert all(line.endswith(",1/6,") for line in lines[1:])


def test_moment_command_float_has_error_column(t3_file):
    code, out = run_cli(["moment", "--input", t3_file,
                         "--weight", '{"kind":"exp_neg"}', "--grid", "axes"])
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert all(float(r[-1]) < 1e-8 for r in rows)


def test_moment_command_with_measure(t3_file):
    code, out = run_cli(["moment", "--input", t3_file,
                         "--measure", '{"density": {"kind":"constant","c":"1"}, "atoms": [["0","1"]]}',
                         "--grid", '{"directions": [["1","0","0"]]}'])
    line = out.splitlines()[1]
    # volume 1/6 plus the section value s(0) = 1/2 at the origin atom
    assert line == "1,0,0,2/3,"
    with pytest.raises(SystemExit):
        run_cli(["moment", "--input", t3_file, "--grid", "axes"])


def test_body_laplace_matches_product_formula(tmp_path):
    import math
    from valgeo.geometry import cube
    cube_path = tmp_path / "cube.json"
    cube_path.write_text(polytope_to_json(cube(3)))
    code, out = run_cli(["body", "laplace", "--input", str(cube_path),
                         "--grid", "axes"])
    closed_pos = (1 - math.exp(-1))           # along +e_i
    closed_neg = (math.exp(1) - 1)            # along -e_i
    for line in out.splitlines()[1:]:
        parts = line.split(",")
        expected = closed_pos if "-1" not in parts[:3] else closed_neg
        assert abs(float(parts[3]) - expected) < 1e-13


def test_body_and_eval_commands(t3_file, tmp_path):
    code, out = run_cli(["body", "--input", t3_file, "--kind", "moment",
                         "--p", "2", "--grid", "axes"])
    assert code == 0 and len(out.splitlines()) == 7
    expr = {"terms": [{"op": "measure",
                       "measure": {"density": {"kind": "constant", "c": "1"},
                                   "atoms": []}}]}
    expr_path = tmp_path / "expr.json"
    expr_path.write_text(json.dumps(expr))
    code, out = run_cli(["eval", "--input", t3_file, "--expr", str(expr_path),
                         "--grid", "axes"])
    lines = out.splitlines()
    assert all(line.endswith(",1/6") for line in lines[1:])


def test_grid_options(t3_file):
    code, out = run_cli(["moment", "--input", t3_file,
                         "--weight", '{"kind":"power","p":0}',
                         "--grid", "fib:5", "--radii", "1,2"])
    assert len(out.splitlines()) == 11
    with pytest.raises(SystemExit):
        run_cli(["moment", "--input", t3_file,
                 "--weight", '{"kind":"power","p":0}',
                 "--grid", '{"directions": [["0","0","0"]]}'])


def test_outputs_are_byte_identical(t3_file):
    args = ["check", "--suite", "euler", "--trials", "5", "--seed", "3",
            "--verbose"]
    _, run1 = run_cli(args)
    _, run2 = run_cli(args)
    assert run1 == run2


def test_check_exit_codes():
    code, out = run_cli(["check", "--suite", "euler", "--trials", "5",
                         "--seed", "3"])
    assert code == 0
    summary = json.loads(out.splitlines()[-1])
    assert summary["passed"] is True
    with pytest.raises(ValueError):
        run_cli(["check", "--suite", "nope", "--trials", "1"])


def test_check_all_smoke():
    code, out = run_cli(["check", "all", "--trials", "2", "--seed", "1"])
    assert code == 0
    summaries = [json.loads(line) for line in out.splitlines()]
    assert len(summaries) == 12
    assert all(s["passed"] for s in summaries)


def test_json_format(t3_file):
    code, out = run_cli(["moment", "--input", t3_file,
                         "--weight", '{"kind":"power","p":1}',
                         "--grid", "axes", "--format", "json"])
    payload = json.loads(out)
    assert len(payload) == 6
    assert {"x1", "x2", "x3", "value", "error"} <= set(payload[0])
