import json
from dataclasses import replace

import pytest

from paravec import parse_problem, parse_solution, serialize_solution
from paravec.cli import ExitCode, main
from paravec.exceptions import NumericalBreakdown
from paravec.test_helper import example_document

INFEASIBLE = {
    "num_vars": 2,
    "num_constraints": 1,
    "num_objectives": 2,
    "objective": [[1, 0], [0, 1]],
    "A": [[1, 1]],
    "b": [-1],
}


@pytest.fixture
def problem_file(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.json"
        path.write_text(example_document(name), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def output(tmp_path):
    return tmp_path / "solution.json"


def solve_args(problem_file, output, name="three_objectives"):
    return ["solve", "--input", problem_file(name), "--output", str(output)]


def test_solve(problem_file, output, capsys):
    assert main(solve_args(problem_file, output)) == ExitCode.OK

    sol = parse_solution(output.read_text(encoding="utf-8"))
    assert sol.points.shape == (4, 3)
    assert capsys.readouterr().out.startswith("solved: 4 points, 1 directions")


def test_solve_then_verify(problem_file, output, capsys):
    main(solve_args(problem_file, output))
    exit_code = main(["verify", "--input", problem_file("three_objectives"), "--solution", str(output), "--grid", "10"])

    assert exit_code == ExitCode.OK
    assert "0 mismatches" in capsys.readouterr().out


def test_verify_reports_mismatches(problem_file, output, capsys):
    main(solve_args(problem_file, output))
    tampered = parse_solution(output.read_text(encoding="utf-8")).with_points([1, 2, 3])
    output.write_text(serialize_solution(tampered), encoding="utf-8")

    exit_code = main(["verify", "--input", problem_file("three_objectives"), "--solution", str(output), "--grid", "10"])

    assert exit_code == ExitCode.INFEASIBLE
    assert "expected optimal" in capsys.readouterr().out


def test_verify_reports_uncovered_parameters(problem_file, output, capsys):
    main(solve_args(problem_file, output))
    sol = parse_solution(output.read_text(encoding="utf-8"))
    tampered = replace(sol, cells=tuple(cell for cell in sol.cells if cell.basis != (0, 4)))
    output.write_text(serialize_solution(tampered), encoding="utf-8")

    exit_code = main(["verify", "--input", problem_file("three_objectives"), "--solution", str(output), "--grid", "10"])

    assert exit_code == ExitCode.INFEASIBLE
    assert "expected a cell or an unbounded cut, got neither" in capsys.readouterr().out


def test_no_solution(problem_file, output):
    assert main(solve_args(problem_file, output, "no_solution")) == ExitCode.NO_SOLUTION
    assert json.loads(output.read_text(encoding="utf-8"))["status"] == "no_solution"


def test_infeasible(tmp_path, output):
    path = tmp_path / "infeasible.json"
    path.write_text(json.dumps(INFEASIBLE), encoding="utf-8")

    assert main(["solve", "--input", str(path), "--output", str(output)]) == ExitCode.INFEASIBLE


def test_init_weight(problem_file, output):
    assert main(solve_args(problem_file, output) + ["--init", "weight", "1,0,0"]) == ExitCode.OK

    sol = parse_solution(output.read_text(encoding="utf-8"))
    assert sol.point_bases[0] == (0, 4)
    assert sol.statistics.init_method == "weight"


def test_init_perturb_with_options(problem_file, output):
    args = ["--init", "perturb", "--dedupe-images", "--filter-generators", "--tol", "1e-8"]
    assert main(solve_args(problem_file, output) + args) == ExitCode.OK
    assert parse_solution(output.read_text(encoding="utf-8")).statistics.init_method == "perturb"


@pytest.mark.parametrize(
    "init",
    [["simplex"], ["weight"], ["weight", "a,b,c"], ["p0", "1"]],
    ids=["unknown", "weight without value", "invalid weight", "value for p0"],
)
def test_invalid_init(problem_file, output, init, capsys):
    assert main(solve_args(problem_file, output) + ["--init", *init]) == ExitCode.USAGE
    assert capsys.readouterr().err.startswith("error:")


def test_partition_files(problem_file, output, tmp_path):
    csv_file, svg_file = tmp_path / "cells.csv", tmp_path / "cells.svg"
    args = ["--partition-csv", str(csv_file), "--partition-svg", str(svg_file)]

    assert main(solve_args(problem_file, output) + args) == ExitCode.OK
    assert csv_file.read_text(encoding="utf-8").startswith("cell,basis,vertices")
    assert svg_file.read_text(encoding="utf-8").startswith("<svg")


def test_missing_input(tmp_path, output, capsys):
    assert main(["solve", "--input", str(tmp_path / "missing.json"), "--output", str(output)]) == ExitCode.USAGE
    assert "Cannot read" in capsys.readouterr().err


def test_invalid_document(tmp_path, output):
    path = tmp_path / "problem.json"
    path.write_text('{"num_vars": 1}', encoding="utf-8")
    assert main(["solve", "--input", str(path), "--output", str(output)]) == ExitCode.USAGE


@pytest.mark.parametrize("argv", [[], ["solve"], ["unknown"]], ids=["no command", "no input", "unknown command"])
def test_usage_errors(argv):
    assert main(argv) == ExitCode.USAGE


def test_help():
    assert main(["--help"]) == ExitCode.OK


def test_numerical_failure(problem_file, output, mocker, capsys):
    mocker.patch("paravec.cli.solve", side_effect=NumericalBreakdown("Residual too large"))

    assert main(solve_args(problem_file, output)) == ExitCode.NUMERICAL
    assert "Residual too large" in capsys.readouterr().err


def test_config_file(problem_file, output, tmp_path):
    config = tmp_path / "paravec.yml"
    config.write_text("engine:\n  max_dictionaries: 1\n", encoding="utf-8")

    assert main(solve_args(problem_file, output) + ["--config", str(config)]) == ExitCode.NUMERICAL


def test_missing_config_file(problem_file, output, tmp_path):
    args = solve_args(problem_file, output) + ["--config", str(tmp_path / "missing.yml")]
    assert main(args) == ExitCode.USAGE


def test_gen_to_stdout(capsys):
    assert main(["gen", "--kind", "nondegenerate", "--q", "2", "--n", "3", "--m", "4", "--seed", "1"]) == ExitCode.OK

    p = parse_problem(capsys.readouterr().out)
    assert (p.q, p.n, p.m) == (2, 3, 4)


def test_gen_to_file(tmp_path):
    path = tmp_path / "problem.json"
    args = ["gen", "--kind", "degenerate", "--q", "4", "--n", "6", "--m", "4", "--seed", "3", "--output", str(path)]

    assert main(args) == ExitCode.OK
    assert parse_problem(path.read_text(encoding="utf-8")).q == 4


def test_gen_invalid_sizes():
    assert main(["gen", "--kind", "degenerate", "--q", "1", "--n", "3", "--m", "2", "--seed", "0"]) == ExitCode.USAGE
