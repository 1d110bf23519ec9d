"""Golden problems and random instances for tests"""

import json
from functools import cache
from importlib import resources
from typing import Any

from paravec.model import Problem
from paravec.serialization import parse_problem

from paravec.test_helper.generators import degenerate_problem, nondegenerate_problem

EXAMPLES_FILE = "examples.json"


@cache
def _examples() -> dict[str, Any]:
    return json.loads(resources.files(__package__).joinpath(EXAMPLES_FILE).read_text(encoding="utf-8"))


def example_names() -> list[str]:
    return sorted(_examples())


def example_document(name: str) -> str:
    """The problem document of a golden example, as written on disk by ``paravec gen``"""
    return json.dumps(_examples()[name], indent=2)


def load_example(name: str) -> Problem:
    """
    Load a golden example.

    :param name: One of ``three_objectives``, ``two_objectives``, ``bounded``, ``negative_rhs`` or ``no_solution``
    :return: The parsed problem
    """
    return parse_problem(example_document(name))


__all__ = ["degenerate_problem", "example_document", "example_names", "load_example", "nondegenerate_problem"]
