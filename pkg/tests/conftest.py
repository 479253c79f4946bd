import json

import pytest

from multisym.basedalg import PolynomialAlgebra, StructureConstantAlgebra, Veronese


def sign_algebra():
    """K[x]/(x^2 - 1): the group algebra of Z/2, ungraded."""
    return StructureConstantAlgebra(["x"], {("x", "x"): {"1": 1}}, name="sign")


def truncated_cubic():
    """K[x]/(x^3) with basis x, x2."""
    table = {("x", "x"): {"x2": 1}, ("x", "x2"): {}, ("x2", "x2"): {}}
    return StructureConstantAlgebra(["x", "x2"], table, degrees={"x": 1, "x2": 2}, name="trunc3")


@pytest.fixture
def Kx():
    return PolynomialAlgebra(1)


@pytest.fixture
def Kxy():
    return PolynomialAlgebra(2)


@pytest.fixture
def Kxz():
    return PolynomialAlgebra(names=("x", "z"))


@pytest.fixture
def sign_alg():
    return sign_algebra()


@pytest.fixture
def trunc3():
    return truncated_cubic()


@pytest.fixture
def ver22():
    return Veronese(2, 2)


@pytest.fixture
def trunc3_json(tmp_path):
    path = tmp_path / "trunc3.json"
    path.write_text(json.dumps({"x,x": {"x2": "1"}, "x,x2": {}, "x2,x2": {}}))
    return path


# -- acceptance lines -------------------------------------------------------

_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Record ``criterion(k, text, ok)``; lines are printed in the terminal summary."""

    def record(k: int, text: str, ok: bool):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {text}"
        print(line)
        _CRITERIA.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
