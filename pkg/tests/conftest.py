import pytest

from zombieodds.solver import SolverMode, TurnSolver


@pytest.fixture(scope="session")
def solver() -> TurnSolver:
    """One shared solver; the graph and its solves are cached per process."""
    return TurnSolver()


@pytest.fixture(scope="session")
def table(solver):
    return solver.generate_table(SolverMode.RECURSIVE)
