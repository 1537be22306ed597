import numpy as np
import pytest
import scipy.optimize
from hypothesis import given, settings, strategies as st

from stablenash.errors import ValidationError
from stablenash.lp import (
    FEASIBLE,
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    LinearProgram,
    solve_lp,
)


def test_simple_maximum():
    lp = LinearProgram(1)
    lp.add_constraint([1.0], "<=", 3.0)
    lp.set_objective([1.0])
    out = solve_lp(lp)
    assert out.status == OPTIMAL
    assert out.objective_value == pytest.approx(3.0, abs=1e-8)
    assert out.solution[0] == pytest.approx(3.0, abs=1e-8)


def test_simple_infeasible():
    lp = LinearProgram(1)  # x >= 0 by default
    lp.add_constraint([1.0], "<=", -1.0)
    out = solve_lp(lp)
    assert out.status == INFEASIBLE


def test_unbounded():
    lp = LinearProgram(1)
    lp.set_objective([1.0])
    out = solve_lp(lp)
    assert out.status == UNBOUNDED


def test_feasibility_only_status():
    lp = LinearProgram(2)
    lp.add_constraint([1.0, 1.0], "=", 1.0)
    out = solve_lp(lp)
    assert out.status == FEASIBLE
    assert out.solution.sum() == pytest.approx(1.0, abs=1e-8)


def test_equality_and_free_variable():
    # maximize x - y with x + y = 1, y free but pinned by x <= 0.25
    lp = LinearProgram(2, lower=np.array([0.0, -np.inf]))
    lp.add_constraint([1.0, 1.0], "=", 1.0)
    lp.add_constraint([1.0, 0.0], "<=", 0.25)
    lp.set_objective([1.0, -1.0])
    out = solve_lp(lp)
    assert out.status == OPTIMAL
    assert out.solution == pytest.approx([0.25, 0.75], abs=1e-8)


def test_upper_bounds():
    lp = LinearProgram(2, upper=np.array([0.4, np.inf]))
    lp.add_constraint([1.0, 1.0], "<=", 1.0)
    lp.set_objective([3.0, 1.0])
    out = solve_lp(lp)
    assert out.objective_value == pytest.approx(3 * 0.4 + 0.6, abs=1e-8)


def test_minimize_direction():
    lp = LinearProgram(1, upper=np.array([5.0]))
    lp.add_constraint([1.0], ">=", 2.0)
    lp.set_objective([1.0], maximize=False)
    out = solve_lp(lp)
    assert out.status == OPTIMAL
    assert out.objective_value == pytest.approx(2.0, abs=1e-8)


def test_degenerate_cycling_instance_terminates():
    # Beale's example: Dantzig's rule cycles here, Bland's rule must not.
    lp = LinearProgram(4)
    lp.add_constraint([0.25, -60.0, -1.0 / 25.0, 9.0], "<=", 0.0)
    lp.add_constraint([0.5, -90.0, -1.0 / 50.0, 3.0], "<=", 0.0)
    lp.add_constraint([0.0, 0.0, 1.0, 0.0], "<=", 1.0)
    lp.set_objective([0.75, -150.0, 1.0 / 50.0, -6.0])
    out = solve_lp(lp)
    assert out.status == OPTIMAL
    assert out.objective_value == pytest.approx(0.05, abs=1e-8)


def test_validation_errors():
    lp = LinearProgram(2)
    with pytest.raises(ValidationError):
        lp.add_constraint([1.0], "<=", 1.0)
    with pytest.raises(ValidationError):
        lp.add_constraint([1.0, np.inf], "<=", 1.0)
    with pytest.raises(ValidationError):
        lp.add_constraint([1.0, 1.0], "~", 1.0)


def test_gap_game_full_support_tie_infeasible():
    # rows of the 0.1-gap game differ by 0.1 for every q, so requiring both
    # rows within 0.05 of each other has no solution; scan confirms.
    R = np.array([[1.0, 1.0], [0.9, 0.9]])
    for q0 in np.linspace(0, 1, 101):
        q = np.array([q0, 1 - q0])
        gap = (R[0] - R[1]) @ q
        assert gap > 0.05
    lp = LinearProgram(2)
    lp.add_constraint([1.0, 1.0], "=", 1.0)
    lp.add_constraint(R[0] - R[1], ">=", -0.05)  # row 1 within eps of row 0
    lp.add_constraint(R[1] - R[0], ">=", -0.05)  # row 0 within eps of row 1
    out = solve_lp(lp)
    assert out.status == INFEASIBLE


def _random_bounded_lp(seed):
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(2, 6)), int(rng.integers(2, 6))
    A = rng.uniform(0.2, 1.5, size=(m, n))
    b = rng.uniform(0.5, 2.0, size=m)
    c = rng.uniform(0.1, 1.0, size=n)
    return A, b, c


@settings(max_examples=40, derandomize=True)
@given(st.integers(0, 10_000))
def test_weak_duality_on_random_instances(seed):
    A, b, c = _random_bounded_lp(seed)
    primal = LinearProgram(A.shape[1])
    for row, rhs in zip(A, b):
        primal.add_constraint(row, "<=", rhs)
    primal.set_objective(c)
    dual = LinearProgram(A.shape[0])
    for col, rhs in zip(A.T, c):
        dual.add_constraint(col, ">=", rhs)
    dual.set_objective(b, maximize=False)
    p_out = solve_lp(primal)
    d_out = solve_lp(dual)
    assert p_out.status == OPTIMAL and d_out.status == OPTIMAL
    assert p_out.objective_value == pytest.approx(d_out.objective_value, abs=1e-7)


@settings(max_examples=40, derandomize=True)
@given(st.integers(0, 10_000))
def test_permutation_invariance(seed):
    A, b, c = _random_bounded_lp(seed)
    rng = np.random.default_rng(seed + 1)
    rows = rng.permutation(A.shape[0])
    cols = rng.permutation(A.shape[1])
    base = LinearProgram(A.shape[1])
    for row, rhs in zip(A, b):
        base.add_constraint(row, "<=", rhs)
    base.set_objective(c)
    permuted = LinearProgram(A.shape[1])
    for row, rhs in zip(A[rows][:, cols], b[rows]):
        permuted.add_constraint(row, "<=", rhs)
    permuted.set_objective(c[cols])
    out_a = solve_lp(base)
    out_b = solve_lp(permuted)
    assert out_a.objective_value == pytest.approx(out_b.objective_value, abs=1e-7)


@settings(max_examples=40, derandomize=True)
@given(st.integers(0, 10_000))
def test_against_scipy_linprog(seed):
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(2, 6)), int(rng.integers(2, 6))
    A = rng.uniform(-1.0, 1.0, size=(m, n))
    b = rng.uniform(-0.3, 1.0, size=m)
    c = rng.uniform(-1.0, 1.0, size=n)
    lp = LinearProgram(n, upper=np.full(n, 3.0))  # boundedness for comparison
    for row, rhs in zip(A, b):
        lp.add_constraint(row, "<=", rhs)
    lp.set_objective(c)
    mine = solve_lp(lp)
    ref = scipy.optimize.linprog(
        -c, A_ub=A, b_ub=b, bounds=[(0.0, 3.0)] * n, method="highs"
    )
    if ref.status == 2:
        assert mine.status == INFEASIBLE
    else:
        assert ref.status == 0
        assert mine.status == OPTIMAL
        assert mine.objective_value == pytest.approx(-ref.fun, abs=1e-6)
