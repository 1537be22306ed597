"""Solver-neutral linear programs and a dense two-phase simplex.

The solver is a primal tableau simplex with Bland's rule throughout, which
guarantees termination on the degenerate desk-scale problems this library
generates; robustness is preferred over speed here. Equality constraints are
reduced to two inequalities, free variables are split into differences of
non-negative variables, and finite lower bounds are shifted out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import SolverError, ValidationError

OPTIMAL = "optimal"
FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

LESS_EQUAL = "<="
EQUAL = "="
GREATER_EQUAL = ">="
_RELATIONS = (LESS_EQUAL, EQUAL, GREATER_EQUAL)


@dataclass
class LinearProgram:
    """Objective plus linear constraints over bounded variables.

    Constraints are triples ``(coefficients, relation, rhs)`` with relation
    one of ``<=``, ``=``, ``>=``. Default variable bounds are ``[0, +inf)``;
    a lower bound of ``-inf`` makes the variable free. ``objective=None``
    requests a pure feasibility solve.
    """

    num_vars: int
    objective: Optional[np.ndarray] = None
    maximize: bool = True
    constraints: list[tuple[np.ndarray, str, float]] = field(default_factory=list)
    lower: Optional[np.ndarray] = None
    upper: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValidationError("linear program needs at least one variable")
        if self.lower is None:
            self.lower = np.zeros(self.num_vars)
        else:
            self.lower = np.asarray(self.lower, dtype=float).reshape(-1)
        if self.upper is None:
            self.upper = np.full(self.num_vars, np.inf)
        else:
            self.upper = np.asarray(self.upper, dtype=float).reshape(-1)
        if self.lower.size != self.num_vars or self.upper.size != self.num_vars:
            raise ValidationError("bound vectors do not match num_vars")

    def add_constraint(self, coeffs, relation: str, rhs: float) -> None:
        c = np.asarray(coeffs, dtype=float).reshape(-1)
        if c.size != self.num_vars:
            raise ValidationError(
                f"constraint has {c.size} coefficients, expected {self.num_vars}"
            )
        if relation not in _RELATIONS:
            raise ValidationError(f"unknown relation {relation!r}")
        if not (np.isfinite(c).all() and np.isfinite(rhs)):
            raise ValidationError("constraint contains non-finite entries")
        self.constraints.append((c, relation, float(rhs)))

    def set_objective(self, coeffs, maximize: bool = True) -> None:
        c = np.asarray(coeffs, dtype=float).reshape(-1)
        if c.size != self.num_vars:
            raise ValidationError("objective length does not match num_vars")
        self.objective = c
        self.maximize = maximize


@dataclass(frozen=True)
class LpOutcome:
    """Solve result; ``solution`` is in the original variable space."""

    status: str
    solution: Optional[np.ndarray] = None
    objective_value: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.status in (OPTIMAL, FEASIBLE)


def _validate(lp: LinearProgram) -> None:
    if lp.objective is not None:
        obj = np.asarray(lp.objective, dtype=float).reshape(-1)
        if obj.size != lp.num_vars:
            raise ValidationError("objective length does not match num_vars")
        if not np.isfinite(obj).all():
            raise ValidationError("objective contains non-finite entries")
    for c, rel, rhs in lp.constraints:
        if c.size != lp.num_vars:
            raise ValidationError("constraint length does not match num_vars")
        if rel not in _RELATIONS:
            raise ValidationError(f"unknown relation {rel!r}")
        if not (np.isfinite(c).all() and np.isfinite(rhs)):
            raise ValidationError("constraint contains non-finite entries")
    if np.isnan(lp.lower).any() or np.isnan(lp.upper).any():
        raise ValidationError("bounds contain NaN")
    if (lp.lower > lp.upper).any():
        raise ValidationError("a lower bound exceeds its upper bound")


def _standardize(lp: LinearProgram):
    """Rewrite as: maximize c.y subject to A y <= b, y >= 0.

    Returns (A, b, c, shift, transform); the original variables are
    x = shift + transform @ y, with transform None meaning identity.
    """
    n = lp.num_vars
    free = ~np.isfinite(lp.lower)
    shift = np.where(free, 0.0, lp.lower)
    has_shift = bool(shift.any())

    if free.any():
        cols: list[np.ndarray] = []
        for j in range(n):
            e = np.zeros(n)
            e[j] = 1.0
            cols.append(e)
            if free[j]:
                cols.append(-e)
        transform = np.column_stack(cols)
    else:
        transform = None

    def to_std(c: np.ndarray) -> np.ndarray:
        return c @ transform if transform is not None else c

    rows: list[np.ndarray] = []
    rhs: list[float] = []

    def add_leq(coeffs: np.ndarray, b: float) -> None:
        rows.append(to_std(coeffs))
        rhs.append(b - float(coeffs @ shift) if has_shift else b)

    for c, rel, b in lp.constraints:
        if rel == LESS_EQUAL:
            add_leq(c, b)
        elif rel == GREATER_EQUAL:
            add_leq(-c, -b)
        else:  # equality as two inequalities
            add_leq(c, b)
            add_leq(-c, -b)
    for j in range(n):
        if np.isfinite(lp.upper[j]):
            e = np.zeros(n)
            e[j] = 1.0
            add_leq(e, lp.upper[j])

    n_std = transform.shape[1] if transform is not None else n
    A = np.vstack(rows) if rows else np.zeros((0, n_std))
    b = np.asarray(rhs, dtype=float)

    if lp.objective is None:
        c_std = None
    else:
        sense = 1.0 if lp.maximize else -1.0
        c_std = sense * to_std(np.asarray(lp.objective, dtype=float))
    return A, b, c_std, shift, transform


def _pivot(T: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    colvals = T[:, col].copy()
    colvals[row] = 0.0
    T -= np.outer(colvals, T[row])
    # explicit unit column kills accumulated roundoff
    T[:, col] = 0.0
    T[row, col] = 1.0
    basis[row] = col


def _bland_iterate(T: np.ndarray, basis: np.ndarray, n_cols: int, tol: float) -> str:
    """Pivot until optimal or unbounded.

    T layout: m constraint rows then the reduced-cost row; columns are the
    n_cols decision columns then the rhs. Entering column is the lowest
    improving index, leaving row breaks ratio ties by lowest basic variable
    index (Bland's rule, so cycling cannot occur).
    """
    m = T.shape[0] - 1
    while True:
        improving = np.nonzero(T[-1, :n_cols] < -tol)[0]
        if improving.size == 0:
            return OPTIMAL
        entering = int(improving[0])
        col = T[:m, entering]
        pos = np.nonzero(col > tol)[0]
        if pos.size == 0:
            return UNBOUNDED
        ratios = T[pos, -1] / col[pos]
        tied = pos[ratios <= ratios.min() + tol]
        leaving = int(tied[np.argmin(basis[tied])])
        _pivot(T, basis, leaving, entering)


def _price_out(T: np.ndarray, basis: np.ndarray, cost: np.ndarray) -> None:
    """Install the reduced-cost row for ``cost``, priced on the current basis."""
    m = T.shape[0] - 1
    T[-1, :] = 0.0
    T[-1, : cost.size] = -cost
    for i in range(m):
        cb = cost[basis[i]] if basis[i] < cost.size else 0.0
        if cb != 0.0:
            T[-1, :] += cb * T[i, :]


def solve_lp(lp: LinearProgram, tol: Tolerances = DEFAULT_TOLS) -> LpOutcome:
    """Solve a linear program; statuses are exact up to the lp tolerance.

    Feasibility-only programs report ``feasible``/``infeasible``; programs
    with an objective report ``optimal``/``infeasible``/``unbounded``. Any
    returned solution satisfies every constraint within the lp tolerance
    (verified before returning).
    """
    _validate(lp)
    A, b, c_std, shift, transform = _standardize(lp)
    m, n_std = A.shape
    eps = tol.lp

    # Orient rows so rhs >= 0; rows that were flipped get a surplus column
    # (slack with coefficient -1) and need an artificial basic variable.
    neg = b < 0
    A = np.where(neg[:, None], -A, A)
    b = np.abs(b)
    art_rows = np.nonzero(neg)[0]
    n_art = int(art_rows.size)

    n_real = n_std + m  # decision + slack columns
    T = np.zeros((m + 1, n_real + n_art + 1))
    T[:m, :n_std] = A
    T[:m, n_std:n_real] = np.diag(np.where(neg, -1.0, 1.0))
    for k, i in enumerate(art_rows):
        T[i, n_real + k] = 1.0
    T[:m, -1] = b

    basis = np.arange(n_std, n_real)
    for k, i in enumerate(art_rows):
        basis[i] = n_real + k

    if n_art:
        phase1_cost = np.zeros(n_real + n_art)
        phase1_cost[n_real:] = -1.0  # maximize minus the artificial mass
        _price_out(T, basis, phase1_cost)
        status = _bland_iterate(T, basis, n_real + n_art, eps)
        if status != OPTIMAL:
            raise SolverError("phase 1 cannot be unbounded")
        scale = max(1.0, float(np.abs(b).max()) if m else 1.0)
        if -T[-1, -1] > eps * scale:
            return LpOutcome(INFEASIBLE)
        # Drive leftover zero-value artificials out of the basis, dropping
        # redundant rows that offer no real pivot.
        keep = np.ones(m, dtype=bool)
        for i in range(m):
            if basis[i] >= n_real:
                real = np.nonzero(np.abs(T[i, :n_real]) > eps)[0]
                if real.size:
                    _pivot(T, basis, i, int(real[0]))
                else:
                    keep[i] = False
        if not keep.all():
            T = T[np.concatenate([np.nonzero(keep)[0], [m]])]
            basis = basis[keep]
            m = int(basis.size)
        T = np.delete(T, np.s_[n_real : n_real + n_art], axis=1)

    def extract() -> np.ndarray:
        y = np.zeros(n_real)
        inside = basis < n_real
        y[basis[inside]] = T[:m][inside, -1]
        y_dec = y[:n_std]
        x = transform @ y_dec if transform is not None else y_dec
        return shift + x

    if c_std is None:
        x = extract()
        _verify(lp, x, eps)
        return LpOutcome(FEASIBLE, x, None)

    cost = np.zeros(n_real)
    cost[:n_std] = c_std
    _price_out(T, basis, cost)
    status = _bland_iterate(T, basis, n_real, eps)
    if status == UNBOUNDED:
        return LpOutcome(UNBOUNDED)
    x = extract()
    _verify(lp, x, eps)
    obj = float(np.asarray(lp.objective, dtype=float) @ x)
    return LpOutcome(OPTIMAL, x, obj)


def _verify(lp: LinearProgram, x: np.ndarray, eps: float) -> None:
    scale = max(1.0, float(np.abs(x).max()))
    slack = 10.0 * eps * scale
    for c, rel, rhs in lp.constraints:
        v = float(c @ x)
        budget = slack * max(1.0, float(np.abs(c).max()), abs(rhs))
        if rel == LESS_EQUAL and v > rhs + budget:
            raise SolverError(f"constraint violated: {v} <= {rhs}")
        if rel == GREATER_EQUAL and v < rhs - budget:
            raise SolverError(f"constraint violated: {v} >= {rhs}")
        if rel == EQUAL and abs(v - rhs) > budget:
            raise SolverError(f"constraint violated: {v} == {rhs}")
    if (x < lp.lower - slack).any() or (x > lp.upper + slack).any():
        raise SolverError("bound violated in LP solution")
