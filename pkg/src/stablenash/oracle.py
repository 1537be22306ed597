"""Exact-equilibrium enumeration for small games.

Support enumeration over all support pairs: for a candidate pair the
row-player condition constrains only q (supported rows tie at the best
payoff, unsupported rows do not exceed it) and the column-player condition
constrains only p, so each pair decomposes into two small LPs. Maximizing
the minimum supported probability rejects candidates whose declared support
carries no mass.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_ENUM_BUDGET, DEFAULT_TOLS, Tolerances
from .core import BimatrixGame, StrategyProfile, profile_distance, regrets
from .errors import DomainError, ResourceBudgetError
from .lp import OPTIMAL, LinearProgram, solve_lp


@dataclass(frozen=True)
class EquilibriumSet:
    """Enumerated equilibria with the parameters that produced them.

    Degenerate games can have equilibrium components; those are represented
    by their discovered vertices only, with ``complete=False``, since any
    stability statement quantifying over all equilibria must disclose
    possible incompleteness.
    """

    equilibria: tuple[StrategyProfile, ...]
    complete: bool
    method: dict

    def __len__(self) -> int:
        return len(self.equilibria)


def enumeration_cost(rows: int, cols: int, max_support: int) -> int:
    return sum(
        math.comb(rows, k) * math.comb(cols, k)
        for k in range(1, max_support + 1)
    )


def _support_lp(
    payoff: np.ndarray,
    own_support: tuple[int, ...],
    eq_rows: tuple[int, ...],
    tol: Tolerances,
):
    """Best-response-consistent distribution on ``own_support``, or None.

    ``payoff[k, :]`` is opponent action k's payoff as a function of our
    distribution. Actions in ``eq_rows`` must tie at the common level u,
    all others must not exceed it; the minimum supported probability t is
    maximized so the declared support is genuine.
    """
    k = len(own_support)
    n_opp = payoff.shape[0]
    cols = list(own_support)
    sub = payoff[:, cols]
    # variables: k probabilities, then the payoff level u, then t
    nv = k + 2
    lp = LinearProgram(nv)
    lp.lower[k] = float(payoff.min()) - 1.0  # u never binds below payoffs
    mass = np.zeros(nv)
    mass[:k] = 1.0
    lp.add_constraint(mass, "=", 1.0)
    eq_set = set(eq_rows)
    for a in range(n_opp):
        row = np.zeros(nv)
        row[:k] = sub[a]
        row[k] = -1.0
        lp.add_constraint(row, "=" if a in eq_set else "<=", 0.0)
    for j in range(k):
        row = np.zeros(nv)
        row[j] = 1.0
        row[k + 1] = -1.0
        lp.add_constraint(row, ">=", 0.0)
    obj = np.zeros(nv)
    obj[k + 1] = 1.0
    lp.set_objective(obj, maximize=True)
    out = solve_lp(lp, tol)
    if out.status != OPTIMAL or out.objective_value <= tol.zero:
        return None
    full = np.zeros(payoff.shape[1])
    full[cols] = out.solution[:k]
    return full


def _tieline_rank_deficient(
    payoff: np.ndarray, own_support: tuple[int, ...], eq_rows: tuple[int, ...]
) -> bool:
    """True when the tie system leaves the accepted distribution underpinned."""
    sub = payoff[np.ix_(list(eq_rows), list(own_support))]
    n = len(own_support) + 1
    system = np.zeros((len(eq_rows) + 1, n))
    system[: len(eq_rows), :-1] = sub
    system[: len(eq_rows), -1] = -1.0
    system[-1, :-1] = 1.0
    return np.linalg.matrix_rank(system, tol=1e-9) < n


def enumerate_equilibria(
    game: BimatrixGame,
    max_support: int | None = None,
    budget: int = DEFAULT_ENUM_BUDGET,
    tol: Tolerances = DEFAULT_TOLS,
) -> EquilibriumSet:
    """All equilibria of a small game found by support enumeration.

    Support pairs are visited in lexicographic order by (row size, column
    size, row subset, column subset); near-duplicate solutions are merged.
    Raises :class:`ResourceBudgetError` when the enumeration guard exceeds
    ``budget``.
    """
    rows, cols = game.shape
    cap = min(rows, cols)
    if max_support is None:
        max_support = cap
    max_support = min(max_support, cap)
    if max_support < 1:
        raise DomainError("max_support must be at least 1")
    if enumeration_cost(rows, cols, max_support) > budget:
        raise ResourceBudgetError(
            f"support enumeration guard exceeds budget {budget}"
        )

    CT = np.ascontiguousarray(game.C.T)
    found: list[StrategyProfile] = []
    degenerate = False

    for kp in range(1, max_support + 1):
        for kq in range(1, max_support + 1):
            for S_p in itertools.combinations(range(rows), kp):
                for S_q in itertools.combinations(range(cols), kq):
                    q = _support_lp(game.R, S_q, S_p, tol)
                    if q is None:
                        continue
                    p = _support_lp(CT, S_p, S_q, tol)
                    if p is None:
                        continue
                    profile = StrategyProfile.from_vectors(p, q, tol)
                    report = regrets(game, profile, tol)
                    if max(report.max_regret, report.max_ws_gap) > tol.eq:
                        continue
                    if any(
                        profile_distance(profile, other) <= tol.dedup
                        for other in found
                    ):
                        continue
                    found.append(profile)
                    if _tieline_rank_deficient(game.R, S_q, S_p) or (
                        _tieline_rank_deficient(CT, S_p, S_q)
                    ):
                        degenerate = True

    # A strict convex combination of two listed equilibria that is itself an
    # equilibrium, yet far from every listed one, certifies a component.
    if not degenerate:
        for a, b in itertools.combinations(found, 2):
            mid = StrategyProfile.from_vectors(
                0.5 * (a.row.probs + b.row.probs),
                0.5 * (a.col.probs + b.col.probs),
                tol,
            )
            if regrets(game, mid, tol).max_regret > tol.eq:
                continue
            if regrets(game, mid, tol).max_ws_gap > tol.eq:
                continue
            if all(profile_distance(mid, e) > tol.dedup for e in found):
                degenerate = True
                break

    exhausted = max_support >= cap
    return EquilibriumSet(
        equilibria=tuple(found),
        complete=exhausted and not degenerate,
        method={
            "max_support": max_support,
            "budget": budget,
            "tol_eq": tol.eq,
            "tol_dedup": tol.dedup,
        },
    )


def distance_to_set(profile: StrategyProfile, eqs: EquilibriumSet) -> float:
    """Minimum profile distance from ``profile`` to the listed equilibria."""
    if len(eqs) == 0:
        raise DomainError("distance to an empty equilibrium set is undefined")
    return min(profile_distance(profile, e) for e in eqs.equilibria)
