"""Canonical game constructors and random-game sources.

All constructors use 0-based action indexing. In the meeting game the home
action is index 0 and the meeting locations are 1..n-1; in the public goods
game action i means contributing i units.
"""

from __future__ import annotations

import numpy as np

from .core import BimatrixGame
from .errors import ParameterError


def public_goods(n: int) -> BimatrixGame:
    """Contribution game where each player picks an amount in 0..n-1.

    Row payoff for (i, j) is (0.75 j - 0.25 i) / n and symmetrically for the
    column player. The formula produces negative entries, which are flagged
    against the declared [0, 1] range rather than rejected.
    """
    if n < 2:
        raise ParameterError("public goods game needs n >= 2")
    i = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    R = (0.75 * j - 0.25 * i) / n
    C = (0.75 * i - 0.25 * j) / n
    return BimatrixGame(R, C)


def meeting_game(n: int) -> BimatrixGame:
    """Stay-home-or-meet coordination game over n actions.

    Staying home (action 0) pays 1/2 unconditionally; choosing a location
    pays 1 on a match and 0 otherwise. The column matrix is the transpose.
    """
    if n < 2:
        raise ParameterError("meeting game needs n >= 2")
    R = np.zeros((n, n))
    R[0, :] = 0.5
    for i in range(1, n):
        R[i, i] = 1.0
    return BimatrixGame(R, R.T)


def matching_pennies() -> BimatrixGame:
    """Constant-sum 2x2 game with the unique fully mixed equilibrium."""
    R = np.array([[1.0, 0.0], [0.0, 1.0]])
    return BimatrixGame(R, 1.0 - R)


def dominance_gap_game(gap: float = 0.1) -> BimatrixGame:
    """2x2 game whose dominated actions trail the dominant ones by ``gap``.

    Row payoffs depend only on the row chosen and column payoffs only on the
    column chosen, so the unique equilibrium is (action 0, action 0) while
    profiles mixing in the trailing action lose at most ``gap``.
    """
    if not 0.0 < gap <= 1.0:
        raise ParameterError("gap must lie in (0, 1]")
    R = np.array([[1.0, 1.0], [1.0 - gap, 1.0 - gap]])
    C = np.array([[1.0, 1.0 - gap], [1.0, 1.0 - gap]])
    return BimatrixGame(R, C)


def random_game(rows: int, cols: int, seed) -> BimatrixGame:
    """Game with i.i.d. uniform [0, 1] payoffs, deterministic per seed."""
    if rows < 1 or cols < 1:
        raise ParameterError("game dimensions must be >= 1")
    rng = np.random.default_rng(seed)
    R = rng.uniform(0.0, 1.0, size=(rows, cols))
    C = rng.uniform(0.0, 1.0, size=(rows, cols))
    return BimatrixGame(R, C)


def random_constant_sum_game(n: int, seed, constant: float = 1.0) -> BimatrixGame:
    """Constant-sum n x n game with uniform row payoffs in [0, constant]."""
    if n < 1:
        raise ParameterError("game dimension must be >= 1")
    rng = np.random.default_rng(seed)
    R = rng.uniform(0.0, constant, size=(n, n))
    return BimatrixGame(R, constant - R, nominal_range=(0.0, max(1.0, constant)))
