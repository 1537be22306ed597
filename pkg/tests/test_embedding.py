import numpy as np
import pytest

import stablenash as sn
from stablenash.embedding import reconstruct_source
from stablenash.errors import (
    CertificateError,
    ParameterError,
    PreconditionError,
    ShapeError,
    ValidationError,
)


class TestLemma7Game:
    def test_clean_member_layout(self):
        g = sn.modified_matching_pennies(2, 0.1)
        assert g.R[:2, :2] == pytest.approx(np.ones((2, 2)))
        assert g.R[2, 2] == pytest.approx(0.2)
        assert g.R[2, :2] == pytest.approx([0, 0])
        assert g.C[:2, 2] == pytest.approx([1, 1])
        assert g.C[2, :2] == pytest.approx([0.2, 0.2])
        assert g.C[2, 2] == 0.0

    def test_range_validation(self):
        with pytest.raises(ParameterError):
            sn.modified_matching_pennies(2, 0.1, row_tilt=np.full((2, 2), 0.05))
        with pytest.raises(ParameterError):
            sn.modified_matching_pennies(2, 0.1, col_tilt=np.full((2, 2), 0.2))
        with pytest.raises(ParameterError):
            sn.modified_matching_pennies(2, 0.15)

    def test_random_member_deterministic(self):
        a = sn.random_modified_matching_pennies(3, 0.1, seed=4)
        b = sn.random_modified_matching_pennies(3, 0.1, seed=4)
        assert np.array_equal(a.R, b.R)

    def test_exact_equilibrium_mass_window(self):
        delta = 0.1
        g = sn.random_modified_matching_pennies(3, delta, seed=2)
        lo = 2 * delta / (1 + 2 * delta)
        hi = 2 * delta / (1 + delta)
        eqs = sn.enumerate_equilibria(g)
        assert len(eqs) >= 1
        for eq in eqs.equilibria:
            assert lo - 1e-6 <= eq.row.probs[:3].sum() <= hi + 1e-6
            assert lo - 1e-6 <= eq.col.probs[:3].sum() <= hi + 1e-6


class TestEmbed:
    def test_block_formulas(self):
        src = sn.random_game(3, 3, 9)
        emb = sn.embed(src, 0.0002)
        assert emb.delta == pytest.approx(0.2, abs=1e-12)
        assert emb.game.R[:3, :3] == pytest.approx(0.9 + 0.1 * src.R)
        assert emb.game.R[3, 3] == pytest.approx(0.4)
        assert emb.game.C[:3, :3] == pytest.approx(0.1 + 0.1 * src.C)
        assert emb.game.C[3, 3] == 0.0
        assert emb.game.C[:3, 3] == pytest.approx([1, 1, 1])

    def test_extreme_entries(self):
        R = np.zeros((2, 2))
        C = np.ones((2, 2))
        emb = sn.embed(sn.BimatrixGame(R, C), 0.0002)
        assert emb.game.R[0, 0] == pytest.approx(1 - emb.delta / 2)
        assert emb.game.C[0, 0] == pytest.approx(emb.delta)

    def test_embedded_entries_stay_in_unit_range(self):
        emb = sn.embed(sn.random_game(4, 4, 3), 0.0002)
        assert emb.game.range_violations() == 0

    def test_affine_in_payoffs(self):
        a = sn.random_game(3, 3, 1)
        b = sn.random_game(3, 3, 2)
        avg = sn.BimatrixGame(0.5 * (a.R + b.R), 0.5 * (a.C + b.C))
        e_avg = sn.embed(avg, 0.0002)
        e_a = sn.embed(a, 0.0002)
        e_b = sn.embed(b, 0.0002)
        assert e_avg.game.R == pytest.approx(0.5 * (e_a.game.R + e_b.game.R))
        assert e_avg.game.C == pytest.approx(0.5 * (e_a.game.C + e_b.game.C))

    def test_rejections(self):
        with pytest.raises(ShapeError):
            sn.embed(sn.random_game(2, 3, 0), 0.0002)
        with pytest.raises(ParameterError):
            sn.embed(sn.random_game(3, 3, 0), 0.01)  # delta would be 0.53
        bad = sn.BimatrixGame(
            np.full((2, 2), 1.5), np.zeros((2, 2)), nominal_range=(0, 2)
        )
        with pytest.raises(ValidationError):
            sn.embed(bad, 0.0002)

    def test_reconstruction_inverts_embedding(self):
        src = sn.random_game(3, 3, 31)
        emb = sn.embed(src, 0.0002)
        back = reconstruct_source(emb)
        assert back.R == pytest.approx(src.R, abs=1e-12)
        assert back.C == pytest.approx(src.C, abs=1e-12)


class TestExtract:
    def test_round_trip_matching_pennies(self, matching_pennies):
        emb = sn.embed(matching_pennies, 0.0002)
        res = sn.find_well_supported(emb.game, emb.delta**4 / 8)
        assert res is not None
        out = sn.extract(emb, res.profile)
        rep = sn.regrets(matching_pennies, out)
        assert rep.max_regret <= emb.delta + 1e-6
        # the source equilibrium is unique, so extraction must land on it
        assert out.row.probs == pytest.approx([0.5, 0.5], abs=1e-6)

    def test_zero_mass_certificate_error(self, matching_pennies):
        emb = sn.embed(matching_pennies, 0.0002)
        corner = sn.StrategyProfile.from_vectors([0, 0, 1], [0, 0, 1])
        with pytest.raises(CertificateError):
            sn.extract(emb, corner)

    def test_non_equilibrium_rejected(self, matching_pennies):
        emb = sn.embed(matching_pennies, 0.0002)
        # mass window satisfied but far from any equilibrium of the embedding
        mass = 2 * emb.delta
        prof = sn.StrategyProfile.from_vectors(
            [mass, 0.0, 1 - mass], [0.0, mass, 1 - mass]
        )
        with pytest.raises(PreconditionError):
            sn.extract(emb, prof)

    def test_normalization_inverts_scaling(self, matching_pennies):
        # an exact equilibrium of the embedding splits as (mass * u, 1 - mass)
        # with u an equilibrium of the source; extraction returns u
        emb = sn.embed(matching_pennies, 0.0002)
        eq = sn.enumerate_equilibria(emb.game).equilibria[0]
        out = sn.extract(emb, eq)
        assert out.row.probs == pytest.approx([0.5, 0.5], abs=1e-9)
        assert out.col.probs == pytest.approx([0.5, 0.5], abs=1e-9)
