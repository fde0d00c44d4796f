import numpy as np
import pytest

from windfit.families import FamilyId
from windfit.gof import (GofConfig, GofReport, ProbabilityPairs, chi2_stat,
                         empirical_cdf, ks_stat, r_squared, rank_models, rmse)

from helpers import GOF_TABLE


@pytest.fixture
def hand_pairs():
    return ProbabilityPairs(np.array([1 / 3, 2 / 3]), np.array([0.25, 0.75]))


class TestEmpiricalCdf:
    def test_two_points(self):
        assert empirical_cdf(np.array([5.0, 7.0])) == pytest.approx([1 / 3, 2 / 3])

    def test_half_plotting_constant(self):
        got = empirical_cdf(np.zeros(3) + 1, GofConfig(plotting_a=0.5))
        assert got == pytest.approx([0.5 / 3, 1.5 / 3, 2.5 / 3])

    def test_single_point(self):
        assert empirical_cdf(np.array([4.0])) == pytest.approx([0.5])

    def test_plotting_a_bounds(self):
        with pytest.raises(ValueError):
            GofConfig(plotting_a=1.5)


class TestStatistics:
    def test_rmse_hand_value(self, hand_pairs):
        assert rmse(hand_pairs) == pytest.approx(1 / 12, abs=1e-15)

    def test_ks_hand_value(self, hand_pairs):
        assert ks_stat(hand_pairs) == pytest.approx(1 / 12, abs=1e-15)

    def test_chi2_hand_value(self, hand_pairs):
        assert chi2_stat(hand_pairs) == pytest.approx(1 / 27, abs=1e-15)

    def test_r2_hand_value(self, hand_pairs):
        assert r_squared(hand_pairs) == pytest.approx(0.75, abs=1e-15)

    def test_perfect_fit(self):
        emp = np.linspace(0.1, 0.9, 9)
        pairs = ProbabilityPairs(emp, emp.copy())
        assert rmse(pairs) == 0 and ks_stat(pairs) == 0 and chi2_stat(pairs) == 0
        assert r_squared(pairs) == 1.0

    def test_r2_standard_variant(self, hand_pairs):
        # same pairs, centering on the empirical mean (also 0.5 here)
        assert r_squared(hand_pairs, GofConfig(r2_standard=True)) == \
            pytest.approx(0.75, abs=1e-15)
        asym = ProbabilityPairs(np.array([0.2, 0.4, 0.9]),
                                np.array([0.1, 0.5, 0.6]))
        assert r_squared(asym) != r_squared(asym, GofConfig(r2_standard=True))

    def test_chi2_rejects_zero_predicted(self):
        pairs = ProbabilityPairs(np.array([0.3, 0.6]), np.array([0.0, 0.5]))
        with pytest.raises(ValueError):
            chi2_stat(pairs)

    def test_r2_zero_variance(self):
        pairs = ProbabilityPairs(np.array([0.5]), np.array([0.5]))
        with pytest.raises(ValueError):
            r_squared(pairs)

    def test_pair_validation(self):
        with pytest.raises(ValueError):
            ProbabilityPairs(np.array([0.5, 0.4]), np.array([0.1, 0.2]))
        with pytest.raises(ValueError):
            ProbabilityPairs(np.array([0.1, 0.2]), np.array([0.1]))

    def test_algebraic_inequalities(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            n = int(rng.integers(2, 40))
            emp = np.sort(rng.uniform(0.01, 0.99, n))
            emp = np.unique(emp)
            if emp.size < 2:
                continue
            pred = rng.uniform(0.01, 0.99, emp.size)
            pairs = ProbabilityPairs(emp, pred)
            assert ks_stat(pairs) <= rmse(pairs) * np.sqrt(pairs.n) + 1e-12
            assert rmse(pairs) ** 2 * pairs.n <= \
                chi2_stat(pairs) * np.max(pred) + 1e-12

    def test_input_order_immaterial_via_sorting(self):
        rng = np.random.default_rng(5)
        x = rng.uniform(1, 9, 30)
        cdf_fn = lambda xs: xs / 10.0
        a = ProbabilityPairs.from_sample(x, cdf_fn)
        b = ProbabilityPairs.from_sample(rng.permutation(x), cdf_fn)
        assert np.array_equal(a.predicted, b.predicted)
        assert rmse(a) == rmse(b) and ks_stat(a) == ks_stat(b)


class TestRanking:
    @pytest.mark.parametrize("season", list(GOF_TABLE))
    def test_reproduces_reference_rank_column(self, season):
        rows = GOF_TABLE[season]
        reports = [(fam, GofReport(ks=ks, r2=r2, rmse=rm, chi2=c2))
                   for fam, ks, r2, rm, c2, _rank in rows]
        ranked = rank_models(reports)
        assert [rep.rank for _, rep in ranked] == [row[-1] for row in rows]

    def test_dominant_model_ranks_first(self):
        good = GofReport(ks=0.01, r2=0.999, rmse=0.005, chi2=0.1)
        bad = GofReport(ks=0.2, r2=0.9, rmse=0.08, chi2=9.0)
        ranked = rank_models([(FamilyId.WE3, bad), (FamilyId.GEV, good)])
        assert ranked[0][1].rank == 2 and ranked[1][1].rank == 1

    def test_identical_reports_tiebreak_by_family_order(self):
        rep = GofReport(ks=0.1, r2=0.95, rmse=0.04, chi2=2.0)
        ranked = rank_models([(FamilyId.LN3, rep), (FamilyId.WE3, rep),
                              (FamilyId.GEV, rep)])
        by_family = {fam: r.rank for fam, r in ranked}
        assert by_family == {FamilyId.WE3: 1, FamilyId.LN3: 2, FamilyId.GEV: 3}

    def test_always_a_permutation(self):
        rng = np.random.default_rng(17)
        fams = list(FamilyId)
        for _ in range(25):
            reports = [(fam, GofReport(ks=float(rng.uniform(0, .3)),
                                       r2=float(rng.uniform(.8, 1)),
                                       rmse=float(rng.uniform(0, .1)),
                                       chi2=float(rng.uniform(0, 30))))
                       for fam in fams]
            ranked = rank_models(reports)
            assert sorted(rep.rank for _, rep in ranked) == list(range(1, 7))

    def test_single_model_gets_rank_one(self):
        ranked = rank_models([(FamilyId.WE3,
                               GofReport(ks=.1, r2=.9, rmse=.05, chi2=1.0))])
        assert ranked[0][1].rank == 1
