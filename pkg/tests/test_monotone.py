"""Tests for operator monotone functions, measures, and moment identities."""

import json
import math

import numpy as np
import pytest

from monocurv import jets
from monocurv.monotone import (
    MonotoneFunction,
    SymmetricMeasure,
    catalog,
    default_catalog,
    derivatives_at_one,
    dump_measure,
    eval_jet,
    function_from_measure,
    load_measure,
    pushforward_moments,
    symmetry_residual,
)

DELTA_HALF = SymmetricMeasure(atoms=[(0.5, 1.0)])
ENDPOINTS = SymmetricMeasure(atoms=[(0.0, 0.5)])
LEBESGUE = SymmetricMeasure(density_bins=[(0.0, 0.5, 0.5)])


def random_atomic(rng):
    k = int(rng.integers(1, 5))
    locs = rng.uniform(0.0, 0.5, size=k)
    weights = rng.uniform(0.2, 1.0, size=k)
    weights /= 2.0 * weights.sum()
    return SymmetricMeasure(atoms=list(zip(locs, weights)))


def random_with_bins(rng):
    w_atom = float(rng.uniform(0.1, 0.3))
    t_atom = float(rng.uniform(0.0, 0.5))
    edges = np.sort(rng.uniform(0.0, 0.5, size=3))
    masses = rng.uniform(0.1, 1.0, size=2)
    masses *= (0.5 - w_atom) / masses.sum()
    bins = [(edges[0], edges[1], masses[0]), (edges[1], edges[2], masses[1])]
    return SymmetricMeasure(atoms=[(t_atom, w_atom)], density_bins=bins)


class TestCatalog:
    @pytest.mark.parametrize("f", default_catalog(), ids=lambda f: f.label)
    def test_normalization(self, f):
        assert f(1.0) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("f", default_catalog(), ids=lambda f: f.label)
    def test_symmetry_on_log_grid(self, f):
        """f(x) = x f(1/x) across six decades."""
        for x in np.logspace(-3, 3, 13):
            assert abs(symmetry_residual(f, float(x))) < 1e-10

    @pytest.mark.parametrize("f", default_catalog(), ids=lambda f: f.label)
    def test_positivity_wide(self, f):
        for x in np.logspace(-6, 6, 25):
            assert f(float(x)) > 0.0

    def test_smallest_symmetry_example(self):
        assert symmetry_residual(catalog("smallest"), 3.0) == pytest.approx(0.0, abs=1e-14)

    def test_kubo_mori_at_e(self):
        assert catalog("kubo_mori")(math.e) == pytest.approx(math.e - 1.0, rel=1e-14)

    def test_bures_aliases_sld(self):
        sld, bures = catalog("sld"), catalog("bures")
        for x in (0.2, 1.0, 7.0):
            assert bures(x) == sld(x)

    def test_alpha_half_is_smallest(self):
        f, g = catalog("power", alpha=0.5), catalog("smallest")
        for x in (0.3, 2.0, 50.0):
            assert f(x) == pytest.approx(g(x), rel=1e-12)

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown catalog"):
            catalog("largest")

    @pytest.mark.parametrize("alpha", [-0.1, 0.6, None])
    def test_alpha_out_of_range(self, alpha):
        with pytest.raises(ValueError, match="alpha"):
            catalog("power", alpha=alpha)

    @pytest.mark.parametrize("beta", [0.0, 1.0, -1.0, None])
    def test_beta_out_of_range(self, beta):
        with pytest.raises(ValueError, match="beta"):
            catalog("wyd", beta=beta)

    def test_ordering_between_extremal_functions(self):
        """Every admissible f sits between 2x/(1+x) and (1+x)/2."""
        lo, hi = catalog("smallest"), catalog("sld")
        for f in default_catalog():
            for x in (0.1, 0.5, 2.0, 9.0):
                assert lo(x) - 1e-12 <= f(x) <= hi(x) + 1e-12


class TestEvalJet:
    def test_affine_jet(self):
        j = eval_jet(catalog("sld"), 1.0, 2)
        assert j.coefficients == pytest.approx((1.0, 0.5, 0.0), abs=1e-14)

    def test_smallest_jet_order_four(self):
        j = eval_jet(catalog("smallest"), 1.0, 4)
        assert j.coefficients == pytest.approx((1.0, 0.5, -0.5, 0.75, -1.5), abs=1e-13)

    def test_measure_point_mass_jet(self):
        j = eval_jet(function_from_measure(DELTA_HALF), 1.0, 2)
        assert j.coefficients == pytest.approx((1.0, 0.5, -0.5), abs=1e-14)

    @pytest.mark.parametrize("f", default_catalog(), ids=lambda f: f.label)
    def test_symmetry_identities_at_one(self, f):
        """f'(1) = 1/2 and 2 f'''(1) + 3 f''(1) = 0 for every admissible f."""
        j = eval_jet(f, 1.0, 6)
        assert j[0] == pytest.approx(1.0, abs=1e-12)
        assert j[1] == pytest.approx(0.5, abs=1e-11)
        assert 2.0 * j[3] + 3.0 * j[2] == pytest.approx(0.0, abs=1e-9)
        assert 2.0 * j[5] + 15.0 * j[4] + 60.0 * j[3] + 60.0 * j[2] == pytest.approx(
            0.0, abs=1e-7
        )

    @pytest.mark.parametrize("x", [0.04, 0.7, 1.0, 1.2, 5.0, 400.0])
    def test_jets_match_finite_differences(self, x):
        """Jet derivatives agree with central differences of plain values."""
        f = catalog("kubo_mori")
        j = f.jet(x, 3)
        fd = jets.finite_difference_jet(lambda t: f(t), x, 3, h=1e-3 * max(1.0, x))
        for k in (1, 2):
            assert j[k] == pytest.approx(fd[k], rel=1e-5)

    def test_measure_jets_match_finite_differences(self):
        f = function_from_measure(random_with_bins(np.random.default_rng(7)))
        for x in (0.3, 1.7):
            j = f.jet(x, 2)
            fd = jets.finite_difference_jet(lambda t: f(t), x, 2)
            assert j[1] == pytest.approx(fd[1], rel=1e-5)
            assert j[2] == pytest.approx(fd[2], rel=1e-5)

    def test_domain_errors(self):
        f = catalog("sld")
        with pytest.raises(ValueError):
            eval_jet(f, -1.0, 2)
        with pytest.raises(ValueError):
            eval_jet(f, 1.0, 7)
        with pytest.raises(ValueError):
            f(0.0)


class TestUserFunctions:
    def test_traceable_callable_gets_exact_jets(self):
        f = MonotoneFunction.from_callable(lambda x: 2 * x / (1 + x), label="user")
        assert f.jet(1.0, 3).coefficients == pytest.approx((1.0, 0.5, -0.5, 0.75), abs=1e-13)

    def test_opaque_callable_falls_back_to_differences(self):
        def opaque(x):
            return (1.0 + float(x)) / 2.0

        f = MonotoneFunction.from_callable(opaque, label="opaque")
        j = f.jet(2.0, 2)
        assert j[0] == pytest.approx(1.5, abs=1e-12)
        assert j[1] == pytest.approx(0.5, rel=1e-7)

    def test_explicit_jet_callable_wins(self):
        f = MonotoneFunction.from_callable(
            lambda x: (1.0 + x) / 2.0,
            label="with-jet",
            jet_fn=lambda x, order: [(1.0 + x) / 2.0, 0.5] + [0.0] * (order - 1),
        )
        assert f.jet(3.0, 4).coefficients == pytest.approx((2.0, 0.5, 0.0, 0.0, 0.0))

    def test_asymmetric_callable_rejected(self):
        with pytest.raises(ValueError, match="symmetry"):
            MonotoneFunction.from_callable(lambda x: x, label="identity")

    def test_unnormalized_callable_rejected(self):
        with pytest.raises(ValueError, match="normalization"):
            MonotoneFunction.from_callable(lambda x: (1 + x) / 3, label="scaled")

    def test_sourceless_construction_rejected(self):
        with pytest.raises(ValueError, match="needs"):
            MonotoneFunction("empty")


class TestSymmetricMeasure:
    def test_point_mass_gives_smallest(self):
        f = function_from_measure(DELTA_HALF)
        g = catalog("smallest")
        for x in np.logspace(-2, 2, 9):
            assert f(float(x)) == pytest.approx(g(float(x)), rel=1e-14)

    def test_endpoint_pair_gives_sld(self):
        f = function_from_measure(ENDPOINTS)
        for x in (0.2, 1.0, 3.0):
            assert f(x) == pytest.approx((1 + x) / 2, rel=1e-14)

    def test_quarter_family_matches_rational_form(self):
        p = 0.3
        mu = SymmetricMeasure(atoms=[(p, 0.25), (0.0, 0.25)])
        f = function_from_measure(mu)
        for x in (0.4, 2.5):
            expect = (x / 4.0) * (
                1.0 / ((1 - p) * x + p) + 1.0 / (p * x + 1 - p) + 1.0 / x + 1.0
            )
            assert f(x) == pytest.approx(expect, rel=1e-14)

    def test_measure_functions_satisfy_symmetry(self):
        rng = np.random.default_rng(3)
        for make in (random_atomic, random_with_bins):
            f = function_from_measure(make(rng))
            for x in (0.001, 0.3, 3.0, 1000.0):
                assert abs(symmetry_residual(f, x)) < 1e-10

    def test_mean_location_is_one_half(self):
        """int t dmu = 1/2 exactly, forced by the mirror symmetry."""
        rng = np.random.default_rng(11)
        for make in (random_atomic, random_with_bins):
            mu = make(rng)
            assert mu.integrate(lambda t: t) == pytest.approx(0.5, abs=1e-14)

    def test_half_atom_stored_once(self):
        assert DELTA_HALF.atoms == ((0.5, 1.0),)
        assert list(DELTA_HALF.expanded_atoms()) == [(0.5, 1.0)]

    def test_mirror_expansion(self):
        mu = SymmetricMeasure(atoms=[(0.2, 0.5)])
        assert sorted(mu.expanded_atoms()) == [(0.2, 0.5), (0.8, 0.5)]

    def test_explicit_symmetric_input_folds(self):
        mu = SymmetricMeasure(atoms=[(0.2, 0.3), (0.8, 0.3), (0.5, 0.4)], auto_mirror=False)
        assert mu.atoms == ((0.2, 0.3), (0.5, 0.4))

    def test_explicit_asymmetric_input_rejected(self):
        with pytest.raises(ValueError, match="mirror"):
            SymmetricMeasure(atoms=[(0.2, 0.5), (0.7, 0.5)], auto_mirror=False)

    def test_straddling_symmetric_bin_splits(self):
        mu = SymmetricMeasure(
            atoms=[(0.5, 0.5)], density_bins=[(0.4, 0.6, 0.5)], auto_mirror=False
        )
        assert mu.density_bins == ((0.4, 0.5, 0.25),)

    def test_asymmetric_bin_rejected(self):
        with pytest.raises(ValueError):
            SymmetricMeasure(density_bins=[(0.3, 0.6, 0.5)], auto_mirror=False)

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            SymmetricMeasure(atoms=[(0.3, -0.2), (0.2, 0.7)])

    def test_wrong_mass_rejected(self):
        with pytest.raises(ValueError, match="mass"):
            SymmetricMeasure(atoms=[(0.3, 0.4)])

    def test_auto_mirror_requires_left_half(self):
        with pytest.raises(ValueError, match="0.5"):
            SymmetricMeasure(atoms=[(0.7, 0.5)])

    def test_immutable(self):
        with pytest.raises(AttributeError):
            DELTA_HALF.atoms = ()


class TestDerivativesAtOne:
    @pytest.mark.parametrize("mu", [DELTA_HALF, ENDPOINTS, LEBESGUE], ids=["half", "ends", "leb"])
    def test_first_derivative_is_half(self, mu):
        assert derivatives_at_one(mu, 1) == pytest.approx(0.5, abs=1e-14)

    def test_point_mass_second(self):
        assert derivatives_at_one(DELTA_HALF, 2) == pytest.approx(-0.5, abs=1e-14)

    def test_endpoints_second_vanishes(self):
        assert derivatives_at_one(ENDPOINTS, 2) == pytest.approx(0.0, abs=1e-15)

    def test_rejects_order_zero_and_seven(self):
        with pytest.raises(ValueError):
            derivatives_at_one(DELTA_HALF, 0)
        with pytest.raises(ValueError):
            derivatives_at_one(DELTA_HALF, 7)

    def test_matches_eval_jet(self):
        mu = random_with_bins(np.random.default_rng(5))
        j = eval_jet(function_from_measure(mu), 1.0, 6)
        for k in range(1, 7):
            assert derivatives_at_one(mu, k) == pytest.approx(j[k], abs=1e-12)


class TestPushforwardMoments:
    def test_point_mass(self):
        s = pushforward_moments(DELTA_HALF)
        assert (s.m, s.var, s.e2, s.e3) == pytest.approx((1.0, 0.0, 1.0, 1.0))

    def test_endpoints(self):
        s = pushforward_moments(ENDPOINTS)
        assert (s.m, s.var) == pytest.approx((0.0, 0.0))

    def test_quarter_family(self):
        mu = SymmetricMeasure(atoms=[(0.4, 0.25), (0.0, 0.25)])
        s = pushforward_moments(mu)
        assert s.m == pytest.approx(0.48, abs=1e-15)
        assert s.e2 == pytest.approx(0.4608, abs=1e-15)
        assert s.e3 == pytest.approx(0.5 * 0.96**3, abs=1e-15)

    def test_moment_bounds(self):
        rng = np.random.default_rng(13)
        for _ in range(5):
            s = pushforward_moments(random_with_bins(rng))
            assert 0.0 <= s.m <= 1.0
            assert s.var >= -1e-14
            assert 0.0 <= s.e3 <= s.e2 <= s.m

    @pytest.mark.parametrize("seed", range(4))
    def test_moment_identities_atomic(self, seed):
        """Derivative integrals at 1 reduce to pushforward moments (atoms)."""
        mu = random_atomic(np.random.default_rng(100 + seed))
        s = pushforward_moments(mu)
        assert derivatives_at_one(mu, 2) == pytest.approx(-s.m / 2, abs=1e-10)
        assert derivatives_at_one(mu, 4) == pytest.approx(-3 * s.m + 1.5 * s.e2, abs=1e-10)
        assert derivatives_at_one(mu, 6) == pytest.approx(
            -90 * s.m - 11.25 * s.e3 + 90 * s.e2, abs=1e-10
        )

    @pytest.mark.parametrize("seed", range(4))
    def test_moment_identities_with_bins(self, seed):
        mu = random_with_bins(np.random.default_rng(200 + seed))
        s = pushforward_moments(mu)
        assert derivatives_at_one(mu, 2) == pytest.approx(-s.m / 2, abs=1e-7)
        assert derivatives_at_one(mu, 4) == pytest.approx(-3 * s.m + 1.5 * s.e2, abs=1e-7)
        assert derivatives_at_one(mu, 6) == pytest.approx(
            -90 * s.m - 11.25 * s.e3 + 90 * s.e2, abs=1e-7
        )


class TestDensityTransform:
    """Both routes to the pushforward density, cross-validated.

    The transformed-density route integrates x^k against
    rho((1 - sqrt(1-x))/2) / (2 sqrt(1-x)); substituting x = 1 - u^2 makes
    the integrand polynomial, so fixed Gauss-Legendre is exact.
    """

    @staticmethod
    def transformed_moment(rho, k):
        nodes, weights = np.polynomial.legendre.leggauss(24)
        u = 0.5 + 0.5 * nodes
        vals = (1.0 - u**2) ** k * rho((1.0 - u) / 2.0)
        return 0.5 * float(np.dot(weights, vals))

    def test_lebesgue_both_routes(self):
        s = pushforward_moments(LEBESGUE)
        for k, got in ((1, s.m), (2, s.e2), (3, s.e3)):
            assert got == pytest.approx(self.transformed_moment(lambda t: 1.0, k), abs=1e-12)
        assert s.m == pytest.approx(2.0 / 3.0, abs=1e-12)

    def test_quadratic_density_both_routes(self):
        """A non-constant density discriminates the transform's argument."""
        rho = lambda t: 12.0 * (t - 0.5) ** 2
        edges = np.linspace(0.0, 0.5, 201)
        bins = []
        for lo, hi in zip(edges[:-1], edges[1:]):
            mass = 4.0 * (0.5 - lo) ** 3 - 4.0 * (0.5 - hi) ** 3  # int of rho over [lo,hi]
            bins.append((float(lo), float(hi), float(mass)))
        total = sum(m for _, _, m in bins)
        bins = [(lo, hi, m * 0.5 / total) for lo, hi, m in bins]
        mu = SymmetricMeasure(density_bins=bins)
        s = pushforward_moments(mu)
        assert s.m == pytest.approx(self.transformed_moment(rho, 1), abs=1e-4)
        assert s.m == pytest.approx(0.4, abs=1e-4)
        assert s.e2 == pytest.approx(self.transformed_moment(rho, 2), abs=1e-4)


class TestMeasureFiles:
    def test_round_trip(self, tmp_path):
        mu = SymmetricMeasure(atoms=[(0.45, 0.25), (0.0, 0.25)])
        path = tmp_path / "family.json"
        dump_measure(mu, str(path))
        back = load_measure(str(path))
        assert back == mu

    def test_schema_fields(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(
            json.dumps(
                {
                    "atoms": [{"t": 0.5, "w": 1.0}],
                    "density_bins": [],
                    "auto_mirror": True,
                }
            )
        )
        mu = load_measure(str(path))
        assert mu == DELTA_HALF

    def test_full_support_file_with_mirror_off(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(
            json.dumps(
                {
                    "atoms": [{"t": 0.1, "w": 0.5}, {"t": 0.9, "w": 0.5}],
                    "auto_mirror": False,
                }
            )
        )
        mu = load_measure(str(path))
        assert mu.atoms == ((0.1, 0.5),)
