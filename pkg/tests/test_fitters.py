import math

import numpy as np
import pytest

import oracles
from conftest import random_dataset
from implicitreg import (
    CONIC_TERMS,
    Dataset,
    MultiDataset,
    Term,
    alias_matrix,
    alpha_from_beta,
    beta_from_alpha,
    fit_all_rotations,
    fit_implicit,
    fit_nonresponse,
    fit_rotation,
    fit_standard,
    nra2_closed,
    parse_terms,
    slr_closed,
    univariate_nra,
)
from implicitreg.errors import (
    ConversionUndefined,
    MeanUndefined,
    SingularSystem,
    Underdetermined,
    ZeroVariance,
)
from implicitreg.terms import LhsKind, ModelSpec, design_matrix


class TestFitImplicit:
    def test_unity_two_terms(self, tri_dataset):
        f = fit_implicit(tri_dataset, ModelSpec.nonresponse(parse_terms("x,y")))
        np.testing.assert_allclose(f.coeffs, [1, 1], atol=1e-12)
        np.testing.assert_allclose(f.residuals, 0, atol=1e-12)
        assert f.r_squared == pytest.approx(1.0, abs=1e-12)
        assert f.r2_formula == "Eq12-nonresponse"

    def test_exact_line_response(self):
        d = Dataset([0.0, 1.0, 2.0, 3.0], [1.0, 3.0, 5.0, 7.0])
        spec = ModelSpec.rotation(parse_terms("x,y"), pivot=1)
        f = fit_implicit(d, spec)
        np.testing.assert_allclose(f.coeffs, [1, 2], atol=1e-12)
        assert f.r_squared == pytest.approx(1.0, abs=1e-12)
        assert f.r2_formula == "Eq8-centered"

    def test_underdetermined(self):
        d = Dataset([1.0, 2.0], [3.0, 5.0])
        with pytest.raises(Underdetermined):
            fit_implicit(d, ModelSpec.nonresponse(parse_terms("x,y,xy")))


class TestFitNonresponse:
    def test_two_square_terms_unit_circle(self):
        s = math.sqrt(2) / 2
        d = Dataset([1.0, 0.0, s], [0.0, 1.0, s])
        f = fit_nonresponse(d, parse_terms("x2,y2"))
        np.testing.assert_allclose(f.coeffs, [1, 1], atol=1e-12)
        assert f.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_five_term_circle(self, circle6):
        f = fit_nonresponse(circle6, list(CONIC_TERMS))
        np.testing.assert_allclose(f.coeffs, [0, 0, 0, 0.25, 0.25], atol=1e-12)

    def test_linear_pair(self, tri_dataset):
        f = fit_nonresponse(tri_dataset, parse_terms("x,y"))
        np.testing.assert_allclose(f.coeffs, [1, 1], atol=1e-12)

    def test_residual_identity(self, tri_dataset):
        f = fit_nonresponse(tri_dataset, parse_terms("x,y"))
        W, t = design_matrix(tri_dataset, f.spec)
        np.testing.assert_array_equal(f.residuals, t - W @ f.coeffs)

    def test_cov_is_sigma2_gram_inverse(self):
        rng = np.random.default_rng(3)
        d = random_dataset(rng)
        f = fit_nonresponse(d, parse_terms("x,y,xy"))
        np.testing.assert_allclose(f.cov, f.sigma2_hat * f.gram_inverse, atol=0)


class TestFitRotation:
    def test_exact_linear_relation(self):
        d = Dataset([1.0, 2.0, 3.0, 4.0], [2.0, 4.0, 6.0, 8.0])
        f = fit_rotation(d, parse_terms("x,y,xy"), pivot=1)
        np.testing.assert_allclose(f.residuals, 0, atol=1e-10)
        assert f.r_squared == pytest.approx(1.0, abs=1e-10)
        np.testing.assert_allclose(f.coeffs, [0, 2, 0], atol=1e-10)

    def test_constant_column_collides_with_intercept(self):
        d = Dataset([1.0, 2.0, 3.0], [5.0, 5.0, 5.0])
        with pytest.raises(SingularSystem):
            fit_rotation(d, parse_terms("x,y"), pivot=0)

    def test_matches_alias(self):
        rng = np.random.default_rng(5)
        d = random_dataset(rng)
        terms = parse_terms("x,y,xy")
        f = fit_rotation(d, terms, pivot=0)
        W1 = np.column_stack([np.ones(d.n), d.y, d.x * d.y])
        A = alias_matrix(W1, d.x)
        np.testing.assert_allclose(f.coeffs, A[:, 0], atol=1e-10)

    def test_f_stat_present_and_positive(self):
        rng = np.random.default_rng(9)
        d = random_dataset(rng)
        f = fit_rotation(d, parse_terms("x,y,xy"), pivot=1)
        assert f.f_stat is not None and f.f_stat > 0


class TestFitAllRotations:
    def test_conic_set_order(self):
        rng = np.random.default_rng(13)
        d = random_dataset(rng)
        results = fit_all_rotations(d, list(CONIC_TERMS))
        assert len(results) == 5
        for pivot, r in enumerate(results):
            single = fit_rotation(d, list(CONIC_TERMS), pivot)
            np.testing.assert_allclose(r.coeffs, single.coeffs, atol=0)

    def test_two_term_set(self, tri_dataset):
        assert len(fit_all_rotations(tri_dataset, parse_terms("x,y"))) == 2

    def test_degenerate_pivot_isolated(self):
        # y constant: pivot x regresses on {1, y}, which is rank deficient;
        # pivot y has a constant target, recorded as ZeroVariance.
        d = Dataset([1.0, 2.0, 3.0], [5.0, 5.0, 5.0])
        results = fit_all_rotations(d, parse_terms("x,y"))
        assert isinstance(results[0], SingularSystem)
        assert isinstance(results[1], ZeroVariance)


class TestAliasMatrix:
    def test_projection_onto_constant(self):
        x = np.array([1.0, 2.0, 3.0, 4.0])
        A = alias_matrix(np.ones((4, 1)), x)
        assert A[0, 0] == pytest.approx(np.mean(x), abs=1e-14)

    def test_exact_representability(self):
        rng = np.random.default_rng(17)
        X1 = rng.normal(size=(10, 3))
        A = alias_matrix(X1, X1[:, 1])
        np.testing.assert_allclose(A[:, 0], [0, 1, 0], atol=1e-10)

    def test_full_conic_pivot(self):
        rng = np.random.default_rng(19)
        d = random_dataset(rng)
        X1 = np.column_stack([np.ones(d.n), d.y, d.x * d.y, d.x**2, d.y**2])
        A = alias_matrix(X1, d.x)
        f = fit_rotation(d, list(CONIC_TERMS), pivot=0)
        np.testing.assert_allclose(A[:, 0], f.coeffs, atol=1e-10)


class TestFitStandard:
    def test_hand_fixture(self):
        md = MultiDataset([0.0, 1.0, 1.0], [[0.0], [1.0], [2.0]], ("x",))
        f = fit_standard(md)
        np.testing.assert_allclose(f.coeffs, [1 / 6, 1 / 2], atol=1e-12)
        assert f.r_squared == pytest.approx(0.75, abs=1e-12)
        assert f.sse == pytest.approx(1 / 6, abs=1e-12)

    def test_exact_plane(self):
        rng = np.random.default_rng(23)
        X = rng.normal(size=(20, 2))
        y = 1.0 + 2.0 * X[:, 0] - X[:, 1]
        f = fit_standard(MultiDataset(y, X, ("x1", "x2")))
        assert f.r_squared == pytest.approx(1.0, abs=1e-12)
        assert f.sse == pytest.approx(0.0, abs=1e-20)

    def test_constant_response(self):
        with pytest.raises(ZeroVariance):
            fit_standard(MultiDataset([3.0, 3.0, 3.0], [[1.0], [2.0], [3.0]], ("x",)))


class TestClosedForms:
    def test_slr_two_points(self):
        b0, b1 = slr_closed([0.0, 1.0], [1.0, 3.0])
        assert (b0, b1) == pytest.approx((1.0, 2.0), abs=1e-14)

    def test_slr_hand_fixture(self):
        b0, b1 = slr_closed([0.0, 1.0, 2.0], [0.0, 1.0, 1.0])
        assert b0 == pytest.approx(1 / 6, abs=1e-14)
        assert b1 == pytest.approx(1 / 2, abs=1e-14)

    def test_slr_constant_x(self):
        with pytest.raises(SingularSystem):
            slr_closed([5.0, 5.0, 5.0], [1.0, 2.0, 3.0])

    def test_slr_matches_fit_standard(self):
        rng = np.random.default_rng(29)
        x = rng.normal(size=15)
        y = rng.normal(size=15)
        b0, b1 = slr_closed(x, y)
        f = fit_standard(MultiDataset(y, x[:, None], ("x",)))
        np.testing.assert_allclose([b0, b1], f.coeffs, rtol=1e-10, atol=1e-12)

    def test_nra2_hand_fixture(self, tri_dataset):
        a1, a2 = nra2_closed(tri_dataset.x, tri_dataset.y)
        assert (a1, a2) == pytest.approx((1.0, 1.0), abs=1e-14)

    def test_nra2_two_points(self):
        assert nra2_closed([1.0, 0.0], [0.0, 1.0]) == pytest.approx((1.0, 1.0), abs=1e-14)

    def test_nra2_proportional(self):
        x = np.array([1.0, 2.0, 3.0])
        with pytest.raises(SingularSystem):
            nra2_closed(x, 2 * x)

    def test_nra2_matches_fit_nonresponse(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            d = random_dataset(rng)
            a1, a2 = nra2_closed(d.x, d.y)
            f = fit_nonresponse(d, parse_terms("x,y"))
            np.testing.assert_allclose([a1, a2], f.coeffs, rtol=1e-10, atol=1e-12)


class TestUnivariate:
    def test_constant(self):
        r = univariate_nra(np.array([1.0, 1.0, 1.0]))
        assert r.alpha == 1 and r.mu_hat == 1 and r.r2 == 1

    def test_hand_fixture(self):
        r = univariate_nra(np.array([1.0, 2.0, 3.0]))
        assert r.alpha == pytest.approx(3 / 7, abs=1e-15)
        assert r.mu_hat == pytest.approx(7 / 3, abs=1e-15)
        assert r.r2 == pytest.approx(6 / 7, abs=1e-15)

    def test_zero_sum(self):
        with pytest.raises(MeanUndefined) as exc:
            univariate_nra(np.array([-1.0, 1.0]))
        assert exc.value.alpha == 0.0 and exc.value.r2 == 0.0

    def test_all_zero(self):
        with pytest.raises(ZeroVariance):
            univariate_nra(np.zeros(4))

    def test_noise_lowers_r2(self):
        base = np.full(50, 5.0)
        rng = np.random.default_rng(37)
        noise = rng.normal(0, 1, size=50)
        noise -= noise.mean()    # mean-preserving perturbation
        r_clean = univariate_nra(base).r2
        r_noisy = univariate_nra(base + noise).r2
        assert r_noisy < r_clean == 1.0


class TestConversion:
    def test_substitution(self):
        beta = beta_from_alpha([1.0, -2.0])
        np.testing.assert_allclose(beta, [1.0, 2.0], atol=1e-15)

    def test_round_trip(self):
        beta = np.array([5.0, -3.0])
        np.testing.assert_allclose(beta_from_alpha(alpha_from_beta(beta)), beta, atol=1e-15)

    def test_zero_alpha0(self):
        with pytest.raises(ConversionUndefined):
            beta_from_alpha([0.0, 1.0])


class TestOracleEquivalence:
    TERM_EXPS = [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]

    def test_nonresponse_vs_brute_force(self):
        rng = np.random.default_rng(41)
        for _ in range(30):
            m = int(rng.integers(2, 6))
            exps = self.TERM_EXPS[:m]
            d = random_dataset(rng)
            f = fit_nonresponse(d, [Term(a, b) for a, b in exps])
            ref = oracles.nonresponse_oracle(d.x, d.y, exps)
            np.testing.assert_allclose(f.coeffs, ref, rtol=1e-8)

    def test_rotation_vs_brute_force(self):
        rng = np.random.default_rng(43)
        for _ in range(15):
            m = int(rng.integers(2, 6))
            exps = self.TERM_EXPS[:m]
            pivot = int(rng.integers(0, m))
            d = random_dataset(rng)
            f = fit_rotation(d, [Term(a, b) for a, b in exps], pivot)
            ref = oracles.rotation_oracle(d.x, d.y, exps, pivot)
            np.testing.assert_allclose(f.coeffs, ref, rtol=1e-8)


class TestStationarityAndSpan:
    def test_gamma_equations_and_span(self):
        rng = np.random.default_rng(47)
        for _ in range(20):
            d = random_dataset(rng)
            f = fit_nonresponse(d, parse_terms("x,y"))
            a1, a2 = f.coeffs
            x, y = d.x, d.y
            scale = max(1.0, abs(np.sum(x)), abs(np.sum(y)))
            assert abs(a1 * np.sum(x**2) + a2 * np.sum(x * y) - np.sum(x)) <= 1e-8 * scale
            assert abs(a1 * np.sum(x * y) + a2 * np.sum(y**2) - np.sum(y)) <= 1e-8 * scale
            span = float(np.sum(a1 * x + a2 * y))
            assert span == pytest.approx(d.n * f.r_squared, rel=1e-10)
            assert span <= d.n + 1e-9

    def test_span_equality_on_exact_data(self, tri_dataset):
        f = fit_nonresponse(tri_dataset, parse_terms("x,y"))
        a1, a2 = f.coeffs
        span = float(np.sum(a1 * tri_dataset.x + a2 * tri_dataset.y))
        assert span == pytest.approx(tri_dataset.n, abs=1e-10)
