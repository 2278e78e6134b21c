"""Estimation procedures.

Generic implicit fit, the unity-regressand (non-response) fit, rotational
fits, alias matrices, standard multi-column OLS, closed-form SLR and
two-term bivariate solutions, the univariate self-weighting estimator, and
the conversion between unit-constant and response-form coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    ConversionUndefined,
    DegenerateError,
    MeanUndefined,
    SingularSystem,
    Underdetermined,
    ZeroVariance,
)
from .linsolve import cramer_2x2, gauss_solve, solve_normal, singular_tolerance
from .terms import ColumnSpec, Dataset, LhsKind, ModelSpec, MultiDataset, Term, design_matrix

R2_NONRESPONSE = "Eq12-nonresponse"
R2_CENTERED = "Eq8-centered"
R2_UNIVARIATE = "Eq14-univariate"


@dataclass
class FitResult:
    spec: Union[ModelSpec, ColumnSpec]
    coeffs: np.ndarray          # rhs order, intercept first when present
    residuals: np.ndarray       # target - W @ coeffs
    fitted: np.ndarray
    target: np.ndarray
    r_squared: float
    r2_formula: str
    sigma2_hat: float
    cov: np.ndarray
    t_stats: np.ndarray
    f_stat: Optional[float]
    gram_inverse: np.ndarray
    n: int
    column_labels: list[str] = field(default_factory=list)

    @property
    def sse(self) -> float:
        return float(self.residuals @ self.residuals)


def _finish(spec: Union[ModelSpec, ColumnSpec], W: np.ndarray, t: np.ndarray,
            column_labels: Optional[list[str]] = None) -> FitResult:
    n, m = W.shape
    coeffs, gram_inverse = solve_normal(W, t)
    fitted = W @ coeffs
    residuals = t - fitted
    sse = float(residuals @ residuals)

    if spec.lhs is LhsKind.UNITY:
        r2 = float(coeffs @ (W.T @ t)) / n
        tag = R2_NONRESPONSE
        f_stat = None
    else:
        tbar = float(np.mean(t))
        sst_c = float(t @ t) - n * tbar * tbar
        if sst_c <= singular_tolerance(np.atleast_2d(t @ t)):
            raise ZeroVariance("target has zero centered variation")
        ssr_c = float(coeffs @ (W.T @ t)) - n * tbar * tbar
        r2 = ssr_c / sst_c
        tag = R2_CENTERED
        if spec.intercept and m > 1 and n > m and sse > 0:
            f_stat = (ssr_c / (m - 1)) / (sse / (n - m))
        else:
            f_stat = None

    sigma2 = sse / (n - m) if n > m else float("nan")
    cov = sigma2 * gram_inverse
    diag = np.diag(cov)
    with np.errstate(divide="ignore", invalid="ignore"):
        t_stats = np.where(diag > 0, coeffs / np.sqrt(np.where(diag > 0, diag, 1.0)), np.nan)
    return FitResult(
        spec=spec, coeffs=coeffs, residuals=residuals, fitted=fitted, target=t,
        r_squared=r2, r2_formula=tag, sigma2_hat=sigma2, cov=cov,
        t_stats=t_stats, f_stat=f_stat, gram_inverse=gram_inverse, n=n,
        column_labels=column_labels if column_labels is not None else spec.column_labels(),
    )


def fit_implicit(d: Dataset, spec: ModelSpec) -> FitResult:
    """Least-squares fit of the implicit model given by spec."""
    W, t = design_matrix(d, spec)
    return _finish(spec, W, t)


def fit_nonresponse(d: Dataset, terms: Sequence[Term]) -> FitResult:
    """Fit 1 = sum_k a_k T_k (unity as the regressand, no intercept)."""
    return fit_implicit(d, ModelSpec.nonresponse(terms))


def fit_rotation(d: Dataset, terms: Sequence[Term], pivot: int) -> FitResult:
    """OLS of the pivot term on an intercept plus every remaining term."""
    return fit_implicit(d, ModelSpec.rotation(terms, pivot))


def fit_all_rotations(d: Dataset, terms: Sequence[Term]) -> list[Union[FitResult, DegenerateError]]:
    """One rotation fit per pivot, in term order.

    A degenerate pivot (singular design, constant target) is recorded in
    its slot as the exception instance rather than aborting the remaining
    rotations; global errors (domain violations) still propagate.
    """
    out: list[Union[FitResult, DegenerateError]] = []
    for pivot in range(len(terms)):
        try:
            out.append(fit_rotation(d, terms, pivot))
        except DegenerateError as exc:
            out.append(exc)
    return out


def alias_matrix(X1: np.ndarray, X2: np.ndarray) -> np.ndarray:
    """A = (X1'X1)^{-1} X1'X2, the projection of excluded columns onto
    included ones.  Column j of A is the rotation-fit coefficient vector
    for the j-th excluded column."""
    X1 = np.asarray(X1, dtype=float)
    X2 = np.asarray(X2, dtype=float)
    if X2.ndim == 1:
        X2 = X2[:, None]
    return gauss_solve(X1.T @ X1, X1.T @ X2)


def fit_standard(d: MultiDataset) -> FitResult:
    """Intercept OLS of the response on the explanatory columns."""
    n = d.n
    X = np.column_stack([np.ones(n), d.explanatory])
    if n < X.shape[1]:
        raise Underdetermined(f"{n} observations for {X.shape[1]} columns")
    spec = ColumnSpec(names=d.column_names, intercept=True)
    return _finish(spec, X, d.response)


def slr_closed(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Simple-linear-regression slope and intercept by the raw-sum ratios."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    sx, sy = float(np.sum(x)), float(np.sum(y))
    sxx, sxy = float(x @ x), float(x @ y)
    delta = n * sxx - sx * sx
    if abs(delta) < singular_tolerance(np.array([[n, sx], [sx, sxx]])):
        raise SingularSystem(message="constant x: zero SLR determinant")
    b1 = (n * sxy - sx * sy) / delta
    b0 = sy / n - b1 * sx / n
    return b0, b1


def nra2_closed(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Two-term unit-constant line 1 = a1*x + a2*y by the raw-sum ratios."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    sx, sy = float(np.sum(x)), float(np.sum(y))
    sxx, syy, sxy = float(x @ x), float(y @ y), float(x @ y)
    delta = sxx * syy - sxy * sxy
    if abs(delta) < singular_tolerance(np.array([[sxx, sxy], [sxy, syy]])):
        raise SingularSystem(message="x and y proportional: zero determinant")
    a1 = (syy * sx - sxy * sy) / delta
    a2 = (sxx * sy - sxy * sx) / delta
    return a1, a2


@dataclass(frozen=True)
class UnivariateResult:
    alpha: float    # slope of 1 = alpha * y
    mu_hat: float   # self-weighting mean, sum(y^2)/sum(y)
    r2: float       # (sum y)^2 / (n * sum y^2)


def univariate_nra(y: np.ndarray) -> UnivariateResult:
    """Fit 1 = alpha*y; the reciprocal slope is the self-weighting mean."""
    y = np.asarray(y, dtype=float)
    n = len(y)
    sy = float(np.sum(y))
    syy = float(y @ y)
    if syy <= 0:
        raise ZeroVariance("all-zero variable")
    if sy == 0:
        raise MeanUndefined(alpha=0.0, r2=0.0)
    alpha = sy / syy
    return UnivariateResult(alpha=alpha, mu_hat=syy / sy, r2=sy * sy / (n * syy))


def beta_from_alpha(alpha: Sequence[float]) -> np.ndarray:
    """Map unit-constant coefficients (a0 on the response term, then a_i)
    to response-form coefficients: b0 = 1/a0, b_i = -a_i/a0.

    This is the algebraic inversion of 1 = a0*y + sum a_i x_i into
    y = b0 + sum b_i x_i.
    """
    alpha = np.asarray(alpha, dtype=float)
    a0 = alpha[0]
    if a0 == 0:
        raise ConversionUndefined("coefficient on the response term is zero")
    out = np.empty_like(alpha)
    out[0] = 1.0 / a0
    out[1:] = -alpha[1:] / a0
    return out


def alpha_from_beta(beta: Sequence[float]) -> np.ndarray:
    """Exact inverse of beta_from_alpha: a0 = 1/b0, a_i = -b_i/b0."""
    beta = np.asarray(beta, dtype=float)
    b0 = beta[0]
    if b0 == 0:
        raise ConversionUndefined("intercept is zero")
    out = np.empty_like(beta)
    out[0] = 1.0 / b0
    out[1:] = -beta[1:] / b0
    return out
