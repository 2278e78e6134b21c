"""Term algebra, dataset ingestion, and design-matrix construction.

A Term is the monomial x^a * y^b.  Model columns are terms evaluated
row-wise over a two-variable dataset; the target column is either the
unity vector, one pivot term, or an external response column.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DomainError,
    DuplicateTerm,
    EmptyDataset,
    InvalidSpec,
    NamedColumnMissing,
    ParseError,
    TermSyntaxError,
    Underdetermined,
)


@dataclass(frozen=True)
class Term:
    """Monomial x^x_exp * y^y_exp.  Term(0, 0) is the intercept column."""

    x_exp: float
    y_exp: float

    def evaluate(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return _pow(x, self.x_exp, self) * _pow(y, self.y_exp, self)

    def label(self) -> str:
        if self.x_exp == 0 and self.y_exp == 0:
            return "1"
        if self.x_exp == 1 and self.y_exp == 1:
            return "xy"
        parts = []
        for sym, e in (("x", self.x_exp), ("y", self.y_exp)):
            if e == 0:
                continue
            if e == 1:
                parts.append(sym)
            else:
                parts.append(f"{sym}^{_fmt_exp(e)}")
        return "*".join(parts)

    def __str__(self) -> str:
        return self.label()


def _fmt_exp(e: float) -> str:
    return str(int(e)) if float(e).is_integer() else repr(e)


def _pow(base: np.ndarray, exp: float, term: Term) -> np.ndarray:
    """x^exp with explicit domain checking instead of silent NaN.

    exp = 0 always yields 1 (including at 0, by the intercept convention);
    a fractional exponent of a negative base and a negative exponent at
    zero are undefined and raise DomainError with the offending row.
    """
    if exp == 0:
        return np.ones_like(base, dtype=float)
    integral = float(exp).is_integer()
    if not integral:
        bad = base < 0
        if bad.any():
            raise DomainError(int(np.argmax(bad)) + 1, term)
    if exp < 0:
        bad = base == 0
        if bad.any():
            raise DomainError(int(np.argmax(bad)) + 1, term)
    out = np.power(base.astype(float), exp)
    if not np.all(np.isfinite(out)):
        raise DomainError(int(np.argmax(~np.isfinite(out))) + 1, term)
    return out


@dataclass(frozen=True)
class Dataset:
    """Paired observations (x_i, y_i), i = 1..n."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float))
        if self.x.ndim != 1 or self.y.ndim != 1 or len(self.x) != len(self.y):
            raise InvalidSpec("x and y must be equal-length vectors")
        if len(self.x) < 1:
            raise EmptyDataset("dataset has no observations")
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.y))):
            raise InvalidSpec("dataset entries must be finite")

    @property
    def n(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class MultiDataset:
    """Response column plus p explanatory columns (linear-in-columns path)."""

    response: np.ndarray
    explanatory: np.ndarray
    column_names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "response", np.asarray(self.response, dtype=float))
        expl = np.asarray(self.explanatory, dtype=float)
        if expl.ndim == 1:
            expl = expl[:, None]
        object.__setattr__(self, "explanatory", expl)
        object.__setattr__(self, "column_names", tuple(self.column_names))
        if expl.shape[0] != len(self.response):
            raise InvalidSpec("explanatory rows must match response length")
        if expl.shape[1] != len(self.column_names):
            raise InvalidSpec("one name per explanatory column required")
        if len(self.response) < 1:
            raise EmptyDataset("dataset has no observations")
        if not (np.all(np.isfinite(self.response)) and np.all(np.isfinite(expl))):
            raise InvalidSpec("dataset entries must be finite")

    @property
    def n(self) -> int:
        return len(self.response)

    @property
    def p(self) -> int:
        return self.explanatory.shape[1]


class LhsKind(Enum):
    UNITY = "unity"
    TERM = "term"
    RESPONSE = "response"


@dataclass(frozen=True)
class ModelSpec:
    """Which column sits on the left, which terms (plus optional intercept)
    sit on the right."""

    lhs: LhsKind
    rhs_terms: tuple[Term, ...]
    intercept: bool = False
    lhs_term: Optional[Term] = None

    def __post_init__(self):
        object.__setattr__(self, "rhs_terms", tuple(self.rhs_terms))
        if not self.rhs_terms:
            raise InvalidSpec("rhs_terms must be non-empty")
        seen = set()
        for t in self.rhs_terms:
            if t in seen:
                raise DuplicateTerm(t)
            seen.add(t)
        if self.lhs is LhsKind.UNITY and self.intercept:
            raise InvalidSpec("the unity-regressand model carries no intercept")
        if self.lhs is LhsKind.TERM:
            if self.lhs_term is None:
                raise InvalidSpec("lhs_term required when lhs is a term")
            if self.lhs_term in self.rhs_terms:
                raise InvalidSpec("pivot term must be excluded from rhs_terms")
        elif self.lhs_term is not None:
            raise InvalidSpec("lhs_term only meaningful when lhs is a term")

    @classmethod
    def nonresponse(cls, terms: Sequence[Term]) -> "ModelSpec":
        return cls(LhsKind.UNITY, tuple(terms), intercept=False)

    @classmethod
    def rotation(cls, terms: Sequence[Term], pivot: int) -> "ModelSpec":
        terms = tuple(terms)
        if not 0 <= pivot < len(terms):
            raise InvalidSpec(f"pivot {pivot} out of range")
        rhs = terms[:pivot] + terms[pivot + 1:]
        return cls(LhsKind.TERM, rhs, intercept=True, lhs_term=terms[pivot])

    @classmethod
    def response(cls, terms: Sequence[Term], intercept: bool = True) -> "ModelSpec":
        return cls(LhsKind.RESPONSE, tuple(terms), intercept=intercept)

    def column_labels(self) -> list[str]:
        labels = ["const"] if self.intercept else []
        labels.extend(t.label() for t in self.rhs_terms)
        return labels


@dataclass(frozen=True)
class ColumnSpec:
    """Model over named explanatory columns (the linear-in-columns path);
    no term algebra attached."""

    names: tuple[str, ...]
    intercept: bool = True
    lhs: LhsKind = LhsKind.RESPONSE

    def column_labels(self) -> list[str]:
        labels = ["const"] if self.intercept else []
        labels.extend(self.names)
        return labels


# --- term grammar ---------------------------------------------------------

_ALIASES = {
    "x": Term(1, 0),
    "y": Term(0, 1),
    "xy": Term(1, 1),
    "x2": Term(2, 0),
    "y2": Term(0, 2),
    "1": Term(0, 0),
}

_FACTOR_RE = re.compile(r"^(x|y)(?:\^(-?\d+(?:\.\d+)?))?$")

CONIC_TERMS = (Term(1, 0), Term(0, 1), Term(1, 1), Term(2, 0), Term(0, 2))


def parse_terms(spec: str) -> list[Term]:
    """Parse a comma-separated term list, e.g. "x,y,xy,x2,y2" or "x^0.5*y^-1"."""
    terms: list[Term] = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            raise TermSyntaxError(token)
        term = _parse_token(token)
        if term in terms:
            raise DuplicateTerm(term)
        terms.append(term)
    return terms


def _parse_token(token: str) -> Term:
    if token in _ALIASES:
        return _ALIASES[token]
    x_exp = 0.0
    y_exp = 0.0
    for factor in token.split("*"):
        factor = factor.strip()
        if factor in _ALIASES:
            t = _ALIASES[factor]
            x_exp += t.x_exp
            y_exp += t.y_exp
            continue
        m = _FACTOR_RE.match(factor)
        if not m:
            raise TermSyntaxError(token)
        exp = float(m.group(2)) if m.group(2) is not None else 1.0
        if m.group(1) == "x":
            x_exp += exp
        else:
            y_exp += exp
    return Term(x_exp, y_exp)


# --- CSV ingestion --------------------------------------------------------

def _parse_cell(value: str, row: int, column: str) -> float:
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise ParseError(row, value, column) from None
    if not math.isfinite(v):
        raise ParseError(row, value, column)
    return v


def load_csv(path, x_col: str = "x", y_col: str = "y") -> Dataset:
    """Read a two-column dataset from a UTF-8 CSV with one header row.

    Data rows are numbered from 1 in error reports.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in (x_col, y_col):
            if col not in header:
                raise NamedColumnMissing(col)
        xs, ys = [], []
        for i, record in enumerate(reader, start=1):
            xs.append(_parse_cell(record[x_col], i, x_col))
            ys.append(_parse_cell(record[y_col], i, y_col))
    if not xs:
        raise EmptyDataset(f"{path}: no data rows")
    return Dataset(np.array(xs), np.array(ys))


def load_multi_csv(path, response_col: str) -> MultiDataset:
    """Read a response column plus every remaining column as explanatory."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = list(reader.fieldnames or [])
        if response_col not in header:
            raise NamedColumnMissing(response_col)
        expl_cols = [c for c in header if c != response_col]
        if not expl_cols:
            raise NamedColumnMissing("<explanatory>")
        resp, rows = [], []
        for i, record in enumerate(reader, start=1):
            resp.append(_parse_cell(record[response_col], i, response_col))
            rows.append([_parse_cell(record[c], i, c) for c in expl_cols])
    if not resp:
        raise EmptyDataset(f"{path}: no data rows")
    return MultiDataset(np.array(resp), np.array(rows), tuple(expl_cols))


def save_csv(path, d: Dataset, x_col: str = "x", y_col: str = "y") -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([x_col, y_col])
        for xi, yi in zip(d.x, d.y):
            writer.writerow([repr(float(xi)), repr(float(yi))])


# --- design matrix --------------------------------------------------------

def design_matrix(d: Dataset, spec: ModelSpec) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate the model columns and the target over a dataset.

    Column k of W is the k-th rhs term evaluated row-wise, with a leading
    column of ones when the spec carries an intercept.  The target is the
    unity vector, the pivot term, or (for the response kind) d.y.
    """
    cols = []
    if spec.intercept:
        cols.append(np.ones(d.n))
    for t in spec.rhs_terms:
        cols.append(t.evaluate(d.x, d.y))
    W = np.column_stack(cols)
    if spec.lhs is LhsKind.UNITY:
        t_vec = np.ones(d.n)
    elif spec.lhs is LhsKind.TERM:
        t_vec = spec.lhs_term.evaluate(d.x, d.y)
    else:
        t_vec = d.y.copy()
    if d.n < W.shape[1]:
        raise Underdetermined(f"{d.n} observations for {W.shape[1]} columns")
    return W, t_vec
