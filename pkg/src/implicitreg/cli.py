"""Command-line front end.

Subcommands: fit, rotate-all, diagnose, simulate, convert.  CSV in,
text or JSON out.  Exit codes: 0 success, 2 input/parse, 3 singular or
degenerate, 4 domain error, 5 internal.

JSON field names are frozen in README.md (schema section); numbers are
serialized at full precision and only the text renderer rounds.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from . import conics, diagnostics, fitters, simulate, terms
from .errors import (
    DegenerateError,
    DomainViolation,
    ImplicitRegError,
    InputError,
    InvalidSpec,
    NotAnEllipse,
    NotRepresentable,
    SingularSystem,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_DOMAIN = 4
EXIT_INTERNAL = 5


@dataclass
class Report:
    model: dict
    coefficients: list[dict]
    r_squared: Optional[float] = None
    r2_formula: Optional[str] = None
    sigma2_hat: Optional[float] = None
    f_stat: Optional[float] = None
    separation: Optional[dict] = None
    pinwheel: Optional[list[dict]] = None
    conic: Optional[dict] = None
    univariate: Optional[dict] = None
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        return {k: v for k, v in out.items() if v is not None}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = []
        m = self.model
        lines.append(f"model: {m.get('kind')}  lhs={m.get('lhs')}  terms={m.get('terms')}"
                     f"  intercept={m.get('intercept')}")
        if self.coefficients:
            lines.append(f"{'term':>10} {'coef':>14} {'stderr':>12} {'t':>10}")
            for c in self.coefficients:
                se = _fmt(c.get("stderr"))
                t = _fmt(c.get("t_stat"))
                lines.append(f"{c['term']:>10} {c['value']:>14.8g} {se:>12} {t:>10}")
        if self.r_squared is not None:
            lines.append(f"R^2 = {self.r_squared:.8g}  [{self.r2_formula}]")
        if self.f_stat is not None:
            lines.append(f"F = {self.f_stat:.6g}")
        if self.univariate is not None:
            u = self.univariate
            lines.append(f"alpha = {u['alpha']:.10g}  mu_hat = {u['mu_hat']:.10g}"
                         f"  R^2 = {u['r2']:.10g}")
        if self.conic is not None:
            lines.append(f"conic class: {self.conic['class']}")
            if "center" in self.conic:
                cx, cy = self.conic["center"]
                a, b = self.conic["semi_axes"]
                lines.append(f"  center ({cx:.6g}, {cy:.6g})  semi-axes ({a:.6g}, {b:.6g})"
                             f"  rotation {self.conic['rotation']:.6g} rad")
        if self.separation is not None:
            s = self.separation
            lines.append(f"SST = {s['sst']:.8g}  SSM = {s['ssm']:.8g}  SSE = {s['sse']:.8g}")
            if s.get("theta_t") is not None:
                lines.append(f"theta_T = {s['theta_t']:.4f} deg  theta_M = {s['theta_m']:.4f} deg"
                             f"  theta_E = {s['theta_e']:.4f} deg")
                lines.append(f"height = {s['height']:.8g}  Ratio = {s['ratio']:.8g}")
            if s.get("unreconstructed"):
                lines.append(f"unreconstructed observations: {s['unreconstructed']}")
        if self.pinwheel is not None:
            lines.append("pinwheel lines:")
            for rec in self.pinwheel:
                if rec["vertical"]:
                    lines.append(f"  {rec['label']}: x = {rec['x_value']:.8g} (vertical)")
                else:
                    lines.append(f"  {rec['label']}: y = {rec['slope']:.8g}*x + {rec['intercept']:.8g}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        return "\n".join(lines)


def _fmt(v) -> str:
    if v is None:
        return "-"
    try:
        if v != v:   # NaN
            return "-"
    except TypeError:
        pass
    return f"{v:.6g}"


def _coeff_rows(fit: fitters.FitResult) -> list[dict]:
    rows = []
    se = np.sqrt(np.abs(np.diag(fit.cov)))
    for i, label in enumerate(fit.column_labels):
        stderr = float(se[i]) if np.isfinite(se[i]) else None
        t = float(fit.t_stats[i]) if np.isfinite(fit.t_stats[i]) else None
        rows.append({"term": label, "value": float(fit.coeffs[i]),
                     "stderr": stderr, "t_stat": t})
    return rows


def _separation_dict(d: diagnostics.SeparationDiagnostics) -> dict:
    return {
        "sst": d.sst, "ssm": d.ssm, "sse": d.sse,
        "theta_t": d.theta_t, "theta_m": d.theta_m, "theta_e": d.theta_e,
        "e_hat": d.e_hat, "height": d.height, "ratio": d.ratio,
        "perfect_fit": d.perfect_fit, "unreconstructed": d.unreconstructed,
    }


def _conic_coeffs_from_fit(term_list, coeffs) -> Optional[conics.ConicCoeffs]:
    """Map a unity fit over a subset of {x, y, xy, x^2, y^2} onto the
    five-coefficient conic layout; None when a term falls outside it."""
    slots = dict(zip(terms.CONIC_TERMS, range(5)))
    a = [0.0] * 5
    for t, v in zip(term_list, coeffs):
        if t not in slots:
            return None
        a[slots[t]] = float(v)
    try:
        return conics.ConicCoeffs(*a)
    except InvalidSpec:
        return None


def _conic_dict(c: conics.ConicCoeffs, warnings: list[str]) -> dict:
    kind = conics.classify_conic(c)
    out: dict[str, Any] = {"class": kind.value, "coeffs": list(c.as_array())}
    if kind in (conics.ConicClass.CIRCLE, conics.ConicClass.ELLIPSE):
        try:
            g = conics.conic_geometry(c)
            out["center"] = list(g.center)
            out["semi_axes"] = list(g.semi_axes)
            out["rotation"] = g.rotation
        except (NotAnEllipse, NotRepresentable) as exc:
            warnings.append(str(exc))
    return out


# --- model dispatch -------------------------------------------------------

def _parse_model(model: str) -> tuple[str, Optional[str]]:
    if model.startswith("rotation:"):
        return "rotation", model.split(":", 1)[1]
    if model in ("nonresponse", "standard", "univariate"):
        return model, None
    raise InvalidSpec(f"unknown model {model!r}")


def _fit_report(args) -> Report:
    kind, pivot_txt = _parse_model(args.model)
    warnings: list[str] = []

    if kind == "standard":
        md = terms.load_multi_csv(args.input, args.response_col)
        fit = fitters.fit_standard(md)
        return Report(
            model={"kind": "standard", "lhs": args.response_col,
                   "terms": list(md.column_names), "intercept": True},
            coefficients=_coeff_rows(fit), r_squared=fit.r_squared,
            r2_formula=fit.r2_formula, sigma2_hat=fit.sigma2_hat,
            f_stat=fit.f_stat, warnings=warnings)

    if kind == "univariate":
        d = terms.load_csv(args.input, args.x_col, args.y_col)
        res = fitters.univariate_nra(d.y)
        return Report(
            model={"kind": "univariate", "lhs": "unity", "terms": [args.y_col],
                   "intercept": False},
            coefficients=[{"term": args.y_col, "value": res.alpha,
                           "stderr": None, "t_stat": None}],
            r_squared=res.r2, r2_formula=fitters.R2_UNIVARIATE,
            univariate={"alpha": res.alpha, "mu_hat": res.mu_hat, "r2": res.r2},
            warnings=warnings)

    d = terms.load_csv(args.input, args.x_col, args.y_col)
    term_list = terms.parse_terms(args.terms)

    if kind == "nonresponse":
        fit = fitters.fit_nonresponse(d, term_list)
        report = Report(
            model={"kind": "nonresponse", "lhs": "unity",
                   "terms": [t.label() for t in term_list], "intercept": False},
            coefficients=_coeff_rows(fit), r_squared=fit.r_squared,
            r2_formula=fit.r2_formula, sigma2_hat=fit.sigma2_hat,
            warnings=warnings)
        c = _conic_coeffs_from_fit(term_list, fit.coeffs)
        if c is not None:
            report.conic = _conic_dict(c, warnings)
        return report

    # rotation
    pivot_term = terms.parse_terms(pivot_txt)[0]
    if pivot_term not in term_list:
        raise InvalidSpec(f"rotation pivot {pivot_txt!r} not in term list")
    pivot = term_list.index(pivot_term)
    fit = fitters.fit_rotation(d, term_list, pivot)
    return Report(
        model={"kind": "rotation", "lhs": pivot_term.label(),
               "terms": [t.label() for t in term_list], "intercept": True},
        coefficients=_coeff_rows(fit), r_squared=fit.r_squared,
        r2_formula=fit.r2_formula, sigma2_hat=fit.sigma2_hat,
        f_stat=fit.f_stat, warnings=warnings)


def cmd_fit(args) -> int:
    return _emit(args, _fit_report(args))


def cmd_rotate_all(args) -> int:
    d = terms.load_csv(args.input, args.x_col, args.y_col)
    term_list = terms.parse_terms(args.terms)
    reports = []
    for term, result in zip(term_list, fitters.fit_all_rotations(d, term_list)):
        if isinstance(result, DegenerateError):
            reports.append(Report(
                model={"kind": "rotation", "lhs": term.label(),
                       "terms": [t.label() for t in term_list], "intercept": True},
                coefficients=[], warnings=[f"{type(result).__name__}: {result}"]))
        else:
            reports.append(Report(
                model={"kind": "rotation", "lhs": term.label(),
                       "terms": [t.label() for t in term_list], "intercept": True},
                coefficients=_coeff_rows(result), r_squared=result.r_squared,
                r2_formula=result.r2_formula, sigma2_hat=result.sigma2_hat,
                f_stat=result.f_stat))
    if args.output == "json":
        text = json.dumps([r.to_dict() for r in reports], indent=2)
    else:
        text = "\n\n".join(r.to_text() for r in reports)
    _write_out(args, text)
    return EXIT_OK


def cmd_diagnose(args) -> int:
    report = _fit_report(args)
    kind, _ = _parse_model(args.model)
    d = terms.load_csv(args.input, args.x_col, args.y_col) if kind != "standard" else None

    if kind == "nonresponse":
        term_list = terms.parse_terms(args.terms)
        fit = fitters.fit_nonresponse(d, term_list)
        c = _conic_coeffs_from_fit(term_list, fit.coeffs)
        if c is None:
            raise InvalidSpec("diagnosis needs terms drawn from {x, y, xy, x2, y2}")
        x_hat, y_hat, _bad = diagnostics.reconstruct_from_conic(c, d)
        sep = diagnostics.separation_bivariate(d.x, x_hat, d.y, y_hat)
        report.separation = _separation_dict(sep)
        if sep.perfect_fit:
            report.warnings.append("PerfectFit")
        if set(term_list) == {terms.Term(1, 0), terms.Term(0, 1)}:
            report.pinwheel = [dataclasses.asdict(p) for p in diagnostics.pinwheel_data(d)]
    elif kind in ("rotation", "standard"):
        if kind == "standard":
            md = terms.load_multi_csv(args.input, args.response_col)
            fit = fitters.fit_standard(md)
        else:
            term_list = terms.parse_terms(args.terms)
            pivot_term = terms.parse_terms(args.model.split(":", 1)[1])[0]
            fit = fitters.fit_rotation(d, term_list, term_list.index(pivot_term))
        sep = diagnostics.separation_univariate(fit.target, fit.fitted)
        report.separation = _separation_dict(sep)
        if sep.perfect_fit:
            report.warnings.append("PerfectFit")
    else:
        raise InvalidSpec("diagnose supports nonresponse, rotation, and standard models")
    return _emit(args, report)


_SIM_PARAMS = {
    "line": (simulate.Line, ("b0", "b1")),
    "circle": (simulate.Circle, ("cx", "cy", "r")),
    "ellipse": (simulate.Ellipse, ("cx", "cy", "ax", "ay", "rot")),
    "normal": (simulate.ConstantNormal, ("mu", "sigma")),
    "uniform": (simulate.Uniform, ("a", "b")),
}


def cmd_simulate(args) -> int:
    cls, names = _SIM_PARAMS[args.kind]
    values = [float(v) for v in args.params.split(",")] if args.params else []
    if len(values) != len(names):
        raise InvalidSpec(f"kind {args.kind} takes parameters {','.join(names)}")
    spec = simulate.GeneratorSpec(kind=cls(*values), n=args.n,
                                  noise_sigma=args.noise, seed=args.seed)
    out = simulate.generate(spec)
    if isinstance(out, terms.Dataset):
        rows = ["x,y"] + [f"{float(xi)!r},{float(yi)!r}" for xi, yi in zip(out.x, out.y)]
    else:
        rows = ["y"] + [repr(float(v)) for v in out]
    _write_out(args, "\n".join(rows))
    return EXIT_OK


def cmd_convert(args) -> int:
    values = [float(v) for v in args.values.split(",")]
    if args.direction == "beta-from-alpha":
        out = fitters.beta_from_alpha(values)
        label = "beta"
    else:
        out = fitters.alpha_from_beta(values)
        label = "alpha"
    if args.output == "json":
        _write_out(args, json.dumps({label: [float(v) for v in out]}))
    else:
        _write_out(args, f"{label} = " + ", ".join(f"{v:.12g}" for v in out))
    return EXIT_OK


def _emit(args, report: Report) -> int:
    _write_out(args, report.to_json() if args.output == "json" else report.to_text())
    return EXIT_OK


def _write_out(args, text: str) -> None:
    out_file = getattr(args, "out_file", None)
    if out_file:
        with open(out_file, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="implicitreg",
                                     description="Implicit regression toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True)
        p.add_argument("--x-col", default="x")
        p.add_argument("--y-col", default="y")
        p.add_argument("--response-col", default="y")
        p.add_argument("--output", choices=("text", "json"), default="text")
        p.add_argument("--out-file", default=None)

    p = sub.add_parser("fit", help="fit one model")
    common(p)
    p.add_argument("--model", required=True,
                   help="nonresponse | rotation:<term> | standard | univariate")
    p.add_argument("--terms", default="x,y")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("rotate-all", help="fit every rotation of a term set")
    common(p)
    p.add_argument("--terms", required=True)
    p.set_defaults(func=cmd_rotate_all)

    p = sub.add_parser("diagnose", help="fit plus separation diagnostics")
    common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--terms", default="x,y")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("simulate", help="emit a seeded synthetic dataset as CSV")
    p.add_argument("--kind", choices=sorted(_SIM_PARAMS), required=True)
    p.add_argument("--params", default="",
                   help="comma-separated kind parameters, e.g. cx,cy,r for circle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-file", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("convert", help="convert between coefficient forms")
    p.add_argument("--direction", choices=("beta-from-alpha", "alpha-from-beta"),
                   required=True)
    p.add_argument("--values", required=True, help="comma-separated coefficients")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--out-file", default=None)
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegenerateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except DomainViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ImplicitRegError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
