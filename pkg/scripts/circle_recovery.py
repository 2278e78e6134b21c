"""Recover circle geometry from noisy points at several noise levels.

Fits the five-term unit-constant model, inverts the coefficients to
center and radius, and reports the recovery error plus R^2 and the
separation diagnostics of the reconstruction.
"""

import argparse

from implicitreg import Circle, GeneratorSpec, fit_nonresponse, generate
from implicitreg.conics import ConicCoeffs, classify_conic, conic_geometry
from implicitreg.diagnostics import reconstruct_from_conic, separation_bivariate
from implicitreg.terms import CONIC_TERMS


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--center", type=float, nargs=2, default=(0.0, 0.0))
    ap.add_argument("--radius", type=float, default=2.0)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--sigmas", type=float, nargs="+", default=[0.0, 0.02, 0.05, 0.1, 0.2])
    args = ap.parse_args()

    cx, cy = args.center
    print(f"truth: center ({cx}, {cy}), radius {args.radius}")
    print(f"{'sigma':>6} {'class':>10} {'center err':>11} {'radius err':>11} "
          f"{'R^2':>8} {'theta_t':>8} {'ratio':>8}")
    for sigma in args.sigmas:
        spec = GeneratorSpec(Circle(cx, cy, args.radius), n=args.n,
                             noise_sigma=sigma, seed=args.seed)
        d = generate(spec)
        fit = fit_nonresponse(d, CONIC_TERMS)
        conic = ConicCoeffs(*fit.coeffs)
        geom = conic_geometry(conic)
        center_err = ((geom.center[0] - cx) ** 2 + (geom.center[1] - cy) ** 2) ** 0.5
        radius_err = abs(0.5 * (geom.semi_axes[0] + geom.semi_axes[1]) - args.radius)
        x_hat, y_hat, _ = reconstruct_from_conic(conic, d)
        sep = separation_bivariate(d.x, x_hat, d.y, y_hat)
        theta = "exact" if sep.perfect_fit else f"{sep.theta_t:8.2f}"
        ratio = "  --  " if sep.ratio is None else f"{sep.ratio:8.4f}"
        print(f"{sigma:6.2f} {classify_conic(conic).value:>10} {center_err:11.4f} "
              f"{radius_err:11.4f} {fit.r_squared:8.4f} {theta:>8} {ratio:>8}")


if __name__ == "__main__":
    main()
