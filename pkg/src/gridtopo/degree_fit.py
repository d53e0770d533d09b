"""Cumulative degree distributions and decay-model fits.

The cumulative distribution (CCDF) assigns to each observed degree k >= 1
the fraction of non-isolated nodes whose degree is at least k.  Two
two-parameter models are fitted to it:

    power_law:    p(k) = a * k**(-gamma)
    exponential:  p(k) = a * exp(-k/kappa)

Fits minimize the sum of squared residuals in linear space, one
unweighted point per distinct degree.  A linear regression on log p
provides the starting point; a damped Gauss-Newton iteration refines it
until the relative SSE change drops below 1e-10 (200 iterations at most).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

MODELS = ("power_law", "exponential")
SSE_RELATIVE_TOLERANCE = 1e-10
MAX_ITERATIONS = 200


@dataclass(frozen=True)
class Ccdf:
    """Points (k, p) of a cumulative degree distribution."""

    points: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class FitResult:
    model: str
    a: float
    gamma_or_kappa: float
    sse: float
    r_squared: float


@dataclass(frozen=True)
class TailResidual:
    """Model residuals (prediction minus data) at one high degree."""

    degree: int
    p: float
    power_law_residual: float
    exponential_residual: float


@dataclass(frozen=True)
class FitComparison:
    power_law: FitResult
    exponential: FitResult
    preferred: str  # "power_law", "exponential", or "tie"
    tail_residuals: tuple[TailResidual, ...]


class FitNotConverged(RuntimeError):
    """Raised when the iteration cap is hit; carries the last iterate."""

    def __init__(self, message: str, last_result: FitResult):
        super().__init__(message)
        self.last_result = last_result


def build_ccdf(histogram: Sequence[int]) -> Ccdf:
    """CCDF over distinct observed degrees >= 1.

    ``histogram[k]`` is the number of nodes with degree k.  Isolated
    nodes are excluded from the base count.
    """
    counts = list(histogram)
    base = sum(counts[1:])
    if base <= 0:
        raise ValueError("ccdf undefined: all nodes are isolated")
    points = []
    remaining = base
    for k in range(1, len(counts)):
        if counts[k] > 0:
            points.append((k, remaining / base))
        remaining -= counts[k]
    return Ccdf(tuple(points))


def _prepare_points(ccdf: Ccdf) -> tuple[np.ndarray, np.ndarray]:
    points = sorted(ccdf.points)
    if len(points) < 3:
        raise ValueError("insufficient points: need at least 3 distinct degrees")
    ks = [k for k, _ in points]
    if len(set(ks)) != len(ks):
        raise ValueError("duplicate degree in ccdf points")
    k = np.array(ks, dtype=float)
    p = np.array([pv for _, pv in points], dtype=float)
    if np.any(k < 1) or np.any(p <= 0):
        raise ValueError("ccdf points must have degree >= 1 and p > 0")
    return k, p


def _log_space_guess(k: np.ndarray, p: np.ndarray, model: str) -> tuple[float, float]:
    """Linear regression on log p gives the starting parameters."""
    x = np.log(k) if model == "power_law" else k
    y = np.log(p)
    x_mean, y_mean = x.mean(), y.mean()
    denom = float(np.sum((x - x_mean) ** 2))
    if denom == 0.0:
        raise ValueError("cannot form initial guess: degenerate degree values")
    slope = float(np.sum((x - x_mean) * (y - y_mean))) / denom
    if slope >= 0.0:
        raise ValueError("cannot form initial guess: distribution is not decreasing")
    intercept = y_mean - slope * x_mean
    a0 = float(np.exp(intercept))
    shape0 = -slope if model == "power_law" else -1.0 / slope
    return a0, float(shape0)


def _predict(k: np.ndarray, a: float, shape: float, model: str) -> np.ndarray:
    if model == "power_law":
        return a * k ** (-shape)
    return a * np.exp(-k / shape)


def _jacobian(k: np.ndarray, a: float, shape: float, model: str) -> np.ndarray:
    if model == "power_law":
        base = k ** (-shape)
        return np.column_stack([base, -a * np.log(k) * base])
    base = np.exp(-k / shape)
    return np.column_stack([base, a * k / (shape * shape) * base])


def fit_model(ccdf: Ccdf, model: str) -> FitResult:
    """Least-squares fit of one model family to the CCDF in linear space."""
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    k, p = _prepare_points(ccdf)
    a, shape = _log_space_guess(k, p, model)

    def sse_of(av: float, sv: float) -> float:
        residual = _predict(k, av, sv, model) - p
        return float(residual @ residual)

    sse = sse_of(a, shape)
    damping = 1e-3
    converged = sse == 0.0
    iterations = 0
    while not converged and iterations < MAX_ITERATIONS:
        iterations += 1
        residual = _predict(k, a, shape, model) - p
        jac = _jacobian(k, a, shape, model)
        gradient = jac.T @ residual
        hessian = jac.T @ jac
        stepped = False
        while damping <= 1e12:
            lhs = hessian + damping * np.diag(np.diag(hessian))
            try:
                delta = np.linalg.solve(lhs, -gradient)
            except np.linalg.LinAlgError:
                damping *= 10.0
                continue
            cand_a, cand_shape = a + float(delta[0]), shape + float(delta[1])
            if cand_shape <= 0.0 or not np.isfinite(cand_a) or not np.isfinite(cand_shape):
                damping *= 10.0
                continue
            cand_sse = sse_of(cand_a, cand_shape)
            if cand_sse <= sse:
                relative_drop = (sse - cand_sse) / sse if sse > 0 else 0.0
                a, shape, sse = cand_a, cand_shape, cand_sse
                damping = max(damping / 10.0, 1e-12)
                if relative_drop < SSE_RELATIVE_TOLERANCE or sse == 0.0:
                    converged = True
                stepped = True
                break
            damping *= 10.0
        if not stepped:
            # no downhill step exists at any damping: stationary point
            converged = True

    total = float(np.sum((p - p.mean()) ** 2))
    r_squared = 1.0 - sse / total if total > 0 else 1.0
    result = FitResult(model, a, shape, sse, r_squared)
    if not converged:
        raise FitNotConverged(
            f"{model} fit did not converge in {MAX_ITERATIONS} iterations (sse={sse:.6g})", result
        )
    return result


def preferred_model(power_law_sse: float, exponential_sse: float) -> str:
    """Lower SSE wins; identical SSE is reported as an explicit tie."""
    if power_law_sse < exponential_sse:
        return "power_law"
    if exponential_sse < power_law_sse:
        return "exponential"
    return "tie"


def compare_fits(ccdf: Ccdf) -> FitComparison:
    """Fit both families, pick the lower-SSE one, and expose tail misfit."""
    power = fit_model(ccdf, "power_law")
    exponential = fit_model(ccdf, "exponential")
    preferred = preferred_model(power.sse, exponential.sse)
    top = sorted(ccdf.points, key=lambda kp: kp[0], reverse=True)[:3]
    tail = []
    for degree, p in top:
        karr = np.array([float(degree)])
        tail.append(
            TailResidual(
                degree=degree,
                p=p,
                power_law_residual=float(_predict(karr, power.a, power.gamma_or_kappa, "power_law")[0] - p),
                exponential_residual=float(
                    _predict(karr, exponential.a, exponential.gamma_or_kappa, "exponential")[0] - p
                ),
            )
        )
    return FitComparison(power, exponential, preferred, tuple(tail))


def fit_result_to_json(result: FitResult) -> str:
    return json.dumps(
        {
            "model": result.model,
            "a": result.a,
            "gamma_or_kappa": result.gamma_or_kappa,
            "sse": result.sse,
            "r_squared": result.r_squared,
        }
    )


def fit_result_from_json(text: str) -> FitResult:
    raw = json.loads(text)
    return FitResult(
        model=raw["model"],
        a=raw["a"],
        gamma_or_kappa=raw["gamma_or_kappa"],
        sse=raw["sse"],
        r_squared=raw["r_squared"],
    )


def ccdf_to_csv(ccdf: Ccdf) -> str:
    lines = ["k,p"]
    for k, p in sorted(ccdf.points):
        lines.append(f"{k},{p!r}")
    return "\n".join(lines) + "\n"
