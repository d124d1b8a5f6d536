"""
Bounded Levenberg-Marquardt fitting of S-curve superpositions.

The free parameters are a and m for a single curve (its weight is fixed at
1), and a plus every (p_i, m_i) pair for a superposition. Inflection points
are chosen from the data and stay fixed during the fit.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import least_squares

from curves import CurveError, eval_superposition
from distributions import RangeError
from inflections import select_inflections
from measures import compute_measures, default_interval
from models import (
	A_LOWER_BOUND, Component, EmpiricalCDF, FitConfig, FitReport, HistogramSpec,
	InflectionSet, InitMode, Strategy, Superposition, TargetCurve
)

CurveData = Union[EmpiricalCDF, TargetCurve]

JACOBIAN_STEP = 1e-6

# scipy termination status -> (converged, message)
STOP_REASONS = {
	0: (False, "maximum iterations reached"),
	1: (True, "gradient below tolerance"),
	2: (True, "relative SSE reduction below tolerance"),
	3: (True, "step below tolerance"),
	4: (True, "relative SSE reduction and step below tolerance")
}


class FitError(ValueError):
	"""Raised for invalid fit configurations."""
	pass


@dataclass(frozen=True)
class FitJob:
	"""One independent fit for fit_many."""
	data: CurveData
	inflections: InflectionSet
	config: FitConfig
	histogram: Optional[HistogramSpec] = None
	label: str = ""
	source: str = ""


def residuals(sup: Superposition, data: CurveData) -> np.ndarray:
	"""
	Model minus data at every point of the curve.

	Args:
		sup: Superposition to evaluate
		data: ECDF or target, one residual per unique x

	Returns:
		Vector r with r_k = y_net(xs[k]) - fractions[k]
	"""
	if len(data) == 0:
		raise FitError("Cannot compute residuals on empty data")
	return np.asarray(eval_superposition(sup, data.xs), dtype=float) - np.asarray(data.fractions, dtype=float)


def forward_jacobian(
	func: Callable[[np.ndarray], np.ndarray],
	theta: np.ndarray,
	base: Optional[np.ndarray] = None
) -> np.ndarray:
	"""Forward-difference Jacobian with step 1e-6 * max(1, |theta_j|)."""
	theta = np.asarray(theta, dtype=float)
	base = func(theta) if base is None else base
	jac = np.empty((base.size, theta.size))
	for j in range(theta.size):
		h = JACOBIAN_STEP * max(1.0, abs(theta[j]))
		shifted = theta.copy()
		shifted[j] += h
		jac[:, j] = (func(shifted) - base) / h
	return jac


def check_config(config: FitConfig, inflections: InflectionSet) -> None:
	"""
	Validate a configuration against the available inflection points.

	Raises:
		FitError: If n < 1, the bound or starting values are invalid, or
			there are fewer inflection points than components
	"""
	if config.n < 1:
		raise FitError(f"n must be at least 1, got {config.n}")
	if not math.isfinite(config.a_lower_bound) or config.a_lower_bound < A_LOWER_BOUND:
		raise FitError(f"a_lower_bound must be at least {A_LOWER_BOUND}, got {config.a_lower_bound}")
	if not math.isfinite(config.init_a) or config.init_a <= 0:
		raise FitError(f"init_a must be positive, got {config.init_a}")
	if config.max_iterations < 1:
		raise FitError(f"max_iterations must be at least 1, got {config.max_iterations}")
	if len(inflections) < config.n:
		raise FitError(f"Need {config.n} inflection points, got {len(inflections)}")
	try:
		config.initial_slopes()
		config.initial_weights()
	except ValueError as e:
		raise FitError(str(e))


def _bracketing_slope(data: CurveData, x_c: float, fallback: float) -> float:
	xs = np.asarray(data.xs, dtype=float)
	ys = np.asarray(data.fractions, dtype=float)
	left = max(int(np.searchsorted(xs, x_c, side="left")) - 1, 0)
	right = min(int(np.searchsorted(xs, x_c, side="right")), xs.size - 1)
	if right <= left:
		return fallback
	return float((ys[right] - ys[left]) / (xs[right] - xs[left]))


def _initial_components(
	data: CurveData,
	points: Sequence[Tuple[float, float]],
	config: FitConfig
) -> List[Component]:
	n = len(points)
	slopes = config.initial_slopes(n)
	weights = [1.0] if n == 1 else config.initial_weights(n)
	if config.init_mode == InitMode.SLOPE_AT_INFLECTION:
		slopes = [_bracketing_slope(data, x_c, m) for (x_c, _), m in zip(points, slopes)]
	return [
		Component(p=p, m=m, x_c=x_c, y_c=y_c)
		for p, m, (x_c, y_c) in zip(weights, slopes, points)
	]


def _pack(sup: Superposition) -> np.ndarray:
	if sup.n == 1:
		return np.array([sup.a, sup.components[0].m])
	values = [sup.a]
	for comp in sup.components:
		values.extend([comp.p, comp.m])
	return np.array(values, dtype=float)


def _unpack(theta: np.ndarray, points: Sequence[Tuple[float, float]]) -> Superposition:
	if len(points) == 1:
		x_c, y_c = points[0]
		return Superposition(a=float(theta[0]), components=(Component(1.0, float(theta[1]), x_c, y_c),))
	return Superposition(
		a=float(theta[0]),
		components=tuple(
			Component(p=float(theta[1 + 2 * i]), m=float(theta[2 + 2 * i]), x_c=x_c, y_c=y_c)
			for i, (x_c, y_c) in enumerate(points)
		)
	)


def _least_squares(
	residual: Callable[[np.ndarray], np.ndarray],
	theta: np.ndarray,
	config: FitConfig
) -> Tuple[np.ndarray, float, float, int, bool, str]:
	theta = np.asarray(theta, dtype=float).copy()
	theta[0] = max(theta[0], config.a_lower_bound)
	r = residual(theta)
	initial_sse = float(r @ r)
	if not math.isfinite(initial_sse):
		return theta, initial_sse, initial_sse, 0, False, "initial point gives a non-finite SSE"
	if initial_sse == 0.0:
		return theta, 0.0, 0.0, 0, True, "exact fit"

	def objective(values: np.ndarray) -> np.ndarray:
		try:
			return residual(values)
		except CurveError:
			return np.full(r.size, np.inf)

	lower = np.full(theta.size, -np.inf)
	lower[0] = config.a_lower_bound
	result = least_squares(
		objective,
		theta,
		jac=lambda values: forward_jacobian(objective, values),
		bounds=(lower, np.inf),
		method="trf",
		x_scale="jac",
		ftol=config.sse_rel_tol,
		xtol=config.xtol,
		gtol=config.grad_tol,
		max_nfev=config.max_iterations
	)

	sse = float(result.fun @ result.fun)
	iterations = int(result.njev or 0)
	converged, message = STOP_REASONS.get(result.status, (False, str(result.message)))
	if not math.isfinite(sse) or sse > initial_sse:
		return theta, initial_sse, initial_sse, iterations, False, message
	fitted = result.x.copy()
	fitted[0] = max(fitted[0], config.a_lower_bound)
	return fitted, sse, initial_sse, iterations, converged, message


def fit(
	data: CurveData,
	inflections: InflectionSet,
	config: FitConfig,
	histogram: Optional[HistogramSpec] = None,
	label: str = "",
	source: str = ""
) -> FitReport:
	"""
	Fit a superposition of config.n S-curves to an ECDF or analytic target.

	The first config.n inflection points are used. Steps come from a
	trust-region Levenberg-Marquardt solver that keeps a inside
	[a_lower_bound, inf) and lets it leave the bound again. Running out of
	iterations is reported through converged=False rather than raised.

	Args:
		data: Curve to fit (EmpiricalCDF or TargetCurve)
		inflections: Candidate inflection points in priority order
		config: Initial conditions and tolerances
		histogram: Binning of the raw data, used for m_bar
		label: Name recorded in the report (attribute/species or target)
		source: Input file or target description

	Returns:
		FitReport with the fitted parameters, SSE and measures

	Raises:
		FitError: If the configuration is invalid
	"""
	check_config(config, inflections)
	if len(data) == 0:
		raise FitError("Cannot fit empty data")

	points = inflections.head(config.n)
	start = Superposition(a=config.init_a, components=tuple(_initial_components(data, points, config)))
	objective = lambda theta: residuals(_unpack(theta, points), data)

	theta, sse, initial_sse, iterations, converged, message = _least_squares(
		objective, _pack(start), config
	)
	params = _unpack(theta, points)
	measures = compute_measures(params, default_interval(data.xs), histogram)

	echo = config.to_dict()
	echo["strategy"] = Strategy(inflections.strategy).value
	return FitReport(
		params=params,
		sse=sse,
		initial_sse=initial_sse,
		iterations=iterations,
		converged=converged,
		message=message,
		measures=measures,
		label=label,
		source=source,
		config=echo
	)


def sweep_n(
	data: CurveData,
	strategy: Strategy,
	n_range: Iterable[int],
	config: FitConfig,
	histogram: Optional[HistogramSpec] = None,
	label: str = "",
	source: str = ""
) -> List[FitReport]:
	"""
	Fit once per n, re-selecting the inflection points for each n.

	An n the data cannot serve (more inflection points than distinct values)
	is skipped; the other fits still run. Callers find the skipped values by
	comparing the returned n against the requested ones.

	Returns:
		Reports ordered by increasing n

	Raises:
		FitError: If n_range is empty, no n can be served, or the config is
			invalid
	"""
	n_values = sorted(set(int(n) for n in n_range))
	if not n_values:
		raise FitError("n_range must not be empty")
	if n_values[0] < 1:
		raise FitError(f"n must be at least 1, got {n_values[0]}")

	reports = []
	skipped = None
	for n in n_values:
		try:
			inflections = select_inflections(data, n, strategy)
		except RangeError as e:
			skipped = e
			continue
		reports.append(fit(data, inflections, replace(config, n=n), histogram, label, source))
	if not reports:
		raise FitError(f"No n in {n_values[0]}..{n_values[-1]} can be served: {skipped}")
	return reports


def fit_many(jobs: Sequence[FitJob], workers: Optional[int] = None) -> List[FitReport]:
	"""
	Run independent fits in a thread pool.

	Returns:
		Reports in the order the jobs were given
	"""
	def run(job: FitJob) -> FitReport:
		return fit(job.data, job.inflections, job.config, job.histogram, job.label, job.source)

	if workers == 1 or len(jobs) <= 1:
		return [run(job) for job in jobs]
	with ThreadPoolExecutor(max_workers=workers) as pool:
		return list(pool.map(run, jobs))
