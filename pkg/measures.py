"""Characterization measures of fitted superpositions."""

import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from curves import eval_superposition_derivative
from models import A_LOWER_BOUND, HistogramSpec, MeasureSet, Superposition

GRID_POINTS = 2048
INTERVAL_PADDING = 0.05
INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2


class UndefinedMeasureError(ValueError):
	"""Raised when a measure has a zero denominator or missing inputs."""
	pass


def golden_section_max(
	func: Callable[[float], float],
	low: float,
	high: float,
	tol: float = 1e-10
) -> Tuple[float, float]:
	"""
	Golden-section search for the maximum of a unimodal function.

	Args:
		func: Function to maximize on [low, high]
		low: Left end of the bracket
		high: Right end of the bracket
		tol: Width of the final bracket

	Returns:
		Tuple (x, func(x)) at the best point evaluated
	"""
	low, high = min(low, high), max(low, high)
	h = high - low
	if h <= tol:
		mid = (low + high) / 2
		return mid, func(mid)

	steps = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
	c = low + INV_PHI_SQUARE * h
	d = low + INV_PHI * h
	yc = func(c)
	yd = func(d)

	for _ in range(steps - 1):
		h = INV_PHI * h
		if yc > yd:
			high = d
			d, yd = c, yc
			c = low + INV_PHI_SQUARE * h
			yc = func(c)
		else:
			low = c
			c, yc = d, yd
			d = low + INV_PHI * h
			yd = func(d)

	return (c, yc) if yc > yd else (d, yd)


def _grid_max(
	func: Callable[[np.ndarray], np.ndarray],
	interval: Tuple[float, float],
	candidates: Sequence[float] = ()
) -> Tuple[float, float]:
	low, high = interval
	xs = np.linspace(low, high, GRID_POINTS)
	values = func(xs)
	k = int(np.argmax(values))
	best_x, best_value = float(xs[k]), float(values[k])

	left = xs[max(k - 1, 0)]
	right = xs[min(k + 1, xs.size - 1)]
	x, value = golden_section_max(lambda t: float(func(np.array([t]))[0]), left, right)
	if value > best_value:
		best_x, best_value = x, value

	for x in candidates:
		if low <= x <= high:
			value = float(func(np.array([x]))[0])
			if value > best_value:
				best_x, best_value = float(x), value
	return best_x, best_value


def _check_interval(interval: Tuple[float, float]) -> Tuple[float, float]:
	low, high = float(interval[0]), float(interval[1])
	if not (math.isfinite(low) and math.isfinite(high)) or not low < high:
		raise UndefinedMeasureError(f"Search interval [{low}, {high}] is empty")
	return low, high


def default_interval(xs: Sequence[float]) -> Tuple[float, float]:
	"""Data range padded by 5% on each side."""
	values = np.asarray(xs, dtype=float)
	if values.size == 0:
		raise UndefinedMeasureError("Cannot derive an interval from no data")
	low, high = float(values.min()), float(values.max())
	pad = INTERVAL_PADDING * (high - low) if high > low else INTERVAL_PADDING * max(1.0, abs(low))
	return low - pad, high + pad


def max_slope(sup: Superposition, interval: Tuple[float, float]) -> Tuple[float, float]:
	"""
	Largest-magnitude slope of the superposition and where it occurs.

	A single curve peaks at its inflection point, so n = 1 is answered
	exactly. Otherwise the derivative is scanned on a 2048-point grid and
	the best grid cell refined by golden-section search.

	Args:
		sup: Fitted superposition
		interval: Search interval (low, high)

	Returns:
		Tuple (m_max, argmax_x); m_max keeps the sign of the slope
	"""
	if sup.n == 1:
		comp = sup.components[0]
		return comp.p * comp.m, comp.x_c

	interval = _check_interval(interval)
	magnitude = lambda xs: np.abs(eval_superposition_derivative(sup, xs))
	x, _ = _grid_max(magnitude, interval, [c.x_c for c in sup.components])
	return float(eval_superposition_derivative(sup, x)), x


def ratio_measure(a: float, m_max: float) -> float:
	"""Slope scaled by the nonlinearity, m / (1 + a)."""
	if a < A_LOWER_BOUND:
		raise UndefinedMeasureError(f"a={a!r} is below the lower bound {A_LOWER_BOUND}")
	return m_max / (1.0 + a)


def nonlinearity_percent(sup: Superposition, m_max: float) -> float:
	"""
	Percentage gap between the linearized slope sum and the realized slope.

	NL = 100 |sum(p_i m_i) - m_max| / |m_max|

	Raises:
		UndefinedMeasureError: If m_max is zero
	"""
	if m_max == 0:
		raise UndefinedMeasureError("Nonlinearity is undefined for a zero maximum slope")
	return 100.0 * abs(sup.slope_sum() - m_max) / abs(m_max)


def normalized_peak(
	sup: Superposition,
	hist: HistogramSpec,
	interval: Optional[Tuple[float, float]] = None
) -> float:
	"""
	Peak of the model density after dividing by its sum over the bin edges.

	The result is comparable to the largest relative frequency of the
	histogram.

	Args:
		sup: Fitted superposition
		hist: Histogram whose edges define the normalization
		interval: Where to look for the peak (defaults to the edge range)

	Returns:
		max_x d(x) / sum_e d(e)

	Raises:
		UndefinedMeasureError: If there are fewer than two edges or the sum is 0
	"""
	edges = np.asarray(hist.edges, dtype=float)
	if edges.size < 2:
		raise UndefinedMeasureError(f"Need at least 2 bin edges, got {edges.size}")
	total = float(np.sum(eval_superposition_derivative(sup, edges)))
	if total == 0 or not math.isfinite(total):
		raise UndefinedMeasureError("Model density sums to zero over the bin edges")

	interval = _check_interval(interval if interval is not None else (edges[0], edges[-1]))
	density = lambda xs: eval_superposition_derivative(sup, xs) / total
	_, peak = _grid_max(density, interval, [c.x_c for c in sup.components])
	return peak


def compute_measures(
	sup: Superposition,
	interval: Tuple[float, float],
	hist: Optional[HistogramSpec] = None
) -> MeasureSet:
	"""
	Compute every measure for one fit.

	NL is None when the maximum slope is zero and m_bar is None without a
	histogram (analytic targets).
	"""
	m_max, argmax_x = max_slope(sup, interval)

	try:
		nl_percent = nonlinearity_percent(sup, m_max)
	except UndefinedMeasureError:
		nl_percent = None

	m_bar = None
	if hist is not None:
		try:
			m_bar = normalized_peak(sup, hist)
		except UndefinedMeasureError:
			m_bar = None

	return MeasureSet(
		m_max=m_max,
		argmax_x=argmax_x,
		ratio=ratio_measure(sup.a, m_max),
		nl_percent=nl_percent,
		m_bar=m_bar
	)
