"""Selection of inflection points from data."""

from typing import Union

import numpy as np

from distributions import RangeError
from models import EmpiricalCDF, InflectionSet, Strategy, TargetCurve

CurveData = Union[EmpiricalCDF, TargetCurve]


def _descending(keys: np.ndarray) -> np.ndarray:
	# Stable ascending sort then reversal: ties go to the larger index.
	return np.argsort(keys, kind="stable")[::-1]


def select_inflections_slope(cdf: CurveData, count: int) -> InflectionSet:
	"""
	Pick midpoints of the segments with the highest absolute slope.

	Args:
		cdf: Points (xs, fractions) with strictly increasing xs
		count: Number of points wanted, 1 <= count <= len(xs) - 1

	Returns:
		InflectionSet ordered by decreasing |slope|

	Raises:
		RangeError: If there are fewer than 2 points or count is out of range
	"""
	xs = np.asarray(cdf.xs, dtype=float)
	ys = np.asarray(cdf.fractions, dtype=float)
	if xs.size < 2:
		raise RangeError("Slope selection needs at least 2 points")
	if not 1 <= count <= xs.size - 1:
		raise RangeError(f"Cannot select {count} segments out of {xs.size - 1}")

	slopes = np.diff(ys) / np.diff(xs)
	chosen = _descending(np.abs(slopes))[:count]
	points = tuple(
		(float((xs[k] + xs[k + 1]) / 2), float((ys[k] + ys[k + 1]) / 2))
		for k in chosen
	)
	return InflectionSet(points=points, strategy=Strategy.SLOPE_MIDPOINT)


def select_inflections_mode(cdf: EmpiricalCDF, count: int) -> InflectionSet:
	"""
	Pick the most frequently observed values, paired with their CDF fraction.

	Ties resolve toward the larger value.

	Raises:
		RangeError: If count exceeds the number of unique values
	"""
	if not 1 <= count <= len(cdf.xs):
		raise RangeError(f"Cannot select {count} modes out of {len(cdf.xs)} unique values")

	chosen = _descending(np.asarray(cdf.counts))[:count]
	points = tuple((float(cdf.xs[j]), float(cdf.fractions[j])) for j in chosen)
	return InflectionSet(points=points, strategy=Strategy.MODE_FREQUENCY)


def select_inflections(cdf: CurveData, count: int, strategy: Strategy) -> InflectionSet:
	"""Dispatch to the selection rule named by strategy."""
	strategy = Strategy(strategy)
	if strategy == Strategy.MODE_FREQUENCY:
		if not isinstance(cdf, EmpiricalCDF):
			raise RangeError("Mode selection needs counts; use slope-midpoint for analytic targets")
		return select_inflections_mode(cdf, count)
	return select_inflections_slope(cdf, count)
