"""Tests for fitter module."""

import unittest
from dataclasses import replace

import numpy as np

from curves import eval_superposition
from distributions import build_ecdf, gen_erf_target, gen_sigmoid_target
from fitter import (
	STOP_REASONS, FitError, FitJob, check_config, fit, fit_many, forward_jacobian, residuals, sweep_n
)
from inflections import select_inflections, select_inflections_slope
from models import (
	A_LOWER_BOUND, Component, EmpiricalCDF, FitConfig, InflectionSet, InitMode,
	SCurveParams, Strategy, Superposition, TargetCurve
)
from parser import BUNDLED_IRIS, load_csv, select_columns

NORMAL_PEAK = 0.3989422804014327


def synthetic_curve(params: SCurveParams) -> TargetCurve:
	xs = np.linspace(-4.0, 4.0, 81)
	sup = Superposition.single(params)
	return TargetCurve(name="synthetic", xs=xs, fractions=eval_superposition(sup, xs), density=np.zeros_like(xs))


class TestResiduals(unittest.TestCase):
	"""Test the residual vector."""

	def test_exact_interpolation(self):
		"""Test a superposition through every data point has zero residuals."""
		params = SCurveParams(a=2.0, m=0.5)
		data = synthetic_curve(params)
		np.testing.assert_array_equal(residuals(Superposition.single(params), data), np.zeros(81))

	def test_zero_weight(self):
		"""Test a zero-weight superposition gives minus the fractions."""
		cdf = EmpiricalCDF(xs=np.array([1.0, 2.0, 3.0]), fractions=np.array([0.2, 0.5, 1.0]), counts=np.array([2, 3, 5]))
		sup = Superposition(a=1.0, components=[Component(p=0.0, m=1.0, x_c=2.0, y_c=0.5)])
		np.testing.assert_array_equal(residuals(sup, cdf), [-0.2, -0.5, -1.0])

	def test_one_residual_per_unique_value(self):
		"""Test residuals follow the unique sorted values of the ECDF."""
		column = select_columns(load_csv(str(BUNDLED_IRIS)), "sepal_length", "setosa")[0]
		cdf = build_ecdf(column)
		sup = Superposition.single(SCurveParams(a=1.519780, m=1.086830, x_c=5.1, y_c=0.72))
		r = residuals(sup, cdf)
		self.assertEqual(r.size, len(set(column.values)))
		self.assertTrue(np.all(np.isfinite(r)))


class TestJacobian(unittest.TestCase):
	"""Test the forward-difference Jacobian."""

	def test_matches_directional_differences(self):
		"""Test J @ v agrees with a directional difference of the residuals."""
		data = gen_sigmoid_target((-5.0, 5.0), 41)
		points = select_inflections_slope(data, 2).points

		def func(theta):
			sup = Superposition(a=theta[0], components=[
				Component(theta[1], theta[2], *points[0]),
				Component(theta[3], theta[4], *points[1])
			])
			return residuals(sup, data)

		theta = np.array([0.7, 0.4, 0.3, 0.6, 0.2])
		jac = forward_jacobian(func, theta)
		direction = np.array([0.3, -0.2, 0.5, 0.1, -0.4])
		t = 1e-7
		directional = (func(theta + t * direction) - func(theta - t * direction)) / (2 * t)
		scale = np.max(np.abs(directional))
		np.testing.assert_allclose(jac @ direction, directional, rtol=1e-4, atol=1e-4 * scale)


class TestCheckConfig(unittest.TestCase):
	"""Test configuration validation."""

	def setUp(self):
		"""Set up two inflection points."""
		self.inflections = InflectionSet(points=((0.0, 0.5), (1.0, 0.7)), strategy=Strategy.SLOPE_MIDPOINT)

	def test_valid(self):
		"""Test a default config passes."""
		check_config(FitConfig(n=2), self.inflections)

	def test_invalid(self):
		"""Test each invalid setting raises FitError."""
		for config in (
			FitConfig(n=0),
			FitConfig(n=3),
			FitConfig(a_lower_bound=0.0),
			FitConfig(init_a=-1.0),
			FitConfig(max_iterations=0),
			FitConfig(n=2, init_m=(1.0, 2.0, 3.0))
		):
			with self.assertRaises(FitError, msg=str(config)):
				check_config(config, self.inflections)


class TestFit(unittest.TestCase):
	"""Test single fits."""

	def test_recovers_known_parameters(self):
		"""Test a single-curve fit recovers the parameters that generated the data."""
		data = synthetic_curve(SCurveParams(a=2.0, m=0.5))
		inflections = InflectionSet(points=((0.0, 0.0),), strategy=Strategy.SLOPE_MIDPOINT)
		report = fit(data, inflections, FitConfig())

		self.assertTrue(report.converged, report.message)
		self.assertAlmostEqual(report.params.a / 2.0, 1.0, delta=1e-4)
		self.assertAlmostEqual(report.params.components[0].m / 0.5, 1.0, delta=1e-6)
		self.assertEqual(report.params.components[0].p, 1.0)
		self.assertLessEqual(report.sse, report.initial_sse)
		self.assertEqual(report.measures.nl_percent, 0.0)
		self.assertIsNone(report.measures.m_bar)

	def test_bound_respected(self):
		"""Test a is never pushed below its bound."""
		xs = np.linspace(-1.0, 1.0, 21)
		data = TargetCurve(name="line", xs=xs, fractions=0.5 + 0.3 * xs, density=np.full_like(xs, 0.3))
		inflections = InflectionSet(points=((0.0, 0.5),), strategy=Strategy.SLOPE_MIDPOINT)
		for bound in (A_LOWER_BOUND, 1e-3):
			report = fit(data, inflections, FitConfig(a_lower_bound=bound))
			self.assertGreaterEqual(report.params.a, bound)
			self.assertAlmostEqual(report.params.components[0].m, 0.3, places=3)

	def test_leaves_lower_bound(self):
		"""Test a fit started with a at its bound moves a back up."""
		data = synthetic_curve(SCurveParams(a=2.0, m=0.5))
		inflections = InflectionSet(points=((0.0, 0.0),), strategy=Strategy.SLOPE_MIDPOINT)
		report = fit(data, inflections, FitConfig(init_a=A_LOWER_BOUND))
		self.assertTrue(report.converged, report.message)
		self.assertAlmostEqual(report.params.a / 2.0, 1.0, delta=1e-3)
		self.assertAlmostEqual(report.params.components[0].m / 0.5, 1.0, delta=1e-3)

	def test_stop_reasons(self):
		"""Test only an exhausted budget is reported as unconverged."""
		unconverged = [status for status, (converged, _) in STOP_REASONS.items() if not converged]
		self.assertEqual(unconverged, [0])
		data = synthetic_curve(SCurveParams(a=2.0, m=0.5))
		inflections = InflectionSet(points=((0.0, 0.0),), strategy=Strategy.SLOPE_MIDPOINT)
		report = fit(data, inflections, FitConfig())
		converged_messages = [message for converged, message in STOP_REASONS.values() if converged]
		self.assertIn(report.message, converged_messages + ["exact fit"])

	def test_iteration_limit(self):
		"""Test running out of iterations is reported, not raised."""
		data = gen_sigmoid_target((-5.0, 5.0))
		inflections = select_inflections_slope(data, 3)
		report = fit(data, inflections, FitConfig(n=3, max_iterations=1))
		self.assertFalse(report.converged)
		self.assertEqual(report.message, "maximum iterations reached")
		self.assertLessEqual(report.sse, report.initial_sse)

	def test_deterministic(self):
		"""Test identical inputs give identical reports."""
		data = gen_erf_target((-3.0, 3.0))
		inflections = select_inflections_slope(data, 2)
		config = FitConfig(n=2)
		self.assertEqual(fit(data, inflections, config), fit(data, inflections, config))

	def test_slope_at_inflection_init(self):
		"""Test slope initialization starts from the data slope around x_c."""
		data = gen_sigmoid_target((-5.0, 5.0))
		inflections = select_inflections_slope(data, 2)
		report = fit(data, inflections, FitConfig(n=2, init_mode=InitMode.SLOPE_AT_INFLECTION))
		self.assertEqual(report.config["init_mode"], "slope-at-inflection")
		self.assertLessEqual(report.sse, report.initial_sse)

	def test_config_echo(self):
		"""Test the report echoes the config and the strategy."""
		data = gen_sigmoid_target((-5.0, 5.0))
		report = fit(data, select_inflections_slope(data, 1), FitConfig(), label="sigmoid/-5:5", source="test")
		self.assertEqual(report.config["strategy"], "slope-midpoint")
		self.assertEqual(report.config["init_a"], 1.0)
		self.assertEqual(report.label, "sigmoid/-5:5")
		self.assertEqual(report.source, "test")


class TestBenchmarks(unittest.TestCase):
	"""Test fits to the analytic targets."""

	def test_sigmoid_max_slope(self):
		"""Test four curves on the logistic find its maximum slope 1/4."""
		data = gen_sigmoid_target((-5.0, 5.0), 101)
		report = fit(data, select_inflections_slope(data, 4), FitConfig(n=4))
		self.assertAlmostEqual(report.measures.m_max / 0.25, 1.0, delta=0.02)

	def test_erf_max_slope(self):
		"""Test three to five curves on the normal CDF find its peak density."""
		data = gen_erf_target((-3.0, 3.0), 101)
		for mode in InitMode:
			for n in (3, 4, 5):
				with self.subTest(init_mode=mode.value, n=n):
					report = fit(data, select_inflections_slope(data, n), FitConfig(n=n, init_mode=mode))
					self.assertAlmostEqual(report.measures.m_max / NORMAL_PEAK, 1.0, delta=0.03)

	def test_sse_decreases_with_n(self):
		"""Test more components fit the sigmoid at least as well."""
		data = gen_sigmoid_target((-5.0, 5.0), 101)
		reports = sweep_n(data, Strategy.SLOPE_MIDPOINT, [1, 2, 4], FitConfig())
		self.assertEqual([r.n for r in reports], [1, 2, 4])
		self.assertLessEqual(reports[2].sse, reports[1].sse)
		self.assertLessEqual(reports[1].sse, reports[0].sse)


class TestSweepAndPool(unittest.TestCase):
	"""Test sweeps and the thread pool."""

	def setUp(self):
		"""Set up the erf target."""
		self.data = gen_erf_target((-3.0, 3.0), 61)

	def test_single_n_equals_fit(self):
		"""Test a sweep over one n is the plain fit."""
		config = FitConfig()
		[swept] = sweep_n(self.data, Strategy.SLOPE_MIDPOINT, [1], config)
		single = fit(self.data, select_inflections(self.data, 1, Strategy.SLOPE_MIDPOINT), config)
		self.assertEqual(swept, single)

	def test_sorted_by_n(self):
		"""Test reports come back ordered by n."""
		reports = sweep_n(self.data, Strategy.SLOPE_MIDPOINT, [3, 1, 2], FitConfig(max_iterations=50))
		self.assertEqual([r.n for r in reports], [1, 2, 3])

	def test_two_init_modes(self):
		"""Test the two initialization modes give one series each."""
		series = {
			mode: sweep_n(self.data, Strategy.SLOPE_MIDPOINT, [1, 2], FitConfig(init_mode=mode, max_iterations=50))
			for mode in InitMode
		}
		self.assertEqual(len(series), 2)
		for reports in series.values():
			self.assertEqual([r.n for r in reports], [1, 2])

	def test_unservable_n_skipped(self):
		"""Test an n beyond the data is skipped while the rest of the sweep runs."""
		reports = sweep_n(self.data, Strategy.SLOPE_MIDPOINT, [1, 100], FitConfig(max_iterations=50))
		self.assertEqual([r.n for r in reports], [1])

	def test_invalid_sweeps(self):
		"""Test empty ranges, n below 1 and sweeps with nothing to fit fail."""
		for n_range in ([], [0, 1], [100]):
			with self.assertRaises(FitError, msg=str(n_range)):
				sweep_n(self.data, Strategy.SLOPE_MIDPOINT, n_range, FitConfig())
		with self.assertRaises(FitError):
			sweep_n(self.data, Strategy.MODE_FREQUENCY, [1, 2], FitConfig())

	def test_fit_many_keeps_order(self):
		"""Test pooled fits match sequential fits in submission order."""
		jobs = [
			FitJob(
				data=self.data,
				inflections=select_inflections_slope(self.data, n),
				config=replace(FitConfig(max_iterations=50), n=n),
				label=f"erf/{n}"
			)
			for n in (2, 1, 3)
		]
		pooled = fit_many(jobs, workers=3)
		sequential = fit_many(jobs, workers=1)
		self.assertEqual([r.label for r in pooled], ["erf/2", "erf/1", "erf/3"])
		self.assertEqual(pooled, sequential)


if __name__ == '__main__':
	unittest.main()
