"""SVG figures for fits, sweeps and curve comparisons."""

from pathlib import Path

import matplotlib
import numpy as np
import pandas as pd
from matplotlib.figure import Figure

from curves import eval_superposition, eval_superposition_derivative
from measures import default_interval
from models import EmpiricalCDF, FitReport, HistogramSpec, TargetCurve

CURVE_POINTS = 400
SVG_SETTINGS = {"svg.hashsalt": "scurve-fit", "svg.fonttype": "path"}


def save_svg(fig: Figure, path: Path) -> None:
	"""Write a figure as SVG with fixed element ids and no timestamp."""
	with matplotlib.rc_context(SVG_SETTINGS):
		fig.savefig(path, format="svg", metadata={"Date": None})


def plot_cdf_fit(report: FitReport, cdf: EmpiricalCDF, hist: HistogramSpec, path: Path) -> None:
	"""
	Two panels: the ECDF with the fitted curve on top, the histogram with
	the fitted density normalized over the bin edges below.
	"""
	low, high = default_interval(cdf.xs)
	xs = np.linspace(low, high, CURVE_POINTS)
	sup = report.params

	fig = Figure(figsize=(6, 7))
	top, bottom = fig.subplots(2, 1, sharex=True)

	top.plot(cdf.xs, cdf.fractions, "o", markersize=4, label="ECDF")
	top.plot(xs, eval_superposition(sup, xs), "-", label=f"fit, n={sup.n}")
	for comp in sup.components:
		top.plot(comp.x_c, comp.y_c, "x", color="black")
	top.set_ylabel("cumulative fraction")
	top.set_title(report.label)
	top.legend(loc="upper left")

	bottom.stairs(hist.masses, hist.edges, label="relative frequency")
	total = float(np.sum(eval_superposition_derivative(sup, hist.edges)))
	if total != 0:
		bottom.plot(xs, eval_superposition_derivative(sup, xs) / total, "-", label="normalized density")
	bottom.set_xlabel(report.label.partition("/")[0])
	bottom.set_ylabel("relative frequency")
	bottom.legend(loc="upper left")

	save_svg(fig, path)


def plot_target_fit(report: FitReport, target: TargetCurve, path: Path) -> None:
	"""Target and fitted superposition on top, both derivatives below."""
	sup = report.params
	xs = np.asarray(target.xs, dtype=float)

	fig = Figure(figsize=(6, 7))
	top, bottom = fig.subplots(2, 1, sharex=True)

	top.plot(xs, target.fractions, "-", label=target.name)
	top.plot(xs, eval_superposition(sup, xs), "--", label=f"fit, n={sup.n}")
	top.set_ylabel("y")
	top.set_title(report.label)
	top.legend(loc="upper left")

	bottom.plot(xs, target.density, "-", label=f"{target.name}'")
	bottom.plot(xs, eval_superposition_derivative(sup, xs), "--", label="fit'")
	bottom.set_xlabel("x")
	bottom.set_ylabel("dy/dx")
	bottom.legend(loc="upper left")

	save_svg(fig, path)


def plot_sweep(table: pd.DataFrame, path: Path) -> None:
	"""Fitted m, a and NL against n, one line per series."""
	fig = Figure(figsize=(6, 9))
	axes = fig.subplots(3, 1, sharex=True)

	for series, rows in table.groupby("series", sort=True):
		axes[0].plot(rows["n"], rows["m"], "o-", label=series)
		axes[1].plot(rows["n"], rows["a"], "o-", label=series)
		axes[2].plot(rows["n"], rows["nl_percent"].astype(float), "o-", label=series)

	axes[0].set_ylabel("m")
	axes[1].set_ylabel("a")
	axes[1].set_yscale("log")
	axes[2].set_ylabel("NL (%)")
	axes[2].set_xlabel("n")
	axes[0].legend(loc="best", fontsize="small")

	save_svg(fig, path)


def plot_comparison(frame: pd.DataFrame, target_name: str, path: Path) -> None:
	"""S-curves for several a over the target, derivatives below."""
	fig = Figure(figsize=(6, 7))
	top, bottom = fig.subplots(2, 1, sharex=True)

	top.plot(frame["x"], frame["target"], "-", color="black", label=target_name)
	bottom.plot(frame["x"], frame["target_density"], "-", color="black", label=f"{target_name}'")
	for column in frame.columns:
		if column.startswith("y_a="):
			top.plot(frame["x"], frame[column], "--", label=column[2:])
		elif column.startswith("dy_a="):
			bottom.plot(frame["x"], frame[column], "--", label=column[3:])

	top.set_ylabel("y")
	top.legend(loc="upper left")
	bottom.set_xlabel("x")
	bottom.set_ylabel("dy/dx")
	bottom.legend(loc="upper left")

	save_svg(fig, path)
