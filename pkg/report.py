"""Parameter tables and report aggregation."""

import json
from collections import defaultdict
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple

import pandas as pd

from curves import eval_scurve, eval_scurve_derivative
from models import FitReport, SCurveParams, TargetCurve

REPORT_FILENAME = "fit_report.json"


class ReportError(Exception):
	"""Custom exception for missing or unreadable report artifacts."""
	pass


def split_label(label: str) -> Tuple[str, str]:
	"""
	Split a report label into (table, column).

	Labels look like "sepal_length/setosa" or "sigmoid/-5:5/constant"; the
	part before the first slash names the table and the rest the column.
	"""
	table, _, column = label.partition("/")
	return table, column or table


def group_reports(reports: Iterable[FitReport]) -> Dict[Tuple[str, int], List[FitReport]]:
	"""
	Group reports by (table, n).

	Returns:
		Dictionary sorted by key, each list in the original order
	"""
	groups: Dict[Tuple[str, int], List[FitReport]] = defaultdict(list)
	for report in reports:
		groups[(split_label(report.label)[0], report.n)].append(report)
	return dict(sorted(groups.items()))


def _parameter_rows(report: FitReport) -> List[Tuple[str, object]]:
	params = report.params
	measures = report.measures
	rows: List[Tuple[str, object]] = [("a", params.a)]
	if params.n == 1:
		comp = params.components[0]
		rows += [("m", comp.m), ("x_c", comp.x_c), ("y_c", comp.y_c)]
	else:
		for i, comp in enumerate(params.components, start=1):
			rows += [
				(f"p_{i}", comp.p),
				(f"m_{i}", comp.m),
				(f"x_c{i}", comp.x_c),
				(f"y_c{i}", comp.y_c)
			]
		rows += [("m", measures.m_max), ("NL", measures.nl_percent)]
	rows += [
		("m_bar", measures.m_bar),
		("ratio", measures.ratio),
		("sse", report.sse),
		("converged", report.converged)
	]
	return rows


def build_parameter_table(reports: List[FitReport]) -> pd.DataFrame:
	"""
	Lay out fits side by side, one column per species (or target series).

	Rows follow the printed parameter tables: a, then m, x_c, y_c for a single
	curve or p_i, m_i, x_ci, y_ci per component plus the maximum slope m and
	NL for superpositions, then m_bar, ratio, sse and converged.

	Raises:
		ReportError: If the reports are empty or mix different n
	"""
	if not reports:
		raise ReportError("No reports to tabulate")
	sizes = {report.n for report in reports}
	if len(sizes) != 1:
		raise ReportError(f"Cannot tabulate mixed component counts {sorted(sizes)}")

	columns = {}
	index: List[str] = []
	for report in reports:
		rows = _parameter_rows(report)
		index = [name for name, _ in rows]
		columns[split_label(report.label)[1]] = [value for _, value in rows]
	frame = pd.DataFrame(columns, index=index)
	frame.index.name = "quantity"
	return frame


def build_sweep_table(reports: Iterable[FitReport]) -> pd.DataFrame:
	"""
	One row per (series, n) with the fitted a, maximum slope, NL and SSE.

	The series is the full report label. Rows are sorted by series, then n.
	"""
	records = [
		{
			"series": report.label,
			"n": report.n,
			"a": report.params.a,
			"m": report.measures.m_max,
			"nl_percent": report.measures.nl_percent,
			"sse": report.sse,
			"converged": report.converged
		}
		for report in reports
	]
	frame = pd.DataFrame(records, columns=["series", "n", "a", "m", "nl_percent", "sse", "converged"])
	return frame.sort_values(["series", "n"], kind="stable").reset_index(drop=True)


def build_comparison_table(reports: Iterable[FitReport]) -> pd.DataFrame:
	"""Measures of every fit side by side, one row per (label, n)."""
	records = [
		{
			"label": report.label,
			"n": report.n,
			"a": report.params.a,
			"m": report.measures.m_max,
			"argmax_x": report.measures.argmax_x,
			"ratio": report.measures.ratio,
			"nl_percent": report.measures.nl_percent,
			"m_bar": report.measures.m_bar,
			"sse": report.sse,
			"iterations": report.iterations,
			"converged": report.converged
		}
		for report in reports
	]
	frame = pd.DataFrame(records, columns=[
		"label", "n", "a", "m", "argmax_x", "ratio", "nl_percent", "m_bar",
		"sse", "iterations", "converged"
	])
	return frame.sort_values(["label", "n"], kind="stable").reset_index(drop=True)


def table_filename(table: str, n: int) -> str:
	"""CSV name for a parameter table, e.g. sepal_length_n1.csv."""
	safe = "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in table)
	return f"{safe}_n{n}.csv"


def write_table(frame: pd.DataFrame, path: Path, index: bool = True) -> None:
	"""Write a table as CSV with full float precision."""
	frame.to_csv(path, index=index, float_format="%.10g")


def write_reports(reports: Iterable[FitReport], path: Path) -> None:
	"""Write reports as a JSON list of FitReport dictionaries."""
	output = [report.to_dict() for report in reports]
	with open(path, 'w', encoding='utf-8') as f:
		json.dump(output, f, indent=2, ensure_ascii=False)


def find_report_files(directories: Iterable[str]) -> List[Path]:
	"""
	Find every fit_report.json below the given directories.

	Raises:
		ReportError: If a directory is missing or nothing is found
	"""
	found: List[Path] = []
	for directory in directories:
		root = Path(directory)
		if not root.is_dir():
			raise ReportError(f"Not a directory: {directory}")
		found.extend(sorted(root.rglob(REPORT_FILENAME)))
	if not found:
		raise ReportError("No fit_report.json found")
	return found


def load_reports(paths: Iterable[Path]) -> List[FitReport]:
	"""
	Load FitReports from JSON files written by write_reports.

	Raises:
		ReportError: If a file cannot be read or has the wrong structure
	"""
	reports: List[FitReport] = []
	for path in paths:
		try:
			with open(path, 'r', encoding='utf-8') as f:
				data = json.load(f)
		except json.JSONDecodeError as e:
			raise ReportError(f"Invalid JSON in {path}: {str(e)}")
		except OSError as e:
			raise ReportError(f"Error reading {path}: {str(e)}")

		if not isinstance(data, list):
			raise ReportError(f"{path} must contain a list of reports")
		try:
			reports.extend(FitReport.from_dict(item) for item in data)
		except (KeyError, TypeError, ValueError) as e:
			raise ReportError(f"Malformed report in {path}: {str(e)}")
	return reports


def build_curve_comparison(
	target: TargetCurve,
	a_values: Sequence[float],
	m: float,
	x_c: float = 0.0,
	y_c: float = 0.5
) -> pd.DataFrame:
	"""
	Sample S-curves for several a next to a target and their derivatives.

	All curves share the slope m and the inflection point (x_c, y_c), so
	only the nonlinearity differs between columns.

	Returns:
		Columns x, target, target_density, then y_a=<a> and dy_a=<a> per a
	"""
	if not a_values:
		raise ReportError("At least one value of a is needed for a comparison")
	columns = {
		"x": target.xs,
		"target": target.fractions,
		"target_density": target.density
	}
	for a in a_values:
		params = SCurveParams(a=a, m=m, x_c=x_c, y_c=y_c)
		columns[f"y_a={a:g}"] = eval_scurve(params, target.xs)
		columns[f"dy_a={a:g}"] = eval_scurve_derivative(params, target.xs)
	return pd.DataFrame(columns)
