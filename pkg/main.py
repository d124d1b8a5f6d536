"""Main entry point for S-curve fitting."""

import argparse
import re
import sys
from dataclasses import replace
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from curves import CurveError
from distributions import (
	DEFAULT_TARGET_POINTS, TARGETS, DataPrepError, DegenerateDataError,
	auto_histogram, build_ecdf, inject_zero_point, make_target
)
from fitter import FitError, FitJob, fit_many, sweep_n
from inflections import select_inflections
from measures import UndefinedMeasureError
from models import (
	FitConfig, FitReport, InitMode, RunManifest, Strategy, format_points, format_quantity
)
from parser import BUNDLED_IRIS, CsvSchema, DataParserError, load_csv, select_columns
from plots import plot_cdf_fit, plot_comparison, plot_sweep, plot_target_fit
from report import (
	REPORT_FILENAME, ReportError, build_comparison_table, build_curve_comparison,
	build_parameter_table, build_sweep_table, find_report_files, group_reports,
	load_reports, table_filename, write_reports, write_table
)

EMIT_CHOICES = ("json", "csv", "svg")
DEFAULT_INTERVAL = (-5.0, 5.0)
DEFAULT_A_VALUES = (1e-9, 1.0, 10.0)
SWEEP_TABLE = "nl_vs_n"
NEGATIVE_VALUE_OPTIONS = ("--interval", "--init-m", "--init-p", "--inject-zero-point")
NEGATIVE_VALUE = re.compile(r"^-\.?\d")


def _slug(label: str) -> str:
	return "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in label)


def _series_label(base: str, mode: InitMode, modes: Sequence[InitMode]) -> str:
	return base if len(modes) == 1 else f"{base}/{InitMode(mode).value}"


def _print_summary(reports: List[FitReport]) -> None:
	for report in reports:
		status = "converged" if report.converged else "NOT converged"
		print(
			f"  {report.label} n={report.n}: a={format_quantity(report.params.a)} "
			f"m={format_quantity(report.measures.m_max)} "
			f"x_c=[{format_points([c.x_c for c in report.params.components])}] "
			f"sse={format_quantity(report.sse)} ({status}: {report.message})"
		)


def _load_columns(
	input_path: Optional[str],
	attribute: str,
	species: str,
	schema: CsvSchema,
	zero_point: Optional[float]
):
	source = input_path or str(BUNDLED_IRIS)
	print(f"Loading data from: {source}")
	columns = select_columns(load_csv(source, schema), attribute, species, schema)
	print(f"Selected {len(columns)} columns")

	prepared = []
	for column in columns:
		cdf = build_ecdf(column)
		if zero_point is not None:
			cdf = inject_zero_point(cdf, zero_point)
		try:
			hist = auto_histogram(column)
		except DegenerateDataError as e:
			print(f"Warning: {e}")
			hist = None
		prepared.append((f"{column.label}/{column.group}", cdf, hist))
	return source, prepared


def _write_artifacts(
	reports: List[FitReport],
	output_dir: str,
	emit: Sequence[str],
	plot_one: Callable[[FitReport, Path], None]
) -> Path:
	out = Path(output_dir)
	out.mkdir(parents=True, exist_ok=True)

	if "json" in emit:
		path = out / REPORT_FILENAME
		print(f"Writing {len(reports)} reports to: {path}")
		write_reports(reports, path)

	if "csv" in emit:
		for (table, n), group in group_reports(reports).items():
			path = out / table_filename(table, n)
			print(f"Writing parameter table to: {path}")
			write_table(build_parameter_table(group), path)

	if "svg" in emit:
		print(f"Writing {len(reports)} figures to: {out}")
		for report in reports:
			plot_one(report, out / f"{_slug(report.label)}_n{report.n}.svg")
	return out


def process_fit_cdf(
	output_dir: str,
	input_path: Optional[str] = None,
	attribute: str = "all",
	species: str = "all",
	n_values: Sequence[int] = (1,),
	config: FitConfig = FitConfig(),
	init_modes: Sequence[InitMode] = (InitMode.CONSTANT,),
	strategy: Optional[Strategy] = None,
	zero_point: Optional[float] = None,
	emit: Sequence[str] = ("json", "csv"),
	schema: CsvSchema = CsvSchema(),
	workers: Optional[int] = None
) -> List[FitReport]:
	"""
	Fit S-curve superpositions to the empirical CDFs of a CSV table.

	Args:
		output_dir: Directory for fit_report.json, tables and figures
		input_path: CSV file (defaults to the bundled iris data)
		attribute: Attribute selector or "all"
		species: Species selector or "all"
		n_values: Component counts to fit
		config: Initial conditions and tolerances (n is overridden)
		init_modes: Initialization modes, one series each
		strategy: Inflection selection (defaults to mode-frequency)
		zero_point: Value injected with zero frequency before fitting
		emit: Artifact kinds among json, csv, svg
		schema: Column layout of the CSV
		workers: Thread pool size for the fits

	Returns:
		One FitReport per (column, init mode, n)

	Raises:
		DataParserError: If the input cannot be parsed
		DataPrepError: If the data cannot serve the requested fits
		FitError: If the configuration is invalid
	"""
	strategy = Strategy(strategy or Strategy.MODE_FREQUENCY)
	source, prepared = _load_columns(input_path, attribute, species, schema, zero_point)

	jobs = []
	curves = {}
	for base, cdf, hist in prepared:
		for mode in init_modes:
			label = _series_label(base, mode, init_modes)
			curves[label] = (cdf, hist)
			for n in n_values:
				jobs.append(FitJob(
					data=cdf,
					inflections=select_inflections(cdf, n, strategy),
					config=replace(config, n=n, init_mode=InitMode(mode)),
					histogram=hist,
					label=label,
					source=source
				))

	print(f"Fitting {len(jobs)} models")
	reports = fit_many(jobs, workers)
	_print_summary(reports)

	def plot_one(report: FitReport, path: Path) -> None:
		cdf, hist = curves[report.label]
		if hist is not None:
			plot_cdf_fit(report, cdf, hist, path)

	_write_artifacts(reports, output_dir, emit, plot_one)
	print("Processing complete!")
	return reports


def _target_series(
	target: str,
	intervals: Sequence[Tuple[float, float]],
	points: int
):
	series = []
	for interval in intervals or (DEFAULT_INTERVAL,):
		low, high = interval
		data = make_target(target, (low, high), points)
		series.append((f"{target}/{low:g}:{high:g}", data, f"{target} on [{low:g}, {high:g}], {points} points"))
	return series


def process_fit_target(
	output_dir: str,
	target: str,
	intervals: Sequence[Tuple[float, float]] = (DEFAULT_INTERVAL,),
	points: int = DEFAULT_TARGET_POINTS,
	n_values: Sequence[int] = (1,),
	config: FitConfig = FitConfig(),
	init_modes: Sequence[InitMode] = (InitMode.CONSTANT,),
	strategy: Optional[Strategy] = None,
	emit: Sequence[str] = ("json", "csv"),
	workers: Optional[int] = None
) -> List[FitReport]:
	"""
	Fit superpositions to an analytic target (sigmoid or erf).

	Every (interval, init mode) pair is one series labelled like
	"sigmoid/-5:5/constant". The inflection strategy defaults to
	slope-midpoint.

	Returns:
		One FitReport per (interval, init mode, n)
	"""
	strategy = Strategy(strategy or Strategy.SLOPE_MIDPOINT)
	series = _target_series(target, intervals, points)

	jobs = []
	curves = {}
	for base, data, source in series:
		for mode in init_modes:
			label = f"{base}/{InitMode(mode).value}"
			curves[label] = data
			for n in n_values:
				jobs.append(FitJob(
					data=data,
					inflections=select_inflections(data, n, strategy),
					config=replace(config, n=n, init_mode=InitMode(mode)),
					label=label,
					source=source
				))

	print(f"Fitting {len(jobs)} models to {target}")
	reports = fit_many(jobs, workers)
	_print_summary(reports)

	_write_artifacts(
		reports, output_dir, emit,
		lambda report, path: plot_target_fit(report, curves[report.label], path)
	)
	print("Processing complete!")
	return reports


def process_sweep(
	output_dir: str,
	n_values: Sequence[int],
	target: Optional[str] = None,
	intervals: Sequence[Tuple[float, float]] = (),
	points: int = DEFAULT_TARGET_POINTS,
	input_path: Optional[str] = None,
	attribute: str = "all",
	species: str = "all",
	config: FitConfig = FitConfig(),
	init_modes: Sequence[InitMode] = (InitMode.CONSTANT,),
	strategy: Optional[Strategy] = None,
	zero_point: Optional[float] = None,
	emit: Sequence[str] = ("json", "csv"),
	schema: CsvSchema = CsvSchema()
) -> List[FitReport]:
	"""
	Fit every series over a range of n and tabulate a, m and NL against n.

	A target sweeps each interval; without a target the CSV columns are
	swept. Inflection points are re-selected for every n.

	Returns:
		Reports grouped by series, ordered by n within a series
	"""
	if target is not None:
		strategy = Strategy(strategy or Strategy.SLOPE_MIDPOINT)
		series = [(base, data, None, source) for base, data, source in _target_series(target, intervals, points)]
		modes_in_label = True
	else:
		strategy = Strategy(strategy or Strategy.MODE_FREQUENCY)
		source, prepared = _load_columns(input_path, attribute, species, schema, zero_point)
		series = [(base, cdf, hist, source) for base, cdf, hist in prepared]
		modes_in_label = len(init_modes) > 1

	n_values = sorted(set(n_values))
	reports: List[FitReport] = []
	curves = {}
	for base, data, hist, source in series:
		for mode in init_modes:
			label = f"{base}/{InitMode(mode).value}" if modes_in_label else base
			curves[label] = (data, hist)
			print(f"Sweeping {label} over n = {n_values[0]}..{n_values[-1]}")
			swept = sweep_n(
				data, strategy, n_values, replace(config, init_mode=InitMode(mode)), hist, label, source
			)
			skipped = sorted(set(n_values) - {r.n for r in swept})
			if skipped:
				print(f"Skipping n = {', '.join(map(str, skipped))} for {label}: not enough distinct values")
			reports.extend(swept)
	_print_summary(reports)

	def plot_one(report: FitReport, path: Path) -> None:
		data, hist = curves[report.label]
		if hist is not None:
			plot_cdf_fit(report, data, hist, path)
		elif target is not None:
			plot_target_fit(report, data, path)

	out = _write_artifacts(reports, output_dir, emit, plot_one)
	table = build_sweep_table(reports)
	if "csv" in emit:
		path = out / f"{SWEEP_TABLE}.csv"
		print(f"Writing sweep table to: {path}")
		write_table(table, path, index=False)
	if "svg" in emit:
		plot_sweep(table, out / f"{SWEEP_TABLE}.svg")

	print("Processing complete!")
	return reports


def process_report(
	report_dirs: Sequence[str],
	output_dir: str,
	emit: Sequence[str] = ("csv",)
) -> List[FitReport]:
	"""
	Merge fit_report.json files from earlier runs into comparison tables.

	Writes comparison.csv (one row per fit), nl_vs_n.csv and the parameter
	tables; with svg also nl_vs_n.svg.

	Raises:
		ReportError: If no reports are found or nothing would be written
	"""
	if not ({"csv", "svg"} & set(emit)):
		raise ReportError("report writes csv and svg artifacts only")

	print(f"Searching reports in: {', '.join(report_dirs)}")
	paths = find_report_files(report_dirs)
	reports = load_reports(paths)
	print(f"Loaded {len(reports)} reports from {len(paths)} files")

	out = Path(output_dir)
	out.mkdir(parents=True, exist_ok=True)
	table = build_sweep_table(reports)

	if "csv" in emit:
		path = out / "comparison.csv"
		print(f"Writing comparison table to: {path}")
		write_table(build_comparison_table(reports), path, index=False)
		path = out / f"{SWEEP_TABLE}.csv"
		print(f"Writing sweep table to: {path}")
		write_table(table, path, index=False)
		for (name, n), group in group_reports(reports).items():
			write_table(build_parameter_table(group), out / table_filename(name, n))

	if "svg" in emit:
		plot_sweep(table, out / f"{SWEEP_TABLE}.svg")

	print("Processing complete!")
	return reports


def process_compare(
	output_dir: str,
	target: str,
	interval: Tuple[float, float] = DEFAULT_INTERVAL,
	points: int = DEFAULT_TARGET_POINTS,
	a_values: Sequence[float] = DEFAULT_A_VALUES,
	emit: Sequence[str] = ("csv",)
):
	"""
	Sample S-curves for several a against a target.

	Every curve takes the target's peak slope as m and (0, 0.5) as its
	inflection point.

	Returns:
		The sampled curves as a DataFrame
	"""
	data = make_target(target, interval, points)
	m = float(np.max(data.density))
	print(f"Comparing {target} with S-curves for a = {format_points(a_values)} (m = {format_quantity(m)})")
	frame = build_curve_comparison(data, list(a_values), m)

	out = Path(output_dir)
	out.mkdir(parents=True, exist_ok=True)
	if "csv" in emit:
		path = out / "curves_by_a.csv"
		print(f"Writing curves to: {path}")
		write_table(frame, path, index=False)
	if "svg" in emit:
		plot_comparison(frame, target, out / "curves_by_a.svg")

	print("Processing complete!")
	return frame


def _schema(manifest: RunManifest) -> CsvSchema:
	defaults = CsvSchema()
	return CsvSchema(
		attributes=manifest.attributes or defaults.attributes,
		classes=manifest.classes or defaults.classes
	)


def cmd_fit_cdf(manifest: RunManifest) -> List[FitReport]:
	return process_fit_cdf(
		output_dir=manifest.output_dir,
		input_path=manifest.input_path,
		attribute=manifest.attribute,
		species=manifest.species,
		n_values=manifest.n_values,
		config=manifest.config,
		init_modes=manifest.init_modes,
		strategy=manifest.strategy,
		zero_point=manifest.inject_zero_point,
		emit=manifest.emit,
		schema=_schema(manifest),
		workers=manifest.workers
	)


def cmd_fit_target(manifest: RunManifest) -> List[FitReport]:
	return process_fit_target(
		output_dir=manifest.output_dir,
		target=manifest.target,
		intervals=manifest.intervals,
		points=manifest.points,
		n_values=manifest.n_values,
		config=manifest.config,
		init_modes=manifest.init_modes,
		strategy=manifest.strategy,
		emit=manifest.emit,
		workers=manifest.workers
	)


def cmd_sweep(manifest: RunManifest) -> List[FitReport]:
	return process_sweep(
		output_dir=manifest.output_dir,
		n_values=manifest.n_values,
		target=manifest.target,
		intervals=manifest.intervals,
		points=manifest.points,
		input_path=manifest.input_path,
		attribute=manifest.attribute,
		species=manifest.species,
		config=manifest.config,
		init_modes=manifest.init_modes,
		strategy=manifest.strategy,
		zero_point=manifest.inject_zero_point,
		emit=manifest.emit,
		schema=_schema(manifest)
	)


def cmd_report(manifest: RunManifest) -> List[FitReport]:
	return process_report(manifest.report_dirs, manifest.output_dir, manifest.emit)


def cmd_compare(manifest: RunManifest):
	return process_compare(
		output_dir=manifest.output_dir,
		target=manifest.target,
		interval=manifest.intervals[0] if manifest.intervals else DEFAULT_INTERVAL,
		points=manifest.points,
		a_values=manifest.a_values or DEFAULT_A_VALUES,
		emit=manifest.emit
	)


COMMANDS: Dict[str, Callable[[RunManifest], object]] = {
	"fit-cdf": cmd_fit_cdf,
	"fit-target": cmd_fit_target,
	"sweep": cmd_sweep,
	"report": cmd_report,
	"compare": cmd_compare
}


def run(manifest: RunManifest):
	"""Execute the command a manifest names."""
	return COMMANDS[manifest.command](manifest)


def attach_negative_values(argv: Sequence[str]) -> List[str]:
	"""
	Rewrite "--interval -3:3" as "--interval=-3:3".

	argparse takes a token starting with "-" for an option unless it is a
	plain number, so interval and list values with a negative first entry
	are attached to their option here.
	"""
	args = list(argv)
	joined: List[str] = []
	i = 0
	while i < len(args):
		token = args[i]
		if token in NEGATIVE_VALUE_OPTIONS and i + 1 < len(args) and NEGATIVE_VALUE.match(args[i + 1]):
			joined.append(f"{token}={args[i + 1]}")
			i += 2
			continue
		joined.append(token)
		i += 1
	return joined


def parse_interval(text: str) -> Tuple[float, float]:
	"""Parse "LO:HI" into a pair of floats."""
	try:
		low, high = (float(part) for part in text.split(":"))
	except ValueError:
		raise argparse.ArgumentTypeError(f"Invalid interval {text!r}, expected LO:HI")
	if not low < high:
		raise argparse.ArgumentTypeError(f"Interval {text!r} is empty")
	return low, high


def parse_n_range(text: str) -> Tuple[int, ...]:
	"""Parse an inclusive "LO:HI" range of component counts."""
	try:
		low, high = (int(part) for part in text.split(":"))
	except ValueError:
		raise argparse.ArgumentTypeError(f"Invalid n range {text!r}, expected LO:HI")
	if low < 1 or high < low:
		raise argparse.ArgumentTypeError(f"n range {text!r} must satisfy 1 <= LO <= HI")
	return tuple(range(low, high + 1))


def parse_int_list(text: str) -> Tuple[int, ...]:
	try:
		values = tuple(int(part) for part in text.split(","))
	except ValueError:
		raise argparse.ArgumentTypeError(f"Invalid integer list {text!r}")
	if any(v < 1 for v in values):
		raise argparse.ArgumentTypeError(f"Component counts must be at least 1, got {text!r}")
	return values


def parse_float_list(text: str) -> Tuple[float, ...]:
	try:
		return tuple(float(part) for part in text.split(","))
	except ValueError:
		raise argparse.ArgumentTypeError(f"Invalid number list {text!r}")


def parse_init_modes(text: str) -> Tuple[InitMode, ...]:
	try:
		return tuple(InitMode(part.strip()) for part in text.split(","))
	except ValueError:
		choices = ", ".join(mode.value for mode in InitMode)
		raise argparse.ArgumentTypeError(f"Invalid init mode in {text!r}; choose from {choices}")


def parse_emit(text: str) -> Tuple[str, ...]:
	kinds = tuple(part.strip() for part in text.split(",") if part.strip())
	unknown = [kind for kind in kinds if kind not in EMIT_CHOICES]
	if not kinds or unknown:
		raise argparse.ArgumentTypeError(f"--emit takes a comma list of {', '.join(EMIT_CHOICES)}")
	return kinds


def parse_names(text: str) -> Tuple[str, ...]:
	return tuple(part.strip() for part in text.split(",") if part.strip())


def _add_data_options(parser: argparse.ArgumentParser) -> None:
	parser.add_argument('--input', help='CSV file: numeric columns followed by a class label (default: bundled iris)')
	parser.add_argument('--attribute', default='all', help='Attribute to fit, or "all" (default: all)')
	parser.add_argument('--species', default='all', help='Species to fit, or "all" (default: all)')
	parser.add_argument('--inject-zero-point', type=float, metavar='X', help='Add value X with zero frequency to every ECDF')
	parser.add_argument('--columns', type=parse_names, help='Comma list of attribute names in file order')
	parser.add_argument('--classes', type=parse_names, help='Comma list of admissible class labels')


def _add_target_options(parser: argparse.ArgumentParser, required: bool) -> None:
	parser.add_argument('--target', choices=sorted(TARGETS), required=required, help='Analytic target curve')
	parser.add_argument(
		'--interval', type=parse_interval, action='append', metavar='LO:HI',
		help='Target interval, repeatable (default: -5:5)'
	)
	parser.add_argument('--points', type=int, default=DEFAULT_TARGET_POINTS, help=f'Grid points (default: {DEFAULT_TARGET_POINTS})')


def _add_fit_options(parser: argparse.ArgumentParser) -> None:
	parser.add_argument('--init-a', type=float, default=1.0, help='Initial a (default: 1)')
	parser.add_argument(
		'--init-m', type=parse_float_list,
		help='Initial slope, one value or one per component (default: 0.1 for n=1, 1 otherwise)'
	)
	parser.add_argument('--init-p', type=parse_float_list, help='Initial weights, one value or one per component (default: 1)')
	parser.add_argument(
		'--init-mode', type=parse_init_modes, default=(InitMode.CONSTANT,),
		help='Comma list of constant, slope-at-inflection (default: constant)'
	)
	parser.add_argument('--a-bound', type=float, default=FitConfig.a_lower_bound, help='Lower bound on a (default: 1e-9)')
	parser.add_argument('--max-iterations', type=int, default=FitConfig.max_iterations, help='Optimizer iteration limit (default: 1000)')
	parser.add_argument('--strategy', choices=[s.value for s in Strategy], help='Inflection selection rule')
	parser.add_argument('--workers', type=int, help='Threads used for independent fits')


def _add_output_options(parser: argparse.ArgumentParser, emit: str) -> None:
	parser.add_argument('--out', default='results', help='Output directory (default: results)')
	parser.add_argument('--emit', type=parse_emit, default=parse_emit(emit), help=f'Comma list of json, csv, svg (default: {emit})')


def build_parser() -> argparse.ArgumentParser:
	"""Argument parser with one sub-command per operation."""
	parser = argparse.ArgumentParser(
		description='Fit superposed S-curves to empirical and analytic CDFs'
	)
	commands = parser.add_subparsers(dest='command', required=True)

	fit_cdf = commands.add_parser('fit-cdf', help='Fit the ECDFs of a CSV table')
	_add_data_options(fit_cdf)
	fit_cdf.add_argument('--n', type=parse_int_list, default=(1,), help='Component counts, e.g. 1 or 1,3 (default: 1)')
	_add_fit_options(fit_cdf)
	_add_output_options(fit_cdf, 'json,csv')

	fit_target = commands.add_parser('fit-target', help='Fit a sigmoid or erf target')
	_add_target_options(fit_target, required=True)
	fit_target.add_argument('--n', type=parse_int_list, default=(1,), help='Component counts (default: 1)')
	_add_fit_options(fit_target)
	_add_output_options(fit_target, 'json,csv')

	sweep = commands.add_parser('sweep', help='Fit over a range of n and tabulate NL against n')
	_add_data_options(sweep)
	_add_target_options(sweep, required=False)
	sweep.add_argument('--sweep', type=parse_n_range, required=True, metavar='LO:HI', help='Inclusive range of n')
	_add_fit_options(sweep)
	_add_output_options(sweep, 'json,csv')

	report = commands.add_parser('report', help='Merge earlier fit_report.json files')
	report.add_argument('report_dirs', nargs='+', help='Directories searched for fit_report.json')
	_add_output_options(report, 'csv')

	compare = commands.add_parser('compare', help='S-curves for several a against a target')
	_add_target_options(compare, required=True)
	compare.add_argument('--a-values', type=parse_float_list, help='Comma list of a (default: 1e-9,1,10)')
	_add_output_options(compare, 'csv')

	return parser


def manifest_from_args(args: argparse.Namespace) -> RunManifest:
	"""Translate parsed arguments into a RunManifest."""
	config = FitConfig()
	if hasattr(args, 'init_a'):
		init_m = args.init_m[0] if args.init_m and len(args.init_m) == 1 else args.init_m
		init_p = args.init_p[0] if args.init_p and len(args.init_p) == 1 else args.init_p
		config = FitConfig(
			init_a=args.init_a,
			init_m=init_m,
			init_p=init_p,
			a_lower_bound=args.a_bound,
			max_iterations=args.max_iterations
		)

	n_values = getattr(args, 'sweep', None) or getattr(args, 'n', (1,))
	strategy = getattr(args, 'strategy', None)
	return RunManifest(
		command=args.command,
		output_dir=args.out,
		config=config,
		input_path=getattr(args, 'input', None),
		attribute=getattr(args, 'attribute', 'all'),
		species=getattr(args, 'species', 'all'),
		target=getattr(args, 'target', None),
		intervals=tuple(getattr(args, 'interval', None) or ()),
		points=getattr(args, 'points', DEFAULT_TARGET_POINTS),
		n_values=tuple(n_values),
		init_modes=tuple(getattr(args, 'init_mode', (InitMode.CONSTANT,))),
		strategy=Strategy(strategy) if strategy else None,
		inject_zero_point=getattr(args, 'inject_zero_point', None),
		emit=args.emit,
		report_dirs=tuple(getattr(args, 'report_dirs', ())),
		a_values=tuple(getattr(args, 'a_values', None) or ()),
		workers=getattr(args, 'workers', None),
		attributes=getattr(args, 'columns', None) or (),
		classes=getattr(args, 'classes', None) or ()
	)


def main(argv: Optional[Sequence[str]] = None) -> int:
	"""
	Command-line entry point.

	Returns:
		0 when the command ran (unconverged fits included), 2 on usage or
		input errors
	"""
	parser = build_parser()
	try:
		args = parser.parse_args(attach_negative_values(sys.argv[1:] if argv is None else argv))
	except SystemExit as e:
		return e.code if isinstance(e.code, int) else 2

	if args.command == 'sweep' and args.target and args.input:
		print("Error: sweep takes either --target or --input, not both")
		return 2

	try:
		run(manifest_from_args(args))
	except DataParserError as e:
		print(f"Error reading input: {e}")
		return 2
	except DataPrepError as e:
		print(f"Error preparing data: {e}")
		return 2
	except FitError as e:
		print(f"Error in fit configuration: {e}")
		return 2
	except (CurveError, UndefinedMeasureError) as e:
		print(f"Error evaluating curves: {e}")
		return 2
	except ReportError as e:
		print(f"Error building report: {e}")
		return 2
	except OSError as e:
		print(f"Error writing output files: {e}")
		return 2
	return 0


if __name__ == "__main__":
	sys.exit(main())
