"""Data models for S-curve parameters, data tables and fit results."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

# a at this bound turns a curve into its straight line.
A_LOWER_BOUND = 1e-9


def format_quantity(value: Optional[float], digits: int = 6) -> str:
	"""
	Format a number the way the parameter tables print it.

	Args:
		value: Number to format (None gives "n/a")
		digits: Decimal places

	Returns:
		Fixed-point string for ordinary magnitudes, scientific notation for
		very small or very large ones (e.g. "1.519780", "1.185e-07")
	"""
	if value is None:
		return "n/a"
	magnitude = abs(value)
	if magnitude != 0 and (magnitude < 10 ** -(digits - 2) or magnitude >= 1e9):
		return f"{value:.3e}"
	return f"{value:.{digits}f}"


def format_points(values: Sequence[float]) -> str:
	"""Join coordinates compactly, e.g. "5.1, 5, 5.4"."""
	return ", ".join(f"{v:g}" for v in values)


class Strategy(str, Enum):
	"""How inflection points are picked from data."""
	SLOPE_MIDPOINT = "slope-midpoint"
	MODE_FREQUENCY = "mode-frequency"


class InitMode(str, Enum):
	"""How the component slopes and weights are initialised."""
	CONSTANT = "constant"
	SLOPE_AT_INFLECTION = "slope-at-inflection"


@dataclass(frozen=True)
class SCurveParams:
	"""One perturbed line a(y-y_c)^3 + (y-y_c) = m(x-x_c)."""
	a: float
	m: float
	x_c: float = 0.0
	y_c: float = 0.0


@dataclass(frozen=True)
class Component:
	"""Weighted S-curve inside a superposition."""
	p: float
	m: float
	x_c: float
	y_c: float


@dataclass(frozen=True)
class Superposition:
	"""Weighted sum of S-curves sharing a single perturbation parameter a."""
	a: float
	components: Tuple[Component, ...]

	def __post_init__(self):
		object.__setattr__(self, "components", tuple(self.components))
		if not self.components:
			raise ValueError("A superposition needs at least one component")

	@property
	def n(self) -> int:
		return len(self.components)

	@classmethod
	def single(cls, params: SCurveParams, p: float = 1.0) -> "Superposition":
		"""Wrap one S-curve as a superposition of size one."""
		return cls(a=params.a, components=(Component(p, params.m, params.x_c, params.y_c),))

	def component_params(self, index: int) -> SCurveParams:
		"""Parameters of the index-th component as a standalone curve."""
		comp = self.components[index]
		return SCurveParams(a=self.a, m=comp.m, x_c=comp.x_c, y_c=comp.y_c)

	def slope_sum(self) -> float:
		"""Sum of p_i * m_i, the slope with the nonlinearity switched off."""
		return float(sum(c.p * c.m for c in self.components))

	def arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
		"""Component fields as column vectors (p, m, x_c, y_c)."""
		table = np.array([[c.p, c.m, c.x_c, c.y_c] for c in self.components], dtype=float)
		return table[:, 0:1], table[:, 1:2], table[:, 2:3], table[:, 3:4]

	def to_dict(self) -> dict:
		return {
			"a": self.a,
			"n": self.n,
			"components": [
				{"p": c.p, "m": c.m, "x_c": c.x_c, "y_c": c.y_c}
				for c in self.components
			]
		}

	@classmethod
	def from_dict(cls, data: dict) -> "Superposition":
		return cls(
			a=data["a"],
			components=tuple(
				Component(p=c["p"], m=c["m"], x_c=c["x_c"], y_c=c["y_c"])
				for c in data["components"]
			)
		)


@dataclass(frozen=True)
class SampleColumn:
	"""Raw measurements of one attribute for one class."""
	values: Tuple[float, ...]
	label: str
	group: str

	def __post_init__(self):
		object.__setattr__(self, "values", tuple(float(v) for v in self.values))

	def as_array(self) -> np.ndarray:
		return np.asarray(self.values, dtype=float)


@dataclass(frozen=True, eq=False)
class EmpiricalCDF:
	"""Cumulative fractions over the unique sorted sample values."""
	xs: np.ndarray
	fractions: np.ndarray
	counts: np.ndarray

	def __len__(self) -> int:
		return int(self.xs.size)


@dataclass(frozen=True, eq=False)
class TargetCurve:
	"""Analytic S-curve sampled on a grid, fitted like an empirical CDF."""
	name: str
	xs: np.ndarray
	fractions: np.ndarray
	density: np.ndarray

	def __len__(self) -> int:
		return int(self.xs.size)


@dataclass(frozen=True, eq=False)
class HistogramSpec:
	"""Bin edges and per-bin relative frequencies."""
	edges: np.ndarray
	masses: np.ndarray


@dataclass(frozen=True)
class InflectionSet:
	"""Inflection points (x_c, y_c) in selection priority order."""
	points: Tuple[Tuple[float, float], ...]
	strategy: Strategy

	def __len__(self) -> int:
		return len(self.points)

	def head(self, count: int) -> Tuple[Tuple[float, float], ...]:
		return self.points[:count]


Numbers = Union[float, Sequence[float]]


@dataclass(frozen=True)
class FitConfig:
	"""Initial conditions, bound on a and optimizer tolerances."""
	n: int = 1
	init_a: float = 1.0
	init_m: Optional[Numbers] = None
	init_p: Optional[Numbers] = None
	init_mode: InitMode = InitMode.CONSTANT
	a_lower_bound: float = A_LOWER_BOUND
	max_iterations: int = 1000
	sse_rel_tol: float = 1e-10
	grad_tol: float = 1e-12
	xtol: float = 1e-12

	def initial_slopes(self, n: Optional[int] = None) -> List[float]:
		"""
		Starting slopes for n components.

		The default is 0.1 for a single curve and 1 per component otherwise.
		"""
		n = self.n if n is None else n
		if self.init_m is None:
			return [0.1] if n == 1 else [1.0] * n
		return _expand(self.init_m, n, "init_m")

	def initial_weights(self, n: Optional[int] = None) -> List[float]:
		"""Starting weights: 1 for constant init, 0 for slope-at-inflection."""
		n = self.n if n is None else n
		if self.init_p is None:
			start = 0.0 if self.init_mode == InitMode.SLOPE_AT_INFLECTION else 1.0
			return [start] * n
		return _expand(self.init_p, n, "init_p")

	def to_dict(self) -> dict:
		return {
			"n": self.n,
			"init_a": self.init_a,
			"init_m": _plain(self.init_m),
			"init_p": _plain(self.init_p),
			"init_mode": self.init_mode.value,
			"a_lower_bound": self.a_lower_bound,
			"max_iterations": self.max_iterations,
			"sse_rel_tol": self.sse_rel_tol,
			"grad_tol": self.grad_tol,
			"xtol": self.xtol
		}

	@classmethod
	def from_dict(cls, data: dict) -> "FitConfig":
		values = dict(data)
		values["init_mode"] = InitMode(values.get("init_mode", InitMode.CONSTANT.value))
		for key in ("init_m", "init_p"):
			if isinstance(values.get(key), list):
				values[key] = tuple(values[key])
		return cls(**values)


def _expand(value: Numbers, n: int, name: str) -> List[float]:
	if isinstance(value, (int, float)):
		return [float(value)] * n
	values = [float(v) for v in value]
	if len(values) != n:
		raise ValueError(f"{name} has {len(values)} entries, expected {n}")
	return values


def _plain(value: Optional[Numbers]) -> Any:
	if value is None or isinstance(value, (int, float)):
		return value
	return [float(v) for v in value]


@dataclass(frozen=True)
class MeasureSet:
	"""Characterization measures of a fitted superposition."""
	m_max: float
	argmax_x: float
	ratio: float
	nl_percent: Optional[float]
	m_bar: Optional[float] = None

	def to_dict(self) -> dict:
		return {
			"m_max": self.m_max,
			"argmax_x": self.argmax_x,
			"ratio": self.ratio,
			"nl_percent": self.nl_percent,
			"m_bar": self.m_bar
		}

	@classmethod
	def from_dict(cls, data: dict) -> "MeasureSet":
		return cls(**data)


@dataclass(frozen=True)
class FitReport:
	"""Outcome of one least-squares fit."""
	params: Superposition
	sse: float
	initial_sse: float
	iterations: int
	converged: bool
	message: str
	measures: MeasureSet
	label: str = ""
	source: str = ""
	config: Dict[str, Any] = field(default_factory=dict)

	@property
	def n(self) -> int:
		return self.params.n

	def to_dict(self) -> dict:
		"""Convert the report to a JSON-ready dictionary."""
		return {
			"label": self.label,
			"source": self.source,
			"params": self.params.to_dict(),
			"sse": self.sse,
			"initial_sse": self.initial_sse,
			"iterations": self.iterations,
			"converged": self.converged,
			"message": self.message,
			"measures": self.measures.to_dict(),
			"config": self.config
		}

	@classmethod
	def from_dict(cls, data: dict) -> "FitReport":
		return cls(
			params=Superposition.from_dict(data["params"]),
			sse=data["sse"],
			initial_sse=data["initial_sse"],
			iterations=data["iterations"],
			converged=data["converged"],
			message=data["message"],
			measures=MeasureSet.from_dict(data["measures"]),
			label=data.get("label", ""),
			source=data.get("source", ""),
			config=data.get("config", {})
		)


@dataclass(frozen=True)
class RunManifest:
	"""Everything one CLI invocation needs."""
	command: str
	output_dir: str
	config: FitConfig = field(default_factory=FitConfig)
	input_path: Optional[str] = None
	attribute: str = "all"
	species: str = "all"
	target: Optional[str] = None
	intervals: Tuple[Tuple[float, float], ...] = ()
	points: int = 101
	n_values: Tuple[int, ...] = (1,)
	init_modes: Tuple[InitMode, ...] = (InitMode.CONSTANT,)
	strategy: Optional[Strategy] = None
	inject_zero_point: Optional[float] = None
	emit: Tuple[str, ...] = ("json", "csv")
	report_dirs: Tuple[str, ...] = ()
	a_values: Tuple[float, ...] = ()
	workers: Optional[int] = None
	attributes: Tuple[str, ...] = ()
	classes: Tuple[str, ...] = ()
