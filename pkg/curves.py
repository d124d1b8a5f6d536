"""
Closed-form evaluation of singularly perturbed lines (S_a-m curves).

An S_a-m curve is the real solution y of

	a(y - y_c)^3 + (y - y_c) = m(x - x_c),    a > 0,

an S-shaped curve with its single inflection point at (x_c, y_c). Its
derivative is a bell-curve with height m at x_c. Superpositions add several
such curves with weights p_i and a shared a.

All functions accept a scalar or a numpy array for x and return the same
shape (a float for scalar input).
"""

from typing import Union

import numpy as np

from models import A_LOWER_BOUND, SCurveParams, Superposition

ArrayLike = Union[float, np.ndarray]


class CurveError(ValueError):
	"""Base exception for curve evaluation errors."""
	pass


class CurveInputError(CurveError):
	"""Raised for non-finite abscissae or parameters."""
	pass


class CurveDomainError(CurveError):
	"""Raised when a is below the admissible lower bound."""
	pass


def _check_parameters(a: float, *others) -> None:
	values = np.concatenate([np.ravel(np.asarray(v, dtype=float)) for v in (a,) + others])
	if not np.all(np.isfinite(values)):
		raise CurveInputError(f"Curve parameters must be finite, got {values.tolist()}")
	if a < A_LOWER_BOUND:
		raise CurveDomainError(f"a={a!r} is below the lower bound {A_LOWER_BOUND}")


def _as_abscissa(x: ArrayLike) -> np.ndarray:
	arr = np.asarray(x, dtype=float)
	if not np.all(np.isfinite(arr)):
		raise CurveInputError("x must be finite")
	return arr


def _shape_like(value: np.ndarray, x: np.ndarray) -> ArrayLike:
	return float(value) if x.ndim == 0 else value


def perturbed_root(a: float, w: ArrayLike) -> np.ndarray:
	"""
	Real root u of a*u^3 + u = w.

	The Cardano form u = S1 + S2 subtracts nearly equal cube roots when w > 0,
	so the root is evaluated on |w| through the rationalized identity
	u = T - 1/(3aT), T = cbrt(s + sqrt(s^2 + 1/(27a^3))), s = |w|/(2a), and the
	sign restored afterwards (the root is odd in w). One Newton step on the
	cubic removes the rounding left by the cube roots.

	Args:
		a: Perturbation parameter (> 0)
		w: Right-hand side, scalar or array

	Returns:
		Array of roots with the shape of w
	"""
	a = np.float64(a)
	w = np.asarray(w, dtype=float)
	target = np.abs(w)
	s = target / (2.0 * a)
	t = np.cbrt(s + np.hypot(s, 1.0 / np.sqrt(27.0 * a ** 3)))
	u = t - 1.0 / (3.0 * a * t)
	u = u - (a * u ** 3 + u - target) / (3.0 * a * u * u + 1.0)
	u = np.where(target == 0.0, 0.0, u)
	return np.copysign(u, w)


def eval_scurve(params: SCurveParams, x: ArrayLike) -> ArrayLike:
	"""
	Evaluate the S_a-m curve y(x).

	Args:
		params: Curve parameters (a, m, x_c, y_c)
		x: Abscissa, scalar or array

	Returns:
		y with the shape of x

	Raises:
		CurveInputError: If x or a parameter is not finite
		CurveDomainError: If a is below A_LOWER_BOUND
	"""
	_check_parameters(params.a, params.m, params.x_c, params.y_c)
	xs = _as_abscissa(x)
	u = perturbed_root(params.a, params.m * (xs - params.x_c))
	return _shape_like(u + params.y_c, xs)


def eval_scurve_derivative(params: SCurveParams, x: ArrayLike) -> ArrayLike:
	"""
	Evaluate the bell-curve dy/dx = m / (1 + 3a(y - y_c)^2).

	The factor 3 comes from differentiating the implicit cubic; the maximum,
	m, is attained at x_c.
	"""
	_check_parameters(params.a, params.m, params.x_c, params.y_c)
	xs = _as_abscissa(x)
	u = perturbed_root(params.a, params.m * (xs - params.x_c))
	return _shape_like(params.m / (1.0 + 3.0 * params.a * u * u), xs)


def _component_roots(sup: Superposition, xs: np.ndarray):
	p, m, x_c, y_c = sup.arrays()
	_check_parameters(sup.a, p, m, x_c, y_c)
	# rows are components, columns are abscissae
	u = perturbed_root(sup.a, m * (np.ravel(xs)[np.newaxis, :] - x_c))
	return p, m, x_c, y_c, u


def eval_superposition(sup: Superposition, x: ArrayLike) -> ArrayLike:
	"""
	Evaluate y_net(x) = sum_i p_i * y(a, m_i, x_ci, y_ci; x).

	Args:
		sup: Superposition with a shared a
		x: Abscissa, scalar or array

	Returns:
		y_net with the shape of x
	"""
	xs = _as_abscissa(x)
	p, _, _, y_c, u = _component_roots(sup, xs)
	total = np.sum(p * (u + y_c), axis=0).reshape(xs.shape)
	return _shape_like(total, xs)


def eval_superposition_derivative(sup: Superposition, x: ArrayLike) -> ArrayLike:
	"""Evaluate dy_net/dx = sum_i p_i m_i / (1 + 3a(y_i - y_ci)^2)."""
	xs = _as_abscissa(x)
	p, m, _, _, u = _component_roots(sup, xs)
	total = np.sum(p * m / (1.0 + 3.0 * sup.a * u * u), axis=0).reshape(xs.shape)
	return _shape_like(total, xs)


def eval_implicit_form(sup: Superposition, x: ArrayLike) -> ArrayLike:
	"""
	Evaluate the superposition through its implicit rational form
	sum_i p_i (m_i(x - x_ci) / (1 + a(y_i - y_ci)^2) + y_ci).

	Equal to eval_superposition up to rounding.
	"""
	xs = _as_abscissa(x)
	p, m, x_c, y_c, u = _component_roots(sup, xs)
	line = m * (np.ravel(xs)[np.newaxis, :] - x_c)
	total = np.sum(p * (line / (1.0 + sup.a * u * u) + y_c), axis=0).reshape(xs.shape)
	return _shape_like(total, xs)
