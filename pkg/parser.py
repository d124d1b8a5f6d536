"""Parser module for reading measurement tables from CSV files."""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple

import pandas as pd

from models import SampleColumn

BUNDLED_IRIS = Path(__file__).resolve().parent / "data" / "iris.csv"


class DataParserError(Exception):
	"""Custom exception for CSV parsing errors."""
	pass


class SchemaError(DataParserError):
	"""Raised for class labels or selectors the schema does not know."""
	pass


@dataclass(frozen=True)
class CsvSchema:
	"""Column layout: numeric attributes followed by one class label."""
	attributes: Tuple[str, ...] = ("sepal_length", "sepal_width", "petal_length", "petal_width")
	classes: Tuple[str, ...] = ("Iris-setosa", "Iris-versicolor", "Iris-virginica")
	label_prefix: str = "Iris-"

	def group_name(self, label: str) -> str:
		"""Short group name for a class label (Iris-setosa -> setosa)."""
		if self.label_prefix and label.startswith(self.label_prefix):
			return label[len(self.label_prefix):]
		return label

	@property
	def groups(self) -> Tuple[str, ...]:
		return tuple(self.group_name(c) for c in self.classes)


def _is_missing(value) -> bool:
	return value is None or (isinstance(value, float) and math.isnan(value)) or str(value).strip() == ""


def _looks_numeric(value) -> bool:
	try:
		float(value)
	except (TypeError, ValueError):
		return False
	return True


def load_csv(file_path: str, schema: CsvSchema = CsvSchema()) -> List[SampleColumn]:
	"""
	Parse a CSV table into one SampleColumn per (attribute, class).

	Each row holds the schema's numeric attributes followed by a class label.
	A header row is optional and blank lines are ignored.

	Args:
		file_path: Path to the CSV file
		schema: Column layout and admissible class labels

	Returns:
		Columns ordered by attribute, then by class as listed in the schema

	Raises:
		DataParserError: If the file cannot be read or a row is malformed
		SchemaError: If a row names a class outside the schema
	"""
	path = Path(file_path)
	if not path.exists():
		raise DataParserError(f"File not found: {file_path}")

	n_fields = len(schema.attributes) + 1
	try:
		frame = pd.read_csv(
			path,
			header=None,
			dtype=str,
			keep_default_na=False,
			skip_blank_lines=False,
			encoding="utf-8"
		)
	except pd.errors.EmptyDataError:
		raise DataParserError(f"Empty file: {file_path}")
	except pd.errors.ParserError as e:
		raise DataParserError(f"Malformed CSV in {file_path}: {str(e)}")
	except (OSError, UnicodeDecodeError) as e:
		raise DataParserError(f"Error reading file: {str(e)}")

	values: Dict[Tuple[str, str], List[float]] = {}
	seen_data = False
	for idx, row in enumerate(frame.itertuples(index=False, name=None)):
		line = idx + 1
		fields = list(row)
		if all(_is_missing(v) for v in fields):
			continue
		if not seen_data and not _looks_numeric(fields[0]):
			seen_data = True
			continue  # header
		seen_data = True

		present = [v for v in fields if not _is_missing(v)]
		if len(fields) != n_fields or len(present) != n_fields:
			raise DataParserError(
				f"Line {line} must have exactly {n_fields} fields, got {len(present)}"
			)

		label = str(fields[-1]).strip()
		if label not in schema.classes:
			raise SchemaError(f"Line {line}: unknown class {label!r}")

		try:
			numbers = [float(v) for v in fields[:-1]]
		except ValueError as e:
			raise DataParserError(f"Line {line}: {str(e)}")
		if not all(math.isfinite(v) for v in numbers):
			raise DataParserError(f"Line {line}: values must be finite")

		group = schema.group_name(label)
		for attribute, number in zip(schema.attributes, numbers):
			values.setdefault((attribute, group), []).append(number)

	if not values:
		raise DataParserError(f"No data rows in {file_path}")

	return [
		SampleColumn(values=tuple(values[(attribute, group)]), label=attribute, group=group)
		for attribute in schema.attributes
		for group in schema.groups
		if (attribute, group) in values
	]


def _normalize(name: str) -> str:
	return name.strip().lower().replace("-", "_").replace(" ", "_")


def select_columns(
	columns: List[SampleColumn],
	attribute: str = "all",
	species: str = "all",
	schema: CsvSchema = CsvSchema()
) -> List[SampleColumn]:
	"""
	Keep the columns matching an attribute and a species selector.

	Selectors are case-insensitive, accept '-' for '_' and the full class
	label (Iris-setosa) as well as the group name (setosa). "all" keeps
	everything.

	Raises:
		SchemaError: If a selector matches nothing
	"""
	selected = columns
	if _normalize(attribute) != "all":
		wanted = _normalize(attribute)
		selected = [c for c in selected if _normalize(c.label) == wanted]
		if not selected:
			known = ", ".join(sorted({c.label for c in columns}))
			raise SchemaError(f"Unknown attribute {attribute!r}; available: {known}")

	if _normalize(species) != "all":
		wanted = _normalize(schema.group_name(species.strip()))
		if wanted.startswith(_normalize(schema.label_prefix)):
			wanted = wanted[len(schema.label_prefix):]
		selected = [c for c in selected if _normalize(c.group) == wanted]
		if not selected:
			known = ", ".join(sorted({c.group for c in columns}))
			raise SchemaError(f"Unknown species {species!r}; available: {known}")

	return selected
