#!/usr/bin/env python3
"""Example usage of the S-curve fitting tools."""

from main import process_compare, process_fit_cdf, process_fit_target, process_report, process_sweep
from models import FitConfig, InitMode

# Example 1: Single curves on every iris column
print("Example 1: Single-curve fits of the bundled iris data")
print("-" * 50)
process_fit_cdf(
	output_dir="example_results/iris_n1",
	n_values=[1],
	emit=["json", "csv", "svg"]
)
print()

# Example 2: Three curves on sepal length
print("Example 2: Three-curve fits of sepal length")
print("-" * 50)
process_fit_cdf(
	output_dir="example_results/sepal_length_n3",
	attribute="sepal_length",
	n_values=[3],
	config=FitConfig(init_m=1.0, init_p=1.0),
	emit=["json", "csv", "svg"]
)
print()

# Example 3: Setosa petal width with an extra point at 0.15
print("Example 3: Petal width with a zero-frequency point")
print("-" * 50)
process_fit_cdf(
	output_dir="example_results/petal_width_corrected",
	attribute="petal_width",
	species="setosa",
	n_values=[1, 2],
	config=FitConfig(init_m=-1.0),
	zero_point=0.15,
	emit=["json", "csv", "svg"]
)
print()

# Example 4: Logistic target on two intervals
print("Example 4: Fitting the logistic sigmoid")
print("-" * 50)
process_fit_target(
	output_dir="example_results/sigmoid",
	target="sigmoid",
	intervals=[(-5.0, 5.0), (-10.0, 10.0)],
	n_values=[1, 4],
	emit=["json", "csv", "svg"]
)
print()

# Example 5: NL against n for erf, both initializations
print("Example 5: Sweeping n for the erf target")
print("-" * 50)
process_sweep(
	output_dir="example_results/erf_sweep",
	n_values=range(1, 7),
	target="erf",
	intervals=[(-3.0, 3.0)],
	init_modes=[InitMode.CONSTANT, InitMode.SLOPE_AT_INFLECTION],
	emit=["json", "csv", "svg"]
)
print()

# Example 6: Merge everything above
print("Example 6: Merging the reports")
print("-" * 50)
process_report(["example_results"], "example_results/merged", emit=["csv", "svg"])
print()

# Example 7: The effect of a
print("Example 7: S-curves for several a against erf")
print("-" * 50)
process_compare("example_results/compare", "erf", interval=(-3.0, 3.0), emit=["csv", "svg"])
print()

print("All examples completed!")
print("Check example_results/ for the reports, tables and figures.")
