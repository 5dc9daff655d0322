"""
Checking the model against a reference curve
============================================

Reference curves, for example from a line-by-line code, are CSV files whose
``# key=value`` comments describe the conditions. The model is evaluated at
the reference frequencies and the error statistics are reported. Here a
synthetic reference is written with a small frequency dependent bias.
"""
import os
import tempfile

import numpy as np

from thzlos import Environment, compare, load_reference, model_curve
from thzlos.reference import ReferenceCurve, format_reference

f = np.arange(100e9, 450e9 + 1, 1e9)
truth = model_curve(f, 1000.0, Environment(25.0, 90.0), source="synthetic")
bias = 1.5 * np.sin(f / 40e9)
synthetic = ReferenceCurve(f, truth.loss + bias, truth.metadata)

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "reference.csv")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_reference(synthetic))
    curve = load_reference(path)

report = compare(curve)
for key, value in report.summary().items():
    print(f"{key:20s} {value}")
