"""Driving the command-line interface from Python.

Run with ``python3 demos/05_cli_checks.py``.  The same commands work as
``python3 -m diracosc ...`` or through the ``diracosc`` console script.
"""
from diracosc.cli import main

# A short spectrum table in CSV.
main(["spectrum", "--n-max", "2", "--mass", "1", "--omega", "0.5"])

# The verification suites report each check with its value and tolerance.
code = main(["check", "--suite", "fock", "--format", "csv"])
print("exit code:", code)

# Tightening a tolerance to zero makes the run fail with exit code 1.
code = main(["check", "--suite", "fock", "--format", "csv", "--tol", "fock_normal_order=0"])
print("exit code with a zero tolerance:", code)
