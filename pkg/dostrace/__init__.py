"""
dostrace - density of states from heat traces, ε-cutoffs and Dixmier traces.
"""

__version__ = "0.3.0"
