"""Silting mutation and cluster-category computations over graded path dg algebras."""

__version__ = "0.1.0"
