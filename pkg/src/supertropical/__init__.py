"""Finite supertropical monoids: relations, transmissions, sections,
equalizers, isolation relations and supervaluations, with brute-force
oracles for checking them on small instances."""

__version__ = "0.1.0"
