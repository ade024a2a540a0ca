"""Bundled instances, formulas and the report schema."""
