"""Exact symbolic engine for analytic q-difference equations."""
