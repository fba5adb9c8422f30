"""Rational Pade-Chebyshev approximation and error-autocorrection diagnostics."""
