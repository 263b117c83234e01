"""Adjoint homological Selmer modules of SL2 knot-group representations."""
