"""Parity of 21-regular partitions: series, lattice counts and certificates."""

from .gf2series import Gf2Series, bt_parity, c_series, eta_quotient_parity

__all__ = ["Gf2Series", "bt_parity", "c_series", "eta_quotient_parity"]
__version__ = "0.1.0"
