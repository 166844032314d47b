"""mfbv: exact desk-scale experiments on multiplicative functions in
arithmetic progressions — character sums, discrepancy averages, smooth
numbers, sieve/bilinear decompositions, and smoothed lattice counts."""

from . import arith, barrier, chars, disc, lab, multfn, ramare, smooth  # noqa: F401

__version__ = "0.1.0"
