"""Counting a/n = 1/x + 1/y and the statistics of the count.

Modules:

* ``arith``: sieve factorization and multiplicative basics
* ``characters``: Dirichlet characters with exact root-of-unity values
* ``egyptian``: the solution count by three independent methods
* ``dirichlet_series``: Euler-factor machinery and the mean-square
  leading coefficient
* ``moments`` / ``distribution``: range scans, deviation statistics,
  and the Gaussian law of log R
* ``cli``: the ``egyfrac`` command
"""

from .errors import ConsistencyError

__all__ = ["ConsistencyError"]
__version__ = "0.1.0"
