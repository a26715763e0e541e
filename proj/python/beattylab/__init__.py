"""Primes in Beatty sequences: exact membership, continued fractions,
prime sums, exponential sums and the bound evaluators.

Real parameters are passed as strings: quadratic surds "(p+q*sqrt(D))/r",
rationals "a/b", decimals "1.25" (exact), or certified intervals "m+-e".
"""

try:
    from beattylab._core import *  # noqa: F401,F403
    from beattylab._core import __version__  # noqa: F401
except ImportError:  # in-tree test runs put _core on sys.path directly
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
