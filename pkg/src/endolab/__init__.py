"""endolab: exact computations around quadratic spaces, endoscopy and Weyl combinatorics.

Everything is exact: big rationals, Gaussian rationals and formal Laurent
polynomials.  No floating point anywhere.
"""

__version__ = "0.1.0"
