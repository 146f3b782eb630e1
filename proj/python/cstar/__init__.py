"""Numerical toolkit for finite-dimensional C*-algebras.

Matrices are passed as complex128 numpy arrays. Precondition failures raise
``PreconditionError`` (a ``ValueError``) whose ``args`` are ``(code, detail)``.
"""

from ._cstar import *  # noqa: F401,F403
from ._cstar import PreconditionError, __version__  # noqa: F401
