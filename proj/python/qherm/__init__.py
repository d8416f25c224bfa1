"""Metric operators for quasi-Hermitian Hamiltonians.

Thin Python layer over the C++ core: spectral metrics, pseudometric x
charge factorization, evolution, and the first-order-charge differential
family.
"""

from ._core import *  # noqa: F401,F403
from ._core import Error, __version__, run_scenario

import json as _json


def report(model, task, tol=1e-10):
    """Run a task on a model (dict or JSON text); returns (dict, exit_code)."""
    text = model if isinstance(model, str) else _json.dumps(model)
    out, code = run_scenario(text, task, tol)
    return _json.loads(out), code
