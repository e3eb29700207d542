"""Hot-loop kernels with compiled cores and pure-Python fallbacks.

The compiled extensions are optional build products; whichever variant of
each kernel is importable wins, compiled first.  Both variants implement
the same contract bit for bit, so the choice only affects speed.
"""

from edfkit.kernels import _demand_scan_py, _edf_sim_py

try:
    from edfkit.kernels._demand_scan_c import pd_scan

    USING_COMPILED_SCAN = True
except ImportError:
    pd_scan = _demand_scan_py.pd_scan
    USING_COMPILED_SCAN = False

try:
    from edfkit.kernels._edf_sim_c import edf_sim

    USING_COMPILED_SIM = True
except ImportError:
    edf_sim = _edf_sim_py.edf_sim
    USING_COMPILED_SIM = False


def backends() -> dict:
    """Which implementation each kernel resolved to at import time."""
    return {
        "pd_scan": "compiled" if USING_COMPILED_SCAN else "python",
        "edf_sim": "compiled" if USING_COMPILED_SIM else "python",
    }


__all__ = [
    "pd_scan",
    "edf_sim",
    "backends",
    "USING_COMPILED_SCAN",
    "USING_COMPILED_SIM",
]
