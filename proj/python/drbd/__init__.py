"""Failure-time algebra for dynamic reliability block diagrams.

Parse a model document, evaluate its reliability in closed form, simulate
it with deterministic counter-based streams, and cross-check the two:

    import drbd
    m = drbd.parse("A ~ exp(0.1)\\nB ~ exp(0.2)\\nsystem = A * B")
    m.rel(1.0)                  # 0.7408...
    m.simulate(1.0, n=100000)   # (rel_hat, ci_half_width)
    m.compare(1.0)["consistent"]
"""

from ._core import (
    Model,
    ModelError,
    NumericError,
    ParseError,
    StructureError,
    case_study,
    parse,
)

__all__ = [
    "Model",
    "ModelError",
    "NumericError",
    "ParseError",
    "StructureError",
    "case_study",
    "parse",
]
