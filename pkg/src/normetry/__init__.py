"""normetry: verification and falsification of symmetric-norm matrix
inequalities over dense complex matrices."""

from . import checks, falsify, linalg, norms, rand, scalarfn, serialize
from .norms import ComparisonRecord, NormSpec, Verdict, dominance_verdict

__version__ = "0.1.0"

__all__ = [
    "checks",
    "falsify",
    "linalg",
    "norms",
    "rand",
    "scalarfn",
    "serialize",
    "ComparisonRecord",
    "NormSpec",
    "Verdict",
    "dominance_verdict",
    "__version__",
]
