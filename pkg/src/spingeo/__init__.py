"""Spin geometry workbench.

Exact Clifford algebra arithmetic and classification, spin groups and
spinor representations, Chern-Weil characteristic classes, Čech Z₂
obstruction theory, and spectral index-theorem checks.
"""

from .clifford import (
    Multivector,
    QI,
    Signature,
    blade_mul,
    format_mv,
    parse_mv,
    supercommutator,
    volume_element,
)
from .classification import (
    AlgebraType,
    classify_complex,
    classify_real,
    even_subalgebra_complex,
    even_subalgebra_type,
    table1,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraType",
    "Multivector",
    "QI",
    "Signature",
    "blade_mul",
    "classify_complex",
    "classify_real",
    "even_subalgebra_complex",
    "even_subalgebra_type",
    "format_mv",
    "parse_mv",
    "supercommutator",
    "table1",
    "volume_element",
    "__version__",
]
