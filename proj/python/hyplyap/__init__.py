"""Lyapunov exponents of hypergeometric local systems."""

from ._core import (
    Error,
    HGParams,
    LyapunovEstimate,
    MonodromySet,
    build_monodromy,
    csv_columns,
    cy_monodromy,
    cy_mu,
    cy_table_csv,
    eigenvalues,
    hodge_diagram,
    lyapunov,
    n2_scan_csv,
    n2_zone,
    parabolic_degrees,
    realize_mu,
    relation_residual,
    signature_zeros,
)

__all__ = [
    "Error",
    "HGParams",
    "LyapunovEstimate",
    "MonodromySet",
    "build_monodromy",
    "csv_columns",
    "cy_monodromy",
    "cy_mu",
    "cy_table_csv",
    "eigenvalues",
    "hodge_diagram",
    "lyapunov",
    "n2_scan_csv",
    "n2_zone",
    "parabolic_degrees",
    "realize_mu",
    "relation_residual",
    "signature_zeros",
]
