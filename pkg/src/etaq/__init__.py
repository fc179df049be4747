"""Exact q-series, eta-quotients, cusp data and certified Lambert series identities."""

from .series import QSeries, SeriesError, eta_series, lambert_ap, lambert_sigma
from .modgroup import Cusp, cusp_set, genus, width, are_equivalent
from .etaforms import (
    Bound,
    EtaQuotient,
    GenEtaQuotient,
    OrderTable,
    bailey_pair,
    expand,
    order_table,
    pi_quotient,
    theta_f,
)
from .hauptmodul import Certificate, HauptPoly, PoleBoundTable, certify_expression, express_in_generator
from .expr import evaluate, parse_expr
from .prover import IdentityStatement, lookup, registry, reproduce_paper, verify

__version__ = "0.1.0"
