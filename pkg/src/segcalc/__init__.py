"""Exact calculus of multisegments, Jacquet modules and parabolic induction."""

from .classical import SigmaContext, jacmin_length_classical, mu_star
from .config import load_config, single_line
from .cusp import CuspContext, CuspLine, CuspPoint, Paired, SelfDual
from .decide import Decision, Status, decide, gl_irreducible_product, socle_descriptor
from .derivative import classify_critical, is_critical, left_derivative, lnrset, right_derivative, rnrset
from .harness import enumerate_multisegments, run_suite
from .multiseg import Multisegment, mseg
from .parse import parse_multisegment
from .ring import GrElement, comod, comodmax, comult, jacmin_length
from .segment import Segment

__version__ = "0.1.0"

__all__ = [
    "CuspContext",
    "CuspLine",
    "CuspPoint",
    "Decision",
    "GrElement",
    "Multisegment",
    "Paired",
    "Segment",
    "SelfDual",
    "SigmaContext",
    "Status",
    "classify_critical",
    "comod",
    "comodmax",
    "comult",
    "decide",
    "enumerate_multisegments",
    "gl_irreducible_product",
    "is_critical",
    "jacmin_length",
    "jacmin_length_classical",
    "left_derivative",
    "lnrset",
    "load_config",
    "mseg",
    "mu_star",
    "parse_multisegment",
    "right_derivative",
    "rnrset",
    "run_suite",
    "single_line",
    "socle_descriptor",
]
