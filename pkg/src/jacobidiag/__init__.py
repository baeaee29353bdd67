"""Colored Jacobi diagrams over Blanchfield modules: exact arithmetic, relations, maps."""
from .blanchfield import (
    BlanchfieldModule,
    BlockSpec,
    ModuleElement,
    cyclic_module,
    direct_sum,
    hyperbolic_module,
    parse_module,
    solve_pairing,
    trivial_module,
)
from .canon import FormalSum, canonical_form, isomorphic
from .diagram import Diagram, parse_diagram, serialize_diagram, validate
from .kernel import BACKEND
from .laurent import LaurentFraction, LaurentPoly, frac, poly
from .maps import (
    DiagramSeries,
    augment_series,
    distribute,
    exp_union,
    iota,
    is_distributed,
    phi,
    psi,
    psi_aug,
    roundtrip_check,
)
from .relations import RelationInstance, Window, relation_instances
from .span import SpanCertificate, in_span, quotient_dimension

__version__ = "0.1.0"
