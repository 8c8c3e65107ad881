"""topoforge: exact computation on finite topological spaces.

Core layers: bit-encoded spaces (space), the category of finite spaces
(category), the principal ultrafilter topology and its structural maps
(puf), open set assignments and companion maps (assignments), covering
invariants (covering), the D-property engine (dspace), an exhaustive
catalog with a replayable law suite (catalog), and JSON document formats
plus the command line (documents, cli).
"""

from .space import (
    FiniteSpace,
    PointSet,
    classify_subset,
    closure,
    discrete_space,
    generate_topology,
    indiscrete_space,
    separation_level,
    sierpinski,
    subspace,
    verify_axioms,
)
from .category import ContinuousMap, check_continuous, equalizer, product, pullback
from .puf import PufSpace, build_puf_space, principal_ultrafilter, upset_oracle
from .assignments import CompanionMap, SetAssignment, companion_map
from .covering import CoverFamily, Fingerprint, extent, lindelof_degree
from .dspace import DVerdict, dspace_check, kernel_search
from .catalog import CatalogRecord, enumerate_topologies, fingerprint, run_suite

__all__ = [
    "FiniteSpace",
    "PointSet",
    "classify_subset",
    "closure",
    "discrete_space",
    "generate_topology",
    "indiscrete_space",
    "separation_level",
    "sierpinski",
    "subspace",
    "verify_axioms",
    "ContinuousMap",
    "check_continuous",
    "equalizer",
    "product",
    "pullback",
    "PufSpace",
    "build_puf_space",
    "principal_ultrafilter",
    "upset_oracle",
    "CompanionMap",
    "SetAssignment",
    "companion_map",
    "CoverFamily",
    "Fingerprint",
    "extent",
    "lindelof_degree",
    "DVerdict",
    "dspace_check",
    "kernel_search",
    "CatalogRecord",
    "enumerate_topologies",
    "fingerprint",
    "run_suite",
]

__version__ = "0.1.0"
