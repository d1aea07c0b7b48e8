"""Numerical Hermitian geometry in holomorphic charts.

Metrics and maps are written in a small expression language over z1..zn and
conj(zk); Wirtinger jets give exact derivatives, from which the package builds
Christoffel symbols, structure verdicts (Kaehler, (1,2)-symplectic,
cosymplectic) and the residuals of holomorphic, pluriharmonic,
(1,1)-geodesic and harmonic maps.
"""

from .connection import (
    ChristoffelTable,
    StructureReport,
    christoffel,
    classify,
    cosymplectic_trace,
    fundamental_form_residuals,
)
from .exprdsl import parse, to_string
from .hermitian import HermitianMetricField, MetricJet, catalog_metric, inverse_metric, metric_at
from .maps import (
    MapField,
    ResidualReport,
    check_map,
    harmonic_residual,
    holomorphy_residual,
    identity_map,
    one_one_geodesic_residual,
    pluriharmonic_residual,
)
from .morphism import (
    MorphismVerdict,
    chain_rule_check,
    compose,
    is_pluriharmonic_morphism,
    jet_test_function,
    pullback_check,
)
from .sampling import sample_points
from .wirtinger import WirtingerJet, eval_jet

__version__ = "0.1.0"
