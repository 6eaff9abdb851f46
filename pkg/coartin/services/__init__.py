"""Service layer: semigroups, algebras, presentations, automorphisms and varieties."""
from .autiso import aut_group, iso_test, realize_orders, torus_solve
from .classification_service import ClassificationService
from .presentation import Style, Target, present
from .semigroup import CaseTag, Gamma, enumerate_s, order_tables, structure
from .subalgebra import CanonicalAlgebra, from_generators
from .variety import variety_presentation

__all__ = [
    'ClassificationService',
    'CanonicalAlgebra',
    'CaseTag',
    'Gamma',
    'Style',
    'Target',
    'aut_group',
    'enumerate_s',
    'from_generators',
    'iso_test',
    'order_tables',
    'present',
    'realize_orders',
    'structure',
    'torus_solve',
    'variety_presentation',
]
