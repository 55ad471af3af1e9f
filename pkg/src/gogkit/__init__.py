"""Graphs of groups, complexes of groups, right-angled buildings and RAAG links."""
from .errors import BudgetError, DomainError, FunctorInapplicable, GogkitError, InputError, StateError, UnverifiableError
from .fp_core import Presentation, abelianization, fingerprint, parse_presentation, simplify
from .graphs_of_groups import GraphOfGroups, fundamental_group, serre_covolume

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "DomainError",
    "FunctorInapplicable",
    "GogkitError",
    "GraphOfGroups",
    "InputError",
    "Presentation",
    "StateError",
    "UnverifiableError",
    "abelianization",
    "fingerprint",
    "fundamental_group",
    "parse_presentation",
    "serre_covolume",
    "simplify",
]
