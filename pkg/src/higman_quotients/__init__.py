"""
Finite p-quotients of the Higman group H(k) and related exact computations.
"""

from ._version import __version__

# Parameters and errors
from .context import HigmanContext, validate
from .exceptions import (HigmanQuotientError, ConfigError, ParseError, ShapeMismatch,
                         IterationCapExceeded, CapExceeded, BudgetExceeded, RegressionMismatch)

# Exact algebra
from .algebra import Modulus, Residue, KExp, PolyRing, Poly, parse_poly, parse_word, magnus_expand, p_class

# Rewriting
from .rewriting import RelatorSet, build_relators, RuleSystem, check_confluence

# Groups
from .groups import GammaGroup, FreeUnitGroup, HTilde, zs_check, jacobson_check, check_relators

# Bijection search
from .expmap import CycleFunction, verify, brute_oracle, search_best

# Reports
from .reporting import RunReport, RegressionStore

__all__ = [
    '__version__',

    # Parameters and errors
    'HigmanContext', 'validate', 'HigmanQuotientError', 'ConfigError', 'ParseError', 'ShapeMismatch',
    'IterationCapExceeded', 'CapExceeded', 'BudgetExceeded', 'RegressionMismatch',

    # Exact algebra
    'Modulus', 'Residue', 'KExp', 'PolyRing', 'Poly', 'parse_poly', 'parse_word', 'magnus_expand', 'p_class',

    # Rewriting
    'RelatorSet', 'build_relators', 'RuleSystem', 'check_confluence',

    # Groups
    'GammaGroup', 'FreeUnitGroup', 'HTilde', 'zs_check', 'jacobson_check', 'check_relators',

    # Bijection search
    'CycleFunction', 'verify', 'brute_oracle', 'search_best',

    # Reports
    'RunReport', 'RegressionStore'
]
