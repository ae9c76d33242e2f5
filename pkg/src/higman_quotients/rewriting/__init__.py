"""
Relators, rewrite rules, normal forms and confluence checks.
"""

from .relators import RelatorSet, SYSTEMS, build_q0, build_relators
from .rules import (RewriteRule, RuleSystem, Site, TermMeasure, ReduceResult,
                    build_rules, corrupted_rules)
from .confluence import ConfluenceReport, check_confluence

__all__ = [
    # Relators
    'RelatorSet', 'SYSTEMS', 'build_q0', 'build_relators',

    # Rules and normal forms
    'RewriteRule', 'RuleSystem', 'Site', 'TermMeasure', 'ReduceResult',
    'build_rules', 'corrupted_rules',

    # Confluence
    'ConfluenceReport', 'check_confluence'
]
