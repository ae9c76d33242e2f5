"""
Finite unit groups Gamma_I and the word-level twisted product.
"""

from .gamma import (GammaElement, UnitGroup, GammaGroup, FreeUnitGroup,
                    ZSReport, JacobsonReport, BSReport, RotationReport, KernelWitness,
                    check_relators, zs_check, jacobson_check, bs_check, rotation_check)
from .zappa import HTilde, HTildeElement, verify_relations, verify_push_rules

__all__ = [
    # Unit groups
    'GammaElement', 'UnitGroup', 'GammaGroup', 'FreeUnitGroup',

    # Checks and reports
    'ZSReport', 'JacobsonReport', 'BSReport', 'RotationReport', 'KernelWitness',
    'check_relators', 'zs_check', 'jacobson_check', 'bs_check', 'rotation_check',

    # Word level
    'HTilde', 'HTildeElement', 'verify_relations', 'verify_push_rules'
]
