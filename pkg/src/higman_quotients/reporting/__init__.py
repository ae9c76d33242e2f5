"""
Run reports and pinned regression constants.
"""

from .report import RunReport, flatten
from .regression import RegressionStore, RegressionMismatch

__all__ = ['RunReport', 'flatten', 'RegressionStore', 'RegressionMismatch']
