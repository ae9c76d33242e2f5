"""
Permutations of Z/p^m with f^4 = id that almost intertwine x+1 and k*x.
"""

from .cycle_function import CycleFunction, VerifyReport, verify, order_dividing_four_permutations
from .search import STRATEGIES, SearchResult, brute_oracle, search_best
from .profile import profile, block_lengths, summarize, export_profile, load_profile

__all__ = [
    # Tables
    'CycleFunction', 'VerifyReport', 'verify', 'order_dividing_four_permutations',

    # Search
    'STRATEGIES', 'SearchResult', 'brute_oracle', 'search_best',

    # Profiles
    'profile', 'block_lengths', 'summarize', 'export_profile', 'load_profile'
]
