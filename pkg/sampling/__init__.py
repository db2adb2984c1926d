"""
Corpus sampling: clustering and representative selection
"""

from .clustering import KMeansResult, choose_k, kmeans, silhouette
from .representatives import Selection, SelectionResult, StratumSummary, select_representatives

__all__ = [
    "KMeansResult",
    "Selection",
    "SelectionResult",
    "StratumSummary",
    "choose_k",
    "kmeans",
    "select_representatives",
    "silhouette",
]
