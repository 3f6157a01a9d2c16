"""Screening triage toolkit.

Cleans screening datasets, trains from-scratch classifiers behind a
scikit-learn style API, evaluates them, ranks districts by screening
uptake, finds nearby care facilities, sites awareness campaigns with
k-means, and serves everything over HTTP.
"""

__version__ = "0.1.0"

DISCLAIMER = (
    "This tool provides a screening triage suggestion from demographic "
    "risk factors. It is not a diagnosis and must not replace clinical "
    "examination; consult a qualified clinician."
)
