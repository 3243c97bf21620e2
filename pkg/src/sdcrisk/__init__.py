"""Disclosure risk measurement for statistical disclosure control releases."""

from sdcrisk.measure import (
    EntropyCurve,
    Partition,
    RiskReport,
    ValueDistribution,
    area,
    brute_force_min_entropy,
    entropy_curve,
    epsilon_max,
    min_entropy_at,
    optimal_partition,
    read_distribution_file,
    risk_report,
    shannon_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "EntropyCurve",
    "Partition",
    "RiskReport",
    "ValueDistribution",
    "area",
    "brute_force_min_entropy",
    "entropy_curve",
    "epsilon_max",
    "min_entropy_at",
    "optimal_partition",
    "read_distribution_file",
    "risk_report",
    "shannon_entropy",
]
