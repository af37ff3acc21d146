"""Projection-based high-utility sequential pattern mining over utility-arrays."""
from .miner import MinerConfig, MiningResult, MiningStats, mine, revise_database, verify
from .model import (
    Pattern,
    ProfitTable,
    QElement,
    QItem,
    QSequence,
    QSequenceDatabase,
    Threshold,
    database_utility,
    i_concatenate,
    s_concatenate,
    sequence_utility,
)

__all__ = [
    "MinerConfig",
    "MiningResult",
    "MiningStats",
    "Pattern",
    "ProfitTable",
    "QElement",
    "QItem",
    "QSequence",
    "QSequenceDatabase",
    "Threshold",
    "database_utility",
    "i_concatenate",
    "mine",
    "revise_database",
    "s_concatenate",
    "sequence_utility",
    "verify",
]
