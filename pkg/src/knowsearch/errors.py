"""Exception types raised across the package.

Every error carries enough context to be printed as a one-line diagnostic;
the CLI maps these onto exit codes (config errors 2, data errors 3,
"nothing usable" 4).
"""
from __future__ import annotations


class KnowsearchError(Exception):
    """Base class for all package errors."""


class ConfigError(KnowsearchError):
    """Invalid configuration or parameters (CLI exit code 2)."""


class InvalidParams(ConfigError):
    """Invalid synthetic-generator parameters."""


class DataError(KnowsearchError):
    """Invalid input data (CLI exit code 3)."""


class MalformedRecord(DataError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateId(DataError):
    def __init__(self, doc_id: str):
        super().__init__(f"duplicate document id {doc_id!r}")
        self.doc_id = doc_id


class DateOrderViolation(DataError):
    def __init__(self, doc_id: str):
        super().__init__(f"document {doc_id!r}: priority_date after publication_date")
        self.doc_id = doc_id


class MissingCitations(DataError):
    def __init__(self, doc_id: str):
        super().__init__(f"document {doc_id!r} has no forward_citations_5y")
        self.doc_id = doc_id


class NoElementsFound(DataError):
    """No knowledge elements could be extracted from a field."""

    def __init__(self, which: str, doc_id: str = ""):
        where = f" of {doc_id!r}" if doc_id else ""
        super().__init__(f"no knowledge elements found in {which}{where}")
        self.which = which
        self.doc_id = doc_id


class UncoverableSkes(DataError):
    """Some solution elements occur in no document before the priority date."""

    def __init__(self, ske_keys: list[str], focal_id: str = ""):
        who = f"focal {focal_id!r}: " if focal_id else ""
        super().__init__(f"{who}uncoverable SKEs {ske_keys}")
        self.ske_keys = list(ske_keys)
        self.focal_id = focal_id


class PknFormatError(DataError):
    """A saved network file failed to parse or validate."""


class NoStartNodes(KnowsearchError):
    """None of the problem elements are present in the network."""


class EmptyFrontier(KnowsearchError):
    """Selection requested while the frontier is empty."""


class BudgetExceeded(KnowsearchError):
    def __init__(self, max_steps: int):
        super().__init__(f"search exceeded max_steps={max_steps}")
        self.max_steps = max_steps


class StatsError(KnowsearchError):
    """Base for statistical preconditions."""


class EmptyInput(StatsError):
    pass


class DegenerateInput(StatsError):
    pass


class ZeroVariance(StatsError):
    pass


class ConstantX(StatsError):
    pass


class NoUsableFocalPatents(KnowsearchError):
    """Every focal patent was excluded (CLI exit code 4)."""

    def __init__(self, diagnoses: dict[str, str]):
        lines = "; ".join(f"{k}: {v}" for k, v in sorted(diagnoses.items()))
        super().__init__(f"no usable focal patents ({lines})")
        self.diagnoses = dict(diagnoses)
