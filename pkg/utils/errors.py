"""
Domain errors.

Every error raised on bad input or an undefined computation derives from
ValueRejectError, which the CLI maps to exit code 2.
"""

from typing import Any, Optional, Tuple


class ValueRejectError(ValueError):
    """Base class for validation and domain errors"""

    exit_code = 2


# ============================================================================
# Ingestion
# ============================================================================

class MalformedRow(ValueRejectError):
    def __init__(self, line: Optional[int], reason: str, source: str = ""):
        self.line = line
        self.reason = reason
        self.source = source
        where = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{where}: {reason}")


class DuplicateKey(ValueRejectError):
    def __init__(self, key: Tuple[str, ...], line: Optional[int] = None):
        self.key = key
        self.line = line
        suffix = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate key {key}{suffix}")


class OutOfRangeProbability(ValueRejectError):
    def __init__(self, value: float, line: Optional[int] = None):
        self.value = value
        self.line = line
        super().__init__(f"probability {value} outside [0, 1] (line {line})")


class MagnitudeMissingForNonNeutral(ValueRejectError):
    def __init__(self, line: int):
        self.line = line
        super().__init__(f"line {line}: agree/disagree stance requires a magnitude")


class MagnitudePresentForNeutral(ValueRejectError):
    def __init__(self, line: int):
        self.line = line
        super().__init__(f"line {line}: neutral stance must not carry a magnitude")


class SignViolation(ValueRejectError):
    def __init__(self, field: str, value: float):
        self.field = field
        self.value = value
        super().__init__(f"{field}={value} has the wrong sign")


class AllZero(ValueRejectError):
    def __init__(self):
        super().__init__("all five scenario values are zero")


class EmptyDocument(ValueRejectError):
    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        super().__init__(f"document {doc_id!r} has no tokens")


# ============================================================================
# Calibration
# ============================================================================

class SingleClassOnly(ValueRejectError):
    def __init__(self, label: Any):
        self.label = label
        super().__init__(f"all true labels are {label}; need both classes")


class ProbabilityKindUnsupported(ValueRejectError):
    def __init__(self, item_id: str = ""):
        self.item_id = item_id
        super().__init__(f"probability records cannot be re-calibrated ({item_id})")


class TooFewRecords(ValueRejectError):
    def __init__(self, count: int, minimum: int):
        self.count = count
        self.minimum = minimum
        super().__init__(f"{count} records, need at least {minimum}")


class EmptyInput(ValueRejectError):
    def __init__(self, what: str = "input"):
        super().__init__(f"{what} is empty")


class BadBinCount(ValueRejectError):
    def __init__(self, bins: int):
        self.bins = bins
        super().__init__(f"bin count must be >= 1, got {bins}")


# ============================================================================
# Rejection
# ============================================================================

class BadStep(ValueRejectError):
    def __init__(self, step: float):
        self.step = step
        super().__init__(f"grid step must lie in (0, 0.25], got {step}")


class BadThreshold(ValueRejectError):
    def __init__(self, tau: float):
        self.tau = tau
        super().__init__(f"threshold must lie in [0.5, 1], got {tau}")


class UndefinedGamma(ValueRejectError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"correct-decision value for class {label} is 0; gamma undefined")


class ItemSetMismatch(ValueRejectError):
    def __init__(self, model_id: str, reference_id: str):
        self.model_id = model_id
        self.reference_id = reference_id
        super().__init__(f"model {model_id} was scored on different items than {reference_id}")


class TooFewModels(ValueRejectError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"need at least 2 models to compare, got {count}")


# ============================================================================
# Survey statistics
# ============================================================================

class EmptyQuestion(ValueRejectError):
    def __init__(self, question_id: str):
        self.question_id = question_id
        super().__init__(f"question {question_id} has no responses")


class QuestionScenarioConflict(ValueRejectError):
    def __init__(self, question_id: str):
        self.question_id = question_id
        super().__init__(f"question {question_id} is attached to more than one scenario")


class MixedParticipants(ValueRejectError):
    def __init__(self):
        super().__init__("responses span more than one participant or scale")


class InsufficientData(ValueRejectError):
    def __init__(self, reason: str = "need at least 2 items with 2 ratings"):
        super().__init__(reason)


class ZeroExpectedDisagreement(ValueRejectError):
    def __init__(self):
        super().__init__("all ratings are identical; expected disagreement is zero")


class LengthMismatch(ValueRejectError):
    def __init__(self, left: int, right: int):
        super().__init__(f"samples differ in length ({left} vs {right})")


class ConstantInput(ValueRejectError):
    def __init__(self):
        super().__init__("a sample is constant; correlation undefined")


class TooFewGroups(ValueRejectError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"need at least 2 groups, got {count}")


class QuestionSetMismatch(ValueRejectError):
    def __init__(self, missing: Tuple[str, ...] = ()):
        self.missing = missing
        super().__init__(f"question sets differ between scales: {', '.join(missing) or 'one scale absent'}")


# ============================================================================
# Corpus sampling
# ============================================================================

class EmptyCorpus(ValueRejectError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"need at least 2 documents, got {count}")


class RankTooLarge(ValueRejectError):
    def __init__(self, rank: int, limit: int):
        self.rank = rank
        self.limit = limit
        super().__init__(f"rank {rank} outside [1, {limit}]")


class TooFewPoints(ValueRejectError):
    def __init__(self, k: int, count: int):
        self.k = k
        self.count = count
        super().__init__(f"cannot form {k} clusters from {count} points")


class SingleCluster(ValueRejectError):
    def __init__(self):
        super().__init__("silhouette needs at least 2 clusters")


class StratumTooSmall(ValueRejectError):
    def __init__(self, stratum: str, count: int, needed: int):
        self.stratum = stratum
        self.count = count
        self.needed = needed
        super().__init__(f"stratum {stratum!r} has {count} documents, needs {needed}")


class ObjectiveIncreased(ValueRejectError):
    def __init__(self, iteration: int, before: float, after: float):
        super().__init__(f"k-means objective rose at iteration {iteration}: {before} -> {after}")
