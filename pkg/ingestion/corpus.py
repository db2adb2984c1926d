# ingestion/corpus.py
# corpus.csv: doc_id, text, plus one column per stratum label

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Set

from config import K_MAX, K_MIN
from ingestion.records import Document
from ingestion.tables import read_csv_rows
from utils.errors import DuplicateKey, MalformedRow

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StratumPlan:
    """
    One stratum of the selection plan.

    filter maps stratum labels to required values; clusters pins k,
    otherwise k is searched over [k_min, k_max] by silhouette.
    """
    name: str
    filter: Dict[str, str] = field(default_factory=dict)
    clusters: Optional[int] = None
    k_min: int = K_MIN
    k_max: int = K_MAX

    def matches(self, document: Document) -> bool:
        return all(document.strata.get(k) == v for k, v in self.filter.items())


def parse_corpus(path) -> List[Document]:
    path = Path(path)
    documents = []
    seen: Set[str] = set()

    for line, row in read_csv_rows(path, ("doc_id", "text")):
        doc_id = row["doc_id"]
        if not doc_id:
            raise MalformedRow(line, "doc_id is required", source=path.name)
        if doc_id in seen:
            raise DuplicateKey((doc_id,), line)
        seen.add(doc_id)
        strata = dict(row.get("__extra__", {}))
        documents.append(Document(doc_id=doc_id, text=row["text"], strata=strata))

    logger.info(f"📥 Parsed {len(documents)} documents from {path.name}")
    return documents


def parse_strata_plan(path) -> List[StratumPlan]:
    """
    JSON list of {name, filter, clusters, k_min, k_max}; only name is required.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise MalformedRow(e.lineno, f"invalid JSON: {e.msg}", source=path.name)

    if not isinstance(data, list) or not data:
        raise MalformedRow(1, "strata plan must be a non-empty list", source=path.name)

    plans = []
    for index, item in enumerate(data, start=1):
        if not isinstance(item, dict) or "name" not in item:
            raise MalformedRow(index, "each stratum needs a name", source=path.name)
        clusters = item.get("clusters")
        if clusters is not None and (not isinstance(clusters, int) or clusters < 1):
            raise MalformedRow(index, f"clusters must be a positive integer, got {clusters!r}", source=path.name)
        k_min = int(item.get("k_min", K_MIN))
        k_max = int(item.get("k_max", K_MAX))
        if k_min < 2 or k_max < k_min:
            raise MalformedRow(index, f"invalid k range [{k_min}, {k_max}]", source=path.name)
        plans.append(StratumPlan(
            name=str(item["name"]),
            filter={str(k): str(v) for k, v in (item.get("filter") or {}).items()},
            clusters=clusters,
            k_min=k_min,
            k_max=k_max,
        ))
    return plans
