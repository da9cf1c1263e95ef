"""
Machine-readable reports written by ``--json``.

Every document carries ``schema_version`` so scripts can detect layout
changes; nothing time-dependent goes into a payload.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel

from .enumeration import SurveyRow
from .graph import Graph
from .isometry import CertificateVerdict, DpReport

SCHEMA_VERSION = 1


class SurveyReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    kind: Literal["regular", "hh"]
    rows: List[Dict[str, Any]]

    @classmethod
    def from_rows(cls, kind: str, rows: List[SurveyRow]) -> "SurveyReport":
        return cls(kind=kind, rows=[row.to_dict() for row in rows])


class VerifyReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    kind: Literal["verify"] = "verify"
    mode: Literal["brute", "certificate", "lemma"]
    n: int
    m: int
    is_dp: Optional[bool] = None
    valid: Optional[bool] = None
    first_failing_order: Optional[int] = None
    witnesses: Optional[Dict[str, Optional[List[int]]]] = None
    removed: Optional[List[int]] = None

    @classmethod
    def from_brute(cls, g: Graph, report: DpReport) -> "VerifyReport":
        witnesses = {str(k): list(w) if w is not None else None for k, w in sorted(report.witnesses.items())}
        return cls(
            mode="brute",
            n=g.n,
            m=g.m,
            is_dp=report.is_dp,
            first_failing_order=report.first_failing_order,
            witnesses=witnesses,
        )

    @classmethod
    def from_certificate(cls, g: Graph, verdict: CertificateVerdict) -> "VerifyReport":
        return cls(mode="certificate", n=g.n, m=g.m, valid=verdict.valid, first_failing_order=verdict.first_failing_order)

    @classmethod
    def from_peeling(cls, g: Graph, removed) -> "VerifyReport":
        return cls(mode="lemma", n=g.n, m=g.m, is_dp=True if len(removed) >= g.n - 1 else None, removed=list(removed))

    def to_payload(self) -> Dict[str, Any]:
        data = self.model_dump(exclude_none=True)
        if self.witnesses is not None:
            # orders without a witness stay in the map as null
            data["witnesses"] = dict(self.witnesses)
        if self.mode != "lemma":
            data.setdefault("first_failing_order", None)
        return data


def dumps(document: BaseModel) -> str:
    payload = document.to_payload() if isinstance(document, VerifyReport) else document.model_dump()
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
