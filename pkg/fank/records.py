from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple, Union

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class DimRecord:
    line_number: int
    dim: int


@dataclass(frozen=True)
class RayRecord:
    line_number: int
    name: str
    vector: Tuple[int, ...]


@dataclass(frozen=True)
class ConeRecord:
    line_number: int
    name: str
    ray_names: Tuple[str, ...]


FanRecord = Union[DimRecord, RayRecord, ConeRecord]


@dataclass(frozen=True)
class FanFile:
    dim: int
    rays: Tuple[RayRecord, ...]
    cones: Tuple[ConeRecord, ...]
    comments: Tuple[str, ...] = ()
    path: Optional[str] = None


@dataclass(frozen=True)
class PlpEntry:
    line_number: int
    cone: str             # maximal cone name or a face label "<r1,r2>"
    expression: str


@dataclass(frozen=True)
class PlpFile:
    fan_path: str         # as written, relative to the PLP file
    entries: Tuple[PlpEntry, ...]
    path: Optional[str] = None


@dataclass(frozen=True)
class ConeSingularity:
    cone: str
    dim: int
    isolated: bool
    distant: bool


@dataclass(frozen=True)
class SingularityReport:
    entries: Tuple[ConeSingularity, ...] = ()

    @property
    def singular_cones(self) -> Tuple[str, ...]:
        return tuple(e.cone for e in self.entries)

    @property
    def has_distant_singular_cones(self) -> bool:
        return bool(self.entries) and all(e.distant for e in self.entries)

    @property
    def has_isolated_singular_cones(self) -> bool:
        return bool(self.entries) and all(e.isolated for e in self.entries)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "singular_cones": [asdict(e) for e in self.entries],
            "distant": self.has_distant_singular_cones,
            "isolated": self.has_isolated_singular_cones,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> SingularityReport:
        return cls(tuple(ConeSingularity(**e) for e in data["singular_cones"]))


class Outcome(str, Enum):
    ISOMORPHIC = "Isomorphic"
    NOT_ISOMORPHIC = "NotIsomorphic"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    theorem: str                          # the rule that decided
    justification: Tuple[str, ...]        # every hypothesis that holds
    certificate: Dict[str, Any] = field(default_factory=dict)
    odd_rank: Optional[int] = None        # 2D complete fans only; closed form, derived
    explanation: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "outcome": self.outcome.value,
            "theorem": self.theorem,
            "justification": list(self.justification),
            "certificate": self.certificate,
            "odd_rank": self.odd_rank,
            "odd_rank_derived": self.odd_rank is not None,
            "explanation": self.explanation,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> Verdict:
        return cls(
            outcome=Outcome(data["outcome"]),
            theorem=data["theorem"],
            justification=tuple(data["justification"]),
            certificate=dict(data["certificate"]),
            odd_rank=data["odd_rank"],
            explanation=data.get("explanation", ""),
        )


@dataclass(frozen=True)
class WeightData:
    weights: Tuple[int, ...]
    is_genuine_wps: bool


@dataclass(frozen=True)
class Report:
    command: str
    source: Optional[str] = None
    dim: Optional[int] = None
    ray_count: Optional[int] = None
    cone_count: Optional[int] = None
    flags: Dict[str, Optional[bool]] = field(default_factory=dict)
    singularity: Optional[SingularityReport] = None
    verdict: Optional[Verdict] = None
    certificates: Dict[str, Any] = field(default_factory=dict)
    timing: float = 0.0   # seconds
    schema: int = SCHEMA_VERSION

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": self.schema,
            "command": self.command,
            "source": self.source,
            "fan": {"dim": self.dim, "rays": self.ray_count, "maximal_cones": self.cone_count},
            "flags": dict(self.flags),
            "singularity": self.singularity.to_dict() if self.singularity else None,
            "verdict": self.verdict.to_dict() if self.verdict else None,
            "certificates": self.certificates,
            "timing": self.timing,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> Report:
        data = json.loads(text)
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        fan = data.get("fan") or {}
        return cls(
            command=data["command"],
            source=data.get("source"),
            dim=fan.get("dim"),
            ray_count=fan.get("rays"),
            cone_count=fan.get("maximal_cones"),
            flags=dict(data.get("flags") or {}),
            singularity=SingularityReport.from_dict(data["singularity"]) if data.get("singularity") else None,
            verdict=Verdict.from_dict(data["verdict"]) if data.get("verdict") else None,
            certificates=dict(data.get("certificates") or {}),
            timing=float(data.get("timing", 0.0)),
            schema=data["schema"],
        )
