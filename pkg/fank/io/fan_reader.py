from __future__ import annotations

import gzip
import logging
from pathlib import Path
from typing import Iterator, List, Optional, Set, TextIO, Union

from fank.errors import FanSyntaxError
from fank.geometry.fan import Fan, fan_from_description
from fank.records import ConeRecord, DimRecord, FanFile, FanRecord, RayRecord

LOGGER = logging.getLogger(__name__)


def _open_text(path: Union[str, Path]) -> TextIO:
    p = Path(path)
    if p.suffix == ".gz":
        return gzip.open(p, "rt", encoding="utf-8")
    return p.open("rt", encoding="utf-8")


class FanFileReader:
    """Line-oriented reader for ``dim`` / ``ray`` / ``cone`` fan files.

    ``dim`` must come first; rays must be declared before the cones using
    them. ``#`` starts a comment.
    """

    def __init__(self, path: Union[str, Path, None] = None, text: Optional[str] = None) -> None:
        if (path is None) == (text is None):
            raise ValueError("give exactly one of path and text")
        self._path = Path(path) if path is not None else None
        self._text = text
        self._dim: Optional[int] = None
        self._ray_names: Set[str] = set()
        self._cone_names: Set[str] = set()

    @property
    def source(self) -> str:
        return str(self._path) if self._path is not None else "<text>"

    def _lines(self) -> Iterator[str]:
        if self._path is None:
            yield from self._text.splitlines()
            return
        with _open_text(self._path) as f:
            yield from f

    # Iterator over the file lines, yielding one record per declaration.
    def iter_records(self) -> Iterator[FanRecord]:
        self._dim = None
        self._ray_names = set()
        self._cone_names = set()
        for line_number, line in enumerate(self._lines(), start=1):
            rec = self._parse_line(line, line_number)
            if rec is not None:
                yield rec

    def read(self) -> FanFile:
        rays: List[RayRecord] = []
        cones: List[ConeRecord] = []
        comments = tuple(
            line.strip()[1:].strip() for line in self._lines() if line.strip().startswith("#")
        )
        dim = None
        last_line = 0
        for rec in self.iter_records():
            last_line = rec.line_number
            if isinstance(rec, DimRecord):
                dim = rec.dim
            elif isinstance(rec, RayRecord):
                rays.append(rec)
            else:
                cones.append(rec)
        if dim is None:
            raise FanSyntaxError("missing 'dim' line", max(last_line, 1), self.source)
        if not cones:
            raise FanSyntaxError("no cones declared", max(last_line, 1), self.source)
        return FanFile(dim=dim, rays=tuple(rays), cones=tuple(cones), comments=comments,
                       path=str(self._path) if self._path else None)

    def _error(self, message: str, line_number: int) -> FanSyntaxError:
        return FanSyntaxError(message, line_number, self.source)

    def _parse_line(self, line: str, line_number: int) -> Optional[FanRecord]:
        line = line.split("#", 1)[0].strip()
        if not line:
            return None
        tok = line.split()
        if tok[0] == "dim":
            return self._parse_dim(tok, line_number)
        if self._dim is None:
            raise self._error("'dim' must be the first declaration", line_number)
        if tok[0] == "ray":
            return self._parse_ray(tok, line_number)
        if tok[0] == "cone":
            return self._parse_cone(tok, line_number)
        raise self._error(f"unknown keyword {tok[0]!r}", line_number)

    def _parse_dim(self, tok: List[str], line_number: int) -> DimRecord:
        if self._dim is not None:
            raise self._error("'dim' given twice", line_number)
        if len(tok) != 2:
            raise self._error("expected 'dim <n>'", line_number)
        try:
            dim = int(tok[1])
        except ValueError:
            raise self._error(f"dimension {tok[1]!r} is not an integer", line_number) from None
        if dim < 1:
            raise self._error("dimension must be positive", line_number)
        self._dim = dim
        return DimRecord(line_number, dim)

    def _parse_ray(self, tok: List[str], line_number: int) -> RayRecord:
        if len(tok) != 2 + self._dim:
            raise self._error(f"expected 'ray <name>' and {self._dim} integers", line_number)
        name = tok[1]
        if name in self._ray_names:
            raise self._error(f"ray {name} declared twice", line_number)
        try:
            vector = tuple(int(x) for x in tok[2:])
        except ValueError:
            raise self._error(f"ray {name} has a non-integer coordinate", line_number) from None
        if not any(vector):
            raise self._error(f"ray {name} is the zero vector", line_number)
        self._ray_names.add(name)
        return RayRecord(line_number, name, vector)

    def _parse_cone(self, tok: List[str], line_number: int) -> ConeRecord:
        if len(tok) < 2:
            raise self._error("expected 'cone <name> <ray names...>'", line_number)
        name = tok[1]
        if name in self._cone_names:
            raise self._error(f"cone {name} declared twice", line_number)
        members = tuple(tok[2:])
        unknown = [r for r in members if r not in self._ray_names]
        if unknown:
            raise self._error(f"cone {name} uses undeclared rays {unknown}", line_number)
        if len(set(members)) != len(members):
            raise self._error(f"duplicate ray in cone {name}", line_number)
        self._cone_names.add(name)
        return ConeRecord(line_number, name, members)


def fan_from_file(data: FanFile) -> Fan:
    return fan_from_description(
        [r.vector for r in data.rays],
        [c.ray_names for c in data.cones],
        ray_names=[r.name for r in data.rays],
        cone_names=[c.name for c in data.cones],
        n=data.dim,
    )


def parse_fan_file(path: Union[str, Path]) -> Fan:
    fan = fan_from_file(FanFileReader(path).read())
    LOGGER.info("read %s from %s", fan, path)
    return fan


def parse_fan_text(text: str) -> Fan:
    return fan_from_file(FanFileReader(text=text).read())


def format_fan_file(fan: Fan, comments: Optional[List[str]] = None) -> str:
    lines = [f"# {c}" for c in comments or []]
    lines.append(f"dim {fan.n}")
    for name, vector in zip(fan.ray_names, fan.ray_vectors):
        lines.append(f"ray {name} " + " ".join(str(x) for x in vector))
    for name, key in zip(fan.cone_names, fan.cone_rays):
        lines.append(f"cone {name} " + " ".join(fan.sorted_names(key)))
    return "\n".join(lines) + "\n"
