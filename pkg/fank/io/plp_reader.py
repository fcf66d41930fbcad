from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Union

from fank.errors import FanSyntaxError, InputError, LaurentSyntaxError
from fank.geometry.fan import Fan, NameSet
from fank.io.fan_reader import _open_text, parse_fan_file
from fank.laurent import LaurentPoly, format_laurent, parse_laurent
from fank.piecewise import PiecewisePoly, plp_validate
from fank.records import PlpEntry, PlpFile

LOGGER = logging.getLogger(__name__)


class PlpFileReader:
    """Reader for ``fan <path>`` followed by ``on <cone>: <expr>`` lines."""

    def __init__(self, path: Union[str, Path, None] = None, text: Optional[str] = None) -> None:
        if (path is None) == (text is None):
            raise ValueError("give exactly one of path and text")
        self._path = Path(path) if path is not None else None
        self._text = text

    @property
    def source(self) -> str:
        return str(self._path) if self._path is not None else "<text>"

    def _lines(self) -> Iterator[str]:
        if self._path is None:
            yield from self._text.splitlines()
            return
        with _open_text(self._path) as f:
            yield from f

    def read(self) -> PlpFile:
        fan_path = None
        entries: List[PlpEntry] = []
        for line_number, line in enumerate(self._lines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if fan_path is None:
                tok = line.split(None, 1)
                if tok[0] != "fan" or len(tok) != 2:
                    raise FanSyntaxError("expected 'fan <path>' first", line_number, self.source)
                fan_path = tok[1].strip()
                continue
            entries.append(self._parse_entry(line, line_number))
        if fan_path is None:
            raise FanSyntaxError("missing 'fan <path>' line", 1, self.source)
        return PlpFile(fan_path=fan_path, entries=tuple(entries),
                       path=str(self._path) if self._path else None)

    def _parse_entry(self, line: str, line_number: int) -> PlpEntry:
        if not line.startswith("on ") or ":" not in line:
            raise FanSyntaxError("expected 'on <cone>: <expression>'", line_number, self.source)
        head, expression = line[3:].split(":", 1)
        cone = head.strip()
        if not cone or not expression.strip():
            raise FanSyntaxError("empty cone name or expression", line_number, self.source)
        return PlpEntry(line_number, cone, expression.strip())


def resolve_fan_path(data: PlpFile) -> Path:
    fan_path = Path(data.fan_path)
    if not fan_path.is_absolute() and data.path is not None:
        fan_path = Path(data.path).parent / fan_path
    return fan_path


def entry_values(data: PlpFile, fan: Fan) -> Dict[NameSet, LaurentPoly]:
    """Parse every entry against ``fan``; keys are ray-name sets."""
    values: Dict[NameSet, LaurentPoly] = {}
    for entry in data.entries:
        key = fan.resolve(entry.cone)
        if key in values:
            raise FanSyntaxError(f"cone {entry.cone} given twice", entry.line_number, data.path)
        try:
            values[key] = parse_laurent(entry.expression, fan.n)
        except LaurentSyntaxError as err:
            raise FanSyntaxError(str(err), entry.line_number, data.path) from err
    return values


def plp_from_file(data: PlpFile, fan: Fan, partial: bool = False) -> PiecewisePoly:
    """Build the piecewise polynomial described by ``data``.

    With ``partial`` the listed cones generate a subfan and the result lives
    there; otherwise every maximal cone of ``fan`` must be listed once.
    """
    values = entry_values(data, fan)
    if not partial:
        missing = [name for name, key in zip(fan.cone_names, fan.cone_rays) if key not in values]
        if missing or len(values) != len(fan.cone_names):
            raise InputError(f"every maximal cone needs exactly one value; missing {missing}")
        return plp_validate([values[key] for key in fan.cone_rays], fan)
    gamma = fan.subfan(list(values))
    dropped = [fan.label(k) for k in values if k not in gamma.cone_rays]
    if dropped:
        raise InputError(f"cones {dropped} are faces of other listed cones")
    return plp_validate([values[key] for key in gamma.cone_rays], gamma)


def load_plp(path: Union[str, Path], partial: bool = False) -> Tuple[Fan, PiecewisePoly]:
    data = PlpFileReader(path).read()
    fan = parse_fan_file(resolve_fan_path(data))
    return fan, plp_from_file(data, fan, partial=partial)


def format_plp(fan_path: str, F: PiecewisePoly) -> str:
    lines = [f"fan {fan_path}"]
    for name, value in F.items():
        lines.append(f"on {name}: {format_laurent(value)}")
    return "\n".join(lines) + "\n"
