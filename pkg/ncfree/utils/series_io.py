"""
Canonical JSON files for series and free spaces.

Series file:

    {
      "degree_cap": 4,
      "nvars": 2,
      "terms": [
        [[1, 2], "1/1", "0/1"],
        [[2, 1], "1/1", "0/1"]
      ]
    }

Each term is (word, real part, imaginary part), rationals written "p/q",
terms sorted by (length, word). Zero coefficients are never written.
When reading, a term may also be (word, "p/q+r/s i").

Space file:

    {"degree_cap": D, "families": [["a1", "a2"], ["p"]],
     "family_r": [<series>, <series>], "tracial": true,
     "variables": ["a1", "a2", "p"]}
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from ncfree.core.freespace import FreeSpace
from ncfree.core.ncseries import NCSeries
from ncfree.errors import DomainError, SeriesFormatError
from ncfree.utils.gaussian import (
    GaussianRational,
    format_rational,
    parse_gaussian,
    parse_rational,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


# ============================================================================
# Series
# ============================================================================

def series_to_payload(f: NCSeries) -> Dict[str, Any]:
    return {
        "degree_cap": f.degree_cap,
        "nvars": f.nvars,
        "terms": [
            [list(word), format_rational(value.re), format_rational(value.im)]
            for word, value in f.items()
        ],
    }


def series_to_json(f: NCSeries) -> str:
    """Canonical text: fixed key order, one term per line, trailing newline."""
    terms = [json.dumps(term) for term in series_to_payload(f)["terms"]]
    lines = ["{", f'  "degree_cap": {f.degree_cap},', f'  "nvars": {f.nvars},']
    if terms:
        lines.append('  "terms": [')
        lines.append(",\n".join("    " + t for t in terms))
        lines.append("  ]")
    else:
        lines.append('  "terms": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _require_int(payload: Dict[str, Any], key: str, where: str) -> int:
    value = payload.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SeriesFormatError(f"{where}: '{key}' must be an integer, got {value!r}")
    return value


def series_from_payload(payload: Any, where: str = "series") -> NCSeries:
    """
    Build an NCSeries from a decoded JSON object.

    Raises:
        SeriesFormatError: On a malformed object; the message names the entry
    """
    if not isinstance(payload, dict):
        raise SeriesFormatError(f"{where}: expected a JSON object")
    nvars = _require_int(payload, "nvars", where)
    degree_cap = _require_int(payload, "degree_cap", where)
    terms = payload.get("terms")
    if not isinstance(terms, list):
        raise SeriesFormatError(f"{where}: 'terms' must be a list")

    coeffs: Dict[tuple, GaussianRational] = {}
    for index, term in enumerate(terms):
        entry = f"{where}: term {index}"
        if not isinstance(term, list) or len(term) not in (2, 3):
            raise SeriesFormatError(f"{entry}: expected [word, re, im] or [word, value]")
        word = term[0]
        if not isinstance(word, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in word
        ):
            raise SeriesFormatError(f"{entry}: word must be a list of integers")
        try:
            if len(term) == 3:
                value = GaussianRational(parse_rational(term[1]), parse_rational(term[2]))
            else:
                value = parse_gaussian(term[1])
        except DomainError as e:
            raise SeriesFormatError(f"{entry}: {e}")
        key = tuple(word)
        if key in coeffs:
            raise SeriesFormatError(f"{entry}: word {key} appears twice")
        coeffs[key] = value

    try:
        return NCSeries(nvars, degree_cap, coeffs)
    except DomainError as e:
        raise SeriesFormatError(f"{where}: {e}")


def series_from_json(text: str) -> NCSeries:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise SeriesFormatError(f"Line {e.lineno}: invalid JSON ({e.msg})")
    return series_from_payload(payload)


def _read_file(path: Path, what: str) -> str:
    if not path.exists():
        raise FileNotFoundError(f"{what} file not found: {path}")
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise SeriesFormatError(f"{what} file {path} is not valid UTF-8 (byte {e.start})")
    except OSError as e:
        raise SeriesFormatError(f"Cannot read {what.lower()} file {path}: {e.strerror}")


def load_series(path: PathLike) -> NCSeries:
    """
    Read a series file.

    Raises:
        FileNotFoundError: If the file does not exist
        SeriesFormatError: If the file cannot be read as UTF-8 text or is not a valid series file
    """
    path = Path(path)
    logger.debug("loading series from %s", path)
    return series_from_json(_read_file(path, "Series"))


def save_series(f: NCSeries, path: PathLike) -> None:
    Path(path).write_text(series_to_json(f), encoding="utf-8")


# ============================================================================
# Free spaces
# ============================================================================

def space_to_payload(space: FreeSpace) -> Dict[str, Any]:
    return {
        "degree_cap": space.degree_cap,
        "families": [list(names) for names in space.families],
        "family_r": [series_to_payload(r) for r in space.family_r],
        "tracial": space.tracial,
        "variables": list(space.variables),
    }


def space_to_json(space: FreeSpace) -> str:
    return json.dumps(space_to_payload(space), sort_keys=True, indent=2) + "\n"


def space_from_payload(payload: Any) -> FreeSpace:
    """
    Raises:
        SeriesFormatError: On a malformed object or inconsistent fields
    """
    if not isinstance(payload, dict):
        raise SeriesFormatError("space: expected a JSON object")
    families = payload.get("families")
    family_r = payload.get("family_r")
    if not isinstance(families, list) or not all(
        isinstance(f, list) and all(isinstance(n, str) for n in f) for f in families
    ):
        raise SeriesFormatError("space: 'families' must be a list of lists of names")
    if not isinstance(family_r, list):
        raise SeriesFormatError("space: 'family_r' must be a list of series")
    tracial = payload.get("tracial", False)
    if not isinstance(tracial, bool):
        raise SeriesFormatError("space: 'tracial' must be true or false")

    series: List[NCSeries] = [
        series_from_payload(entry, where=f"space: family_r {index}")
        for index, entry in enumerate(family_r)
    ]
    try:
        space = FreeSpace(families, series, tracial=tracial)
    except DomainError as e:
        raise SeriesFormatError(f"space: {e}")

    declared_cap = payload.get("degree_cap", space.degree_cap)
    if declared_cap != space.degree_cap:
        raise SeriesFormatError(
            f"space: degree_cap {declared_cap} disagrees with the family series "
            f"({space.degree_cap})"
        )
    declared_vars = payload.get("variables", list(space.variables))
    if list(declared_vars) != list(space.variables):
        raise SeriesFormatError(
            f"space: variables {declared_vars} disagree with the families "
            f"{list(space.variables)}"
        )
    return space


def load_space(path: PathLike) -> FreeSpace:
    text = _read_file(Path(path), "Space")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise SeriesFormatError(f"Line {e.lineno}: invalid JSON ({e.msg})")
    return space_from_payload(payload)


def save_space(space: FreeSpace, path: PathLike) -> None:
    Path(path).write_text(space_to_json(space), encoding="utf-8")
