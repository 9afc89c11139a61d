"""Family JSON files.

Layout (keys in this order, compact separators)::

    {"version":1,"n":7,"modulus":2,"pattern":[1,1,0],"sets":[[1,2,3],[4]]}

``modulus`` and ``pattern`` are optional metadata.  Pattern entries are
integers or the string ``"*"``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .errors import DuplicateMembersError, UsageError
from .family import STAR, Pattern, SetFamily

FORMAT_VERSION = 1


def family_to_dict(family: SetFamily, pattern: Optional[Pattern] = None) -> dict:
    doc = {"version": FORMAT_VERSION, "n": family.n}
    if pattern is not None:
        doc["modulus"] = pattern.modulus
        doc["pattern"] = list(pattern.entries)
    doc["sets"] = family.to_lists()
    return doc


def dumps_family(family: SetFamily, pattern: Optional[Pattern] = None) -> str:
    return json.dumps(family_to_dict(family, pattern), separators=(",", ":"))


def family_from_dict(doc) -> tuple[SetFamily, Optional[Pattern]]:
    if not isinstance(doc, dict):
        raise UsageError("family file must hold a JSON object")
    if doc.get("version") != FORMAT_VERSION:
        raise UsageError(f"unsupported family file version {doc.get('version')!r}")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise UsageError("'n' must be an integer")
    sets = doc.get("sets")
    if not isinstance(sets, list):
        raise UsageError("'sets' must be a list")
    lists = []
    for pos, members in enumerate(sets, 1):
        if not isinstance(members, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in members):
            raise UsageError(f"set {pos} must be a list of integers")
        if any(b <= a for a, b in zip(members, members[1:])):
            raise UsageError(f"set {pos} is not strictly increasing")
        lists.append(members)
    try:
        family = SetFamily.from_lists(n, lists)
    except DuplicateMembersError as exc:
        raise UsageError(f"duplicate sets: {exc}") from None

    pattern = None
    if "pattern" in doc:
        modulus = doc.get("modulus", 2)
        entries = doc["pattern"]
        if not isinstance(entries, list) or not all(e == STAR or (isinstance(e, int) and not isinstance(e, bool)) for e in entries):
            raise UsageError("'pattern' must list integers or '*'")
        pattern = Pattern(modulus, tuple(entries))
    return family, pattern


def loads_family(text: str) -> tuple[SetFamily, Optional[Pattern]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None
    return family_from_dict(doc)


def load_family(path) -> tuple[SetFamily, Optional[Pattern]]:
    return loads_family(Path(path).read_text())


def save_family(path, family: SetFamily, pattern: Optional[Pattern] = None) -> None:
    Path(path).write_text(dumps_family(family, pattern) + "\n")
