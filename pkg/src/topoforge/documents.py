"""JSON document formats: spaces, assignments, point maps, catalog records.

A space document is {"n": int, "opens": [[point indices]], "labels": [...]?}.
Power-set spaces additionally carry "ground": g, in which case each point of
the space is itself a subset of the ground set and opens are written as
lists of such subsets, keeping 2^g-point universes readable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .category import ContinuousMap, check_continuous
from .errors import InputError
from .space import FiniteSpace, canonical_opens, verify_axioms


@dataclass(frozen=True)
class SpaceDocument:
    n: int
    opens: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    ground: int | None = None

    def to_space(self) -> FiniteSpace:
        return FiniteSpace(self.n, canonical_opens(self.opens))


def _as_int(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _point_to_index(point: Any, n: int, ground: int | None, where: str) -> int:
    if ground is None:
        idx = _as_int(point, where)
        if not 0 <= idx < n:
            raise InputError(f"{where}: point {idx} outside 0..{n - 1}")
        return idx
    if not isinstance(point, list):
        raise InputError(f"{where}: expected a ground subset (list), got {point!r}")
    code = 0
    for g in point:
        gi = _as_int(g, where)
        if not 0 <= gi < ground:
            raise InputError(f"{where}: ground index {gi} outside 0..{ground - 1}")
        code |= 1 << gi
    return code


def parse_space_document(payload: Any) -> SpaceDocument:
    if not isinstance(payload, dict):
        raise InputError("space document: expected a JSON object")
    ground = None
    if "ground" in payload:
        ground = _as_int(payload["ground"], "space document field 'ground'")
        n = payload.get("n", 1 << ground)
        n = _as_int(n, "space document field 'n'")
        if n != 1 << ground:
            raise InputError(
                f"space document: n = {n} does not match 2^ground = {1 << ground}"
            )
    else:
        if "n" not in payload:
            raise InputError("space document: missing field 'n'")
        n = _as_int(payload["n"], "space document field 'n'")
    if n < 0:
        raise InputError(f"space document: n must be >= 0, got {n}")
    if "opens" not in payload or not isinstance(payload["opens"], list):
        raise InputError("space document: missing or malformed field 'opens'")
    masks = []
    for row, open_set in enumerate(payload["opens"]):
        if not isinstance(open_set, list):
            raise InputError(f"space document opens[{row}]: expected a list")
        mask = 0
        for col, point in enumerate(open_set):
            idx = _point_to_index(point, n, ground, f"space document opens[{row}][{col}]")
            mask |= 1 << idx
        masks.append(mask)
    labels = None
    if "labels" in payload:
        raw = payload["labels"]
        if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
            raise InputError("space document: labels must be a list of strings")
        if len(raw) != n:
            raise InputError(
                f"space document: {len(raw)} labels for a space on {n} points"
            )
        labels = tuple(raw)
    doc = SpaceDocument(n, tuple(masks), labels, ground)
    report = verify_axioms(doc.to_space())
    if not report.ok:
        missing = []
        if not report.has_empty:
            missing.append("missing the empty set")
        if not report.has_full:
            missing.append("missing the full set")
        if not report.union_closed:
            missing.append("opens not closed under union")
        if not report.intersection_closed:
            missing.append("opens not closed under intersection")
        raise InputError(f"space document: {'; '.join(missing)}")
    return doc


def load_space(path: str) -> tuple[FiniteSpace, SpaceDocument]:
    with open(path) as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    doc = parse_space_document(payload)
    return doc.to_space(), doc


def space_to_document(space: FiniteSpace, ground: int | None = None) -> dict:
    def encode(mask: int) -> list:
        points = [i for i in range(space.n) if mask >> i & 1]
        if ground is None:
            return points
        return [[g for g in range(ground) if code >> g & 1] for code in points]

    payload: dict = {"n": space.n, "opens": [encode(m) for m in space.opens]}
    if ground is not None:
        payload["ground"] = ground
    return payload


def parse_assignment_document(payload: Any, space: FiniteSpace) -> tuple[str, tuple[int, ...]]:
    """Returns ("points" | "indexed", sets).  "points" means one set per point."""
    if not isinstance(payload, dict):
        raise InputError("assignment document: expected a JSON object")
    if "sets" not in payload or not isinstance(payload["sets"], list):
        raise InputError("assignment document: missing or malformed field 'sets'")
    domain = payload.get("domain", "points")
    if domain == "points":
        m = space.n
        kind = "points"
    else:
        m = _as_int(domain, "assignment document field 'domain'")
        kind = "indexed"
    if len(payload["sets"]) != m:
        raise InputError(
            f"assignment document: expected {m} sets, got {len(payload['sets'])}"
        )
    masks = []
    for row, open_set in enumerate(payload["sets"]):
        if not isinstance(open_set, list):
            raise InputError(f"assignment document sets[{row}]: expected a list")
        mask = 0
        for col, point in enumerate(open_set):
            idx = _as_int(point, f"assignment document sets[{row}][{col}]")
            if not 0 <= idx < space.n:
                raise InputError(
                    f"assignment document sets[{row}][{col}]: point {idx} outside the space"
                )
            mask |= 1 << idx
        if not space.is_open(mask):
            raise InputError(f"assignment document sets[{row}]: set is not open in the space")
        masks.append(mask)
    return kind, tuple(masks)


def load_assignment(path: str, space: FiniteSpace) -> tuple[str, tuple[int, ...]]:
    with open(path) as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return parse_assignment_document(payload, space)


def parse_map_document(payload: Any) -> tuple[str, str, tuple[int, ...]]:
    """A point map document: {"from": FILE, "to": FILE, "values": [indices]}."""
    if not isinstance(payload, dict):
        raise InputError("map document: expected a JSON object")
    for key in ("from", "to", "values"):
        if key not in payload:
            raise InputError(f"map document: missing field '{key}'")
    if not isinstance(payload["from"], str) or not isinstance(payload["to"], str):
        raise InputError("map document: 'from' and 'to' must be file paths")
    if not isinstance(payload["values"], list):
        raise InputError("map document: 'values' must be a list of point indices")
    values = tuple(_as_int(v, "map document values") for v in payload["values"])
    return payload["from"], payload["to"], values


def load_map(path: str) -> ContinuousMap:
    import os

    with open(path) as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    src_file, dst_file, values = parse_map_document(payload)
    base = os.path.dirname(os.path.abspath(path))
    src_path = src_file if os.path.isabs(src_file) else os.path.join(base, src_file)
    dst_path = dst_file if os.path.isabs(dst_file) else os.path.join(base, dst_file)
    dom, _ = load_space(src_path)
    cod, _ = load_space(dst_path)
    mapping = ContinuousMap(dom, cod, values)
    report = check_continuous(mapping)
    if not report.ok:
        raise InputError(
            f"{path}: point map is not continuous; offending open mask "
            f"{report.offending_open:#x}"
        )
    return mapping.certify()
