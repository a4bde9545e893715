"""Design JSON and response/score CSV readers and writers."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .design import QuestionnaireDesign, ResponseSheet
from .errors import SchemaError, SumScoreError
from .moments import Dichotomous, Likert


def design_from_dict(doc) -> QuestionnaireDesign:
    """Parse ``{"items": [{"id", "kind", "k"?, "upper"?, "low"?}], "dichotomous_raw_mapping"}``.

    The raw mapping may be ``{"low": x, "high": y}`` or ``[x, y]`` and defaults
    to ``[0, 1]``.
    """
    if not isinstance(doc, dict) or not isinstance(doc.get("items"), list):
        raise SchemaError("design document must be an object with an 'items' list")
    items = []
    for pos, entry in enumerate(doc["items"]):
        if not isinstance(entry, dict) or "id" not in entry or "kind" not in entry:
            raise SchemaError(f"items[{pos}]: each item needs 'id' and 'kind'")
        kind = entry["kind"]
        try:
            if kind == "likert":
                scale = Likert(_int(entry, "k", pos))
            elif kind == "dichotomous":
                scale = Dichotomous(_int(entry, "low", pos, 1), _int(entry, "upper", pos))
            else:
                raise SchemaError(f"items[{pos}]: kind must be 'likert' or 'dichotomous', got {kind!r}")
        except SchemaError:
            raise
        except SumScoreError as e:
            raise SchemaError(f"items[{pos}] ({entry['id']}): {e}") from e
        items.append((str(entry["id"]), scale))
    mapping = doc.get("dichotomous_raw_mapping", [0, 1])
    if isinstance(mapping, dict):
        if set(mapping) != {"low", "high"}:
            raise SchemaError("dichotomous_raw_mapping object needs exactly 'low' and 'high'")
        mapping = [mapping["low"], mapping["high"]]
    if not isinstance(mapping, list) or len(mapping) != 2:
        raise SchemaError("dichotomous_raw_mapping must be [low, high] or {low, high}")
    return QuestionnaireDesign(tuple(items), tuple(parse_cell(m) for m in mapping))


def _int(entry, key, pos, default=None):
    if key not in entry:
        if default is None:
            raise SchemaError(f"items[{pos}] ({entry['id']}): missing '{key}'")
        return default
    v = entry[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"items[{pos}] ({entry['id']}): '{key}' must be an integer, got {v!r}")
    return v


def design_to_dict(design: QuestionnaireDesign) -> dict:
    items = []
    for item_id, scale in design.items:
        if isinstance(scale, Likert):
            items.append({"id": item_id, "kind": "likert", "k": scale.k})
        else:
            d = {"id": item_id, "kind": "dichotomous", "upper": scale.high}
            if scale.low != 1:
                d["low"] = scale.low
            items.append(d)
    return {"items": items, "dichotomous_raw_mapping": list(design.raw_mapping)}


def load_design(path) -> QuestionnaireDesign:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from e
    return design_from_dict(doc)


def parse_cell(value):
    """CSV/JSON cell to answer: integers become ``int``, blanks ``None``."""
    if value is None or isinstance(value, (bool, int)):
        return value
    if isinstance(value, float):
        return int(value) if value.is_integer() else value
    s = str(value).strip()
    if s == "":
        return None
    try:
        return int(s)
    except ValueError:
        return s


def read_responses(source) -> ResponseSheet:
    """Read a response CSV: header of item ids, first column respondent id."""
    if isinstance(source, (str, Path)):
        with open(source, newline="") as fh:
            return read_responses(fh)
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("response file is empty") from None
    if len(header) < 2:
        raise SchemaError("response header needs a respondent id column and at least one item")
    item_ids = [h.strip() for h in header[1:]]
    rids, rows = [], []
    for lineno, rec in enumerate(reader, start=2):
        if not rec or all(not c.strip() for c in rec):
            continue
        if len(rec) != len(header):
            raise SchemaError(f"line {lineno}: expected {len(header)} fields, got {len(rec)}")
        rids.append(rec[0].strip())
        rows.append([parse_cell(c) for c in rec[1:]])
    return ResponseSheet(rids, item_ids, rows)


def scores_to_csv(scores) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["respondent_id", "score"])
    w.writerows(scores)
    return buf.getvalue()
