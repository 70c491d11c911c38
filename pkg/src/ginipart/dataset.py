"""CSV ingestion into count vectors and the instance JSON document."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .impurity import DomainError, GiniInstance


@dataclass
class InstanceDocument:
    vectors: np.ndarray
    k: int
    classes: list[str]
    values: list[str]

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=np.int64)
        n, d = self.vectors.shape
        if len(self.classes) != d or len(self.values) != n:
            raise DomainError(
                f"name lists do not match the {n} x {d} matrix "
                f"({len(self.values)} values, {len(self.classes)} classes)"
            )

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def d(self) -> int:
        return self.vectors.shape[1]

    def instance(self) -> GiniInstance:
        return GiniInstance(self.vectors, self.k)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "k": self.k,
            "classes": list(self.classes),
            "values": list(self.values),
            "vectors": self.vectors.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, doc: dict) -> "InstanceDocument":
        try:
            vectors = doc["vectors"]
            k = int(doc["k"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"instance document is missing or has a bad field: {exc}") from None
        arr = np.asarray(vectors)
        if arr.ndim != 2 or arr.dtype.kind not in "iu":
            raise DomainError("'vectors' must be a rectangular matrix of integers")
        n, d = arr.shape
        if "d" in doc and int(doc["d"]) != d or "n" in doc and int(doc["n"]) != n:
            raise DomainError(f"declared shape (n={doc.get('n')}, d={doc.get('d')}) disagrees with vectors {n} x {d}")
        classes = doc.get("classes") or [f"class{i}" for i in range(d)]
        values = doc.get("values") or [f"value{j}" for j in range(n)]
        out = cls(arr, k, list(classes), list(values))
        out.instance()  # validate
        return out

    @classmethod
    def from_json(cls, text: str) -> "InstanceDocument":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
        if not isinstance(doc, dict):
            raise DomainError("instance JSON must be an object")
        return cls.from_dict(doc)

    @classmethod
    def load(cls, path) -> "InstanceDocument":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    @classmethod
    def from_instance(cls, inst: GiniInstance) -> "InstanceDocument":
        return cls(
            np.array(inst.vectors),
            inst.k,
            [f"class{i}" for i in range(inst.d)],
            [f"value{j}" for j in range(inst.n)],
        )


def ingest_csv(path, attribute_column: str, class_column: str, k: int | None = None) -> InstanceDocument:
    """Contingency counts of ``class_column`` per distinct ``attribute_column`` value.

    Values and classes are indexed in order of first appearance.  ``k``
    defaults to ``min(2, n)``.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DomainError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        for col in (attribute_column, class_column):
            if col not in header:
                raise DomainError(f"{path}: line 1: no column named {col!r} (have {header})")
        ai, ci = header.index(attribute_column), header.index(class_column)
        values: dict[str, int] = {}
        classes: dict[str, int] = {}
        pairs = []
        for row in reader:
            lineno = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise DomainError(f"{path}: line {lineno}: expected {len(header)} fields, got {len(row)}")
            a, c = row[ai].strip(), row[ci].strip()
            if not a or not c:
                raise DomainError(f"{path}: line {lineno}: empty attribute or class token")
            pairs.append((values.setdefault(a, len(values)), classes.setdefault(c, len(classes))))
    if not pairs:
        raise DomainError(f"{path}: no data rows")
    counts = np.zeros((len(values), len(classes)), dtype=np.int64)
    for j, i in pairs:
        counts[j, i] += 1
    n = len(values)
    return InstanceDocument(counts, min(2, n) if k is None else k, list(classes), list(values))
