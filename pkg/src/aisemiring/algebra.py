"""Finite additively idempotent semirings given by Cayley tables.

Elements are 0-based indices; labels are presentation-only. The natural
order is a <= b iff a + b = b, which makes addition the join of a
semilattice with a top element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_VIOLATION_WITNESSES = 32


class TableFormatError(ValueError):
    """Malformed table: not square, wrong arity, or entry out of range."""


class AlgebraSyntaxError(ValueError):
    """Algebra file text does not match the expected format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]

    def describe(self, labels: Sequence[str] | None = None) -> str:
        if labels is None:
            names = ", ".join(str(i) for i in self.witness)
        else:
            names = ", ".join(labels[i] for i in self.witness)
        return f"{self.axiom} fails at ({names})"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]
    truncated: bool = False

    def __bool__(self) -> bool:
        return self.ok


def _as_table(table, what: str) -> np.ndarray:
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise TableFormatError(f"{what} table must be square and nonempty")
    k = arr.shape[0]
    if arr.min() < 0 or arr.max() >= k:
        bad = np.argwhere((arr < 0) | (arr >= k))[0]
        raise TableFormatError(
            f"{what} table entry at row {bad[0]}, column {bad[1]} is out of range"
        )
    return arr


def validate(add, mul) -> ValidationReport:
    """Check the five axiom families, reporting every violation found.

    Malformed tables raise TableFormatError; axiom failures come back in
    the report with witnessing elements, capped at MAX_VIOLATION_WITNESSES.
    """
    a = _as_table(add, "addition")
    m = _as_table(mul, "multiplication")
    if a.shape != m.shape:
        raise TableFormatError("addition and multiplication tables differ in order")
    k = a.shape[0]
    out: list[Violation] = []
    truncated = False

    def push(axiom: str, witness: tuple[int, ...]) -> bool:
        nonlocal truncated
        if len(out) >= MAX_VIOLATION_WITNESSES:
            truncated = True
            return False
        out.append(Violation(axiom, witness))
        return True

    for i in range(k):
        if a[i, i] != i and not push("additive idempotency", (i,)):
            break
    for i in range(k):
        for j in range(i + 1, k):
            if a[i, j] != a[j, i] and not push("additive commutativity", (i, j)):
                break
    for i in range(k):
        for j in range(k):
            for l in range(k):
                if a[a[i, j], l] != a[i, a[j, l]]:
                    push("additive associativity", (i, j, l))
                if m[m[i, j], l] != m[i, m[j, l]]:
                    push("multiplicative associativity", (i, j, l))
                if m[i, a[j, l]] != a[m[i, j], m[i, l]]:
                    push("left distributivity", (i, j, l))
                if m[a[i, j], l] != a[m[i, l], m[j, l]]:
                    push("right distributivity", (i, j, l))
    return ValidationReport(not out, tuple(out[:MAX_VIOLATION_WITNESSES]), truncated)


def tables_valid(add: np.ndarray, mul: np.ndarray) -> bool:
    """Fast all-or-nothing axiom check (no witnesses)."""
    a, m = add, mul
    k = a.shape[0]
    if not np.array_equal(a, a.T) or not np.array_equal(np.diag(a), np.arange(k)):
        return False
    ii, jj, ll = np.indices((k, k, k))
    if not np.array_equal(a[a[ii, jj], ll], a[ii, a[jj, ll]]):
        return False
    if not np.array_equal(m[m[ii, jj], ll], m[ii, m[jj, ll]]):
        return False
    if not np.array_equal(m[ii, a[jj, ll]], a[m[ii, jj], m[ii, ll]]):
        return False
    if not np.array_equal(m[a[ii, jj], ll], a[m[ii, ll], m[jj, ll]]):
        return False
    return True


class FiniteAiSemiring:
    """Immutable finite ai-semiring: labels plus two Cayley tables.

    Construction verifies all axioms, so any instance in circulation is a
    genuine ai-semiring; use :func:`validate` on raw tables for diagnostics.
    """

    __slots__ = ("name", "order", "labels", "add", "mul")

    def __init__(self, name: str, labels: Sequence[str], add, mul, *,
                 _trusted: bool = False):
        a = _as_table(add, "addition")
        m = _as_table(mul, "multiplication")
        if a.shape != m.shape:
            raise TableFormatError(
                "addition and multiplication tables differ in order"
            )
        k = a.shape[0]
        labels = tuple(str(x) for x in labels)
        if len(labels) != k:
            raise TableFormatError("table/label arity mismatch")
        if len(set(labels)) != k:
            raise TableFormatError("labels must be distinct")
        if not _trusted and not tables_valid(a, m):
            report = validate(a, m)
            raise ValueError(
                f"{name}: not an ai-semiring: "
                + "; ".join(v.describe(labels) for v in report.violations[:4])
            )
        a.setflags(write=False)
        m.setflags(write=False)
        self.name = name
        self.order = k
        self.labels = labels
        self.add = a
        self.mul = m

    def label(self, i: int) -> str:
        return self.labels[i]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{self.name} has no element labelled {label!r}") from None

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteAiSemiring)
            and self.labels == other.labels
            and np.array_equal(self.add, other.add)
            and np.array_equal(self.mul, other.mul)
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.add.tobytes(), self.mul.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteAiSemiring({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class AdditiveProfile:
    """Top element, minimal elements, coatoms, and the full order relation."""

    top: int
    minimals: frozenset[int]
    coatoms: frozenset[int]
    order_relation: frozenset[tuple[int, int]] = field(repr=False)

    def leq(self, a: int, b: int) -> bool:
        return (a, b) in self.order_relation


def profile_from_add(add: np.ndarray) -> AdditiveProfile:
    """Natural-order profile computed from an addition table alone."""
    k = add.shape[0]
    leq = {(a, b) for a in range(k) for b in range(k) if add[a, b] == b}
    top = 0
    for x in range(1, k):
        top = add[top, x]
    strictly_below = {b: {a for a in range(k) if (a, b) in leq and a != b}
                      for b in range(k)}
    minimals = frozenset(b for b in range(k) if not strictly_below[b])
    if k == 1:
        # degenerate by convention: the unique element plays every role
        return AdditiveProfile(0, frozenset({0}), frozenset({0}), frozenset(leq))
    coatoms = frozenset(
        x for x in range(k)
        if x != top and not any(
            (x, z) in leq and z not in (x, top) for z in range(k)
        )
    )
    return AdditiveProfile(int(top), minimals, coatoms, frozenset(leq))


def natural_order(S: FiniteAiSemiring) -> AdditiveProfile:
    """Profile of the order a <= b iff a + b = b."""
    return profile_from_add(S.add)


def is_commutative_mult(S: FiniteAiSemiring) -> bool:
    return bool(np.array_equal(S.mul, S.mul.T))


# ---------------------------------------------------------------------------
# Reference algebras.  Tables are transcribed with rows/columns in label
# order; entry [i][j] is (element i) op (element j).

_REGISTRY_TABLES = {
    "S2": (
        ("1", "2", "3"),
        [[0, 0, 0], [0, 1, 0], [0, 0, 2]],
        [[0, 0, 0], [0, 0, 0], [0, 0, 1]],
    ),
    "S7": (
        ("0", "a", "1"),
        [[0, 0, 0], [0, 1, 0], [0, 0, 2]],
        [[0, 0, 0], [0, 0, 1], [0, 1, 2]],
    ),
    "S53": (
        ("1", "2", "3"),
        [[0, 0, 2], [0, 1, 2], [2, 2, 2]],
        [[2, 0, 2], [0, 1, 2], [2, 2, 2]],
    ),
    "S4_124": (
        ("1", "2", "3", "4"),
        [[0, 0, 0, 0], [0, 1, 1, 0], [0, 1, 2, 0], [0, 0, 0, 3]],
        [[0, 0, 0, 0], [0, 0, 1, 0], [0, 1, 2, 3], [0, 0, 3, 1]],
    ),
    "S4_359": (
        ("1", "2", "3", "4"),
        [[0, 1, 0, 0], [1, 1, 1, 1], [0, 1, 2, 0], [0, 1, 0, 3]],
        [[1, 1, 0, 1], [1, 1, 1, 1], [0, 1, 2, 3], [1, 1, 3, 1]],
    ),
    "R6": (
        ("1", "2", "3", "4", "5", "6"),
        [
            [0, 1, 0, 0, 1, 0],
            [1, 1, 1, 1, 1, 1],
            [0, 1, 2, 0, 1, 0],
            [0, 1, 0, 3, 1, 0],
            [1, 1, 1, 1, 4, 1],
            [0, 1, 0, 0, 1, 5],
        ],
        [
            [1, 1, 0, 1, 1, 1],
            [1, 1, 1, 1, 1, 1],
            [0, 1, 2, 3, 1, 0],
            [1, 1, 3, 1, 1, 1],
            [1, 1, 1, 1, 1, 1],
            [1, 1, 0, 1, 1, 4],
        ],
    ),
}

REGISTRY_NAMES = tuple(sorted(_REGISTRY_TABLES))


def registry(name: str) -> FiniteAiSemiring:
    """Return one of the built-in reference algebras by name."""
    try:
        labels, a, m = _REGISTRY_TABLES[name]
    except KeyError:
        known = ", ".join(REGISTRY_NAMES)
        raise KeyError(f"unknown algebra {name!r}; known names: {known}") from None
    return FiniteAiSemiring(name, labels, a, m)


# ---------------------------------------------------------------------------
# Line-oriented text format:
#   algebra <name>
#   elements <label> <label> ...
#   add          (then k rows of k labels)
#   mul          (then k rows of k labels)
# '#' starts a comment line.


def serialize_algebra(S: FiniteAiSemiring) -> str:
    lines = [f"algebra {S.name}", "elements " + " ".join(S.labels)]
    for header, table in (("add", S.add), ("mul", S.mul)):
        lines.append(header)
        for row in table:
            lines.append(" ".join(S.labels[v] for v in row))
    return "\n".join(lines) + "\n"


def parse_algebra_raw(text: str) -> tuple[str, tuple[str, ...], list[list[int]], list[list[int]]]:
    """Parse the file format without the axiom check; returns
    (name, labels, add, mul). Raises AlgebraSyntaxError with a line number
    on malformed input."""
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))

    if not rows:
        raise AlgebraSyntaxError("empty algebra file")
    pos = 0

    def expect(keyword: str, arity: int | None) -> tuple[int, list[str]]:
        nonlocal pos
        if pos >= len(rows):
            raise AlgebraSyntaxError(f"unexpected end of file, expected {keyword!r}")
        lineno, fields = rows[pos]
        pos += 1
        if fields[0] != keyword:
            raise AlgebraSyntaxError(
                f"expected {keyword!r}, found {fields[0]!r}", lineno
            )
        if arity is not None and len(fields) != arity:
            raise AlgebraSyntaxError(f"{keyword!r} takes {arity - 1} argument(s)", lineno)
        return lineno, fields

    _, fields = expect("algebra", 2)
    name = fields[1]
    lineno, fields = expect("elements", None)
    labels = fields[1:]
    if not labels:
        raise AlgebraSyntaxError("no element labels", lineno)
    if len(set(labels)) != len(labels):
        raise AlgebraSyntaxError("duplicate element labels", lineno)
    k = len(labels)
    index = {lab: i for i, lab in enumerate(labels)}

    def read_table(keyword: str) -> list[list[int]]:
        nonlocal pos
        expect(keyword, 1)
        table = []
        for _ in range(k):
            if pos >= len(rows):
                raise AlgebraSyntaxError(
                    f"table/label arity mismatch: {keyword!r} table needs {k} rows"
                )
            lineno, fields = rows[pos]
            pos += 1
            if len(fields) != k:
                raise AlgebraSyntaxError(
                    f"table/label arity mismatch: row has {len(fields)} entries, "
                    f"expected {k}",
                    lineno,
                )
            row = []
            for lab in fields:
                if lab not in index:
                    raise AlgebraSyntaxError(f"unknown element label {lab!r}", lineno)
                row.append(index[lab])
            table.append(row)
        return table

    add = read_table("add")
    mul = read_table("mul")
    if pos != len(rows):
        lineno, fields = rows[pos]
        raise AlgebraSyntaxError(f"trailing content {' '.join(fields)!r}", lineno)
    return name, tuple(labels), add, mul


def parse_algebra(text: str) -> FiniteAiSemiring:
    """Parse the algebra file format; raises AlgebraSyntaxError with a line
    number on malformed input and ValueError if the axioms fail."""
    name, labels, add, mul = parse_algebra_raw(text)
    return FiniteAiSemiring(name, labels, add, mul)
