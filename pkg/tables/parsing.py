"""Reading and writing the TSV transcriptions of published expansion tables.

A fixture is a block of ``#key=value`` headers, optional ``## `` comment
lines and TAB-separated data rows whose layout is given by ``#columns``.
"""

import re
from dataclasses import dataclass, field
from pathlib import Path

from funfield.ratpoly import RatPoly
from surds.exceptions import FixtureParseError, PolynomialSyntaxError

INTEGER = "integer"
POLYNOMIAL = "polynomial"

VALUE_COLUMNS = ("a", "P", "Q")
KNOWN_COLUMNS = ("h",) + VALUE_COLUMNS + ("factors",)
REQUIRED_HEADERS = ("id", "kind", "prefix", "columns")
SOURCE_HEADERS = ("family", "n", "div", "disc", "mode", "poly")
INT_SOURCE_HEADERS = {"n", "div", "disc"}

_SYMBOL = re.compile(r"^[A-Za-z]$")
_FACTOR_TOKEN = re.compile(r"\d+|[A-Za-z]|\^|\(|\)|\*")


@dataclass(frozen=True)
class FactorExpression:
    """A product of powers, e.g. ``2*67^5`` or ``3^2*J``; bases are ints or symbols."""

    factors: tuple

    @classmethod
    def parse(cls, text):
        """Accepts the canonical form and the typeset forms found in the tables:
        ``(2)(67)^5``, ``5\\cdot 43^8``, ``43^{11}``, ``3^2J``, ``509x^7``.
        """
        cleaned = text.replace("$", "").replace("\\cdot", "*").replace(",", " ")
        cleaned = cleaned.replace("{", "").replace("}", "")
        if cleaned.strip() == "":
            raise ValueError("empty factor expression")
        leftover = _FACTOR_TOKEN.sub("", cleaned).strip()
        if leftover:
            raise ValueError(f"unexpected characters {leftover!r} in {text!r}")

        tokens = _FACTOR_TOKEN.findall(cleaned)
        factors = []
        i = 0
        while i < len(tokens):
            tok = tokens[i]
            if tok in ("*", "(", ")"):
                i += 1
                continue
            if tok == "^":
                raise ValueError(f"exponent without a base in {text!r}")
            base = int(tok) if tok.isdigit() else tok
            i += 1
            if i < len(tokens) and tokens[i] == ")":
                i += 1
            exp = 1
            if i < len(tokens) and tokens[i] == "^":
                if i + 1 >= len(tokens) or not tokens[i + 1].isdigit():
                    raise ValueError(f"missing exponent in {text!r}")
                exp = int(tokens[i + 1])
                i += 2
            factors.append((base, exp))
        return cls(factors=tuple(factors))

    def symbols(self):
        return {b for b, _ in self.factors if isinstance(b, str)}

    def evaluate(self, symbols=None):
        symbols = symbols or {}
        value = 1
        for base, exp in self.factors:
            if isinstance(base, str):
                if base not in symbols:
                    raise FixtureParseError(f"symbol {base!r} is not bound by a header")
                base = symbols[base]
            value *= base**exp
        return value

    def __str__(self):
        return "*".join(str(b) if e == 1 else f"{b}^{e}" for b, e in self.factors)


@dataclass(frozen=True)
class FixtureRow:
    h: int
    a: object = None
    P: object = None
    Q: object = None
    factors: FactorExpression | None = None

    def cell(self, column):
        return getattr(self, column)


@dataclass(frozen=True)
class FixtureTable:
    id: str
    kind: str
    columns: tuple
    rows: tuple
    prefix_only: bool
    source: tuple = ()
    symbols: tuple = ()
    comments: tuple = field(default=(), compare=False)

    @property
    def source_dict(self):
        return dict(self.source)

    @property
    def symbol_dict(self):
        return dict(self.symbols)

    def row(self, h):
        for row in self.rows:
            if row.h == h:
                return row
        return None


def _parse_int(text, what, line):
    try:
        return int(text)
    except ValueError:
        raise FixtureParseError(f"{what} {text!r} is not an integer", line) from None


def _parse_cell(text, kind, column, line):
    if text == "":
        return None
    if column == "factors":
        try:
            return FactorExpression.parse(text)
        except ValueError as exc:
            raise FixtureParseError(str(exc), line) from None
    if kind == POLYNOMIAL:
        try:
            return RatPoly.parse(text)
        except PolynomialSyntaxError as exc:
            raise FixtureParseError(str(exc), line) from None
    return _parse_int(text, f"{column} cell", line)


def _parse_headers(headers, line_of):
    missing = [key for key in REQUIRED_HEADERS if key not in headers]
    if missing:
        raise FixtureParseError(f"missing header(s): {', '.join('#' + m for m in missing)}")

    kind = headers["kind"]
    if kind not in (INTEGER, POLYNOMIAL):
        raise FixtureParseError(f"unknown kind {kind!r}", line_of["kind"])
    prefix = headers["prefix"]
    if prefix not in ("true", "false"):
        raise FixtureParseError(f"prefix must be true or false, got {prefix!r}", line_of["prefix"])

    columns = tuple(c.strip() for c in headers["columns"].split(","))
    if not columns or columns[0] != "h":
        raise FixtureParseError("first column must be h", line_of["columns"])
    unknown = [c for c in columns if c not in KNOWN_COLUMNS]
    if unknown or len(set(columns)) != len(columns):
        raise FixtureParseError(f"bad column list {headers['columns']!r}", line_of["columns"])
    if kind == POLYNOMIAL and "factors" in columns:
        raise FixtureParseError("polynomial tables carry no factors column", line_of["columns"])

    source = []
    symbols = []
    for key, value in headers.items():
        if key in REQUIRED_HEADERS:
            continue
        if key in SOURCE_HEADERS:
            if key in INT_SOURCE_HEADERS:
                value = _parse_int(value, f"#{key}", line_of[key])
            source.append((key, value))
        elif _SYMBOL.match(key):
            symbols.append((key, _parse_int(value, f"symbol #{key}", line_of[key])))
        else:
            raise FixtureParseError(f"unknown header #{key}", line_of[key])

    order = {k: i for i, k in enumerate(SOURCE_HEADERS)}
    source.sort(key=lambda kv: order[kv[0]])
    symbols.sort()
    return kind, prefix == "true", columns, tuple(source), tuple(symbols)


def parse_fixture(text):
    headers = {}
    line_of = {}
    comments = []
    raw_rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("##"):
            comments.append(line[2:].strip())
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition("=")
            if not sep or not key:
                raise FixtureParseError(f"malformed header {line!r}", lineno)
            if key in headers:
                raise FixtureParseError(f"duplicate header #{key}", lineno)
            headers[key] = value.strip()
            line_of[key] = lineno
            continue
        if line.strip() == "":
            continue
        raw_rows.append((lineno, line))

    kind, prefix_only, columns, source, symbols = _parse_headers(headers, line_of)

    rows = []
    for lineno, line in raw_rows:
        cells = line.split("\t")
        if len(cells) > len(columns):
            raise FixtureParseError(
                f"{len(cells)} cells for {len(columns)} columns", lineno
            )
        cells += [""] * (len(columns) - len(cells))
        values = {}
        for column, text in zip(columns, cells):
            text = text.strip()
            if column == "h":
                values["h"] = _parse_int(text, "h", lineno)
            else:
                values[column] = _parse_cell(text, kind, column, lineno)
        h = values["h"]
        expected_h = rows[-1].h + 1 if rows else 0
        if h != expected_h:
            raise FixtureParseError(f"expected row h={expected_h}, found h={h}", lineno)
        if all(values.get(c) is None for c in VALUE_COLUMNS):
            raise FixtureParseError(f"row h={h} has none of a, P, Q", lineno)
        rows.append(FixtureRow(**values))

    if not rows:
        raise FixtureParseError("fixture has no data rows")
    return FixtureTable(
        id=headers["id"],
        kind=kind,
        columns=columns,
        rows=tuple(rows),
        prefix_only=prefix_only,
        source=source,
        symbols=symbols,
        comments=tuple(comments),
    )


def _format_cell(value):
    return "" if value is None else str(value)


def serialize_fixture(table):
    lines = [
        f"#id={table.id}",
        f"#kind={table.kind}",
        f"#prefix={'true' if table.prefix_only else 'false'}",
        f"#columns={','.join(table.columns)}",
    ]
    lines += [f"#{key}={value}" for key, value in table.source]
    lines += [f"#{key}={value}" for key, value in table.symbols]
    lines += [f"## {comment}" for comment in table.comments]
    for row in table.rows:
        lines.append("\t".join(_format_cell(row.cell(c)) for c in table.columns))
    return "\n".join(lines) + "\n"


def load_fixture(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FixtureParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_fixture(text)
