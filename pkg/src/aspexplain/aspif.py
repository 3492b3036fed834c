"""Reader and writer for the aspif ground format (header ``asp 1 0 0``).

Only the statement kinds the explanation pipeline consumes are modelled
structurally: rules (tag 1), outputs (tag 4) and externals (tag 5).  Any
other tag is preserved opaquely and re-emitted verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MalformedHeader, MissingTerminator, TruncatedStatement

HEAD_DISJUNCTIVE = 0
HEAD_CHOICE = 1

BODY_NORMAL = 0
BODY_WEIGHT = 1


@dataclass(frozen=True)
class NormalBody:
    literals: tuple[int, ...] = ()


@dataclass(frozen=True)
class WeightBody:
    lower: int
    elements: tuple[tuple[int, int], ...]  # (literal, weight) pairs

    @property
    def literals(self) -> tuple[int, ...]:
        return tuple(lit for lit, _ in self.elements)


@dataclass(frozen=True)
class RuleStatement:
    head_type: int
    head: tuple[int, ...]
    body: NormalBody | WeightBody

    @property
    def is_constraint(self) -> bool:
        return self.head_type == HEAD_DISJUNCTIVE and not self.head

    @property
    def is_choice(self) -> bool:
        return self.head_type == HEAD_CHOICE

    def body_literals(self) -> tuple[int, ...]:
        return self.body.literals


@dataclass(frozen=True)
class OutputStatement:
    symbol: str
    condition: tuple[int, ...]


@dataclass(frozen=True)
class ExternalStatement:
    atom: int
    value: int


@dataclass(frozen=True)
class OpaqueStatement:
    """A statement with a tag we do not interpret, kept verbatim."""

    raw: str


Statement = RuleStatement | OutputStatement | ExternalStatement | OpaqueStatement


@dataclass
class AspifProgram:
    statements: list[Statement] = field(default_factory=list)

    @property
    def rules(self) -> list[RuleStatement]:
        return [s for s in self.statements if isinstance(s, RuleStatement)]

    @property
    def outputs(self) -> list[OutputStatement]:
        return [s for s in self.statements if isinstance(s, OutputStatement)]

    @property
    def externals(self) -> list[ExternalStatement]:
        return [s for s in self.statements if isinstance(s, ExternalStatement)]

    def atom_ids(self) -> set[int]:
        """Every atom id referenced by a structural statement."""
        ids: set[int] = set()
        for stmt in self.statements:
            if isinstance(stmt, RuleStatement):
                ids.update(stmt.head)
                ids.update(abs(lit) for lit in stmt.body_literals())
            elif isinstance(stmt, OutputStatement):
                ids.update(abs(lit) for lit in stmt.condition)
            elif isinstance(stmt, ExternalStatement):
                ids.add(stmt.atom)
        return ids


class _Fields:
    """Cursor over the whitespace-separated integer fields of one line."""

    def __init__(self, line: str, lineno: int):
        self.tokens = line.split()
        self.pos = 0
        self.line = line
        self.lineno = lineno

    def take(self, what: str) -> int:
        if self.pos >= len(self.tokens):
            raise TruncatedStatement(
                f"line {self.lineno}: expected {what}, statement ends early: {self.line!r}")
        token = self.tokens[self.pos]
        self.pos += 1
        try:
            return int(token)
        except ValueError:
            raise TruncatedStatement(
                f"line {self.lineno}: expected integer {what}, got {token!r}") from None

    def finish(self) -> None:
        if self.pos != len(self.tokens):
            extra = " ".join(self.tokens[self.pos:])
            raise TruncatedStatement(
                f"line {self.lineno}: trailing tokens {extra!r} after statement")


def _parse_rule(fields: _Fields) -> RuleStatement:
    head_type = fields.take("head type")
    if head_type not in (HEAD_DISJUNCTIVE, HEAD_CHOICE):
        raise TruncatedStatement(
            f"line {fields.lineno}: unknown head type {head_type}")
    n_head = fields.take("head atom count")
    head = tuple(fields.take("head atom") for _ in range(n_head))
    body_type = fields.take("body type")
    if body_type == BODY_NORMAL:
        n_body = fields.take("body literal count")
        literals = tuple(fields.take("body literal") for _ in range(n_body))
        body: NormalBody | WeightBody = NormalBody(literals)
    elif body_type == BODY_WEIGHT:
        lower = fields.take("lower bound")
        n_body = fields.take("weight element count")
        elements = tuple(
            (fields.take("weight literal"), fields.take("weight"))
            for _ in range(n_body))
        body = WeightBody(lower, elements)
    else:
        raise TruncatedStatement(
            f"line {fields.lineno}: unknown body type {body_type}")
    fields.finish()
    return RuleStatement(head_type, head, body)


def _parse_output(line: str, lineno: int) -> OutputStatement:
    # "4 <len> <symbol> <n> <lits...>": the symbol is length-delimited, so it
    # may contain anything but a newline.
    rest = line.split(None, 2)
    if len(rest) < 3:
        raise TruncatedStatement(f"line {lineno}: output statement too short: {line!r}")
    try:
        length = int(rest[1])
    except ValueError:
        raise TruncatedStatement(
            f"line {lineno}: bad symbol length {rest[1]!r}") from None
    tail = rest[2]
    if len(tail) < length:
        raise TruncatedStatement(f"line {lineno}: symbol shorter than declared length")
    symbol = tail[:length]
    fields = _Fields(tail[length:], lineno)
    n_cond = fields.take("condition literal count")
    condition = tuple(fields.take("condition literal") for _ in range(n_cond))
    fields.finish()
    return OutputStatement(symbol, condition)


def parse_aspif(text: str) -> AspifProgram:
    """Parse aspif text into an :class:`AspifProgram`.

    Blank lines and ``%`` comment lines are tolerated anywhere.
    """
    lines = text.splitlines()
    program = AspifProgram()
    saw_header = False
    saw_terminator = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if not saw_header:
            if line.split() != ["asp", "1", "0", "0"]:
                raise MalformedHeader(
                    f"line {lineno}: expected 'asp 1 0 0' header, got {line!r}")
            saw_header = True
            continue
        if saw_terminator:
            raise TruncatedStatement(
                f"line {lineno}: content after the '0' terminator: {line!r}")
        if line == "0":
            saw_terminator = True
            continue
        tag = line.split(None, 1)[0]
        if tag == "1":
            fields = _Fields(line, lineno)
            fields.take("tag")
            program.statements.append(_parse_rule(fields))
        elif tag == "4":
            program.statements.append(_parse_output(line, lineno))
        elif tag == "5":
            fields = _Fields(line, lineno)
            fields.take("tag")
            atom = fields.take("atom")
            value = fields.take("external value")
            fields.finish()
            program.statements.append(ExternalStatement(atom, value))
        else:
            program.statements.append(OpaqueStatement(line))
    if not saw_header:
        raise MalformedHeader("empty input: no 'asp 1 0 0' header")
    if not saw_terminator:
        raise MissingTerminator("input ended without the '0' terminator")
    return program


def _emit_rule(stmt: RuleStatement) -> str:
    parts = [1, stmt.head_type, len(stmt.head), *stmt.head]
    if isinstance(stmt.body, NormalBody):
        parts += [BODY_NORMAL, len(stmt.body.literals), *stmt.body.literals]
    else:
        parts += [BODY_WEIGHT, stmt.body.lower, len(stmt.body.elements)]
        for lit, weight in stmt.body.elements:
            parts += [lit, weight]
    return " ".join(str(p) for p in parts)


def emit_aspif(program: AspifProgram) -> str:
    """Render a program back to aspif text (inverse of :func:`parse_aspif`)."""
    lines = ["asp 1 0 0"]
    for stmt in program.statements:
        if isinstance(stmt, RuleStatement):
            lines.append(_emit_rule(stmt))
        elif isinstance(stmt, OutputStatement):
            cond = " ".join(str(lit) for lit in stmt.condition)
            line = f"4 {len(stmt.symbol)} {stmt.symbol} {len(stmt.condition)}"
            lines.append(f"{line} {cond}" if cond else line)
        elif isinstance(stmt, ExternalStatement):
            lines.append(f"5 {stmt.atom} {stmt.value}")
        else:
            lines.append(stmt.raw)
    lines.append("0")
    return "\n".join(lines) + "\n"
