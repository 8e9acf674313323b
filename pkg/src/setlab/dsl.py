"""Parser and printer for the universe description language.

Grammar (names are case-sensitive; whitespace around tokens is ignored;
comments occupy a whole line):

    doc      := (stmt NEWLINE)*
    stmt     := name "=" "{" [name ("," name)*] "}" | "#" comment
    name     := [A-Za-z_][A-Za-z0-9_]*

Model documents additionally allow urelement declarations:

    urelement NAME
    urelement NAME index ( { [tokens] } , { [tokens] } )

where the first token set may only contain the literal ``0rep`` and the
second only entity names.  Forward references are allowed everywhere; every
referenced name must be defined somewhere in the document.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    DslSyntaxError,
    DuplicateDefinitionError,
    UndefinedNameError,
)
from .universe import Universe

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_ZERO_REP_RE = re.compile(r"0rep(?![A-Za-z0-9_])")

NAME = "name"
ZERO_REP_TOKEN = "0rep"
PUNCT = "={}(),"


@dataclass(frozen=True)
class IndexSpec:
    """Parsed urelement tag: whether 0rep is present, and the exception or
    listing entities of the second slot."""

    zero_rep: bool
    entities: tuple[str, ...]


@dataclass(frozen=True)
class UrelementDecl:
    name: str
    index: IndexSpec | None
    line: int


@dataclass(frozen=True)
class UniverseDoc:
    """Validated parse result: ordered definitions plus any urelement
    declarations.  All referenced names are defined and no name is defined
    twice."""

    definitions: tuple[tuple[str, tuple[str, ...]], ...]
    urelements: tuple[UrelementDecl, ...] = ()

    def to_universe(self) -> Universe:
        """Build the universe over the plain definitions, elements in
        canonical (sorted) name order."""
        ordered = sorted(name for name, _ in self.definitions)
        members = dict(self.definitions)
        return Universe.from_extensions({name: members[name] for name in ordered})


def _tokenize(line: str, lineno: int) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(line):
        ch = line[i]
        if ch in " \t":
            i += 1
            continue
        if ch in PUNCT:
            tokens.append((ch, ch, i + 1))
            i += 1
            continue
        match = _NAME_RE.match(line, i)
        if match:
            tokens.append((NAME, match.group(), i + 1))
            i = match.end()
            continue
        match = _ZERO_REP_RE.match(line, i)
        if match:
            tokens.append((ZERO_REP_TOKEN, match.group(), i + 1))
            i = match.end()
            continue
        raise DslSyntaxError(f"unexpected character {ch!r}", lineno, i + 1)
    return tokens


class _LineParser:
    def __init__(self, tokens: list[tuple[str, str, int]], lineno: int, width: int):
        self.tokens = tokens
        self.lineno = lineno
        self.width = width
        self.pos = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str, int] | None:
        token = self.peek()
        if token is not None:
            self.pos += 1
        return token

    def expect(self, kind: str, what: str) -> tuple[str, str, int]:
        token = self.take()
        if token is None:
            raise DslSyntaxError(f"expected {what}", self.lineno, self.width + 1)
        if token[0] != kind:
            raise DslSyntaxError(
                f"expected {what}, found {token[1]!r}", self.lineno, token[2]
            )
        return token

    def at_end(self):
        token = self.peek()
        if token is not None:
            raise DslSyntaxError(
                f"unexpected trailing {token[1]!r}", self.lineno, token[2]
            )


def _parse_name_set(parser: _LineParser) -> tuple[str, ...]:
    """'{' [name (',' name)*] '}' -> member names in written order."""
    parser.expect("{", "'{'")
    names: list[str] = []
    token = parser.peek()
    if token is not None and token[0] == "}":
        parser.take()
        return ()
    while True:
        names.append(parser.expect(NAME, "a name")[1])
        token = parser.take()
        if token is None:
            raise DslSyntaxError("expected ',' or '}'", parser.lineno, parser.width + 1)
        if token[0] == "}":
            return tuple(names)
        if token[0] != ",":
            raise DslSyntaxError(
                f"expected ',' or '}}', found {token[1]!r}", parser.lineno, token[2]
            )


def _parse_token_set(parser: _LineParser) -> tuple[tuple[str, str, int], ...]:
    """'{' [tok (',' tok)*] '}' where tok is a name or 0rep."""
    parser.expect("{", "'{'")
    tokens: list[tuple[str, str, int]] = []
    token = parser.peek()
    if token is not None and token[0] == "}":
        parser.take()
        return ()
    while True:
        token = parser.take()
        if token is None:
            raise DslSyntaxError("expected a token", parser.lineno, parser.width + 1)
        if token[0] not in (NAME, ZERO_REP_TOKEN):
            raise DslSyntaxError(
                f"expected a name or 0rep, found {token[1]!r}",
                parser.lineno,
                token[2],
            )
        tokens.append(token)
        token = parser.take()
        if token is None:
            raise DslSyntaxError("expected ',' or '}'", parser.lineno, parser.width + 1)
        if token[0] == "}":
            return tuple(tokens)
        if token[0] != ",":
            raise DslSyntaxError(
                f"expected ',' or '}}', found {token[1]!r}", parser.lineno, token[2]
            )


def _parse_urelement(parser: _LineParser, lineno: int) -> UrelementDecl:
    name = parser.expect(NAME, "a urelement name")[1]
    if parser.peek() is None:
        return UrelementDecl(name=name, index=None, line=lineno)
    keyword = parser.expect(NAME, "'index'")
    if keyword[1] != "index":
        raise DslSyntaxError(
            f"expected 'index', found {keyword[1]!r}", lineno, keyword[2]
        )
    parser.expect("(", "'('")
    zero_slot = _parse_token_set(parser)
    parser.expect(",", "','")
    mu_slot = _parse_token_set(parser)
    parser.expect(")", "')'")
    parser.at_end()
    for kind, value, col in zero_slot:
        if kind != ZERO_REP_TOKEN:
            raise DslSyntaxError(
                f"only 0rep may appear in the first index slot, found {value!r}",
                lineno,
                col,
            )
    entities = []
    for kind, value, col in mu_slot:
        if kind != NAME:
            raise DslSyntaxError(
                "only entity names may appear in the second index slot",
                lineno,
                col,
            )
        entities.append(value)
    return UrelementDecl(
        name=name,
        index=IndexSpec(zero_rep=bool(zero_slot), entities=tuple(entities)),
        line=lineno,
    )


def parse_document(text: str, allow_urelements: bool = False) -> UniverseDoc:
    """Parse source text into a validated document.

    Raises DslSyntaxError, DuplicateDefinitionError, or UndefinedNameError;
    positions in messages are 1-based.
    """
    definitions: list[tuple[str, tuple[str, ...], int]] = []
    urelements: list[UrelementDecl] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            continue
        parser = _LineParser(_tokenize(raw, lineno), lineno, len(raw))
        first = parser.peek()
        second = parser.tokens[1] if len(parser.tokens) > 1 else None
        if (
            first is not None
            and first[0] == NAME
            and first[1] == "urelement"
            and (second is None or second[0] == NAME)
        ):
            if not allow_urelements:
                raise DslSyntaxError(
                    "urelement declarations are only allowed in model documents",
                    lineno,
                    first[2],
                )
            parser.take()
            urelements.append(_parse_urelement(parser, lineno))
            continue
        name = parser.expect(NAME, "a name")[1]
        parser.expect("=", "'='")
        members = _parse_name_set(parser)
        parser.at_end()
        definitions.append((name, members, lineno))

    defined: dict[str, int] = {}
    for name, _, lineno in definitions:
        if name in defined:
            raise DuplicateDefinitionError(
                f"line {lineno}: {name!r} already defined on line {defined[name]}"
            )
        defined[name] = lineno
    for decl in urelements:
        if decl.name in defined:
            raise DuplicateDefinitionError(
                f"line {decl.line}: {decl.name!r} already defined on line "
                f"{defined[decl.name]}"
            )
        defined[decl.name] = decl.line

    for name, members, lineno in definitions:
        for member in members:
            if member not in defined:
                raise UndefinedNameError(
                    f"line {lineno}: undefined name {member!r}"
                )
    for decl in urelements:
        if decl.index is None:
            continue
        for entity in decl.index.entities:
            if entity not in defined:
                raise UndefinedNameError(
                    f"line {decl.line}: undefined name {entity!r}"
                )

    return UniverseDoc(
        definitions=tuple((name, members) for name, members, _ in definitions),
        urelements=tuple(urelements),
    )


def parse_universe(text: str) -> Universe:
    """Parse a plain universe document and build the universe, elements in
    canonical name order."""
    return parse_document(text).to_universe()


def print_universe(u: Universe) -> str:
    """Render a universe as DSL text; parse_universe round-trips it up to
    element order."""
    lines = []
    for x in u.names:
        members = ", ".join(u.ids(u.members_mask(x)))
        lines.append(f"{x} = {{{members}}}")
    return "\n".join(lines) + "\n" if lines else ""
