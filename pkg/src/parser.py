"""Readers and printers for concepts, axioms, TBox files and feature-set literals.

Concepts use an s-expression syntax:

    top | bot | NAME | (and C C ...) | (some ROLE C) | (btw C C)

TBox files are line oriented; `#` starts a comment:

    natural Young, Adult
    intra specifies
    ci (and Young Cat) <= Cute
    ana Cat : WildCat :: Dog : Wolf
    sana Young : Adult :: Young : Adult
    nonempty (and Young Cat)
"""
import re
from dataclasses import dataclass
from typing import AbstractSet, FrozenSet, List, Optional, Set, Tuple, Union

import structlog

from .concepts import BOT, TOP, Atom, Between, Concept, Exists, check_between, conjoin, is_natural, to_sexpr
from .exceptions import ConceptSyntaxError, DeclarationError, NaturalnessError
from .tbox import AnalogyAssertion, Inclusion, TBox

logger = structlog.get_logger(__name__)

_TOKEN = re.compile(
    r"(?P<open>\()|(?P<close>\))|(?P<sub><=|⊑)|(?P<dcolon>::)|(?P<colon>:)|(?P<name>[^\s():,#<⊑]+)|(?P<comma>,)"
)
_NAME = re.compile(r"^[A-Za-z_][\w'\-.]*$")
KEYWORDS = {"top", "bot", "and", "some", "btw"}
DIRECTIVES = ("natural", "intra", "ci", "ana", "sana", "nonempty")

Axiom = Union[Inclusion, AnalogyAssertion]


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column: int = 1, source: Optional[str] = None) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        if text[position].isspace():
            position += 1
            continue
        match = _TOKEN.match(text, position)
        if match is None:
            raise ConceptSyntaxError(f"unexpected character '{text[position]}'", line, column + position, source)
        tokens.append(Token(match.lastgroup, match.group(), line, column + position))
        position = match.end()
    return tokens


class _Stream:
    def __init__(self, tokens: List[Token], line: int, end_column: int, source: Optional[str]):
        self.tokens = tokens
        self.index = 0
        self.line = line
        self.end_column = end_column
        self.source = source

    def peek(self) -> Optional[Token]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self, expected: str) -> Token:
        token = self.peek()
        if token is None:
            raise self.error(f"unexpected end of input, expected {expected}")
        self.index += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ConceptSyntaxError:
        token = token or self.peek()
        if token is None:
            return ConceptSyntaxError(message, self.line, self.end_column, self.source)
        return ConceptSyntaxError(message, token.line, token.column, self.source)

    def expect(self, kind: str, expected: str) -> Token:
        token = self.next(expected)
        if token.kind != kind:
            raise self.error(f"expected {expected}, found '{token.text}'", token)
        return token

    def at_end(self) -> bool:
        return self.index >= len(self.tokens)


def _name(stream: _Stream, what: str) -> str:
    token = stream.expect("name", what)
    if not _NAME.match(token.text) or token.text in KEYWORDS:
        raise stream.error(f"'{token.text}' is not a valid {what}", token)
    return token.text


def _concept(stream: _Stream) -> Concept:
    token = stream.next("a concept")
    if token.kind == "name":
        if token.text == "top":
            return TOP
        if token.text == "bot":
            return BOT
        if token.text in KEYWORDS:
            raise stream.error(f"'{token.text}' must follow '('", token)
        if not _NAME.match(token.text):
            raise stream.error(f"'{token.text}' is not a valid concept name", token)
        return Atom(token.text)
    if token.kind != "open":
        raise stream.error(f"expected a concept, found '{token.text}'", token)

    head = stream.expect("name", "'and', 'some' or 'btw'")
    if head.text == "and":
        parts = [_concept(stream), _concept(stream)]
        while stream.peek() is not None and stream.peek().kind != "close":
            parts.append(_concept(stream))
        result = conjoin(parts)
    elif head.text == "some":
        role = _name(stream, "role name")
        result = Exists(role, _concept(stream))
    elif head.text == "btw":
        result = Between(_concept(stream), _concept(stream))
    else:
        raise stream.error(f"unknown constructor '{head.text}'", head)
    stream.expect("close", "')'")
    return result


def _enforce(concept: Concept, natural: Optional[AbstractSet[str]], intra: AbstractSet[str]) -> None:
    if natural is not None:
        check_between(concept, natural, intra)


def parse_concept(
    text: str,
    natural: Optional[AbstractSet[str]] = None,
    intra: AbstractSet[str] = frozenset(),
    line: int = 1,
    column: int = 1,
    source: Optional[str] = None,
) -> Concept:
    """Parse one concept; with `natural` given, in-between concepts must have natural sides"""
    stream = _Stream(tokenize(text, line, column, source), line, column + len(text), source)
    concept = _concept(stream)
    if not stream.at_end():
        raise stream.error(f"unexpected '{stream.peek().text}' after the concept")
    _enforce(concept, natural, intra)
    return concept


def _assertion(stream: _Stream, strong: bool) -> AnalogyAssertion:
    c1 = _concept(stream)
    stream.expect("colon", "':'")
    c2 = _concept(stream)
    stream.expect("dcolon", "'::'")
    d1 = _concept(stream)
    stream.expect("colon", "':'")
    d2 = _concept(stream)
    return AnalogyAssertion(c1, c2, d1, d2, strong)


def _require_natural_sides(assertion: AnalogyAssertion, natural: AbstractSet[str], intra: AbstractSet[str]) -> None:
    for concept in assertion.concepts():
        if not is_natural(concept, natural, intra):
            raise NaturalnessError("analogy assertion over a non-natural concept", to_sexpr(concept))


def parse_axiom(
    text: str,
    natural: Optional[AbstractSet[str]] = None,
    intra: AbstractSet[str] = frozenset(),
    line: int = 1,
    column: int = 1,
    source: Optional[str] = None,
) -> Axiom:
    """Parse `[ci] C <= D` or `[ana|sana] C1 : C2 :: D1 : D2`"""
    tokens = tokenize(text, line, column, source)
    stream = _Stream(tokens, line, column + len(text), source)
    keyword = None
    first = stream.peek()
    if first is not None and first.kind == "name" and first.text in ("ci", "ana", "sana"):
        keyword = stream.next("keyword").text
    if keyword is None:
        kinds = {t.kind for t in tokens}
        keyword = "ci" if "sub" in kinds else "ana"

    if keyword == "ci":
        sub = _concept(stream)
        stream.expect("sub", "'<='")
        axiom: Axiom = Inclusion(sub, _concept(stream))
    else:
        axiom = _assertion(stream, strong=keyword == "sana")
    if not stream.at_end():
        raise stream.error(f"unexpected '{stream.peek().text}' after the axiom")

    for concept in axiom.concepts():
        _enforce(concept, natural, intra)
    if isinstance(axiom, AnalogyAssertion) and natural is not None:
        _require_natural_sides(axiom, natural, intra)
    return axiom


def _names(rest: str, line: int, column: int, source: Optional[str]) -> List[str]:
    names = []
    for token in tokenize(rest, line, column, source):
        if token.kind == "comma":
            continue
        if token.kind != "name" or not _NAME.match(token.text) or token.text in KEYWORDS:
            raise ConceptSyntaxError(f"'{token.text}' is not a valid name", token.line, token.column, source)
        names.append(token.text)
    return names


def _strip_comment(raw: str) -> str:
    index = raw.find("#")
    return raw if index < 0 else raw[:index]


def parse_tbox(text: str, source: Optional[str] = None) -> TBox:
    lines: List[Tuple[int, str, str, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        stripped = body.strip()
        if not stripped:
            continue
        directive = stripped.split(None, 1)[0]
        start = body.index(directive)
        if directive not in DIRECTIVES:
            raise ConceptSyntaxError(f"unknown directive '{directive}'", number, start + 1, source)
        rest_column = start + len(directive) + 1
        lines.append((number, directive, body[start + len(directive):], rest_column))

    # declarations first, so axioms may precede the lines declaring their vocabulary
    natural: Set[str] = set()
    intra: Set[str] = set()
    for number, directive, rest, column in lines:
        if directive == "natural":
            natural.update(_names(rest, number, column, source))
        elif directive == "intra":
            intra.update(_names(rest, number, column, source))
    clash = natural & intra
    if clash:
        raise DeclarationError(f"{', '.join(sorted(clash))} declared both natural atom and intra-domain role")

    cis: List[Inclusion] = []
    anas: List[AnalogyAssertion] = []
    nonempty: List[Concept] = []
    for number, directive, rest, column in lines:
        if directive in ("ci", "ana", "sana"):
            axiom = parse_axiom(directive + rest, natural, intra, number, column - len(directive), source)
            (cis if isinstance(axiom, Inclusion) else anas).append(axiom)
        elif directive == "nonempty":
            nonempty.append(parse_concept(rest, natural, intra, number, column, source))

    tbox = TBox(frozenset(natural), frozenset(intra), tuple(cis), tuple(anas), tuple(nonempty), source or "<tbox>")
    logger.debug("tbox_parsed", source=tbox.source, cis=len(cis), anas=len(anas), nonempty=len(nonempty))
    return tbox


def format_tbox(tbox: TBox) -> str:
    lines = []
    if tbox.natural:
        lines.append("natural " + ", ".join(sorted(tbox.natural)))
    if tbox.intra:
        lines.append("intra " + ", ".join(sorted(tbox.intra)))
    lines.extend("ci " + ci.to_text() for ci in tbox.cis)
    lines.extend(assertion.to_text() for assertion in tbox.anas)
    lines.extend("nonempty " + to_sexpr(concept) for concept in tbox.nonempty)
    return "\n".join(lines) + "\n"


def parse_feature_set(text: str) -> FrozenSet[str]:
    """Read `{a,b}`, `a,b`, `{}` or the empty string"""
    body = text.strip()
    if body.startswith("{") != body.endswith("}"):
        raise ConceptSyntaxError(f"unbalanced braces in feature set '{text}'")
    if body.startswith("{"):
        body = body[1:-1]
    return frozenset(part.strip() for part in body.split(",") if part.strip())
