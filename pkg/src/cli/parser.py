import logging
import re
from typing import Iterator

from src.models import MODEL_REGISTRY, LambdaSpec, format_spec
from src.utils.errors import ArgumentError, ParseError

logger = logging.getLogger(__name__)

NAME = re.compile(r'[a-z][a-z0-9]*')
INTEGER = re.compile(r'-?\d+')
PUNCTUATION = '(),;'


def _scan(text: str) -> Iterator[tuple[str, str, int]]:
    """Yield (kind, token, column) triples, ending with an 'end' token."""
    pos = 0
    while pos < len(text):
        char = text[pos]
        if char in PUNCTUATION:
            yield char, char, pos
            pos += 1
            continue
        match = NAME.match(text, pos) or INTEGER.match(text, pos)
        if match is None:
            raise ParseError("unexpected character", text, pos, char)
        kind = 'int' if match.re is INTEGER else 'name'
        yield kind, match.group(), pos
        pos = match.end()
    yield 'end', '', len(text)


def _arguments(tokens: list[tuple[str, str, int]], source: str, grouped: bool) -> tuple[list[list[int]], int]:
    """Read '(' int (',' int)* (';' ...)* ')' starting at tokens[1]; return groups and next index."""
    groups: list[list[int]] = [[]]
    i = 2
    if tokens[i][0] == ')':
        return [], i + 1
    expect_value = True
    while True:
        kind, token, column = tokens[i]
        if expect_value:
            if kind != 'int':
                raise ParseError("expected an integer", source, column, token or None)
            groups[-1].append(int(token))
            expect_value = False
        elif kind == ',':
            expect_value = True
        elif kind == ';':
            if not grouped:
                raise ParseError("';' separates progressions and is only allowed in unionap", source, column, token)
            groups.append([])
            expect_value = True
        elif kind == ')':
            return groups, i + 1
        else:
            raise ParseError("expected ',' or ')'", source, column, token or None)
        i += 1


def parse_spec(text: str) -> LambdaSpec:
    """Parse a model spec such as 'ap(3,4,2)' or 'unionap(1,2;2,3)'.

    Args:
        text: spec in the model grammar, whitespace-free apart from surrounding blanks

    Returns:
        LambdaSpec

    Raises:
        ParseError: text outside the grammar, with column and offending token
        ArgumentError: well-formed text naming an invalid model
    """
    source = text.strip()
    if not source:
        raise ParseError("empty model spec", text, 0)
    tokens = list(_scan(source))

    kind, name, column = tokens[0]
    if kind != 'name':
        raise ParseError("expected a model name", source, column, name or None)
    if name not in MODEL_REGISTRY:
        raise ParseError(f"unknown model, expected one of {', '.join(MODEL_REGISTRY)}", source, column, name)
    entry = MODEL_REGISTRY[name]

    groups: list[list[int]] = []
    i = 1
    if tokens[i][0] == '(':
        groups, i = _arguments(tokens, source, entry['grouped'])
    kind, token, trailing = tokens[i]
    if kind != 'end':
        raise ParseError("unexpected trailing input", source, trailing, token)

    if entry['grouped']:
        for group in groups:
            if len(group) != 2:
                raise ParseError(f"{name} progressions take two integers a,q, got {len(group)}", source, column, name)
        args = [tuple(group) for group in groups]
    else:
        args = groups[0] if groups else []

    count = len(args)
    low, high = entry['min_args'], entry['max_args']
    if count < low or (high is not None and count > high):
        expected = f"{low}" if low == high else f"{low} to {high if high is not None else 'any'}"
        raise ParseError(f"{name} takes {expected} argument(s), got {count}", source, column, name)

    spec = entry['builder'](*args)
    logger.debug(f"Parsed '{source}' as {format_spec(spec)}")
    return spec


def validate_spec(text: str) -> tuple[bool, str | None]:
    """Check a spec string without raising."""
    try:
        parse_spec(text)
    except ArgumentError as e:
        return False, str(e)
    return True, None
