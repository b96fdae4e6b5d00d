import re
from dataclasses import dataclass

from .kernel import ParseError


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op" or "eof"
    text: str
    line: int
    col: int


class Lexer:
    """Regex tokenizer shared by the three surface syntaxes.

    ``ops`` lists the punctuation tokens, longest first.  ``#`` starts a
    comment running to the end of the line.
    """

    def __init__(self, ops: list[str], newlines: bool = False):
        self.newlines = newlines
        op_alt = "|".join(re.escape(o) for o in sorted(ops, key=len, reverse=True))
        self.pattern = re.compile(
            rf"(?P<nl>\n)|(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)"
            rf"|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>{op_alt})"
        )

    def tokenize(self, source: str) -> list[Token]:
        tokens = []
        pos, line, line_start = 0, 1, 0
        while pos < len(source):
            m = self.pattern.match(source, pos)
            if m is None:
                raise ParseError(f"unexpected character {source[pos]!r}",
                                 line, pos - line_start + 1)
            kind = m.lastgroup
            col = pos - line_start + 1
            if kind == "nl":
                if self.newlines:
                    tokens.append(Token("nl", "\n", line, col))
                line += 1
                line_start = m.end()
            elif kind in ("int", "ident", "op"):
                tokens.append(Token(kind, m.group(), line, col))
            pos = m.end()
        tokens.append(Token("eof", "", line, pos - line_start + 1))
        return tokens


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def peek_at(self, offset: int) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, *texts: str) -> bool:
        tok = self.peek
        return tok.kind in ("op", "ident") and tok.text in texts

    def accept(self, *texts: str) -> Token | None:
        if self.at(*texts):
            return self.next()
        return None

    def expect(self, text: str) -> Token:
        tok = self.peek
        if not self.at(text):
            self.error(f"expected {text!r}, found {describe(tok)}")
        return self.next()

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek
        raise ParseError(message, tok.line, tok.col)


def describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)
