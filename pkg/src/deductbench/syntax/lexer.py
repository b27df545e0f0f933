"""Tokenizer shared by the FOL, R-FOL and TPTP grammars."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass


class SyntaxId(str, enum.Enum):
    FOL = "fol"
    RFOL = "rfol"
    TPTP = "tptp"

    @classmethod
    def parse(cls, value) -> "SyntaxId":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown syntax {value!r}; expected one of fol, rfol, tptp")


class Tok(enum.Enum):
    IDENT = "IDENT"  # FOL/RFOL identifier; TPTP lower_word
    UPPER = "UPPER_WORD"  # TPTP variable
    QUOTED = "SINGLE_QUOTED"  # TPTP 'name'
    QVAR = "VARIABLE"  # R-FOL ?name
    LPAREN = "("
    RPAREN = ")"
    LBRACK = "["
    RBRACK = "]"
    COMMA = ","
    COLON = ":"
    DOT = "."
    NOT = "¬"
    AND = "∧"
    OR = "∨"
    XOR = "⊕"
    IMPLIES = "→"
    IFF = "↔"
    FORALL = "∀"
    EXISTS = "∃"
    EOF = "<EOF>"


# Tokens whose display in diagnostics is a quoted literal rather than a name.
LITERAL_TOKENS = {
    Tok.LPAREN, Tok.RPAREN, Tok.LBRACK, Tok.RBRACK, Tok.COMMA, Tok.COLON, Tok.DOT,
    Tok.NOT, Tok.AND, Tok.OR, Tok.XOR, Tok.IMPLIES, Tok.IFF, Tok.FORALL, Tok.EXISTS,
}


@dataclass(frozen=True)
class Token:
    kind: Tok
    text: str
    line: int
    column: int


class LexError(Exception):
    def __init__(self, line: int, column: int, char: str):
        super().__init__(f"token recognition error at: '{char}'")
        self.line = line
        self.column = column
        self.char = char


# Longest alternatives first within each table.
_MATH_OPERATORS = [
    ("<->", Tok.IFF), ("<=>", Tok.IFF), ("->", Tok.IMPLIES), ("=>", Tok.IMPLIES),
    ("↔", Tok.IFF), ("⟷", Tok.IFF), ("⇔", Tok.IFF), ("⟺", Tok.IFF),
    ("→", Tok.IMPLIES), ("⟹", Tok.IMPLIES), ("⇒", Tok.IMPLIES),
    ("∧", Tok.AND), ("&", Tok.AND), ("∨", Tok.OR), ("|", Tok.OR),
    ("⊕", Tok.XOR), ("¬", Tok.NOT), ("~", Tok.NOT),
    ("∀", Tok.FORALL), ("∃", Tok.EXISTS),
    ("(", Tok.LPAREN), (")", Tok.RPAREN), (",", Tok.COMMA), (".", Tok.DOT),
]
_MATH_KEYWORDS = {"forall": Tok.FORALL, "exists": Tok.EXISTS, "xor": Tok.XOR}

_TPTP_OPERATORS = [
    ("<~>", Tok.XOR), ("<=>", Tok.IFF), ("=>", Tok.IMPLIES),
    ("~", Tok.NOT), ("&", Tok.AND), ("|", Tok.OR),
    ("!", Tok.FORALL), ("?", Tok.EXISTS),
    ("(", Tok.LPAREN), (")", Tok.RPAREN), ("[", Tok.LBRACK), ("]", Tok.RBRACK),
    (",", Tok.COMMA), (":", Tok.COLON), (".", Tok.DOT),
]

_WORD = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_QUOTED = re.compile(r"'((?:[^'\\\n]|\\.)*)'")
_SPACE = re.compile(r"\s+")

MATH_KEYWORDS = frozenset(_MATH_KEYWORDS)


def _operator_regex(table):
    # Alternation keeps the table order, so longer spellings still win.
    return re.compile("|".join(re.escape(lit) for lit, _ in table)), dict(table)


_OPERATOR_RE = {False: _operator_regex(_MATH_OPERATORS), True: _operator_regex(_TPTP_OPERATORS)}


def tokenize(text: str, syntax: SyntaxId, line: int = 1) -> list:
    """Split one line (or a line-free fragment) into tokens ending with EOF.

    ``line`` is the 1-based line number reported in token positions; columns
    are 0-based, matching the usual parser-generator diagnostics.
    """
    syntax = SyntaxId.parse(syntax)
    tokens = []
    pos = 0
    op_re, op_kind = _OPERATOR_RE[syntax is SyntaxId.TPTP]
    n = len(text)
    while pos < n:
        m = _SPACE.match(text, pos)
        if m:
            pos = m.end()
            continue
        if syntax is SyntaxId.TPTP:
            if text[pos] == "%":
                break
            m = _QUOTED.match(text, pos)
            if m:
                tokens.append(Token(Tok.QUOTED, m.group(1), line, pos))
                pos = m.end()
                continue
        if syntax is SyntaxId.RFOL and text[pos] == "?":
            m = _WORD.match(text, pos + 1)
            if m:
                tokens.append(Token(Tok.QVAR, "?" + m.group(0), line, pos))
                pos = m.end()
                continue
            raise LexError(line, pos, text[pos])
        m = _WORD.match(text, pos)
        if m:
            word = m.group(0)
            if syntax is SyntaxId.TPTP:
                kind = Tok.UPPER if word[0].isupper() else Tok.IDENT
            else:
                kind = _MATH_KEYWORDS.get(word, Tok.IDENT)
            tokens.append(Token(kind, word, line, pos))
            pos = m.end()
            continue
        m = op_re.match(text, pos)
        if not m:
            raise LexError(line, pos, text[pos])
        tokens.append(Token(op_kind[m.group(0)], m.group(0), line, pos))
        pos = m.end()
    tokens.append(Token(Tok.EOF, "<EOF>", line, n))
    return tokens
