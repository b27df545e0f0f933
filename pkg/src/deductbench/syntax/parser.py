"""Recursive-descent parsers for the three formalisation syntaxes.

One parser class covers all three grammars; the dialect only changes how
atoms, terms and quantifier prefixes are spelled. Precedence, from tightest:
negation, conjunction, disjunction and exclusive-or, then implication and
biconditional (right-associative). A quantifier's scope extends as far right
as possible.

Errors are reported in the ``mismatched input 'X' expecting 'Y'`` shape so the
rendered message can be handed back to a language model as feedback.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from ..core import (
    IDENTIFIER, And, Atom, Conclusion, Constant, Exists, Forall, Function, Iff,
    Implies, Not, Or, PredicateDecl, Premise, Problem, Variable, Xor,
)
from .lexer import LITERAL_TOKENS, LexError, SyntaxId, Tok, Token, tokenize


class LogicSyntaxError(Exception):
    """A syntax error with position, offending fragment and expected token."""

    def __init__(self, message: str, line: int = 1, column: int = 0,
                 offending: str = "", expected: str = ""):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.offending = offending
        self.expected = expected

    @property
    def position(self) -> tuple:
        return (self.line, self.column)

    def __str__(self):
        return f"line {self.line}:{self.column} {self.message}"


class MissingSection(LogicSyntaxError):
    def __init__(self, header: str):
        super().__init__(f"missing section '{header}:'", expected=f"{header}:")
        self.header = header


def _display(kind: Tok) -> str:
    return f"'{kind.value}'" if kind in LITERAL_TOKENS else kind.value


def mismatched(tok: Token, expected) -> LogicSyntaxError:
    if isinstance(expected, Tok):
        expected = [expected]
    shown = [_display(k) for k in expected]
    exp = shown[0] if len(shown) == 1 else "{" + ", ".join(shown) + "}"
    return LogicSyntaxError(
        f"mismatched input '{tok.text}' expecting {exp}",
        tok.line, tok.column, tok.text, exp.strip("'"),
    )


_BINARY = {Tok.AND: And, Tok.OR: Or, Tok.XOR: Xor, Tok.IMPLIES: Implies, Tok.IFF: Iff}
_FORMULA_START = {
    SyntaxId.FOL: [Tok.NOT, Tok.FORALL, Tok.EXISTS, Tok.LPAREN, Tok.IDENT],
    SyntaxId.RFOL: [Tok.NOT, Tok.FORALL, Tok.EXISTS, Tok.LPAREN, Tok.IDENT],
    SyntaxId.TPTP: [Tok.NOT, Tok.FORALL, Tok.EXISTS, Tok.LPAREN, Tok.IDENT, Tok.QUOTED],
}
# Deeply nested input would otherwise hit the interpreter recursion limit.
MAX_NESTING = 100


class FormulaParser:
    def __init__(self, tokens: list, syntax: SyntaxId):
        self.tokens = tokens
        self.i = 0
        self.syntax = syntax
        self.scope: list = []  # bound variable names, innermost last
        self.nesting = 0

    # -- token helpers --
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind is not Tok.EOF:
            self.i += 1
        return t

    def expect(self, kind: Tok) -> Token:
        if self.tok.kind is not kind:
            raise mismatched(self.tok, kind)
        return self.advance()

    def accept(self, kind: Tok) -> bool:
        if self.tok.kind is kind:
            self.advance()
            return True
        return False

    def _enter(self):
        self.nesting += 1
        if self.nesting > MAX_NESTING:
            t = self.tok
            raise LogicSyntaxError("formula nested too deeply", t.line, t.column, t.text)

    # -- grammar --
    def formula(self):
        self._enter()
        left = self.disjunction()
        if self.tok.kind in (Tok.IMPLIES, Tok.IFF):
            op = _BINARY[self.advance().kind]
            left = op(left, self.formula())
        self.nesting -= 1
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.tok.kind in (Tok.OR, Tok.XOR):
            op = _BINARY[self.advance().kind]
            left = op(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.tok.kind is Tok.AND:
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self):
        kind = self.tok.kind
        if kind is Tok.NOT:
            self.advance()
            self._enter()
            body = self.unary()
            self.nesting -= 1
            return Not(body)
        if kind in (Tok.FORALL, Tok.EXISTS):
            return self.quantified()
        if kind is Tok.LPAREN:
            self.advance()
            f = self.formula()
            self.expect(Tok.RPAREN)
            return f
        return self.atom()

    def quantified(self):
        quant = Forall if self.advance().kind is Tok.FORALL else Exists
        if self.syntax is SyntaxId.TPTP:
            self.expect(Tok.LBRACK)
            names = [self.expect(Tok.UPPER).text]
            while self.accept(Tok.COMMA):
                names.append(self.expect(Tok.UPPER).text)
            self.expect(Tok.RBRACK)
            self.expect(Tok.COLON)
        else:
            names = [self.bound_variable()]
            while self.accept(Tok.COMMA):
                names.append(self.bound_variable())
            self.accept(Tok.DOT)
        self.scope.extend(names)
        body = self.formula()
        del self.scope[len(self.scope) - len(names):]
        for name in reversed(names):
            body = quant(name, body)
        return body

    def bound_variable(self) -> str:
        if self.syntax is SyntaxId.RFOL:
            return self.expect(Tok.QVAR).text[1:]
        return self.expect(Tok.IDENT).text

    def symbol(self) -> Token:
        if self.syntax is SyntaxId.TPTP and self.tok.kind is Tok.QUOTED:
            t = self.advance()
            if not IDENTIFIER.match(t.text):
                raise LogicSyntaxError(
                    f"invalid identifier '{t.text}'", t.line, t.column, t.text, "identifier"
                )
            return t
        if self.tok.kind is not Tok.IDENT:
            expected = _FORMULA_START[self.syntax]
            raise mismatched(self.tok, expected)
        return self.advance()

    def atom(self):
        name = self.symbol().text
        if self.syntax is SyntaxId.TPTP:
            if self.tok.kind is not Tok.LPAREN:
                return Atom(name, ())
        else:
            self.expect(Tok.LPAREN)
            if self.accept(Tok.RPAREN):
                return Atom(name, ())
            args = self.term_list()
            self.expect(Tok.RPAREN)
            return Atom(name, args)
        self.advance()
        args = self.term_list()
        self.expect(Tok.RPAREN)
        return Atom(name, args)

    def term_list(self) -> tuple:
        args = [self.term()]
        while self.accept(Tok.COMMA):
            args.append(self.term())
        return tuple(args)

    def term(self):
        t = self.tok
        if self.syntax is SyntaxId.RFOL and t.kind is Tok.QVAR:
            self.advance()
            return Variable(t.text[1:])
        if self.syntax is SyntaxId.TPTP and t.kind is Tok.UPPER:
            self.advance()
            return Variable(t.text)
        if t.kind is Tok.IDENT or (self.syntax is SyntaxId.TPTP and t.kind is Tok.QUOTED):
            name = self.symbol().text
            if self.accept(Tok.LPAREN):
                self._enter()
                args = self.term_list()
                self.expect(Tok.RPAREN)
                self.nesting -= 1
                return Function(name, args)
            if self.syntax is SyntaxId.FOL:
                bound = self._resolve(name)
                if bound is not None:
                    return Variable(bound)
            return Constant(name)
        expected = {
            SyntaxId.FOL: [Tok.IDENT],
            SyntaxId.RFOL: [Tok.QVAR, Tok.IDENT],
            SyntaxId.TPTP: [Tok.UPPER, Tok.IDENT],
        }[self.syntax]
        raise mismatched(t, expected)

    def _resolve(self, name: str) -> Optional[str]:
        # FOL variables are implicit: an identifier is a variable iff an
        # enclosing quantifier binds it, compared case-insensitively.
        for bound in reversed(self.scope):
            if bound == name:
                return bound
        low = name.lower()
        for bound in reversed(self.scope):
            if bound.lower() == low:
                return bound
        return None


def _tokens(text: str, syntax: SyntaxId, line: int, offset: int = 0) -> list:
    try:
        toks = tokenize(text, syntax, line)
    except LexError as e:
        raise LogicSyntaxError(str(e), e.line, e.column + offset, e.char) from None
    if offset:
        toks = [Token(t.kind, t.text, t.line, t.column + offset) for t in toks]
    return toks


def parse_formula(text: str, syntax=SyntaxId.FOL, *, line: int = 1, column: int = 0):
    """Parse a single formula written in ``syntax``."""
    syntax = SyntaxId.parse(syntax)
    p = FormulaParser(_tokens(text, syntax, line, column), syntax)
    f = p.formula()
    if syntax is not SyntaxId.TPTP:
        p.accept(Tok.DOT)
    if p.tok.kind is not Tok.EOF:
        raise mismatched(p.tok, Tok.EOF)
    return f


def parse_tptp_unit(text: str, *, line: int = 1, column: int = 0) -> tuple:
    """Parse ``fof(name, role, formula).`` and return ``(name, role, formula)``."""
    p = FormulaParser(_tokens(text, SyntaxId.TPTP, line, column), SyntaxId.TPTP)
    head = p.tok
    if head.kind is not Tok.IDENT or head.text != "fof":
        raise LogicSyntaxError(
            f"mismatched input '{head.text}' expecting 'fof'", head.line, head.column, head.text, "fof"
        )
    p.advance()
    p.expect(Tok.LPAREN)
    if p.tok.kind is Tok.QUOTED:
        # Unit names are labels, not symbols, so any quoted text is fine.
        name = re.sub(r"\\(.)", r"\1", p.advance().text)
    else:
        name = p.symbol().text
    p.expect(Tok.COMMA)
    role_tok = p.expect(Tok.IDENT)
    if role_tok.text not in ("axiom", "conjecture"):
        raise LogicSyntaxError(
            f"mismatched input '{role_tok.text}' expecting {{'axiom', 'conjecture'}}",
            role_tok.line, role_tok.column, role_tok.text, "axiom, conjecture",
        )
    p.expect(Tok.COMMA)
    f = p.formula()
    p.expect(Tok.RPAREN)
    p.expect(Tok.DOT)
    if p.tok.kind is not Tok.EOF:
        raise mismatched(p.tok, Tok.EOF)
    return name, role_tok.text, f


def parse_declaration(text: str, syntax, *, line: int = 1, column: int = 0) -> tuple:
    """Parse a predicate declaration such as ``Drinks(x)``; returns ``(name, arity)``."""
    syntax = SyntaxId.parse(syntax)
    p = FormulaParser(_tokens(text, syntax, line, column), syntax)
    a = p.atom()
    if syntax is not SyntaxId.TPTP:
        p.accept(Tok.DOT)
    if p.tok.kind is not Tok.EOF:
        raise mismatched(p.tok, Tok.EOF)
    return a.pred, len(a.args)


# --- Documents -----------------------------------------------------------

SECTION_HEADERS = ("Predicates", "Premises", "Conclusion")
_HEADER = re.compile(r"^[ \t]*(Predicates|Premises|Conclusion)[ \t]*:[ \t]*(.*)$", re.IGNORECASE)
_SEPARATOR = re.compile(r"^\s*-{3,}\s*$")
_FENCE = re.compile(r"^\s*```")
GLOSS_SEP = ":::"


@dataclass(frozen=True)
class SourceDoc:
    """Raw text tagged with its syntax, plus the character spans of its sections."""

    raw: str
    syntax: SyntaxId
    section_map: dict = field(default_factory=dict)

    @classmethod
    def of(cls, raw: str, syntax) -> "SourceDoc":
        syntax = SyntaxId.parse(syntax)
        return cls(raw, syntax, {name: (s, e) for name, s, e, _ in _sections(raw)})


@dataclass
class _Line:
    number: int  # 1-based
    offset: int  # character offset of the line start in the document
    text: str
    column: int = 0  # column of ``text`` within the source line


def _lines(raw: str) -> list:
    out, offset = [], 0
    for i, text in enumerate(raw.splitlines(keepends=True), start=1):
        out.append(_Line(i, offset, text.rstrip("\r\n")))
        offset += len(text)
    return out


def _sections(raw: str) -> list:
    """Locate template sections: ``(name, start, end, lines)`` per header.

    The first occurrence of each header wins; a section runs until the next
    header, a ``----`` separator, or the end of the text. The Conclusion
    section additionally stops at the first blank line after its content.
    """
    lines = _lines(raw)
    found = []
    seen = set()
    i = 0
    while i < len(lines):
        m = _HEADER.match(lines[i].text)
        if not m:
            i += 1
            continue
        name = m.group(1).capitalize()
        body = []
        if m.group(2).strip():
            col = m.start(2)
            body.append(_Line(lines[i].number, lines[i].offset + col, m.group(2), col))
        start = lines[i].offset
        j = i + 1
        while j < len(lines):
            ln = lines[j]
            if _HEADER.match(ln.text) or _SEPARATOR.match(ln.text):
                break
            if name == "Conclusion" and not ln.text.strip() and any(b.text.strip() for b in body):
                break
            body.append(ln)
            j += 1
        end = lines[j - 1].offset + len(lines[j - 1].text) if j > i else start
        if name not in seen:
            seen.add(name)
            found.append((name, start, end, body))
        i = j
    return found


def split_gloss(text: str) -> tuple:
    if GLOSS_SEP in text:
        formula, gloss = text.split(GLOSS_SEP, 1)
        return formula.rstrip(), gloss.strip()
    return text.rstrip(), ""


def _content_lines(lines) -> list:
    out = []
    for ln in lines:
        if _FENCE.match(ln.text) or not ln.text.strip():
            continue
        if ln.text.lstrip().startswith("%"):
            continue
        out.append(ln)
    return out


def _col(ln) -> int:
    return ln.column


def _parse_line_formula(ln, syntax):
    formula_text, gloss = split_gloss(ln.text)
    return parse_formula(formula_text, syntax, line=ln.number, column=_col(ln)), gloss


def _parse_line_unit(ln):
    unit_text, gloss = split_gloss(ln.text)
    name, role, f = parse_tptp_unit(unit_text, line=ln.number, column=_col(ln))
    return name, role, f, gloss


def parse(doc, syntax=None) -> Problem:
    """Parse a :class:`SourceDoc` (or raw text plus ``syntax``) into a Problem.

    Documents with ``Predicates:``/``Premises:``/``Conclusion:`` headers are
    read section by section, ignoring anything outside those sections.
    Without headers every non-blank line is a premise; in TPTP a
    ``conjecture`` unit becomes the conclusion.
    """
    if not isinstance(doc, SourceDoc):
        if syntax is None:
            raise TypeError("syntax is required when parsing raw text")
        doc = SourceDoc.of(doc, syntax)
    syntax = doc.syntax
    sections = {name: lines for name, _, _, lines in _sections(doc.raw)}
    if not sections:
        return _parse_bare(_content_lines(_lines(doc.raw)), syntax)
    if "Premises" not in sections:
        raise MissingSection("Premises")
    decls = []
    seen_decl = set()
    for ln in _content_lines(sections.get("Predicates", [])):
        text, gloss = split_gloss(ln.text)
        name, arity = parse_declaration(text, syntax, line=ln.number, column=_col(ln))
        if (name, arity) not in seen_decl:
            seen_decl.add((name, arity))
            decls.append(PredicateDecl(name, arity, gloss))
    premises = []
    for idx, ln in enumerate(_content_lines(sections["Premises"])):
        if syntax is SyntaxId.TPTP:
            label, role, f, gloss = _parse_line_unit(ln)
            if role != "axiom":
                raise _role_error(ln, "axiom")
        else:
            f, gloss = _parse_line_formula(ln, syntax)
            label = f"a{idx}"
        _check_label(premises, label, ln)
        premises.append(Premise(label, f, gloss))
    conclusion = None
    if "Conclusion" in sections:
        body = _content_lines(sections["Conclusion"])
        if not body:
            raise LogicSyntaxError("empty Conclusion section", expected="formula")
        ln = body[0]
        if syntax is SyntaxId.TPTP:
            _, role, f, gloss = _parse_line_unit(ln)
            if role != "conjecture":
                raise _role_error(ln, "conjecture")
        else:
            f, gloss = _parse_line_formula(ln, syntax)
        conclusion = Conclusion(f, gloss)
    return Problem(tuple(premises), conclusion, tuple(decls))


def _role_error(ln, expected: str) -> LogicSyntaxError:
    wrong = "conjecture" if expected == "axiom" else "axiom"
    col = ln.text.find(wrong)
    return LogicSyntaxError(
        f"mismatched input '{wrong}' expecting '{expected}'", ln.number, _col(ln) + max(col, 0), wrong, expected
    )


def _check_label(premises, label, ln):
    if any(p.label == label for p in premises):
        raise LogicSyntaxError(f"duplicate unit name '{label}'", ln.number, _col(ln), label)


def _parse_bare(lines, syntax) -> Problem:
    premises, conclusion = [], None
    for idx, ln in enumerate(lines):
        if syntax is SyntaxId.TPTP:
            label, role, f, gloss = _parse_line_unit(ln)
            if role == "conjecture":
                if conclusion is not None:
                    raise LogicSyntaxError(
                        "more than one conjecture", ln.number, _col(ln), label, "axiom"
                    )
                conclusion = Conclusion(f, gloss)
                continue
        else:
            f, gloss = _parse_line_formula(ln, syntax)
            label = f"a{len(premises)}"
        _check_label(premises, label, ln)
        premises.append(Premise(label, f, gloss))
    return Problem(tuple(premises), conclusion, ())
