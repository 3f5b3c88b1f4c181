"""Statement-level parser for Java block statements.

Recognizes the statement shapes a pasted fragment may contain
(declarations, expression statements, control-flow blocks) without
checking expression structure or types. Type and member declarations
are rejected, which is what distinguishes a pastable fragment from a
class body snippet.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lexer import Token, TokenKind


class StatementParseError(Exception):
    """Internal: token stream is not a statement sequence."""


@dataclass(frozen=True)
class StatementNode:
    kind: str
    start: int
    end: int
    children: tuple["StatementNode", ...] = ()
    label: str | None = None


# Modifiers that only belong on class members, never on statements.
_MEMBER_MODIFIERS = frozenset(
    {"public", "private", "protected", "static", "abstract", "native", "strictfp"}
)
_TYPE_KEYWORDS = frozenset({"class", "interface", "enum"})

_OPEN_TO_CLOSE = {"(": ")", "[": "]", "{": "}"}


@dataclass
class _Parser:
    tokens: list[Token]
    pos: int = 0
    nodes: list[StatementNode] = field(default_factory=list)

    def _peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def _at(self, text: str) -> bool:
        tok = self._peek()
        return tok is not None and tok.text == text

    def _expect(self, text: str) -> None:
        if not self._at(text):
            raise StatementParseError(f"expected {text!r} at token {self.pos}")
        self.pos += 1

    def _skip_balanced(self, opener: str) -> None:
        self._expect(opener)
        closer = _OPEN_TO_CLOSE[opener]
        depth = 1
        while depth > 0:
            tok = self._peek()
            if tok is None:
                raise StatementParseError(f"unbalanced {opener!r}")
            if tok.text == opener:
                depth += 1
            elif tok.text == closer:
                depth -= 1
            self.pos += 1

    def parse_all(self) -> list[StatementNode]:
        result = []
        while self.pos < len(self.tokens):
            result.append(self._statement())
        return result

    def _statement(self) -> StatementNode:
        start = self.pos
        tok = self._peek()
        if tok is None:
            raise StatementParseError("expected a statement")
        text = tok.text

        if text == "final":
            # Legal prefix for a local declaration; reject final types below.
            nxt = self._peek(1)
            if nxt is not None and nxt.text in _TYPE_KEYWORDS:
                raise StatementParseError("type declaration is not a statement")
            return self._simple(start)
        if text in _MEMBER_MODIFIERS and not (text == "synchronized" and self._peek(1) is not None and self._peek(1).text == "("):
            raise StatementParseError("member declaration is not a statement")
        if text in _TYPE_KEYWORDS:
            raise StatementParseError("type declaration is not a statement")
        if text == "void":
            raise StatementParseError("method declaration is not a statement")

        if text == ";":
            self.pos += 1
            return StatementNode("empty", start, self.pos)
        if text == "{":
            return self._block(start)
        if text == "if":
            self.pos += 1
            self._skip_balanced("(")
            body = self._statement()
            children = [body]
            if self._at("else"):
                self.pos += 1
                children.append(self._statement())
            return StatementNode("if", start, self.pos, tuple(children))
        if text == "while":
            self.pos += 1
            self._skip_balanced("(")
            body = self._statement()
            return StatementNode("while", start, self.pos, (body,))
        if text == "do":
            self.pos += 1
            body = self._statement()
            self._expect("while")
            self._skip_balanced("(")
            self._expect(";")
            return StatementNode("do", start, self.pos, (body,))
        if text == "for":
            self.pos += 1
            self._skip_balanced("(")
            body = self._statement()
            return StatementNode("for", start, self.pos, (body,))
        if text == "switch":
            self.pos += 1
            self._skip_balanced("(")
            return self._switch_body(start)
        if text == "synchronized":
            self.pos += 1
            self._skip_balanced("(")
            body = self._block(self.pos)
            return StatementNode("synchronized", start, self.pos, (body,))
        if text == "try":
            return self._try(start)
        if text in ("return", "throw", "assert"):
            self.pos += 1
            self._scan_to_semicolon(allow_brace=True)
            return StatementNode(text, start, self.pos)
        if text in ("break", "continue"):
            self.pos += 1
            label = None
            nxt = self._peek()
            if nxt is not None and nxt.kind == TokenKind.IDENTIFIER:
                label = nxt.text
                self.pos += 1
            self._expect(";")
            return StatementNode(text, start, self.pos, label=label)
        if (
            tok.kind == TokenKind.IDENTIFIER
            and self._peek(1) is not None
            and self._peek(1).text == ":"
        ):
            self.pos += 2
            body = self._statement()
            return StatementNode("label", start, self.pos, (body,), label=text)
        return self._simple(start)

    def _block(self, start: int) -> StatementNode:
        self._expect("{")
        children = []
        while not self._at("}"):
            if self._peek() is None:
                raise StatementParseError("unterminated block")
            children.append(self._statement())
        self.pos += 1
        return StatementNode("block", start, self.pos, tuple(children))

    def _switch_body(self, start: int) -> StatementNode:
        self._expect("{")
        children = []
        while not self._at("}"):
            tok = self._peek()
            if tok is None:
                raise StatementParseError("unterminated switch body")
            if tok.text in ("case", "default"):
                self.pos += 1
                self._scan_to_colon()
                continue
            children.append(self._statement())
        self.pos += 1
        return StatementNode("switch", start, self.pos, tuple(children))

    def _try(self, start: int) -> StatementNode:
        self._expect("try")
        has_resources = False
        if self._at("("):
            self._skip_balanced("(")
            has_resources = True
        children = [self._block(self.pos)]
        clauses = 0
        while self._at("catch"):
            self.pos += 1
            self._skip_balanced("(")
            children.append(self._block(self.pos))
            clauses += 1
        if self._at("finally"):
            self.pos += 1
            children.append(self._block(self.pos))
            clauses += 1
        if clauses == 0 and not has_resources:
            raise StatementParseError("try without catch, finally, or resources")
        return StatementNode("try", start, self.pos, tuple(children))

    def _scan_to_semicolon(self, allow_brace: bool = False) -> None:
        """Consume tokens through the next ';' at the statement's own level.

        Braces at top level are only legal after '=', '->' or 'new'
        (array initializers, lambdas, anonymous classes); a bare brace
        signals a member declaration and fails the parse.
        """
        depth = 0
        brace_ok = False
        while True:
            tok = self._peek()
            if tok is None:
                raise StatementParseError("statement not terminated by ';'")
            text = tok.text
            if depth == 0 and text == ";":
                self.pos += 1
                return
            if text in ("=", "->", "new") or text.endswith("=") and text not in ("==", "!=", "<=", ">="):
                brace_ok = True
            if text in "([{":
                if text == "{" and depth == 0 and not brace_ok and not allow_brace:
                    raise StatementParseError("unexpected '{' in statement")
                depth += 1
            elif text in ")]}":
                depth -= 1
                if depth < 0:
                    raise StatementParseError("unbalanced delimiter in statement")
            self.pos += 1

    def _scan_to_colon(self) -> None:
        depth = 0
        while True:
            tok = self._peek()
            if tok is None:
                raise StatementParseError("case label not terminated by ':'")
            if depth == 0 and tok.text == ":":
                self.pos += 1
                return
            if tok.text in "([{":
                depth += 1
            elif tok.text in ")]}":
                depth -= 1
            self.pos += 1

    def _simple(self, start: int) -> StatementNode:
        self._scan_to_semicolon()
        return StatementNode("simple", start, self.pos)


def parse_statements(tokens: list[Token]) -> list[StatementNode]:
    """Parse a token sequence as one or more Java block statements."""
    return _Parser(tokens).parse_all()


def is_statement_sequence(tokens: list[Token]) -> bool:
    if not tokens:
        return False
    try:
        parse_statements(tokens)
    except StatementParseError:
        return False
    return True


_LOOP_KINDS = frozenset({"for", "while", "do"})


def control_flow_violations(nodes: list[StatementNode]) -> list[str]:
    """Find return/break/continue statements whose target lies outside.

    A fragment containing any return, or a break/continue that does not
    target a loop (or switch, for break) inside the fragment itself,
    cannot be extracted without changing behavior.
    """
    violations: list[str] = []

    def walk(node: StatementNode, loops: int, switches: int, labels: frozenset[str]) -> None:
        kind = node.kind
        if kind == "return":
            violations.append("return inside fragment")
            return
        if kind == "break":
            if node.label is not None:
                if node.label not in labels:
                    violations.append(f"break targets label '{node.label}' outside fragment")
            elif loops == 0 and switches == 0:
                violations.append("break targets a loop or switch outside fragment")
            return
        if kind == "continue":
            if node.label is not None:
                if node.label not in labels:
                    violations.append(f"continue targets label '{node.label}' outside fragment")
            elif loops == 0:
                violations.append("continue targets a loop outside fragment")
            return
        child_loops = loops + (1 if kind in _LOOP_KINDS else 0)
        child_switches = switches + (1 if kind == "switch" else 0)
        child_labels = labels | {node.label} if kind == "label" and node.label else labels
        for child in node.children:
            walk(child, child_loops, child_switches, child_labels)

    for node in nodes:
        walk(node, 0, 0, frozenset())
    return violations
