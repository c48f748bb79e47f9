"""
Recursive-descent parser for ``.dl`` theory files.

The grammar is documented in ``docs/grammar.md``. Names bound by a quantifier,
a definition parameter or a meta-level context binder parse as :class:`Var`;
every other name parses as :class:`Const` and is resolved by the sort checker.
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..errors import DuplicateName, Location, ParseError, UnknownSort
from . import ast
from .lexer import DECLARATION_KEYWORDS, Token, TokenKind, tokenize
from .sorts import BASE_SORTS, BUILTIN_ALIASES, C, E, M, P, W, Fun, Sort, expand
from .theory import Axiom, Definition, Goal, Signature, Theory

_LOGGER = logging.getLogger(__name__)

MODAL_KEYWORDS: Dict[str, Callable[..., ast.CharNode]] = {
    "boxA": ast.BoxA,
    "diaA": ast.DiaA,
    "boxP": ast.BoxP,
    "diaP": ast.DiaP,
    "boxD": ast.BoxD,
    "Oa": ast.ObA,
    "Oi": ast.ObI,
}

LITERAL_SORTS: Dict[str, Sort] = {"w": W, "c": C, "e": E, "m": M, "p": P}

_SEXPR_BINARY = {"imp": ast.Imp, "iff": ast.Iff, "ob": ast.ObDyadic}
_SEXPR_NARY = {"and": ast.And, "or": ast.Or}

_ATOM_START = frozenset({"(", "true", "false"})


def parse_theory(text: str, base: Optional[Theory] = None) -> Theory:
    """Parse a theory file, optionally extending an already parsed ``base``."""
    parser = _Parser(tokenize(text), base or Theory())
    theory = parser.parse()
    _LOGGER.debug(
        "Parsed theory: %d constants, %d definitions, %d axioms, %d goals",
        len(theory.signature),
        len(theory.definitions),
        len(theory.axioms),
        len(theory.goals),
    )
    return theory


def parse_formula(text: str, bound: Sequence[str] = (), theory: Optional[Theory] = None) -> ast.CharNode:
    parser = _Parser(tokenize(text), theory or Theory())
    parser.bound = list(bound)
    formula = parser.formula()
    parser.expect_kind(TokenKind.EOF)
    return formula


def parse_meta(text: str, theory: Optional[Theory] = None) -> ast.MetaNode:
    parser = _Parser(tokenize(text), theory or Theory())
    formula = parser.meta()
    parser.expect_kind(TokenKind.EOF)
    return formula


def parse_sort(text: str, theory: Optional[Theory] = None) -> Sort:
    parser = _Parser(tokenize(text), theory or Theory())
    sort = parser.sort()
    parser.expect_kind(TokenKind.EOF)
    return sort


class _Parser:
    def __init__(self, tokens: List[Token], base: Theory) -> None:
        self.tokens = tokens
        self.pos = 0
        self.bound: List[str] = []
        self.signature: Signature = base.signature
        self.aliases: Dict[str, Sort] = dict(base.aliases)
        self.definitions: List[Definition] = list(base.definitions)
        self.axioms: List[Axiom] = list(base.axioms)
        self.goals: List[Goal] = list(base.goals)

    # Token helpers --------------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != TokenKind.EOF:
            self.pos += 1
        return token

    def error(self, expected: FrozenSet[str], message: Optional[str] = None) -> ParseError:
        token = self.current
        return ParseError(message or f"unexpected {token.describe()}", token.location, expected)

    def at_symbol(self, text: str) -> bool:
        return self.current.is_symbol(text)

    def at_keyword(self, text: str) -> bool:
        return self.current.is_keyword(text)

    def expect_symbol(self, text: str) -> Token:
        if not self.at_symbol(text):
            raise self.error(frozenset({f"'{text}'"}))
        return self.advance()

    def expect_kind(self, kind: TokenKind) -> Token:
        if self.current.kind != kind:
            raise self.error(frozenset({kind.value}))
        return self.advance()

    def expect_name(self) -> Token:
        return self.expect_kind(TokenKind.NAME)

    # Declarations ---------------------------------------------------------

    def parse(self) -> Theory:
        handlers = {
            "sorts": self._sorts_decl,
            "consts": self._consts_decl,
            "def": self._def_decl,
            "axiom": self._axiom_decl,
            "goal": self._goal_decl,
        }
        while self.current.kind != TokenKind.EOF:
            token = self.current
            if token.kind != TokenKind.KEYWORD or token.text not in DECLARATION_KEYWORDS:
                raise self.error(frozenset(f"'{kw}'" for kw in DECLARATION_KEYWORDS))
            self.advance()
            handlers[token.text](token.location)
        return Theory(
            signature=self.signature,
            aliases=tuple(self.aliases.items()),
            definitions=tuple(self.definitions),
            axioms=tuple(self.axioms),
            goals=tuple(self.goals),
        )

    def _sorts_decl(self, loc: Location) -> None:
        name = self.expect_name()
        if name.text in BASE_SORTS or name.text in BUILTIN_ALIASES or name.text in self.aliases:
            raise DuplicateName(f"{name.location}: sort '{name.text}' already defined")
        self.expect_symbol("=")
        self.aliases[name.text] = self.sort()

    def _consts_decl(self, loc: Location) -> None:
        names = [self.expect_name()]
        while self.at_symbol(","):
            self.advance()
            names.append(self.expect_name())
        self.expect_symbol(":")
        sort = self.sort()
        for token in names:
            self._check_fresh(token)
            self.signature = self.signature.declare(token.text, sort)

    def _def_decl(self, loc: Location) -> None:
        name = self.expect_name()
        self._check_fresh(name)
        params: List[Tuple[str, Sort]] = []
        if self.at_symbol("("):
            self.advance()
            params.append(self._binder())
            while self.at_symbol(","):
                self.advance()
                params.append(self._binder())
            self.expect_symbol(")")
        self.expect_symbol(":=")
        self.bound = [param for param, _ in params]
        body = self.formula()
        self.bound = []
        self.definitions.append(Definition(name.text, tuple(params), body, loc=loc))

    def _axiom_decl(self, loc: Location) -> None:
        name = self.expect_name()
        if any(axiom.name == name.text for axiom in self.axioms):
            raise DuplicateName(f"{name.location}: axiom '{name.text}' already declared")
        self.expect_symbol(":")
        self.axioms.append(Axiom(name.text, self.meta(), loc=loc))

    def _goal_decl(self, loc: Location) -> None:
        name = self.expect_name()
        if any(goal.name == name.text for goal in self.goals):
            raise DuplicateName(f"{name.location}: goal '{name.text}' already declared")
        attributes: List[Tuple[str, str]] = []
        while self.at_symbol("["):
            attributes.append(self._attribute())
        self.expect_symbol(":")
        self.goals.append(Goal(name.text, self.meta(), tuple(attributes), loc=loc))

    def _attribute(self) -> Tuple[str, str]:
        self.expect_symbol("[")
        key = self.advance()
        if key.kind not in (TokenKind.NAME, TokenKind.KEYWORD):
            raise ParseError("attribute name expected", key.location, frozenset({"name"}))
        self.expect_symbol("=")
        if self.current.kind == TokenKind.STRING:
            value = self.advance().text
        else:
            parts = []
            while not self.at_symbol("]"):
                if self.current.kind == TokenKind.EOF:
                    raise self.error(frozenset({"']'"}))
                parts.append(self.advance().text)
            value = "".join(parts)
        self.expect_symbol("]")
        return key.text, value

    def _check_fresh(self, token: Token) -> None:
        if token.text in self.signature or any(d.name == token.text for d in self.definitions):
            raise DuplicateName(f"{token.location}: name '{token.text}' already declared")

    # Sorts ----------------------------------------------------------------

    def sort(self) -> Sort:
        left = self._sort_atom()
        if self.at_symbol("=>"):
            self.advance()
            return Fun(left, self.sort())
        return left

    def _sort_atom(self) -> Sort:
        if self.at_symbol("("):
            self.advance()
            inner = self.sort()
            self.expect_symbol(")")
            return inner
        token = self.current
        if token.kind != TokenKind.NAME:
            raise self.error(frozenset({"sort name", "'('"}))
        self.advance()
        if token.text in BASE_SORTS:
            return BASE_SORTS[token.text]
        if token.text in BUILTIN_ALIASES or token.text in self.aliases:
            return expand(BUILTIN_ALIASES.get(token.text) or self.aliases[token.text], self.aliases)
        raise UnknownSort(f"{token.location}: unknown sort '{token.text}'")

    def _binder(self) -> Tuple[str, Sort]:
        name = self.expect_name()
        self.expect_symbol(":")
        return name.text, self.sort()

    # Meta formulas --------------------------------------------------------

    def meta(self) -> ast.MetaNode:
        if self.at_keyword("forall"):
            loc = self.advance().location
            names = [self.expect_name().text]
            while self.at_symbol(","):
                self.advance()
                names.append(self.expect_name().text)
            if self.at_symbol(":"):
                self.advance()
                sort_token = self.current
                if self.sort() != C:
                    raise ParseError("meta-level quantifiers range over contexts only", sort_token.location)
            self.expect_symbol(".")
            self.bound.extend(names)
            body = self.meta()
            del self.bound[-len(names):]
            for name in reversed(names):
                body = ast.MetaForallCtx(name, body, loc=loc)
            return body
        left = self._meta_and()
        if self.at_symbol("=>"):
            loc = self.advance().location
            return ast.MetaImp(left, self.meta(), loc=loc)
        return left

    def _meta_and(self) -> ast.MetaNode:
        left = self._meta_unary()
        while self.at_symbol("&&"):
            loc = self.advance().location
            left = ast.MetaAnd(left, self._meta_unary(), loc=loc)
        return left

    def _meta_unary(self) -> ast.MetaNode:
        token = self.current
        if token.is_symbol("!"):
            self.advance()
            return ast.MetaNot(self._meta_unary(), loc=token.location)
        if token.is_symbol("("):
            self.advance()
            inner = self.meta()
            self.expect_symbol(")")
            return inner
        if token.is_keyword("valid"):
            self.advance()
            return ast.Valid(self.atom(), loc=token.location)
        if token.is_keyword("validD"):
            self.advance()
            return ast.ValidD(self.atom(), loc=token.location)
        if token.is_keyword("validAt"):
            self.advance()
            formula = self.atom()
            return ast.AtCtx(formula, self.atom(), loc=token.location)
        if token.is_keyword("validCtx"):
            self.advance()
            formula = self.atom()
            return ast.ValidCtx(formula, self.atom(), loc=token.location)
        raise self.error(frozenset({"'valid'", "'validD'", "'validAt'", "'validCtx'", "'forall'", "'!'", "'('"}))

    # Character formulas ---------------------------------------------------

    def formula(self, no_bar: bool = False) -> ast.CharNode:
        if self.at_keyword("forall") or self.at_keyword("exists"):
            return self._quantifier(no_bar)
        left = self._imp(no_bar)
        if self.at_symbol("<->"):
            loc = self.advance().location
            return ast.Iff(left, self._imp(no_bar), loc=loc)
        return left

    def _quantifier(self, no_bar: bool) -> ast.CharNode:
        token = self.advance()
        node_type = ast.Forall if token.text == "forall" else ast.Exists
        binders = [self._binder()]
        while self.at_symbol(","):
            self.advance()
            binders.append(self._binder())
        self.expect_symbol(".")
        self.bound.extend(name for name, _ in binders)
        body = self.formula(no_bar)
        del self.bound[-len(binders):]
        for name, sort in reversed(binders):
            body = node_type(name, sort, body, loc=token.location)
        return body

    def _imp(self, no_bar: bool) -> ast.CharNode:
        left = self._or(no_bar)
        if self.at_symbol("->"):
            loc = self.advance().location
            return ast.Imp(left, self._imp(no_bar), loc=loc)
        return left

    def _or(self, no_bar: bool) -> ast.CharNode:
        left = self._and()
        while not no_bar and self.at_symbol("|"):
            loc = self.advance().location
            left = ast.Or(left, self._and(), loc=loc)
        return left

    def _and(self) -> ast.CharNode:
        left = self.unary()
        while self.at_symbol("&"):
            loc = self.advance().location
            left = ast.And(left, self.unary(), loc=loc)
        return left

    def unary(self) -> ast.CharNode:
        token = self.current
        if token.is_symbol("~"):
            self.advance()
            return ast.Not(self.unary(), loc=token.location)
        if token.kind == TokenKind.KEYWORD and token.text in MODAL_KEYWORDS:
            self.advance()
            return MODAL_KEYWORDS[token.text](self.unary(), loc=token.location)
        if token.is_symbol("O<"):
            self.advance()
            body = self.formula(no_bar=True)
            self.expect_symbol("|")
            condition = self.formula()
            self.expect_symbol(">")
            return ast.ObDyadic(body, condition, loc=token.location)
        if token.is_keyword("forall") or token.is_keyword("exists"):
            return self._quantifier(no_bar=False)
        return self._application()

    def _application(self) -> ast.CharNode:
        node = self.atom()
        while self._at_atom_start():
            arg = self.atom()
            node = ast.App(node, arg, loc=node.loc)
        return node

    def _at_atom_start(self) -> bool:
        token = self.current
        if token.kind in (TokenKind.NAME, TokenKind.LITERAL):
            return True
        return token.text in _ATOM_START and token.kind in (TokenKind.SYMBOL, TokenKind.KEYWORD)

    def atom(self) -> ast.CharNode:
        token = self.current
        if token.kind == TokenKind.NAME:
            self.advance()
            if token.text in self.bound:
                return ast.Var(token.text, loc=token.location)
            return ast.Const(token.text, loc=token.location)
        if token.kind == TokenKind.LITERAL:
            self.advance()
            return self._literal(token)
        if token.is_keyword("true"):
            self.advance()
            return ast.Top(loc=token.location)
        if token.is_keyword("false"):
            self.advance()
            return ast.Bottom(loc=token.location)
        if token.is_symbol("("):
            self.advance()
            head = self.current
            if head.kind == TokenKind.KEYWORD and (head.text == "not" or head.text in _SEXPR_BINARY or head.text in _SEXPR_NARY):
                inner = self._sexpr()
            else:
                inner = self.formula()
            self.expect_symbol(")")
            return inner
        raise self.error(frozenset({"name", "literal", "'('", "'true'", "'false'"}))

    def _sexpr(self) -> ast.CharNode:
        head = self.advance()
        args: List[ast.CharNode] = []
        while not self.at_symbol(")"):
            if self.current.kind == TokenKind.EOF:
                raise self.error(frozenset({"')'"}))
            args.append(self.atom())
        if head.text == "not":
            if len(args) != 1:
                raise ParseError("'not' takes exactly one argument", head.location)
            return ast.Not(args[0], loc=head.location)
        if head.text in _SEXPR_BINARY:
            if len(args) != 2:
                raise ParseError(f"'{head.text}' takes exactly two arguments", head.location)
            return _SEXPR_BINARY[head.text](args[0], args[1], loc=head.location)
        if len(args) < 2:
            raise ParseError(f"'{head.text}' takes at least two arguments", head.location)
        node = args[0]
        for arg in args[1:]:
            node = _SEXPR_NARY[head.text](node, arg, loc=head.location)
        return node

    def _literal(self, token: Token) -> ast.CharNode:
        prefix, _, payload = token.text[1:].partition(":")
        if prefix not in LITERAL_SORTS:
            raise ParseError(f"unknown literal sort '{prefix}'", token.location, frozenset(LITERAL_SORTS))
        sort = LITERAL_SORTS[prefix]
        if payload.startswith("["):
            if sort != P:
                raise ParseError("only @p literals take a list payload", token.location)
            value = tuple(int(part) for part in payload.strip("[] ").split(","))
            return ast.Lit(sort, value, loc=token.location)
        if sort == P:
            raise ParseError("@p literals take a list payload", token.location)
        return ast.Lit(sort, int(payload), loc=token.location)
