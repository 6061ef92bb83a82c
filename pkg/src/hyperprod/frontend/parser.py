"""Recursive descent parser for the mini recursive language.

Grammar (see docs/language.md)::

    program    ::= procedure { procedure }
    procedure  ::= "proc" ID "(" [ decls ] ")" [ "returns" "(" decls ")" ] block
    decls      ::= ID ":" type { "," ID ":" type }
    type       ::= "int" [ "[" "]" ] | "bool"
    block      ::= "{" { statement } "}"
    statement  ::= "var" ID ":" type [ ":=" expr ] ";"
                 | ID ":=" ( ID "(" [ args ] ")" | expr ) ";"
                 | ID "[" expr "]" ":=" expr ";"
                 | "(" ID { "," ID } ")" ":=" ID "(" [ args ] ")" ";"
                 | "call" ID "(" [ args ] ")" ";"
                 | "assume" expr ";"
                 | "if" "(" expr ")" block [ "else" ( block | if-statement ) ]
                 | "return" [ args ] ";"
    expr       ::= or-expr, with precedence || < && < ! < comparisons < + - < * < unary -

Identifiers are resolved while parsing: a variable must be declared (as parameter, output or by
an earlier ``var``) before it is used. Callees may be defined anywhere in the file.
"""

from typing import List, Optional, Set, Tuple

from hyperprod.core.exceptions import ParseError, ProgramError, UndeclaredIdentifierError
from hyperprod.core.logging import logger
from hyperprod.frontend.ast import (
    ArrayStore,
    Assign,
    Assume,
    Binary,
    BoolLit,
    CallStmt,
    Decl,
    Expr,
    If,
    Index,
    IntLit,
    Procedure,
    Program,
    Return,
    Stmt,
    Type,
    Unary,
    Var,
    VarDecl,
    walk,
)
from hyperprod.frontend.lexer import Token, TokenType, tokenize
from hyperprod.frontend.typecheck import check_program

COMPARISONS = ("<", "<=", ">", ">=", "==", "!=")


class Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.position = 0
        self.scope: Set[str] = set()
        self.call_sites: List[Tuple[CallStmt, Token]] = []

    # -- token helpers -------------------------------------------------------------
    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.position + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.current
        if token.type is not TokenType.EOF:
            self.position += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, token.line, token.column)

    def expect(self, value: str) -> Token:
        if not self.current.is_(value):
            raise self.error(f"Expected {value!r} but found {self.current}")
        return self.advance()

    def accept(self, value: str) -> bool:
        if self.current.is_(value):
            self.advance()
            return True
        return False

    def identifier(self) -> Token:
        if self.current.type is not TokenType.IDENT:
            raise self.error(f"Expected an identifier but found {self.current}")
        return self.advance()

    # -- declarations --------------------------------------------------------------
    def parse_program(self) -> Program:
        if self.current.type is TokenType.EOF:
            raise self.error("Empty program: expected at least one procedure")
        procedures = []
        while self.current.type is not TokenType.EOF:
            procedures.append(self.parse_procedure())
        program = Program(tuple(procedures))
        for call, token in self.call_sites:
            if call.procedure not in program:
                raise UndeclaredIdentifierError(f"Unknown procedure {call.procedure!r}", token.line, token.column)
            callee = program.get(call.procedure)
            if len(call.args) != len(callee.params):
                raise self.error(
                    f"{call.procedure} takes {len(callee.params)} argument(s), {len(call.args)} given", token
                )
            if call.targets and len(call.targets) != len(callee.outputs):
                raise self.error(
                    f"{call.procedure} returns {len(callee.outputs)} value(s), {len(call.targets)} expected", token
                )
        return program

    def parse_procedure(self) -> Procedure:
        self.expect("proc")
        name = self.identifier().value
        self.scope = set()
        self.expect("(")
        params = self.parse_decls() if not self.current.is_(")") else ()
        self.expect(")")
        outputs: Tuple[Decl, ...] = ()
        if self.accept("returns"):
            self.expect("(")
            outputs = self.parse_decls()
            self.expect(")")
        body = self.parse_block()
        procedure = Procedure(name, params, outputs, body)
        for stmt in walk(body):
            if isinstance(stmt, Return) and stmt.values and len(stmt.values) != len(outputs):
                raise ProgramError(
                    f"{name} returns {len(outputs)} value(s) but a return statement gives {len(stmt.values)}"
                )
        return procedure

    def parse_decls(self) -> Tuple[Decl, ...]:
        decls = [self.parse_decl()]
        while self.accept(","):
            decls.append(self.parse_decl())
        return tuple(decls)

    def parse_decl(self) -> Decl:
        token = self.identifier()
        if token.value in self.scope:
            raise self.error(f"{token.value!r} is declared twice", token)
        self.expect(":")
        decl = Decl(token.value, self.parse_type())
        self.scope.add(decl.name)
        return decl

    def parse_type(self) -> Type:
        if self.accept("bool"):
            return Type.BOOL
        self.expect("int")
        if self.accept("["):
            self.expect("]")
            return Type.INT_ARRAY
        return Type.INT

    # -- statements ----------------------------------------------------------------
    def parse_block(self) -> Tuple[Stmt, ...]:
        self.expect("{")
        statements = []
        while not self.current.is_("}"):
            if self.current.type is TokenType.EOF:
                raise self.error("Unterminated block: expected '}'")
            statements.append(self.parse_statement())
        self.expect("}")
        return tuple(statements)

    def parse_statement(self) -> Stmt:
        token = self.current
        if token.is_("var"):
            self.advance()
            init = None
            decl = self.parse_decl()
            if self.accept(":="):
                self.scope.discard(decl.name)
                init = self.parse_expr()
                self.scope.add(decl.name)
            self.expect(";")
            return VarDecl(decl, init)
        if token.is_("assume"):
            self.advance()
            cond = self.parse_expr()
            self.expect(";")
            return Assume(cond)
        if token.is_("if"):
            return self.parse_if()
        if token.is_("call"):
            self.advance()
            call = self.parse_call(())
            self.expect(";")
            return call
        if token.is_("return"):
            self.advance()
            values: Tuple[Expr, ...] = ()
            if not self.current.is_(";"):
                values = self.parse_args()
            self.expect(";")
            return Return(values)
        if token.is_("("):
            self.advance()
            targets = [self.variable(self.identifier())]
            while self.accept(","):
                targets.append(self.variable(self.identifier()))
            self.expect(")")
            self.expect(":=")
            call = self.parse_call(tuple(targets))
            self.expect(";")
            return call
        if token.type is TokenType.IDENT:
            target = self.variable(self.advance())
            if self.accept("["):
                index = self.parse_expr()
                self.expect("]")
                self.expect(":=")
                value = self.parse_expr()
                self.expect(";")
                return ArrayStore(target, index, value)
            self.expect(":=")
            if self.current.type is TokenType.IDENT and self.peek().is_("("):
                call = self.parse_call((target,))
                self.expect(";")
                return call
            value = self.parse_expr()
            self.expect(";")
            return Assign(target, value)
        raise self.error(f"Expected a statement but found {token}")

    def parse_if(self) -> If:
        self.expect("if")
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        then = self.parse_block()
        orelse: Tuple[Stmt, ...] = ()
        if self.accept("else"):
            orelse = (self.parse_if(),) if self.current.is_("if") else self.parse_block()
        return If(cond, then, orelse)

    def parse_call(self, targets: Tuple[str, ...]) -> CallStmt:
        token = self.identifier()
        self.expect("(")
        args: Tuple[Expr, ...] = ()
        if not self.current.is_(")"):
            args = self.parse_args()
        self.expect(")")
        call = CallStmt(token.value, args, targets)
        self.call_sites.append((call, token))
        return call

    def parse_args(self) -> Tuple[Expr, ...]:
        args = [self.parse_expr()]
        while self.accept(","):
            args.append(self.parse_expr())
        return tuple(args)

    def variable(self, token: Token) -> str:
        if token.value not in self.scope:
            raise UndeclaredIdentifierError(f"Undeclared variable {token.value!r}", token.line, token.column)
        return token.value

    # -- expressions ---------------------------------------------------------------
    def parse_expr(self) -> Expr:
        left = self.parse_and()
        while self.accept("||"):
            left = Binary("||", left, self.parse_and())
        return left

    def parse_and(self) -> Expr:
        left = self.parse_not()
        while self.accept("&&"):
            left = Binary("&&", left, self.parse_not())
        return left

    def parse_not(self) -> Expr:
        if self.accept("!"):
            return Unary("!", self.parse_not())
        return self.parse_comparison()

    def parse_comparison(self) -> Expr:
        left = self.parse_sum()
        if self.current.type is TokenType.SYMBOL and self.current.value in COMPARISONS:
            op = self.advance().value
            left = Binary(op, left, self.parse_sum())
            if self.current.type is TokenType.SYMBOL and self.current.value in COMPARISONS:
                raise self.error("Comparisons do not chain; add parentheses")
        return left

    def parse_sum(self) -> Expr:
        left = self.parse_product()
        while self.current.is_("+") or self.current.is_("-"):
            op = self.advance().value
            left = Binary(op, left, self.parse_product())
        return left

    def parse_product(self) -> Expr:
        left = self.parse_unary()
        while self.accept("*"):
            left = Binary("*", left, self.parse_unary())
        return left

    def parse_unary(self) -> Expr:
        if self.accept("-"):
            operand = self.parse_unary()
            if isinstance(operand, IntLit):
                return IntLit(-operand.value)
            return Unary("-", operand)
        return self.parse_atom()

    def parse_atom(self) -> Expr:
        token = self.current
        if token.type is TokenType.NUMBER:
            self.advance()
            return IntLit(int(token.value))
        if token.is_("true") or token.is_("false"):
            self.advance()
            return BoolLit(token.value == "true")
        if token.is_("("):
            self.advance()
            expr = self.parse_expr()
            self.expect(")")
            return expr
        if token.type is TokenType.IDENT:
            self.advance()
            if self.current.is_("("):
                raise self.error("Calls are statements and may not appear inside expressions", token)
            expr: Expr = Var(self.variable(token))
            while self.accept("["):
                expr = Index(expr, self.parse_expr())
                self.expect("]")
            return expr
        raise self.error(f"Expected an expression but found {token}")


def parse(source: str) -> Program:
    """Parse and type-check a program."""
    program = Parser(source).parse_program()
    check_program(program)
    logger.debug(f"Parsed {len(program.procedures)} procedure(s): {', '.join(program.names)}")
    return program


def parse_file(path) -> Program:
    with open(path, encoding="utf-8") as handle:
        return parse(handle.read())
