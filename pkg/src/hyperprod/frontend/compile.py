"""Grammars of the syntactic runs of a procedure.

Every statement becomes a letter: assignments and assumes are internals, a call statement becomes
a call letter and a return letter around the callee's runs. Branching becomes a choice between
two assume letters. Nonterminals are ``proc@n`` for statement positions, ``proc@end`` for the
end of a body, and the procedure name itself for its entry.
"""

from typing import Dict, List, Optional, Tuple

from hyperprod.core.exceptions import AlphabetError, ProgramError
from hyperprod.core.logging import logger
from hyperprod.frontend.ast import (
    ArrayStore,
    Assign,
    Assume,
    CallStmt,
    If,
    Program,
    Return,
    Stmt,
    Unary,
    Var,
    VarDecl,
    walk,
)
from hyperprod.frontend.semantics import AssignStmt, AssumeStmt, CallLetter, ReturnLetter, StoreStmt
from hyperprod.vpl.alphabet import Letter, LetterKind, VPAlphabet
from hyperprod.vpl.vpa import Vpa
from hyperprod.vpl.vpg import Nonterminal, Production, Vpg, vpg_to_vpa, vpg_trim, vpg_uniformize


class LetterFactory:
    """Letters of one component, one per distinct statement text."""

    def __init__(self, component: int = 1):
        self.component = component
        self._letters: Dict[str, Letter] = {}

    def _letter(self, kind: LetterKind, payload) -> Letter:
        letter_id = str(payload)
        known = self._letters.get(letter_id)
        if known is not None:
            if known.kind is not kind:
                raise AlphabetError(f"Statement {letter_id!r} is both a {known.kind.value} and a {kind.value}")
            return known
        letter = Letter(letter_id, kind, self.component, payload)
        self._letters[letter_id] = letter
        return letter

    def internal(self, payload) -> Letter:
        return self._letter(LetterKind.INTERNAL, payload)

    def call(self, payload: CallLetter) -> Letter:
        return self._letter(LetterKind.CALL, payload)

    def ret(self, payload: ReturnLetter) -> Letter:
        return self._letter(LetterKind.RETURN, payload)

    @property
    def alphabet(self) -> VPAlphabet:
        return VPAlphabet(self._letters.values())


class _Compiler:
    def __init__(self, program: Program, component: int):
        self.program = program
        self.letters = LetterFactory(component)
        self.productions: List[Production] = []
        self.counters: Dict[str, int] = {}

    def fresh(self, procedure: str) -> str:
        n = self.counters.get(procedure, 0)
        self.counters[procedure] = n + 1
        return f"{procedure}@{n}"

    def emit_internal(self, procedure: str, payload, tail: Nonterminal) -> Nonterminal:
        symbol = self.fresh(procedure)
        self.productions.append(Production.internal(symbol, self.letters.internal(payload), tail))
        return symbol

    def call_letters(self, stmt: CallStmt) -> Tuple[Letter, Letter]:
        callee = self.program.get(stmt.procedure)
        call = self.letters.call(CallLetter(callee.name, stmt.args, callee.param_names))
        ret = self.letters.ret(ReturnLetter(callee.name, stmt.targets, callee.output_names))
        return call, ret

    def procedure(self, name: str) -> None:
        procedure = self.program.get(name)
        end = f"{name}@end"
        self.productions.append(Production.epsilon(end))
        entry = self.block(name, procedure.body, end)
        # the entry nonterminal is the procedure name; copy the first statement's productions to it
        if entry == end:
            self.productions.append(Production.epsilon(name))
        else:
            for p in [p for p in self.productions if p.lhs == entry]:
                self.productions.append(Production(name, p.first, p.inner, p.ret, p.tail))

    def block(self, procedure: str, body: Tuple[Stmt, ...], cont: Nonterminal) -> Nonterminal:
        for stmt in reversed(body):
            cont = self.statement(procedure, stmt, cont)
        return cont

    def statement(self, procedure: str, stmt: Stmt, cont: Nonterminal) -> Nonterminal:
        if isinstance(stmt, VarDecl):
            if stmt.init is None:
                return cont
            return self.emit_internal(procedure, AssignStmt((stmt.decl.name,), (stmt.init,)), cont)
        if isinstance(stmt, Assign):
            return self.emit_internal(procedure, AssignStmt((stmt.target,), (stmt.value,)), cont)
        if isinstance(stmt, ArrayStore):
            return self.emit_internal(procedure, StoreStmt(stmt.array, stmt.index, stmt.value), cont)
        if isinstance(stmt, Assume):
            return self.emit_internal(procedure, AssumeStmt(stmt.cond), cont)
        if isinstance(stmt, If):
            then = self.block(procedure, stmt.then, cont)
            orelse = self.block(procedure, stmt.orelse, cont)
            symbol = self.fresh(procedure)
            positive = self.letters.internal(AssumeStmt(stmt.cond))
            negative = self.letters.internal(AssumeStmt(Unary("!", stmt.cond)))
            self.productions.append(Production.internal(symbol, positive, then))
            self.productions.append(Production.internal(symbol, negative, orelse))
            return symbol
        if isinstance(stmt, CallStmt):
            call, ret = self.call_letters(stmt)
            symbol = self.fresh(procedure)
            self.productions.append(Production.call(symbol, call, stmt.procedure, ret, cont))
            return symbol
        if isinstance(stmt, Return):
            outputs = self.program.get(procedure).output_names
            end: Nonterminal = f"{procedure}@end"
            pairs = [(o, v) for o, v in zip(outputs, stmt.values) if v != Var(o)]
            if not pairs:
                return end
            targets, values = zip(*pairs)
            return self.emit_internal(procedure, AssignStmt(tuple(targets), tuple(values)), end)
        raise ProgramError(f"Cannot compile statement {stmt!r}")


def _reachable_procedures(program: Program, entry: str) -> List[str]:
    seen = [entry]
    for name in seen:
        for stmt in walk(program.get(name).body):
            if isinstance(stmt, CallStmt) and stmt.procedure not in seen:
                seen.append(stmt.procedure)
    return seen


def to_vpg(program: Program, entry: str, component: int = 1, wrap_entry: bool = False) -> Vpg:
    """Well-matched, uniform grammar of the runs of ``entry`` with letters of ``component``.

    With ``wrap_entry`` the runs are enclosed in a call and return of ``entry`` itself, passing the
    parameters through and receiving the outputs under their own names.
    """
    if entry not in program:
        raise ProgramError(f"Entry procedure {entry!r} is not defined")
    compiler = _Compiler(program, component)
    for name in _reachable_procedures(program, entry):
        compiler.procedure(name)
    start: Nonterminal = entry
    if wrap_entry:
        procedure = program.get(entry)
        wrapped = CallStmt(entry, tuple(Var(p) for p in procedure.param_names), procedure.output_names)
        call, ret = compiler.call_letters(wrapped)
        start, done = f"{entry}@main", f"{entry}@done"
        compiler.productions.append(Production.call(start, call, entry, ret, done))
        compiler.productions.append(Production.epsilon(done))
    grammar = Vpg.build(compiler.letters.alphabet, compiler.productions, [start])
    grammar = vpg_uniformize(vpg_trim(grammar))
    logger.debug(
        f"Compiled {entry} (component {component}): {len(grammar.alphabet)} letters, "
        f"{len(grammar.productions)} productions"
    )
    return grammar


def to_vpa(program: Program, entry: str, component: int = 1, wrap_entry: bool = False) -> Vpa:
    return vpg_to_vpa(to_vpg(program, entry, component, wrap_entry))


def entry_of(program: Program, name: Optional[str] = None) -> str:
    """The named entry, or the first procedure of the file."""
    if name is None:
        return program.procedures[0].name
    if name not in program:
        raise ProgramError(f"Entry procedure {name!r} is not defined")
    return name
