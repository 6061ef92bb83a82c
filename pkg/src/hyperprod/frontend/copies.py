"""Disjoint copies of a program, one per component of a hyperproperty."""

from typing import Dict, List

from hyperprod.core.exceptions import ProgramError
from hyperprod.frontend.ast import (
    ArrayStore,
    Assign,
    Assume,
    CallStmt,
    Decl,
    If,
    Procedure,
    Program,
    Return,
    Stmt,
    VarDecl,
    rename_expr,
)


def _rename_stmt(stmt: Stmt, names: Dict[str, str], procs: Dict[str, str]) -> Stmt:
    if isinstance(stmt, VarDecl):
        init = rename_expr(stmt.init, names) if stmt.init is not None else None
        return VarDecl(Decl(names[stmt.decl.name], stmt.decl.type), init)
    if isinstance(stmt, Assign):
        return Assign(names[stmt.target], rename_expr(stmt.value, names))
    if isinstance(stmt, ArrayStore):
        return ArrayStore(names[stmt.array], rename_expr(stmt.index, names), rename_expr(stmt.value, names))
    if isinstance(stmt, CallStmt):
        return CallStmt(
            procs[stmt.procedure],
            tuple(rename_expr(a, names) for a in stmt.args),
            tuple(names[t] for t in stmt.targets),
        )
    if isinstance(stmt, Assume):
        return Assume(rename_expr(stmt.cond, names))
    if isinstance(stmt, If):
        return If(
            rename_expr(stmt.cond, names),
            tuple(_rename_stmt(s, names, procs) for s in stmt.then),
            tuple(_rename_stmt(s, names, procs) for s in stmt.orelse),
        )
    if isinstance(stmt, Return):
        return Return(tuple(rename_expr(v, names) for v in stmt.values))
    raise ProgramError(f"Cannot rename statement {stmt!r}")


def rename_program(program: Program, suffix: str) -> Program:
    """Append ``suffix`` to every variable and procedure name."""
    names = {name: f"{name}{suffix}" for name in program.variables()}
    procs = {name: f"{name}{suffix}" for name in program.names}
    procedures = []
    for procedure in program.procedures:
        procedures.append(
            Procedure(
                procs[procedure.name],
                tuple(Decl(names[d.name], d.type) for d in procedure.params),
                tuple(Decl(names[d.name], d.type) for d in procedure.outputs),
                tuple(_rename_stmt(s, names, procs) for s in procedure.body),
            )
        )
    return Program(tuple(procedures))


def copy_suffix(component: int) -> str:
    return f"_{component}"


def make_copies(program: Program, k: int) -> List[Program]:
    """Copies 1..k of ``program``; copy i has every name suffixed with ``_i``."""
    if k < 1:
        raise ProgramError(f"Need at least one copy, got {k}")
    return [rename_program(program, copy_suffix(i)) for i in range(1, k + 1)]
