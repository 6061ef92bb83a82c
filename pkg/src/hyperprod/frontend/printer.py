"""Source rendering of programs and expressions.

``expr_str`` also names statement letters, so its output must be stable and minimal in
parentheses: a letter id like ``assume !(n < d)`` is what users write in exclusion lists and
annotation files.
"""

from typing import List

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
    Store,
    Unary,
    Var,
    VarDecl,
)

PRECEDENCE = {"||": 1, "&&": 2, "!": 3, "<": 4, "<=": 4, ">": 4, ">=": 4, "==": 4, "!=": 4, "+": 5, "-": 5, "*": 6}
UNARY_MINUS = 7
ATOM = 8

INDENT = "    "


def _precedence(expr: Expr) -> int:
    if isinstance(expr, Binary):
        return PRECEDENCE[expr.op]
    if isinstance(expr, Unary):
        return PRECEDENCE["!"] if expr.op == "!" else UNARY_MINUS
    if isinstance(expr, IntLit) and expr.value < 0:
        return UNARY_MINUS
    return ATOM


def _wrap(expr: Expr, minimum: int) -> str:
    text = expr_str(expr)
    return f"({text})" if _precedence(expr) < minimum else text


def expr_str(expr: Expr) -> str:
    if isinstance(expr, IntLit):
        return str(expr.value)
    if isinstance(expr, BoolLit):
        return "true" if expr.value else "false"
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Index):
        return f"{_wrap(expr.array, ATOM)}[{expr_str(expr.index)}]"
    if isinstance(expr, Store):
        return f"{_wrap(expr.array, ATOM)}[{expr_str(expr.index)} <- {expr_str(expr.value)}]"
    if isinstance(expr, Unary):
        if expr.op == "!":
            return f"!{_wrap(expr.operand, ATOM)}"
        return f"-{_wrap(expr.operand, UNARY_MINUS + 1)}"
    level = PRECEDENCE[expr.op]
    if level == PRECEDENCE["<"]:
        # comparisons do not associate
        return f"{_wrap(expr.left, level + 1)} {expr.op} {_wrap(expr.right, level + 1)}"
    return f"{_wrap(expr.left, level)} {expr.op} {_wrap(expr.right, level + 1)}"


def _decls(decls) -> str:
    return ", ".join(f"{d.name}: {d.type.value}" for d in decls)


def _call(stmt: CallStmt) -> str:
    call = f"{stmt.procedure}({', '.join(expr_str(a) for a in stmt.args)})"
    if not stmt.targets:
        return f"call {call};"
    if len(stmt.targets) == 1:
        return f"{stmt.targets[0]} := {call};"
    return f"({', '.join(stmt.targets)}) := {call};"


def _statement(stmt: Stmt, depth: int, lines: List[str]) -> None:
    pad = INDENT * depth
    if isinstance(stmt, VarDecl):
        decl: Decl = stmt.decl
        init = f" := {expr_str(stmt.init)}" if stmt.init is not None else ""
        lines.append(f"{pad}var {decl.name}: {decl.type.value}{init};")
    elif isinstance(stmt, Assign):
        lines.append(f"{pad}{stmt.target} := {expr_str(stmt.value)};")
    elif isinstance(stmt, ArrayStore):
        lines.append(f"{pad}{stmt.array}[{expr_str(stmt.index)}] := {expr_str(stmt.value)};")
    elif isinstance(stmt, CallStmt):
        lines.append(f"{pad}{_call(stmt)}")
    elif isinstance(stmt, Assume):
        lines.append(f"{pad}assume {expr_str(stmt.cond)};")
    elif isinstance(stmt, Return):
        values = ", ".join(expr_str(v) for v in stmt.values)
        lines.append(f"{pad}return {values};" if values else f"{pad}return;")
    elif isinstance(stmt, If):
        _if(stmt, depth, lines, pad)


def _if(stmt: If, depth: int, lines: List[str], prefix: str) -> None:
    pad = INDENT * depth
    lines.append(f"{prefix}if ({expr_str(stmt.cond)}) {{")
    for inner in stmt.then:
        _statement(inner, depth + 1, lines)
    if not stmt.orelse:
        lines.append(f"{pad}}}")
    elif len(stmt.orelse) == 1 and isinstance(stmt.orelse[0], If):
        _if(stmt.orelse[0], depth, lines, f"{pad}}} else ")
    else:
        lines.append(f"{pad}}} else {{")
        for inner in stmt.orelse:
            _statement(inner, depth + 1, lines)
        lines.append(f"{pad}}}")


def procedure_str(procedure: Procedure) -> str:
    header = f"proc {procedure.name}({_decls(procedure.params)})"
    if procedure.outputs:
        header += f" returns ({_decls(procedure.outputs)})"
    lines = [header + " {"]
    for stmt in procedure.body:
        _statement(stmt, 1, lines)
    lines.append("}")
    return "\n".join(lines)


def pretty_print(program: Program) -> str:
    return "\n\n".join(procedure_str(p) for p in program.procedures) + "\n"
