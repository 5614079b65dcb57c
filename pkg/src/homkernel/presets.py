"""Named presets and the tiny expression language used by the CLI.

Expression grammar (deliberately small, no user-defined functions):

    expr    := arithmetic over +, -, *, /, ** and parentheses
    atoms   := numeric literals | variables | constants pi, e
    calls   := cos(expr) | sin(expr) | exp(expr) | log(expr) | sqrt(expr) | abs(expr)

Variables available for generating functions: ``eta`` (radial ratio) and
``u`` (cylinder difference) are aliases for the first slot, ``psi`` is the
angle slot.  Hardy-Littlewood angular factors use the single variable
``t`` bound to cos(delta theta).
"""

from __future__ import annotations

import ast
import math
from typing import Callable

import numpy as np

from .kernels import GeneratingFunction

_FUNCS = {
    "cos": np.cos,
    "sin": np.sin,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "abs": np.abs,
}
_CONSTS = {"pi": math.pi, "e": math.e}

_ALLOWED_NODES = (
    ast.Expression,
    ast.BinOp, ast.UnaryOp,
    ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd,
    ast.Call, ast.Name, ast.Load, ast.Constant,
)


class ExpressionError(ValueError):
    """Expression outside the documented grammar."""


def compile_expression(text: str, variables: tuple[str, ...]) -> Callable:
    """Compile an expression string to a vectorized callable of ``variables``."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc}") from None
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise ExpressionError(
                f"{type(node).__name__} is outside the expression grammar"
            )
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCS:
                raise ExpressionError("only cos/sin/exp/log/sqrt/abs calls are allowed")
            if len(node.args) != 1 or node.keywords:
                raise ExpressionError("functions take exactly one positional argument")
        if isinstance(node, ast.Name):
            if node.id not in _FUNCS and node.id not in _CONSTS and node.id not in variables:
                raise ExpressionError(f"unknown name {node.id!r}")
        if isinstance(node, ast.Constant) and not isinstance(node.value, (int, float)):
            raise ExpressionError("only numeric literals are allowed")
    code = compile(tree, "<expression>", "eval")
    base_env = {"__builtins__": {}} | _FUNCS | _CONSTS

    def fn(*args):
        env = dict(base_env)
        env.update(zip(variables, (np.asarray(a, dtype=float) for a in args)))
        out = eval(code, env)  # AST validated above
        return np.asarray(out, dtype=float)

    return fn


# ---------------------------------------------------------------------------
# generating-function presets


def generating_preset(name: str) -> GeneratingFunction:
    """Resolve a named preset; anything else is parsed as an expression.

    Built-ins: ``one``, ``angular:a=cos``, ``gl2:antisym``, ``gl2:abs``.
    """
    if name == "one":
        return GeneratingFunction.from_callable(
            lambda first, psi: np.ones_like(np.asarray(first, dtype=float)), label="one"
        )
    if name == "angular:a=cos":
        def fn(first, psi):
            first = np.asarray(first, dtype=float)
            return np.cos(psi) * first / (1.0 + first**2)

        return GeneratingFunction.from_callable(fn, label=name)
    if name == "gl2:antisym":
        return GeneratingFunction.gl2(1.0, 1.0)
    if name == "gl2:abs":
        return GeneratingFunction.gl2(1.0, -1.0)
    expr = compile_expression(name, ("eta", "u", "psi"))

    def fn_expr(first, psi):
        return expr(first, first, psi)

    return GeneratingFunction.from_callable(fn_expr, label=name)


# ---------------------------------------------------------------------------
# Hardy-Littlewood kernel presets (constructed lazily to avoid import cycles)


def hl_kernel_1d(name: str):
    from .hardy_littlewood import HomogeneousKernel1D

    if name in ("hlp:1/(x+y)", "hlp:cauchy"):
        return HomogeneousKernel1D(
            fn=lambda x, y: 1.0 / (np.asarray(x, float) + np.asarray(y, float)),
            label="1/(x+y)",
        )
    if name in ("hlp:(1/y)1(x<y)", "hlp:step"):
        return HomogeneousKernel1D(
            fn=lambda x, y: np.where(
                np.asarray(x, float) < np.asarray(y, float),
                1.0 / np.asarray(y, float),
                0.0,
            ),
            breakpoints=lambda x: (x,),
            label="(1/y)1(x<y)",
        )
    raise KeyError(f"unknown 1d kernel preset {name!r}")


def hl_kernel_2d(name: str):
    from .hardy_littlewood import HomogeneousKernel2D

    if name.startswith("angular:a="):
        a_text = name.split("=", 1)[1]
        if a_text == "cos":
            a_text = "t"
        a_fn = compile_expression(a_text, ("t",))

        def fn(x1, x2, y1, y2):
            nx = np.hypot(x1, x2)
            ny = np.hypot(y1, y2)
            cosang = (np.asarray(x1) * y1 + np.asarray(x2) * y2) / (nx * ny)
            return a_fn(np.clip(cosang, -1.0, 1.0)) / (nx**2 + ny**2)

        return HomogeneousKernel2D(fn=fn, label=name)
    if name.startswith("riesz:alpha="):
        alpha = float(name.split("=", 1)[1])
        if not 0.0 < alpha < 2.0:
            raise ValueError("riesz exponent must lie in (0, 2)")

        def fn_r(x1, x2, y1, y2):
            nx = np.hypot(x1, x2)
            dist = np.hypot(np.asarray(x1) - y1, np.asarray(x2) - y2)
            return 1.0 / (nx**alpha * dist ** (2.0 - alpha))

        return HomogeneousKernel2D(fn=fn_r, singular_at_x=True, label=name)
    raise KeyError(f"unknown 2d kernel preset {name!r}")
