"""The Group -> Algebra -> Complex prelude and the rewriting engine.

The prelude ships as source in the surface language and is loaded through
the ordinary parser, so the hierarchy and the Complex multiplication body
are genuinely interpreted. Two pieces are native kernels: distributivity
for ``Algebra.infix*`` (one layer per call, returning the product terms
unfolded so rewrite chains stay observable) and the concrete complex /
monomial arithmetic.

``simplify`` runs bottom-up rewriting to a fixed point: distribute
products over sums, fold all-concrete applications, promote integers that
meet complex values. Factor and summand order are never changed.
"""

from __future__ import annotations

from typing import Callable, Optional

from . import ast
from .errors import RewriteLimitExceeded
from .evaluator import (Interpreter, as_repr, free_idents, type_name_of,
                        _join_types)
from .monomials import MonomialRegister, register_conjugate, register_mul
from .parser import parse_program
from .values import (FAIL, ComplexV, FreeVarV, FunctionalObject, IntegerV,
                     RegisterV, ThunkV, Value)

DEFAULT_REWRITE_LIMIT = 10_000

PRELUDE_SOURCE = """\
Group = Object;
  function infix +(A, B : Group) : Group;
  function infix -(A, B : Group) : Group;
  function prefix -(A : Group) : Group;
end; { Group }

Algebra = Object(Group);
  function infix *(A, B : Algebra) : Algebra;
end; { Algebra }

function Algebra.infix* (A, B : Algebra) : Algebra;
par
  C, D, E, F : Algebra;
begin
  if A = C + D then { i.e. A is record (+, C, D) }
    Return := C * B + D * B
  else
    if B = E + F then
      Return := A * E + A * F
    else Return := fail
end;

Complex = Object(Algebra);
  Re, Im : integer;
end; { Complex }

function Complex.infix* (A, B : Complex) : Complex;
begin
  Return := Algebra.(A * B); { inherited method for algebraic expressions }
  if Return = fail { no: directly perform the multiplication }
  then Return := (A.Re * B.Re - A.Im * B.Im, A.Re * B.Im + A.Im * B.Re)
end;

Monomial = Object(Algebra);
end; { Monomial }
"""


# --- native kernels ---

def promote(n) -> ComplexV:
    """Integer to complex conversion: n becomes (Re: n, Im: 0)."""
    if isinstance(n, IntegerV):
        n = n.n
    return ComplexV(n, 0)


def complex_mul(a: ComplexV, b: ComplexV) -> ComplexV:
    return ComplexV(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)


def complex_add(a: ComplexV, b: ComplexV) -> ComplexV:
    return ComplexV(a.re + b.re, a.im + b.im)


def complex_neg(a: ComplexV) -> ComplexV:
    return ComplexV(-a.re, -a.im)


def _is_sum_thunk(v: Value) -> Optional[ast.Infix]:
    if isinstance(v, ThunkV) and isinstance(v.fo.body, ast.Infix) \
            and v.fo.body.op == "+":
        return v.fo.body
    return None


def _product_thunk(parts: list[tuple[ast.Expr, dict]], shape) -> ThunkV:
    captures: dict[str, Value] = {}
    for _, caps in parts:
        captures.update(caps)
    body = shape(*(expr for expr, _ in parts))
    return ThunkV(FunctionalObject(body, tuple(sorted(captures.items())),
                                   "Algebra"))


def distribute(a: Value, b: Value) -> Value:
    """One layer of distributivity: (C + D) * b -> C*b + D*b, or
    a * (E + F) -> a*E + a*F. Neither operand sum-rooted -> fail.
    Factor order is preserved (noncommutative-safe)."""
    a_sum = _is_sum_thunk(a)
    if a_sum is not None:
        b_expr, b_caps = as_repr(b)
        captures = dict(a.fo.capture_map())
        captures.update(b_caps)
        body = ast.Infix("+", ast.Infix("*", a_sum.lhs, b_expr),
                         ast.Infix("*", a_sum.rhs, b_expr))
        return ThunkV(FunctionalObject(body, tuple(sorted(captures.items())),
                                       _result_type(a, b)))
    b_sum = _is_sum_thunk(b)
    if b_sum is not None:
        a_expr, a_caps = as_repr(a)
        captures = dict(b.fo.capture_map())
        captures.update(a_caps)
        body = ast.Infix("+", ast.Infix("*", a_expr, b_sum.lhs),
                         ast.Infix("*", a_expr, b_sum.rhs))
        return ThunkV(FunctionalObject(body, tuple(sorted(captures.items())),
                                       _result_type(a, b)))
    return FAIL


def _result_type(a: Value, b: Value) -> str:
    return _join_types([type_name_of(a), type_name_of(b)])


def complex_method_mul(a: Value, b: Value) -> Value:
    """The Complex multiplication protocol: inherited distributivity first,
    then concrete multiplication, otherwise a residual product thunk."""
    distributed = distribute(a, b)
    if distributed is not FAIL:
        return distributed
    if isinstance(a, (IntegerV, ComplexV)) and isinstance(b, (IntegerV, ComplexV)):
        return complex_mul(promote(a) if isinstance(a, IntegerV) else a,
                           promote(b) if isinstance(b, IntegerV) else b)
    if isinstance(a, (FreeVarV, ThunkV)) or isinstance(b, (FreeVarV, ThunkV)):
        a_expr, a_caps = as_repr(a)
        b_expr, b_caps = as_repr(b)
        captures = {**a_caps, **b_caps}
        return ThunkV(FunctionalObject(
            ast.Infix("*", a_expr, b_expr),
            tuple(sorted(captures.items())), _result_type(a, b)))
    return FAIL


# --- the rewriter ---

def _fold(op: str, fixity: str, args: list[Value]) -> Optional[Value]:
    """Concrete evaluation of one application, or None if no kernel."""
    if any(a is FAIL for a in args):
        return FAIL
    if all(isinstance(a, IntegerV) for a in args):
        if fixity == "prefix" and op == "-":
            return IntegerV(-args[0].n)
        a, b = args[0].n, args[1].n if len(args) > 1 else None
        if op == "+":
            return IntegerV(a + b)
        if op == "-":
            return IntegerV(a - b)
        if op == "*":
            return IntegerV(a * b)
        return None
    if all(isinstance(a, (IntegerV, ComplexV)) for a in args):
        cx = [promote(a) if isinstance(a, IntegerV) else a for a in args]
        if fixity == "prefix" and op == "-":
            return complex_neg(cx[0])
        if op == "+":
            return complex_add(cx[0], cx[1])
        if op == "-":
            return complex_add(cx[0], complex_neg(cx[1]))
        if op == "*":
            return complex_mul(cx[0], cx[1])
        return None
    if all(isinstance(a, RegisterV) for a in args) and op == "*" \
            and fixity == "infix":
        return RegisterV(register_mul(args[0].register, args[1].register))
    return None


def _concrete_leaf(e: ast.Expr) -> Optional[Value]:
    if isinstance(e, ast.ValueLeaf) and not isinstance(e.value,
                                                       (ThunkV, FreeVarV)):
        return e.value
    return None


def _rewrite_once(e: ast.Expr) -> Optional[ast.Expr]:
    """Apply one rewrite at the first redex in post-order, or None."""
    if isinstance(e, ast.Infix):
        lhs = _rewrite_once(e.lhs)
        if lhs is not None:
            return ast.Infix(e.op, lhs, e.rhs)
        rhs = _rewrite_once(e.rhs)
        if rhs is not None:
            return ast.Infix(e.op, e.lhs, rhs)
        left = _concrete_leaf(e.lhs)
        right = _concrete_leaf(e.rhs)
        if left is not None and right is not None:
            folded = _fold(e.op, "infix", [left, right])
            if folded is not None:
                return ast.ValueLeaf(folded)
        if e.op == "*":
            if isinstance(e.lhs, ast.Infix) and e.lhs.op == "+":
                return ast.Infix("+",
                                 ast.Infix("*", e.lhs.lhs, e.rhs),
                                 ast.Infix("*", e.lhs.rhs, e.rhs))
            if isinstance(e.rhs, ast.Infix) and e.rhs.op == "+":
                return ast.Infix("+",
                                 ast.Infix("*", e.lhs, e.rhs.lhs),
                                 ast.Infix("*", e.lhs, e.rhs.rhs))
        return None
    if isinstance(e, ast.Prefix):
        inner = _rewrite_once(e.operand)
        if inner is not None:
            return ast.Prefix(e.op, inner)
        operand = _concrete_leaf(e.operand)
        if operand is not None:
            folded = _fold(e.op, "prefix", [operand])
            if folded is not None:
                return ast.ValueLeaf(folded)
        return None
    return None


def _inline(e: ast.Expr, captures: dict[str, Value]) -> ast.Expr:
    """Splice capture-bound concrete values and nested thunks into the
    tree so the rewriter sees them."""
    if isinstance(e, ast.Ident):
        bound = captures.get(e.name)
        if isinstance(bound, ThunkV):
            return _inline(bound.fo.body, bound.fo.capture_map())
        if bound is not None and not isinstance(bound, FreeVarV):
            return ast.ValueLeaf(bound)
        return e
    if isinstance(e, ast.ValueLeaf):
        if isinstance(e.value, ThunkV):
            return _inline(e.value.fo.body, e.value.fo.capture_map())
        return e
    if isinstance(e, ast.Infix):
        return ast.Infix(e.op, _inline(e.lhs, captures),
                         _inline(e.rhs, captures))
    if isinstance(e, ast.Prefix):
        return ast.Prefix(e.op, _inline(e.operand, captures))
    return e


def simplify(v: Value, max_steps: int = DEFAULT_REWRITE_LIMIT,
             trace: Optional[Callable[[str], None]] = None) -> Value:
    """Fixed-point normalization of a value. Values other than thunks are
    already normal forms."""
    if not isinstance(v, ThunkV):
        return v
    from .pretty import render_expr
    captures = v.fo.capture_map()
    body = _inline(v.fo.body, captures)
    steps = 0
    while True:
        rewritten = _rewrite_once(body)
        if rewritten is None:
            break
        body = rewritten
        steps += 1
        if trace is not None:
            trace(render_expr(body, spaced=True))
        if steps > max_steps:
            raise RewriteLimitExceeded(f"more than {max_steps} rewrite steps")
    leaf = _concrete_leaf(body)
    if leaf is not None:
        return leaf
    remaining = free_idents(body)
    kept = {name: captures.get(name, FreeVarV(name)) for name in remaining}
    return ThunkV(FunctionalObject(body, tuple(sorted(kept.items())),
                                   v.fo.result_type))


# --- prelude installation ---

def _native_distribute(args, interp):
    return distribute(args[0], args[1])


def _concrete_complex(args) -> Optional[list[ComplexV]]:
    if all(isinstance(a, (IntegerV, ComplexV)) for a in args):
        return [promote(a) if isinstance(a, IntegerV) else a for a in args]
    return None


def _native_complex_add(args, interp):
    cx = _concrete_complex(args)
    if cx is not None:
        return complex_add(cx[0], cx[1])
    return interp.make_thunk("+", "infix", args)


def _native_complex_sub(args, interp):
    cx = _concrete_complex(args)
    if cx is not None:
        return complex_add(cx[0], complex_neg(cx[1]))
    return interp.make_thunk("-", "infix", args)


def _native_complex_neg(args, interp):
    cx = _concrete_complex(args)
    if cx is not None:
        return complex_neg(cx[0])
    return interp.make_thunk("-", "prefix", args)


def _native_register_mul(args, interp):
    a, b = args
    if isinstance(a, RegisterV) and isinstance(b, RegisterV):
        return RegisterV(register_mul(a.register, b.register))
    return distribute(a, b)


def _builtin_mono(args, interp, env):
    components = [a.n if isinstance(a, IntegerV) else a for a in args]
    return RegisterV(MonomialRegister(*components))


def _builtin_complex(args, interp, env):
    ints = [a.n if isinstance(a, IntegerV) else a for a in args]
    if len(ints) == 1:
        return promote(ints[0])
    return ComplexV(ints[0], ints[1])


def _builtin_conjugate(args, interp, env):
    (arg,) = args
    if isinstance(arg, RegisterV):
        return RegisterV(register_conjugate(arg.register))
    raise TypeError("conjugate expects a monomial register")


def _builtin_eval(args, interp, env):
    return interp.force(args[0], env)


def _builtin_simplify(args, interp, env):
    return simplify(args[0])


def install_prelude(interp: Interpreter):
    """Load the prelude source, then attach the native kernels and the
    constant i = Complex(0, 1)."""
    interp.run_program(parse_program(PRELUDE_SOURCE))
    interp.registry.set_native("Algebra", "*", "infix", _native_distribute, 2)
    interp.registry.set_native("Complex", "+", "infix", _native_complex_add, 2)
    interp.registry.set_native("Complex", "-", "infix", _native_complex_sub, 2)
    interp.registry.set_native("Complex", "-", "prefix",
                               _native_complex_neg, 1)
    interp.registry.set_native("Monomial", "*", "infix",
                               _native_register_mul, 2)
    interp.globals.define("i", ComplexV(0, 1), "Complex")


def install_builtins(interp: Interpreter):
    interp.builtins.update({
        "mono": _builtin_mono,
        "Complex": _builtin_complex,
        "conjugate": _builtin_conjugate,
        "EVAL": _builtin_eval,
        "simplify": _builtin_simplify,
    })


def make_interpreter(prelude: bool = True) -> Interpreter:
    interp = Interpreter()
    install_builtins(interp)
    if prelude:
        install_prelude(interp)
    return interp
