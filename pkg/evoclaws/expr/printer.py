"""Text output that parses back to the same expression"""

import sympy
from sympy.core.function import AppliedUndef
from sympy.printing.precedence import precedence
from sympy.printing.str import StrPrinter


class JetPrinter(StrPrinter):
    """sympy string printer speaking the evoclaws input grammar"""

    def _print_Pow(self, expr, rational=False):
        base, exponent = expr.as_base_exp()
        level = precedence(expr)
        if exponent is sympy.S.NegativeOne:
            return '1/%s' % self.parenthesize(base, level, strict=False)
        text = self.parenthesize(base, level, strict=False)
        if exponent.is_Integer and exponent >= 0:
            return '%s^%s' % (text, exponent)
        return '%s^(%s)' % (text, self._print(exponent))

    def _print_Derivative(self, expr):
        text = self._print(expr.expr)
        for var, count in expr.variable_count:
            if count == 1:
                text = 'diff(%s,%s)' % (text, self._print(var))
            else:
                text = 'diff(%s,%s,%s)' % (text, self._print(var), count)
        return text

    def _print_Subs(self, expr):
        # A'(w): derivative of a one-argument function at a compound argument
        derivative, variables, point = expr.args
        if (len(variables) == 1 and isinstance(derivative, sympy.Derivative)
                and isinstance(derivative.expr, AppliedUndef)
                and derivative.expr.args == tuple(variables)
                and len(derivative.variable_count) == 1):
            _, count = derivative.variable_count[0]
            return '%s%s(%s)' % (derivative.expr.func.__name__, "'" * int(count),
                                 self._print(point[0]))
        return super()._print_Subs(expr)

    def _print_Exp1(self, expr):
        return 'exp(1)'

    def _print_log(self, expr):
        return 'ln(%s)' % self._print(expr.args[0])


def to_text(expr) -> str:
    return JetPrinter().doprint(sympy.sympify(expr))
