# -*- coding: utf-8 -*-
"""
Continuous logic over finite metric groups.

Terms are words in variables, the identity `e`, products and inverses. Formulas are built
from dyadic constants and atoms d(t1, t2) with the connectives half, sub (truncated
subtraction), add (truncated addition), min, max, absdiff and neg, and the sup/inf binders.
Surface syntax:

    F := const | d(T, T) | half(F) | neg(F) | sub(F, F) | add(F, F) | min(F, F)
       | max(F, F) | absdiff(F, F) | sup x. F | inf x. F
    T := e | x | T * T | T^-1 | (T)
    const := 0 | 1 | k/2^m
"""
import re
from dataclasses import dataclass
from fractions import Fraction

from funcy import cached_property

from .conf import setting
from .exceptions import EvaluationError, FormulaSyntaxError, InvalidArgument
from .groups import NUMERIC


__all__ = ('Identity', 'Var', 'Mul', 'Inv', 'Const', 'Dist', 'Unary', 'Binary', 'Quant',
           'parse', 'print_formula', 'free_variables', 'evaluate', 'is_sup_sentence',
           'check_condition', 'lipschitz_modulus')


### AST

@dataclass(frozen=True)
class Identity:
    pass

@dataclass(frozen=True)
class Var:
    name: str

@dataclass(frozen=True)
class Mul:
    left: object
    right: object

@dataclass(frozen=True)
class Inv:
    arg: object


@dataclass(frozen=True)
class Const:
    value: Fraction

@dataclass(frozen=True)
class Dist:
    left: object
    right: object

@dataclass(frozen=True)
class Unary:
    op: str
    arg: object

@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object

@dataclass(frozen=True)
class Quant:
    kind: str
    var: str
    body: object


UNARY = ('half', 'neg')
BINARY = ('sub', 'add', 'min', 'max', 'absdiff')
QUANTIFIERS = ('sup', 'inf')
RESERVED = {'e', 'd'} | set(UNARY) | set(BINARY) | set(QUANTIFIERS)


### Parsing

TOKEN_RE = re.compile(r'\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\S))')


class Token(object):
    __slots__ = ('kind', 'value', 'offset')

    def __init__(self, kind, value, offset):
        self.kind, self.value, self.offset = kind, value, offset


def tokenize(text):
    tokens = []
    pos = 0
    while True:
        match = TOKEN_RE.match(text, pos)
        if not match:
            break
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token('end', None, len(text)))
    return tokens


class Parser(object):
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self):
        return self.tokens[self.pos]

    def error(self, message, token=None):
        token = token or self.current
        raise FormulaSyntaxError(message, text=self.text, offset=token.offset)

    def eat(self, kind, value=None):
        token = self.current
        if token.kind != kind or value is not None and token.value != value:
            expected = repr(value) if value is not None else kind
            found = 'end of input' if token.kind == 'end' else repr(token.value)
            self.error('Expected %s, found %s' % (expected, found))
        self.pos += 1
        return token

    def check(self, kind, value=None):
        token = self.current
        return token.kind == kind and (value is None or token.value == value)

    def parse(self):
        formula = self.formula()
        self.eat('end')
        return formula

    def formula(self):
        token = self.current
        if token.kind == 'number':
            return self.constant()
        name = self.eat('name').value
        if name == 'd':
            self.eat('op', '(')
            left = self.term()
            self.eat('op', ',')
            right = self.term()
            self.eat('op', ')')
            return Dist(left, right)
        elif name in UNARY:
            self.eat('op', '(')
            arg = self.formula()
            self.eat('op', ')')
            return Unary(name, arg)
        elif name in BINARY:
            self.eat('op', '(')
            left = self.formula()
            self.eat('op', ',')
            right = self.formula()
            self.eat('op', ')')
            return Binary(name, left, right)
        elif name in QUANTIFIERS:
            var = self.variable()
            self.eat('op', '.')
            return Quant(name, var, self.formula())
        self.error('Expected a formula, found %r' % name, token)

    def constant(self):
        start = self.current
        numerator = int(self.eat('number').value)
        if not self.check('op', '/'):
            if numerator > 1:
                self.error('Constant %d is above 1' % numerator, start)
            return Const(Fraction(numerator))
        self.eat('op', '/')
        denominator_token = self.eat('number')
        denominator = int(denominator_token.value)
        if self.check('op', '^'):
            self.eat('op', '^')
            if denominator != 2:
                self.error('Only powers of 2 are allowed in denominators', denominator_token)
            denominator = 2 ** int(self.eat('number').value)
        if denominator < 1 or denominator & (denominator - 1):
            self.error('Constant %d/%d is not dyadic' % (numerator, denominator), start)
        value = Fraction(numerator, denominator)
        if value > 1:
            self.error('Constant %s is above 1' % value, start)
        return Const(value)

    def variable(self):
        token = self.eat('name')
        if token.value in RESERVED:
            self.error('%r is reserved and cannot be a variable' % token.value, token)
        return token.value

    def term(self):
        term = self.factor()
        while self.check('op', '*'):
            self.eat('op', '*')
            term = Mul(term, self.factor())
        return term

    def factor(self):
        term = self.primary()
        while self.check('op', '^'):
            self.eat('op', '^')
            self.eat('op', '-')
            token = self.eat('number')
            if token.value != '1':
                self.error('Only ^-1 is supported', token)
            term = Inv(term)
        return term

    def primary(self):
        if self.check('op', '('):
            self.eat('op', '(')
            term = self.term()
            self.eat('op', ')')
            return term
        if self.check('name', 'e'):
            self.eat('name')
            return Identity()
        return Var(self.variable())


def parse(text):
    return Parser(text).parse()


### Printing

def print_term(term):
    if isinstance(term, Identity):
        return 'e'
    elif isinstance(term, Var):
        return term.name
    elif isinstance(term, Inv):
        inner = print_term(term.arg)
        if isinstance(term.arg, Mul):
            inner = '(%s)' % inner
        return inner + '^-1'
    else:
        right = print_term(term.right)
        if isinstance(term.right, Mul):
            right = '(%s)' % right
        return '%s*%s' % (print_term(term.left), right)


def print_constant(value):
    if value.denominator == 1:
        return str(value.numerator)
    return '%d/2^%d' % (value.numerator, value.denominator.bit_length() - 1)


def print_formula(formula):
    if isinstance(formula, Const):
        return print_constant(formula.value)
    elif isinstance(formula, Dist):
        return 'd(%s, %s)' % (print_term(formula.left), print_term(formula.right))
    elif isinstance(formula, Unary):
        return '%s(%s)' % (formula.op, print_formula(formula.arg))
    elif isinstance(formula, Binary):
        return '%s(%s, %s)' % (formula.op, print_formula(formula.left),
                               print_formula(formula.right))
    else:
        return '%s %s. %s' % (formula.kind, formula.var, print_formula(formula.body))


### Structure

def term_variables(term):
    if isinstance(term, Var):
        return {term.name}
    elif isinstance(term, Inv):
        return term_variables(term.arg)
    elif isinstance(term, Mul):
        return term_variables(term.left) | term_variables(term.right)
    return set()


def free_variables(formula):
    if isinstance(formula, Dist):
        return term_variables(formula.left) | term_variables(formula.right)
    elif isinstance(formula, Unary):
        return free_variables(formula.arg)
    elif isinstance(formula, Binary):
        return free_variables(formula.left) | free_variables(formula.right)
    elif isinstance(formula, Quant):
        return free_variables(formula.body) - {formula.var}
    return set()


def is_quantifier_free(formula):
    if isinstance(formula, Quant):
        return False
    elif isinstance(formula, Unary):
        return is_quantifier_free(formula.arg)
    elif isinstance(formula, Binary):
        return is_quantifier_free(formula.left) and is_quantifier_free(formula.right)
    return True


def is_sup_sentence(formula):
    """
    True for sentences sup x1 ... sup xn phi with phi quantifier-free
    """
    _require_sentence(formula)
    while isinstance(formula, Quant) and formula.kind == 'sup':
        formula = formula.body
    return is_quantifier_free(formula)


def _require_sentence(formula):
    free = free_variables(formula)
    if free:
        raise InvalidArgument('Expected a sentence, free variables: %s' % ', '.join(sorted(free)))


def count_occurrences(term, var):
    if isinstance(term, Var):
        return int(term.name == var)
    elif isinstance(term, Inv):
        return count_occurrences(term.arg, var)
    elif isinstance(term, Mul):
        return count_occurrences(term.left, var) + count_occurrences(term.right, var)
    return 0


def lipschitz_modulus(formula, var):
    """
    Structural bound C with |F[x:=g] - F[x:=h]| <= C d(g, h)
    """
    if isinstance(formula, Const):
        return Fraction(0)
    elif isinstance(formula, Dist):
        return Fraction(count_occurrences(formula.left, var)
                        + count_occurrences(formula.right, var))
    elif isinstance(formula, Unary):
        modulus = lipschitz_modulus(formula.arg, var)
        return modulus / 2 if formula.op == 'half' else modulus
    elif isinstance(formula, Binary):
        left = lipschitz_modulus(formula.left, var)
        right = lipschitz_modulus(formula.right, var)
        return max(left, right) if formula.op in ('min', 'max') else left + right
    else:
        return Fraction(0) if formula.var == var else lipschitz_modulus(formula.body, var)


### Evaluation

CONNECTIVES = {
    'half': lambda x: x / 2,
    'neg': lambda x: 1 - x,
    'sub': lambda x, y: max(x - y, 0),
    'add': lambda x, y: min(x + y, 1),
    'min': min,
    'max': max,
    'absdiff': lambda x, y: abs(x - y),
}


class Evaluator(object):
    def __init__(self, group):
        self.group = group

    @cached_property
    def carrier(self):
        return self.group.require_elements()

    def term(self, term, assignment):
        group = self.group
        if isinstance(term, Identity):
            return group.identity
        elif isinstance(term, Var):
            try:
                return assignment[term.name]
            except KeyError:
                raise EvaluationError('Unbound variable %r' % term.name)
        elif isinstance(term, Inv):
            return group.inv(self.term(term.arg, assignment))
        else:
            return group.mul(self.term(term.left, assignment), self.term(term.right, assignment))

    def formula(self, formula, assignment):
        if isinstance(formula, Const):
            return formula.value
        elif isinstance(formula, Dist):
            return self.group.distance(self.term(formula.left, assignment),
                                       self.term(formula.right, assignment))
        elif isinstance(formula, Unary):
            return CONNECTIVES[formula.op](self.formula(formula.arg, assignment))
        elif isinstance(formula, Binary):
            return CONNECTIVES[formula.op](self.formula(formula.left, assignment),
                                           self.formula(formula.right, assignment))
        else:
            reduce = max if formula.kind == 'sup' else min
            inner = dict(assignment)

            def values():
                for g in self.carrier:
                    inner[formula.var] = g
                    yield self.formula(formula.body, inner)
            return reduce(values())


def evaluate(formula, group, assignment=None):
    """
    Value of formula in the group with sup/inf ranging over the whole carrier.
    Assignment maps variable names to elements of the group.
    """
    assignment = dict(assignment or {})
    for name, value in assignment.items():
        if value not in group:
            raise EvaluationError('%r assigned to %s is not in %s' % (value, name, group.spec))
    missing = free_variables(formula) - set(assignment)
    if missing:
        raise EvaluationError('Unbound variable(s): %s' % ', '.join(sorted(missing)))
    return Evaluator(group).formula(formula, assignment)


def check_condition(formula, group, tol=None):
    """
    Whether the condition formula = 0 holds in the group, up to tol
    """
    _require_sentence(formula)
    if tol is None:
        tol = setting('SOFICLAB_UNITARY_TOL') if group.scalar_mode == NUMERIC else 0
    return evaluate(formula, group) <= tol
