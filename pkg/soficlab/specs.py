# -*- coding: utf-8 -*-
"""
One-line group specs:

    cyclic:p=13:metric=lee
    symmetric:n=4:metric=hamming
    nested:p=3:s=2
    unitary:p=13:exponents=1,2,5
    shift(<spec>,eps=1/2)
    regular(<spec>)
"""
from funcy import memoize

from .constructions import make_nested_cyclic, shift_metric
from .exceptions import SpecSyntaxError
from .groups import make_cyclic_lee, make_symmetric_hamming, make_cyclic_unitary, make_regular


__all__ = ('parse_group_spec',)


FLAT_KINDS = {
    # kind: (required params, optional params with fixed values)
    'cyclic': (('p',), {'metric': 'lee'}),
    'symmetric': (('n',), {'metric': 'hamming'}),
    'nested': (('p', 's'), {}),
    'unitary': (('p', 'exponents'), {}),
}


@memoize
def parse_group_spec(text):
    text = text.strip()
    if text.startswith('shift(') and text.endswith(')'):
        inner, sep, eps = text[len('shift('):-1].rpartition(',eps=')
        if not sep:
            raise SpecSyntaxError('Expected shift(<spec>,eps=<rational>), got %r' % text)
        return shift_metric(parse_group_spec(inner), eps)
    if text.startswith('regular(') and text.endswith(')'):
        return make_regular(parse_group_spec(text[len('regular('):-1]))
    return _parse_flat(text)


def _parse_flat(text):
    kind, *parts = text.split(':')
    if kind not in FLAT_KINDS:
        raise SpecSyntaxError('Unknown group kind %r in %r' % (kind, text))
    required, fixed = FLAT_KINDS[kind]

    params = {}
    for part in parts:
        name, sep, value = part.partition('=')
        if not sep or name in params:
            raise SpecSyntaxError('Malformed parameter %r in %r' % (part, text))
        params[name] = value

    unknown = set(params) - set(required) - set(fixed)
    missing = set(required) - set(params)
    if unknown or missing:
        raise SpecSyntaxError('Bad parameters in %r: missing %s, unknown %s'
                              % (text, sorted(missing), sorted(unknown)))
    for name, value in fixed.items():
        if params.get(name, value) != value:
            raise SpecSyntaxError('Only %s=%s is supported for %s groups' % (name, value, kind))

    try:
        ints = {name: int(params[name]) for name in required if name != 'exponents'}
        if kind == 'unitary':
            exponents = [int(j) for j in params['exponents'].split(',')]
    except ValueError:
        raise SpecSyntaxError('Expected integer parameters in %r' % text)

    if kind == 'unitary':
        return make_cyclic_unitary(ints['p'], exponents)
    elif kind == 'cyclic':
        return make_cyclic_lee(ints['p'])
    elif kind == 'symmetric':
        return make_symmetric_hamming(ints['n'])
    else:
        return make_nested_cyclic(ints['p'], ints['s'])
