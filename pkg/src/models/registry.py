from src.models.specs import Classical, KPowerPlusSingleton, Polynomial, PowerAP, UnionAP

# keyword -> how the argument list is shaped and which model it builds
MODEL_REGISTRY = {
    'classical': {
        'builder': lambda: Classical(),
        'min_args': 0,
        'max_args': 0,
        'grouped': False,
        'description': 'all positive integers',
    },
    'powers': {
        'builder': lambda k: PowerAP(1, 1, k),
        'min_args': 1,
        'max_args': 1,
        'grouped': False,
        'description': 'k-th powers n^k, n >= 1',
    },
    'ap': {
        'builder': lambda a, q, k: PowerAP(a, q, k),
        'min_args': 3,
        'max_args': 3,
        'grouped': False,
        'description': 'k-th powers of the progression q n + a, n >= 0',
    },
    'poly': {
        'builder': lambda *coeffs: Polynomial(tuple(coeffs)),
        'min_args': 2,
        'max_args': 21,
        'grouped': False,
        'description': 'values f(n), n >= 0, of a0 n^k + ... + ak',
    },
    'unionap': {
        'builder': lambda *pairs: UnionAP(tuple(pairs)),
        'min_args': 1,
        'max_args': None,
        'grouped': True,
        'description': 'union of progressions a + q N, groups separated by ;',
    },
    'kpow1': {
        'builder': lambda k, a: KPowerPlusSingleton(k, a),
        'min_args': 2,
        'max_args': 2,
        'grouped': False,
        'description': 'multiples of k together with the part a',
    },
}
