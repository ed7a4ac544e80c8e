"""Random generators shared by the tests."""


def random_unimodular(rng, n=3, steps=12, spread=3):
    """Random GL(n, Z) element as a product of elementary row operations."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([c for c in range(-spread, spread + 1) if c])
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5:
        m[0] = [-a for a in m[0]]
    return m


def random_primitive(rng, n, lo=-50, hi=50):
    from math import gcd

    while True:
        v = [rng.randint(lo, hi) for _ in range(n)]
        g = 0
        for x in v:
            g = gcd(g, x)
        if g:
            return tuple(x // g for x in v)


ACCEPTANCE_LINES = []


def record(number, description, check):
    """Run ``check`` and log one PASS/FAIL line for an acceptance criterion."""
    try:
        check()
    except Exception as exc:
        line = f"[FAIL] criterion {number:>2}: {description} ({type(exc).__name__}: {exc})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    line = f"[PASS] criterion {number:>2}: {description}"
    ACCEPTANCE_LINES.append(line)
    print(line)
