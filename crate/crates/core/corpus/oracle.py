"""Independent oracle for the derived corpus expectations.

Cohomology of exterior-algebra models by dense sympy rank over all
monomials, and ellipticity of small pure ideals by sympy Groebner bases.
Run: python3 oracle.py
"""
import itertools

import sympy


def sort_sign(word):
    """Sorts a word of odd generators, returning (sorted tuple, sign) or (None, 0)."""
    if len(set(word)) < len(word):
        return None, 0
    w, s = list(word), 1
    for i in range(len(w)):
        for j in range(len(w) - 1 - i):
            if w[j] > w[j + 1]:
                w[j], w[j + 1] = w[j + 1], w[j]
                s = -s
    return tuple(w), s


def ext_betti(degs, d):
    """degs: odd degrees; d: generator -> [(coefficient, sorted tuple of generators)]."""
    n = len(degs)
    mons = [c for k in range(n + 1) for c in itertools.combinations(range(n), k)]
    deg = lambda m: sum(degs[i] for i in m)

    def dmon(m):
        out = {}
        for pos, g in enumerate(m):
            sign = (-1) ** sum(degs[h] for h in m[:pos])
            for c, t in d.get(g, []):
                r, s = sort_sign(m[:pos] + t + m[pos + 1:])
                if r is not None:
                    out[r] = out.get(r, 0) + sign * c * s
        return {k: v for k, v in out.items() if v}

    bydeg = {}
    for m in mons:
        bydeg.setdefault(deg(m), []).append(m)
    rank = {}
    for D, ms in bydeg.items():
        tgt = bydeg.get(D + 1, [])
        if not tgt:
            rank[D] = 0
            continue
        idx = {m: i for i, m in enumerate(tgt)}
        M = sympy.zeros(len(tgt), len(ms))
        for j, m in enumerate(ms):
            for k, v in dmon(m).items():
                M[idx[k], j] = v
        rank[D] = M.rank()
    betti = {D: len(ms) - rank[D] - rank.get(D - 1, 0) for D, ms in bydeg.items()}
    return {k: v for k, v in sorted(betti.items()) if v}


def odd_free(n):
    degs, d = [3] * n, {}
    for i, j in itertools.combinations(range(n), 2):
        degs.append(5)
        d[len(degs) - 1] = [(1, (i, j))]
    return degs, d


def tower(n):
    """x1 x2 y1 z1 y2 ... yn with d y_k = x1 x2 y1 z1 ... y_{k-1} z_{k-1}."""
    degs, d = [3, 3, 5], {2: [(1, (0, 1))]}
    prefix = [0, 1, 2]
    for _ in range(2, n + 1):
        degs.append(3)
        prefix.append(len(degs) - 1)
        degs.append(sum(degs[i] for i in prefix) - 1)
        d[len(degs) - 1] = [(1, tuple(prefix))]
        prefix.append(len(degs) - 1)
    return degs, d


def report(name, degs, d):
    b = ext_betti(degs, d)
    print(f"{name}: total = {sum(b.values())}, betti = {b}")


report("M2", *odd_free(2))
report("M3", *odd_free(3))
report("M4", *odd_free(4))
for n in (1, 2, 3):
    report(f"ex3.5-n{n}", *tower(n))
# u1 u2 u3 v1 in degree 1, d v1 = u1 u3 - u1 u2 + u2 u3
report("nonmaximal", [1, 1, 1, 1], {3: [(1, (0, 2)), (-1, (0, 1)), (1, (1, 2))]})
# u1..u4 : 3, u5 : 7, v1 : 9, v2 : 11
report("ex3.2", [3, 3, 3, 3, 7, 9, 11], {5: [(1, (0, 4))], 6: [(1, (0, 1, 2, 3))]})

# Lemma extension of Λ(w, v1, v2; d v1 = w^2) over a1 with D v2 = a1^2.
w, a1 = sympy.symbols("w a1")
g = sympy.groebner([w**2, a1**2], w, a1, order="grevlex")
print("lemma total elliptic:", g.is_zero_dimensional)
# The same ideal with the perturbation on v1 instead: (w^2 + a1^2) alone.
print("lemma v1-only elliptic:", sympy.groebner([w**2 + a1**2], w, a1, order="grevlex").is_zero_dimensional)
