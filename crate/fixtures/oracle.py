#!/usr/bin/env python3
"""Brute-force facts about fx_weak2 and fx_t2dual over F_2.

Writes oracle_facts.json next to this script. Everything is computed from
the definitions by enumeration; nothing here calls the Rust code.

    python3 fixtures/oracle.py
"""

import itertools
import json
import os

P = 2


def mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) % P for j in range(len(b[0]))] for i in range(len(a))]


def rank(m):
    m = [row[:] for row in m]
    r = 0
    for c in range(len(m[0]) if m else 0):
        piv = next((i for i in range(r, len(m)) if m[i][c] % P), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], P - 2, P)
        m[r] = [x * inv % P for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % P for x, y in zip(m[i], m[r])]
        r += 1
    return r


# A = F_2 x F_2 on idempotents e0, e1; C = grouplike coalgebra on g0, g1.
D = 2


def mul(i, j):
    return {i: 1} if i == j else {}


ONE = {0: 1, 1: 1}


def psi_apply(psi, c, a):
    """psi(c (x) a) as {(a', c'): coef}; column index 2c + a, row 2a' + c'."""
    col = 2 * c + a
    return {(r // 2, r % 2): psi[r][col] for r in range(4) if psi[r][col]}


def lin(psi, c, avec):
    out = {}
    for a, x in avec.items():
        for k, y in psi_apply(psi, c, a).items():
            out[k] = (out.get(k, 0) + x * y) % P
    return {k: v for k, v in out.items() if v}


def is_weak_entwining(psi, strict=False):
    for c in range(2):
        for a in range(D):
            for b in range(D):
                # psi(c (x) ab) = a_psi b_Psi (x) c^{psi Psi}
                lhs = lin(psi, c, mul(a, b))
                rhs = {}
                for (a1, c1), x in psi_apply(psi, c, a).items():
                    for (b1, c2), y in psi_apply(psi, c1, b).items():
                        for k, z in mul(a1, b1).items():
                            rhs[(k, c2)] = (rhs.get((k, c2), 0) + x * y * z) % P
                if lhs != {k: v for k, v in rhs.items() if v}:
                    return False
            # (A (x) Delta) psi = (psi (x) C)(C (x) psi)(Delta (x) A); Delta g = g (x) g.
            lhs = {(k, cc, cc): v for (k, cc), v in psi_apply(psi, c, a).items()}
            rhs = {}
            for (a1, c1), x in psi_apply(psi, c, a).items():
                for (a2, c2), y in psi_apply(psi, c, a1).items():
                    rhs[(a2, c2, c1)] = (rhs.get((a2, c2, c1), 0) + x * y) % P
            if lhs != {k: v for k, v in rhs.items() if v}:
                return False
    for c in range(2):
        unit_img = lin(psi, c, ONE)
        if strict:
            if unit_img != {(k, c): 1 for k in range(D)}:
                return False
        else:
            # psi(c (x) 1) = eps(c_(1)^psi) 1_psi (x) c_(2)
            u = {}
            for (k, _), v in unit_img.items():
                u[k] = (u.get(k, 0) + v) % P
            if unit_img != {(k, c): v for k, v in u.items() if v}:
                return False
        for a in range(D):
            # (A (x) eps) psi(c (x) a)
            lhs = {}
            for (k, _), v in psi_apply(psi, c, a).items():
                lhs[k] = (lhs.get(k, 0) + v) % P
            lhs = {k: v for k, v in lhs.items() if v}
            if strict:
                rhs = {a: 1}
            else:
                u = {}
                for (k, _), v in lin(psi, c, ONE).items():
                    u[k] = (u.get(k, 0) + v) % P
                rhs = {}
                for k, v in u.items():
                    if v:
                        for kk, w in mul(k, a).items():
                            rhs[kk] = (rhs.get(kk, 0) + v * w) % P
                rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                return False
    return True


def projection(psi):
    """p(a (x) c) = a 1_psi (x) c^psi on A (x) C, index 2a + c."""
    p = [[0] * 4 for _ in range(4)]
    for a in range(D):
        for c in range(2):
            for (k, cc), v in lin(psi, c, ONE).items():
                for kk, w in mul(a, k).items():
                    p[2 * kk + cc][2 * a + c] = (p[2 * kk + cc][2 * a + c] + v * w) % P
    return p


def weak2_facts():
    weak2 = [[1 if r == c and r in (0, 3) else 0 for c in range(4)] for r in range(4)]
    weak = strict = 0
    for bits in range(1 << 16):
        psi = [[(bits >> (4 * r + c)) & 1 for c in range(4)] for r in range(4)]
        if is_weak_entwining(psi):
            weak += 1
            if is_weak_entwining(psi, strict=True):
                strict += 1
    flips = []
    for r, c in itertools.product(range(4), range(4)):
        psi = [row[:] for row in weak2]
        psi[r][c] ^= 1
        if is_weak_entwining(psi):
            flips.append([r, c])
    p = projection(weak2)
    return {
        "weak_entwinings": weak,
        "entwinings": strict,
        "fixture_is_weak": is_weak_entwining(weak2),
        "fixture_is_entwining": is_weak_entwining(weak2, strict=True),
        "projection": p,
        "projection_idempotent": mat_mul(p, p) == p,
        "projection_rank": rank(p),
        "weak_single_flips": flips,
    }


# Dual of upper triangular 2x2 matrices on f11, f12, f22.
POS = [(0, 0), (0, 1), (1, 1)]


def tri_product(i, j):
    (a, b), (c, d) = POS[i], POS[j]
    return POS.index((a, d)) if b == c else None


def t2dual_facts():
    # comult[k] = pairs (i, j) with e_i e_j = e_k.
    comult = {k: [(i, j) for i in range(3) for j in range(3) if tri_product(i, j) == k] for k in range(3)}
    bijective = []
    for e in itertools.product(range(P), repeat=3):
        # phi_e(r) = e_(1) r(e_(2)) and the mirror r(e_(1)) e_(2), on the dual basis r = delta_j.
        left = [[0] * 3 for _ in range(3)]
        right = [[0] * 3 for _ in range(3)]
        for k, coef in enumerate(e):
            for i, j in comult[k]:
                left[i][j] = (left[i][j] + coef) % P
                right[j][i] = (right[j][i] + coef) % P
        if rank(left) == 3 or rank(right) == 3:
            bijective.append(list(e))
    return {"invariants_dim": 3, "candidates": P ** 3, "bijective_candidates": bijective}


def main():
    facts = {"fx_weak2": weak2_facts(), "fx_t2dual": t2dual_facts()}
    path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "oracle_facts.json")
    with open(path, "w") as fh:
        json.dump(facts, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(json.dumps(facts, sort_keys=True))


if __name__ == "__main__":
    main()
