#!/usr/bin/env python3
# Independent brute-force oracle for the frozen values used in the C++ tests.
# Stdlib only. Run: python3 tests/oracles/frozen_values.py
import itertools
from fractions import Fraction as F


def sign(v):
    return (v > 0) - (v < 0)


# --- rankings -------------------------------------------------------------

def layers_to_rank(layers):
    r = {}
    for k, layer in enumerate(layers, 1):
        for e in layer:
            r[e] = k
    return r


def kendall(r1, r2):
    u = sorted(r1)
    s = 0
    for a, b in itertools.combinations(u, 2):
        s += abs(sign(r1[b] - r1[a]) - sign(r2[b] - r2[a]))
    return s


def error_vectors(r1, r2):
    u = sorted(r1)
    x, y = {}, {}
    for e in u:
        d = r1[e] - r2[e]
        if d:
            x[d] = x.get(d, 0) + 1
    for a, b in itertools.combinations(u, 2):
        d = (r1[a] - r1[b]) - (r2[a] - r2[b])
        if d:
            y[d] = y.get(d, 0) + 1
    return x, y


S1 = [[2, 4], [9], [1, 3, 7], [5, 6, 8]]
S2 = [[7, 9], [1, 3], [2, 5, 8], [4, 6]]
r1, r2 = layers_to_rank(S1), layers_to_rank(S2)
print("layered_rankings kendall", kendall(r1, r2))
x, y = error_vectors(r1, r2)
print("layered_rankings x", [x.get(r, 0) for r in (-3, -2, -1, 1, 2, 3)])
print("layered_rankings y", [y.get(r, 0) for r in (-6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6)])

# --- sets -----------------------------------------------------------------

A1 = {1, 2, 4, 5}
A2 = {1, 2, 3, 5, 6, 7}
w = {1: F(5, 10), 2: F(6, 10), 3: F(4, 10), 4: F(1), 5: F(7, 10), 6: F(2, 10), 7: F(1, 10), 8: F(1)}
print("sets rho_e", 1 - F(len(A1 & A2), len(A1 | A2)))
print("sets rho_w", 1 - sum(w[i] for i in A1 & A2) / sum(w[i] for i in A1 | A2))

# --- trees ----------------------------------------------------------------

def ancestors(par):
    out = {}
    for n in par:
        s, p = set(), par[n]
        while p is not None:
            s.add(p)
            p = par[p]
        out[n] = s
    return out


def case(anc, a, b):
    if a in anc[b]:
        return 1
    if b in anc[a]:
        return 2
    return 3


def tree_prox(p1, p2):
    n1, n2 = set(p1), set(p2)
    common = sorted(n1 & n2)
    ra = 1 - F(len(n1 & n2), len(n1 | n2))
    a1, a2 = ancestors(p1), ancestors(p2)
    pairs = list(itertools.combinations(common, 2))
    changed = sum(case(a1, a, b) != case(a2, a, b) for a, b in pairs)
    return ra, (F(changed, len(pairs)) if pairs else F(0))


chain = {i: (i - 1 if i > 1 else None) for i in range(1, 9)}
rchain = {i: (i + 1 if i < 8 else None) for i in range(1, 9)}
base = {1: None, 2: 1, 3: 1, 4: 2, 5: 2, 6: 3, 7: 3, 8: 3}
moved = {1: None, 2: 1, 8: 1, 4: 2, 6: 2, 5: 8, 3: 8, 7: 3}
relabeled = {1: None, 2: 1, 8: 1, 9: 2, 6: 2, 3: 8, 10: 3}
grown = {1: None, 2: 1, 3: 1, 4: 2, 5: 2, 6: 2, 7: 3, 9: 3}
print("tree chain/reversed", tree_prox(chain, rchain))
print("tree base/moved", tree_prox(base, moved))
print("tree base/relabeled", tree_prox(base, relabeled))
print("tree base/grown", tree_prox(base, grown))

leaf1 = {4: [2, 1, 3, 2], 5: [1, 3, 2, 2], 6: [2, 2, 3, 1], 7: [3, 2, 1, 1], 8: [3, 2, 2, 1]}
leaf2 = {4: [1, 2, 3, 3], 5: [2, 3, 2, 1], 6: [1, 2, 3, 2], 7: [3, 2, 2, 1], 9: [1, 1, 2, 2]}
vals = []
for leaf in sorted(set(leaf1) & set(leaf2)):
    a = dict(enumerate(leaf1[leaf]))
    b = dict(enumerate(leaf2[leaf]))
    n = len(a)
    v = F(kendall(a, b), n * (n - 1))
    vals.append(v)
    print("leaf", leaf, "normalized kendall", v)
print("morph rho_r", sum(vals) / len(vals))

# --- knapsack family (8 items, budget 13) ---------------------------------

c = [5, 12, 4, 2, 3, 4, 1, 1]
a = [2, 5, 2, 1, 2, 3, 2, 3]
M = [[None, 1, 0, 1, 0, 1, 1, 1], [1, None, 0, 1, 1, 1, 1, 1], [1, 0, None, 1, 1, 1, 1, 1],
     [1, 1, 1, None, 1, 1, 1, 1], [0, 0, 1, 0, None, 1, 1, 0], [1, 1, 0, 1, 0, None, 1, 1],
     [1, 1, 1, 1, 1, 1, None, 1], [1, 1, 0, 1, 0, 1, 1, None]]


def compat(i, j):
    return M[i][j] and M[j][i]


best = max(((sum(c[i] for i in s), -sum(a[i] for i in s), [i + 1 for i in s])
            for r in range(9) for s in itertools.combinations(range(8), r)
            if sum(a[i] for i in s) <= 13))
print("knapsack exact", best)
order = sorted(range(8), key=lambda i: (-F(c[i], a[i]), i))
load, pick = 0, []
for i in order:
    if load + a[i] <= 13:
        load += a[i]
        pick.append(i + 1)
print("knapsack greedy", sum(c[i - 1] for i in pick), load, sorted(pick))
cl = max(((sum(c[i] for i in s), -sum(a[i] for i in s), [i + 1 for i in s])
          for r in range(9) for s in itertools.combinations(range(8), r)
          if sum(a[i] for i in s) <= 13 and all(compat(i, j) for i, j in itertools.combinations(s, 2))))
print("profit clique exact", cl)
load, pick = 0, []
for i in order:
    if load + a[i] <= 13 and all(compat(i, j - 1) for j in pick):
        load += a[i]
        pick.append(i + 1)
print("profit clique greedy", sum(c[i - 1] for i in pick), load, sorted(pick))
mc = max((len(s), [-(i + 1) for i in s], s) for r in range(9) for s in itertools.combinations(range(8), r)
         if all(compat(i, j) for i, j in itertools.combinations(s, 2)))
print("max clique", [i + 1 for i in mc[2]])

# --- multiple choice ------------------------------------------------------

def mck(groups, b):
    best = None
    for combo in itertools.product(*groups):
        cost = sum(it[1] for it in combo)
        if cost > b + 1e-9:
            continue
        val = sum(it[2] for it in combo)
        key = (round(val, 9), -round(cost, 9))
        if best is None or key > best[0]:
            best = (key, [it[0] for it in combo])
    return best


# (id, weight, value) with value = 4 - priority on a three-level scale
tele = [[("X2", 3, 3), ("X3", 4, 1)], [("Y2", 2, 3), ("Y3", 3, 2)], [("Z2", 2, 3), ("Z3", 3, 2)]]
print("mck telemetry b=9", mck(tele, 9))
sec = [[("X1", 3, 3), ("X3", 4, 1)], [("Y1", 2, 3), ("Y3", 3, 1)], [("Z1", 2, 3), ("Z3", 3, 1)]]
print("mck security b=7", mck(sec, 7))


def offset3(groups):
    return [[(i, cost, 3 - r) for i, cost, r in g] for g in groups]


notebook_add = [[("U1", 3, 2), ("U2", 2, 3), ("U3", 4, 1)], [("F1", 2, 2), ("F2", 3, 1)],
                [("P2", 3, 1), ("P3", 2, 1), ("P4", 0, 2)],
                [("B1>B3", 4, 1), ("B:none", 0, 2)], [("V3>V4", 3, 1), ("V:none", 0, 2)],
                [("A1>A3", 2, 1), ("A:none", 0, 2)]]
print("mck notebook additions b=11", mck(offset3(notebook_add), 11))
notebook_mod = [[("+A1", 1, 1), ("A:none", 0, 3)], [("+P1", 3, 2), ("P:none", 0, 3)],
                [("+L1", 1, 1), ("L:none", 0, 3)], [("-E1", 1, 1), ("E:none", 0, 2)],
                [("B2>B3", 4, 1), ("B:none", 0, 3)], [("U2>U1", 3, 2), ("U:none", 0, 3)],
                [("O1>O3", 1, 1), ("O:none", 0, 3)]]
print("mck notebook modifications b=9", mck(offset3(notebook_mod), 9))

course = [[("V6_1", 0, 0), ("V6_2", .5, .4), ("V6_3", 1, .76)],
          [("V8_1", 0, 0), ("V8_2", .5, .5), ("V8_3", 1, 1.0)],
          [("V11_1", 0, 0), ("V11_2", .5, .45), ("V11_3", 1, .75)],
          [("V14_1", 0, 0), ("V14_2", .5, .4), ("V14_3", 1, .73)],
          [("V15_1", 0, 0), ("V15_2", .5, .4), ("V15_3", 1, .8)]]
print("mck course b=3.5", mck([[(i, cost, v) for i, v, cost in [(t[0], t[2], t[1]) for t in g]] for g in course], 3.5))

# --- course weighted proximities -----------------------------------------

w1 = [.6, .7, .6, .4, 1.0, 0, 1.0, 1.0, .8, .4, .75, .8, .7, .73, 0, 0]
w2 = [.6, .7, 1.0, 1.0, 1.0, .76, .3, 0, .4, .8, 0, .7, 0, 0, .8, 0]
P1 = {7, 8, 13, 14}
P2 = {6, 7, 13, 15}
cands = {"A01": {7, 8, 13, 14, 15}, "A02": {6, 8, 13, 14, 15}, "A03": {6, 7, 13, 14, 15},
         "A04": {6, 7, 8, 14, 15}, "A05": {6, 7, 8, 13, 15}, "A06": {6, 7, 8, 13, 14}}


def wprox(A, B, wv):
    den = sum(wv[i - 1] for i in A | B)
    return 1 - sum(wv[i - 1] for i in A & B) / den


pts = {}
for k, s in cands.items():
    pts[k] = (wprox(s, P1, w1), wprox(s, P2, w2))
    print("course", k, "%.4f %.4f" % pts[k])
front = [k for k in pts if not any(all(pts[o][d] <= pts[k][d] for d in (0, 1)) and pts[o] != pts[k] for o in pts)]
print("course pareto", front)

# --- consensus rankings ---------------------------------------------------

rows = [(3, 3, 3), (1, 1, 1), (3, 1, 2), (1, 2, 1), (4, 4, 3), (4, 4, 4), (3, 3, 4), (4, 4, 4), (2, 2, 2)]
print("consensus assignment", [min(range(1, 5), key=lambda k: (sum(abs(r - k) for r in row), k)) for row in rows])
print("consensus rounding", [int(F(sum(row), len(row)) + F(1, 2)) for row in rows])

# --- kernels --------------------------------------------------------------

def alpha_kernel(sols, alpha):
    n = len(sols)
    count = {}
    for s in sols:
        for e in s:
            count[e] = count.get(e, 0) + 1
    return sorted(e for e, k in count.items() if F(k, n) >= alpha)


tel = ["X2 Y2 Z2 I1 Q1 G4 H2 C1 W2", "X3 Y3 Z3 I3 Q1 G4 H3 C1 W5", "X2 Y2 Z2 I3 Q1 G4 H3 C1 W2",
       "X3 Y3 Z3 I1 Q5 G4 H3 C1 W2", "X3 Y3 Z3 I3 Q1 G4 H3 C1 W2", "X2 Y2 Z2 I3 Q1 G4 H3 C1 W5"]
print("kernel telemetry 0.6", alpha_kernel([s.split() for s in tel], F(6, 10)))
nb = ["B1 U1 R1 V3 J1 E1 O2 F1 D1 A1 G1 P4 L1 Q2", "B2 U1 R1 V3 J1 E1 O1 F2 D1 A1 G1 P2 L1 Q2",
      "B1 U2 R1 V3 J1 E1 O1 F2 D1 A3 G4 P3 L1 Q2", "B1 U3 R2 V3 J2 E1 O1 F2 D1 A1 G1 P4 L1 Q2"]
print("kernel notebook 1.0", alpha_kernel([s.split() for s in nb], F(1)))
art = ["I2 J3 U2", "I3 J3 U2", "I3 J2 U5"]
print("kernel art 0.6", alpha_kernel([s.split() for s in art], F(6, 10)))
