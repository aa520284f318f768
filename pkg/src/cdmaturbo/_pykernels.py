"""Pure-Python Max-Log-MAP kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is not built. Fixed-point kernels work on int64 mantissa
arrays and return the number of operations that had to saturate.
"""

import numpy as np

MANT_MIN = -(1 << 19)
MANT_MAX = (1 << 19) - 1


def branch_metrics_ref(cs, cp, apriori, lc):
    cs = np.asarray(cs, dtype=np.float64)
    cp = np.asarray(cp, dtype=np.float64)
    la = np.asarray(apriori, dtype=np.float64)
    g1 = 0.5 * (la + lc * (cs + cp))
    g2 = 0.5 * (la + lc * (cs - cp))
    return g1, g2


def forward_ref(g1, g2, next_state, group, alpha, normalize=False):
    nxt = next_state.tolist()
    grp = group.tolist()
    g1l = g1.tolist()
    g2l = g2.tolist()
    cur = alpha[0].tolist()
    for k in range(len(g1l)):
        new = [-np.inf] * 8
        for m in range(8):
            g = g1l[k] if grp[m] == 0 else g2l[k]
            a = cur[m]
            n0, n1 = nxt[m]
            v = a - g
            if v > new[n0]:
                new[n0] = v
            v = a + g
            if v > new[n1]:
                new[n1] = v
        if normalize:
            top = max(new)
            new = [v - top for v in new]
        alpha[k + 1] = new
        cur = new
    return 0


def backward_ref(g1, g2, next_state, group, beta, normalize=False):
    nxt = next_state.tolist()
    grp = group.tolist()
    g1l = g1.tolist()
    g2l = g2.tolist()
    n = len(g1l)
    cur = beta[n].tolist()
    for k in range(n - 1, -1, -1):
        new = [0.0] * 8
        for m in range(8):
            g = g1l[k] if grp[m] == 0 else g2l[k]
            n0, n1 = nxt[m]
            b0 = cur[n0] - g
            b1 = cur[n1] + g
            new[m] = b1 if b1 > b0 else b0
        if normalize:
            top = max(new)
            new = [v - top for v in new]
        beta[k] = new
        cur = new
    return 0


def llr_ref(g1, g2, alpha, beta, next_state, group):
    nxt = next_state.tolist()
    grp = group.tolist()
    g1l = g1.tolist()
    g2l = g2.tolist()
    al = alpha.tolist()
    bl = beta.tolist()
    out = np.empty(len(g1l))
    for k in range(len(g1l)):
        a = al[k]
        b = bl[k + 1]
        best1 = -np.inf
        best0 = -np.inf
        for m in range(8):
            g = g1l[k] if grp[m] == 0 else g2l[k]
            n0, n1 = nxt[m]
            v = a[m] + b[n1] + g
            if v > best1:
                best1 = v
            v = a[m] + b[n0] - g
            if v > best0:
                best0 = v
        out[k] = best1 - best0
    return out


class _Sat:
    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def __call__(self, v):
        if v > MANT_MAX:
            self.count += 1
            return MANT_MAX
        if v < MANT_MIN:
            self.count += 1
            return MANT_MIN
        return v


def branch_metrics_fxp(cs, cp, apriori, lc):
    sat = _Sat()
    lc = int(lc)
    csl = np.asarray(cs, dtype=np.int64).tolist()
    cpl = np.asarray(cp, dtype=np.int64).tolist()
    lal = np.asarray(apriori, dtype=np.int64).tolist()
    n = len(csl)
    g1 = np.empty(n, dtype=np.int64)
    g2 = np.empty(n, dtype=np.int64)
    for k in range(n):
        s = sat(csl[k] + cpl[k])
        d = sat(csl[k] - cpl[k])
        g1[k] = sat(lal[k] + sat((lc * s) >> 10)) >> 1
        g2[k] = sat(lal[k] + sat((lc * d) >> 10)) >> 1
    return g1, g2, sat.count


def forward_fxp(g1, g2, next_state, group, alpha, normalize=True):
    sat = _Sat()
    nxt = next_state.tolist()
    grp = group.tolist()
    g1l = g1.tolist()
    g2l = g2.tolist()
    cur = alpha[0].tolist()
    for k in range(len(g1l)):
        new = [None] * 8
        for m in range(8):
            g = g1l[k] if grp[m] == 0 else g2l[k]
            a = cur[m]
            n0, n1 = nxt[m]
            v = sat(a + sat(-g))
            if new[n0] is None or v > new[n0]:
                new[n0] = v
            v = sat(a + g)
            if new[n1] is None or v > new[n1]:
                new[n1] = v
        if normalize:
            top = max(new)
            new = [sat(v - top) for v in new]
        alpha[k + 1] = new
        cur = new
    return sat.count


def backward_fxp(g1, g2, next_state, group, beta, normalize=True):
    sat = _Sat()
    nxt = next_state.tolist()
    grp = group.tolist()
    g1l = g1.tolist()
    g2l = g2.tolist()
    n = len(g1l)
    cur = beta[n].tolist()
    for k in range(n - 1, -1, -1):
        new = [0] * 8
        for m in range(8):
            g = g1l[k] if grp[m] == 0 else g2l[k]
            n0, n1 = nxt[m]
            b0 = sat(cur[n0] + sat(-g))
            b1 = sat(cur[n1] + g)
            new[m] = b1 if b1 > b0 else b0
        if normalize:
            top = max(new)
            new = [sat(v - top) for v in new]
        beta[k] = new
        cur = new
    return sat.count


def llr_fxp(g1, g2, alpha, beta, next_state, group):
    sat = _Sat()
    nxt = next_state.tolist()
    grp = group.tolist()
    g1l = g1.tolist()
    g2l = g2.tolist()
    al = alpha.tolist()
    bl = beta.tolist()
    n = len(g1l)
    out = np.empty(n, dtype=np.int64)
    for k in range(n):
        a = al[k]
        b = bl[k + 1]
        best1 = None
        best0 = None
        for m in range(8):
            g = g1l[k] if grp[m] == 0 else g2l[k]
            n0, n1 = nxt[m]
            v = sat(sat(a[m] + b[n1]) + g)
            if best1 is None or v > best1:
                best1 = v
            v = sat(sat(a[m] + b[n0]) + sat(-g))
            if best0 is None or v > best0:
                best0 = v
        out[k] = sat(best1 - best0)
    return out, sat.count
