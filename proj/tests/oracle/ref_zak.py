#!/usr/bin/env python3
"""Reference higher-order Zak phases / Chern windings on the 4x4 half-filling
sector under corner-periodic boundary conditions, used to pin down the sign
conventions frozen into the topology tests."""
import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
import itertools
import sys

N = 4
NS = N * N
K = 8
J0 = 3.0


def site(i, j):
    return i + N * j


def sgn(s, variant):
    i, j = s % N, s // N
    if variant == "diag":
        return -1 if (i + j) % 2 == 0 else 1
    return -1 if i % 2 == 0 else 1


CORNERS = [site(0, 0), site(0, N - 1), site(N - 1, N - 1), site(N - 1, 0)]
LINKS = [(CORNERS[k], CORNERS[(k + 1) % 4]) for k in range(4)]

states = np.array(sorted(sum(1 << s for s in c)
                         for c in itertools.combinations(range(NS), K)),
                  dtype=np.uint64)
dim = len(states)


def hop_matrix(pairs, amps):
    """pairs with complex amplitude t: t a+_a a_b + conj(t) a+_b a_a."""
    rows, cols, vals = [], [], []
    for (a, b), t in zip(pairs, amps):
        for (src, dst, v) in ((b, a, t), (a, b, np.conj(t))):
            occ = (states >> np.uint64(src)) & np.uint64(1)
            emp = 1 - ((states >> np.uint64(dst)) & np.uint64(1))
            m = np.nonzero(occ & emp)[0]
            tgt = states[m] ^ np.uint64((1 << src) | (1 << dst))
            rows.append(np.searchsorted(states, tgt))
            cols.append(m)
            vals.append(np.full(len(m), v))
    return sp.csr_matrix((np.concatenate(vals),
                          (np.concatenate(rows), np.concatenate(cols))),
                         shape=(dim, dim))


def bonds():
    intra, inter = [], []
    for j in range(N):
        for i in range(N - 1):
            (intra if i % 2 == 0 else inter).append((site(i, j), site(i + 1, j)))
    for i in range(N):
        for j in range(N - 1):
            (intra if j % 2 == 0 else inter).append((site(i, j), site(i, j + 1)))
    return intra, inter


INTRA, INTER = bonds()
A_intra = hop_matrix(INTRA, [1.0] * len(INTRA))
A_inter = hop_matrix(INTER, [1.0] * len(INTER))
OCC = np.stack([((states >> np.uint64(s)) & np.uint64(1)).astype(float)
                for s in range(NS)])


def corner_matrix(corner, theta):
    """Corner-ring hoppings with the gauge twist e^{-i theta} on creation at
    the twisted corner. Unit magnitude; multiply by sign*J when assembling."""
    amps = []
    for a, b in LINKS:   # stored as t a+_a a_b + h.c.
        t = 1.0 + 0j
        if a == CORNERS[corner]:
            t = np.exp(-1j * theta)
        elif b == CORNERS[corner]:
            t = np.exp(+1j * theta)
        amps.append(t)
    return hop_matrix(LINKS, amps)


def ground(lmbda, variant, h0, Ac, v0):
    ji = J0 * (1 - np.cos(lmbda))
    je = J0 * (1 + np.cos(lmbda))
    d = (h0 * np.sin(lmbda) * np.array([sgn(s, variant) for s in range(NS)])) @ OCC
    H = (-ji) * A_intra + (-je) * A_inter + (-je) * Ac + sp.diags(d)
    w, v = spla.eigsh(H, k=1, which="SA", tol=1e-10, v0=v0, maxiter=8000)
    return v[:, 0]


def zak(lmbda, variant, h0, corner, ntheta, v0=None):
    vecs = []
    for m in range(ntheta):
        Ac = corner_matrix(corner, 2 * np.pi * m / ntheta)
        v0 = ground(lmbda, variant, h0, Ac, v0)
        vecs.append(v0)
    prod = 1.0 + 0j
    for m in range(ntheta):
        prod *= np.vdot(vecs[m], vecs[(m + 1) % ntheta])
    return -np.angle(prod), min(abs(np.vdot(vecs[m], vecs[(m + 1) % ntheta]))
                                for m in range(ntheta)), v0


def wrap(x):
    return (x + np.pi) % (2 * np.pi) - np.pi


def profile(variant, h0, nl=12, ntheta=12):
    print(f"{variant} h0={h0}: gamma_i over ascending lambda grid ({nl} pts)",
          flush=True)
    gam = np.zeros((4, nl))
    for c in range(4):
        v0 = None
        for m in range(nl):
            g, om, v0 = zak(2 * np.pi * m / nl, variant, h0, c, ntheta, v0)
            gam[c, m] = g
        print(f"  corner {c + 1}: " +
              " ".join(f"{x:+.3f}" for x in gam[c]), flush=True)
    for c in range(4):
        asc = sum(wrap(gam[c, (m + 1) % nl] - gam[c, m]) for m in range(nl))
        half_desc = -sum(wrap(gam[c, m] - gam[c, m - 1])
                         for m in range(nl // 2, 0, -1))  # pi -> 0 descending
        print(f"  corner {c + 1}: ascending winding = {asc / (2 * np.pi):+.4f}"
              f"   dq(half, pump dir) = {-half_desc / (2 * np.pi):+.4f}",
              flush=True)


if __name__ == "__main__":
    h0 = float(sys.argv[1]) if len(sys.argv) > 1 else 10.0
    variant = sys.argv[2] if len(sys.argv) > 2 else "diag"
    profile(variant, h0)
