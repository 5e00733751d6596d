#!/usr/bin/env python3
"""Pump reference with the calibration-sweep hopping modulation
J_inter = J0(1+cos l), J_intra = J0(1-cos l) (swing 0..2*J0)."""
import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
import itertools

N = 4
NS = N * N
K = NS // 2
J0 = 3.0


def site(i, j):
    return i + N * j


def bonds():
    intra, inter = [], []
    for j in range(N):
        for i in range(N - 1):
            (intra if i % 2 == 0 else inter).append((site(i, j), site(i + 1, j)))
    for i in range(N):
        for j in range(N - 1):
            (intra if j % 2 == 0 else inter).append((site(i, j), site(i, j + 1)))
    return intra, inter


def sign(s, variant):
    i, j = s % N, s // N
    if variant == "diag":
        return -1 if (i + j) % 2 == 0 else 1
    return -1 if i % 2 == 0 else 1


states = np.array(sorted(sum(1 << s for s in c)
                         for c in itertools.combinations(range(NS), K)),
                  dtype=np.uint64)
dim = len(states)


def hop_matrix(pairs):
    rows, cols = [], []
    for a, b in pairs:
        for (src, dst) in ((b, a), (a, b)):
            occ = (states >> np.uint64(src)) & np.uint64(1)
            emp = 1 - ((states >> np.uint64(dst)) & np.uint64(1))
            m = np.nonzero(occ & emp)[0]
            tgt = states[m] ^ np.uint64((1 << src) | (1 << dst))
            rows.append(np.searchsorted(states, tgt))
            cols.append(m)
    return sp.csr_matrix((np.ones(len(np.concatenate(rows))),
                          (np.concatenate(rows), np.concatenate(cols))),
                         shape=(dim, dim))


intra_pairs, inter_pairs = bonds()
A_intra = hop_matrix(intra_pairs)
A_inter = hop_matrix(inter_pairs)


def diag_vector(variant):
    d = np.zeros(dim)
    for s in range(NS):
        occ = ((states >> np.uint64(s)) & np.uint64(1)).astype(float)
        d += occ * sign(s, variant)
    return d


def occupations(psi):
    p = np.empty(NS)
    w = np.abs(psi) ** 2
    for s in range(NS):
        occ = ((states >> np.uint64(s)) & np.uint64(1)).astype(float)
        p[s] = np.dot(w, occ)
    return p


def lanczos_expm(Hmul, psi, c, m=30, tol=1e-12):
    V = [psi / np.linalg.norm(psi)]
    alpha, beta = [], []
    for k in range(m):
        w = Hmul(V[k])
        a = np.vdot(V[k], w).real
        alpha.append(a)
        w = w - a * V[k] - (beta[-1] * V[k - 1] if beta else 0)
        for u in V:
            w = w - np.vdot(u, w) * u
        b = np.linalg.norm(w)
        T = np.diag(alpha) + np.diag(beta, 1) + np.diag(beta, -1)
        ew, ev = np.linalg.eigh(T)
        u = ev @ (np.exp(-1j * c * ew) * ev[0].conj())
        if b < 1e-12 or (k >= 2 and abs(c) * b * abs(u[-1]) < tol):
            break
        beta.append(b)
        V.append(w / b)
    out = np.zeros_like(psi)
    for uj, vj in zip(u, V):
        out += uj * vj
    return out * np.linalg.norm(psi)


def run(variant, h0, T0, dt=0.5):
    D = diag_vector(variant)

    def hm(lmbda):
        ji = J0 * (1 - np.cos(lmbda))     # intra
        je = J0 * (1 + np.cos(lmbda))     # inter
        d = h0 * np.sin(lmbda) * D
        return lambda x: (-ji) * (A_intra @ x) + (-je) * (A_inter @ x) + d * x

    op = spla.LinearOperator((dim, dim), matvec=hm(np.pi), dtype=complex)
    w0, v0 = spla.eigsh(op, k=1, which="SA", tol=1e-12, maxiter=5000)
    psi = v0[:, 0].astype(complex)
    nstep = int(round(T0 / 2 / dt))
    for k in range(nstep):
        lm = np.pi - 2 * np.pi * (k + 0.5) * dt / T0
        psi = lanczos_expm(hm(lm), psi, 2 * np.pi * 1e-3 * dt)
        psi /= np.linalg.norm(psi)
    return occupations(psi)


corners = [site(0, 0), site(0, N - 1), site(N - 1, N - 1), site(N - 1, 0)]
for variant, h0 in (("diag", 10.0), ("nondiag", 3.5), ("nondiag", 10.0)):
    p = run(variant, h0, 500.0)
    dq = [p[c] - 0.5 for c in corners]
    print(f"{variant} h0={h0}: dq_i = {np.round(dq, 6)}  "
          f"Delta q = {2 * np.mean(np.abs(dq)):.6f}", flush=True)
    for j in range(N):
        print("   ", np.round([p[site(i, j)] for i in range(N)], 4))
