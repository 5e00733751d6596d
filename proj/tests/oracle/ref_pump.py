#!/usr/bin/env python3
"""Reference simulation of the 4x4 half-filling pump, independent of the C++
implementation. Prints the transport-charge references frozen into the
acceptance suite."""
import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
import itertools
import sys

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
print("sector dim:", dim)


def hop_matrix(pairs):
    rows, cols = [], []
    for a, b in pairs:
        for (src, dst) in ((b, a), (a, b)):  # both hop directions, amp +1
            occ = (states >> np.uint64(src)) & np.uint64(1)
            emp = 1 - ((states >> np.uint64(dst)) & np.uint64(1))
            m = np.nonzero(occ & emp)[0]
            tgt = states[m] ^ np.uint64((1 << src) | (1 << dst))
            rows.append(np.searchsorted(states, tgt))
            cols.append(m)
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    return sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(dim, dim))


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


def lanczos_expm(Hmul, psi, c, m=25, tol=1e-12):
    """psi' = exp(-1j*c*H) psi via a Lanczos subspace."""
    V = [psi / np.linalg.norm(psi)]
    alpha, beta = [], []
    for k in range(m):
        w = Hmul(V[k])
        a = np.vdot(V[k], w).real
        alpha.append(a)
        w = w - a * V[k] - (beta[-1] * V[k - 1] if beta else 0)
        for u in V:            # full reorthogonalization
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


def run_pump(variant, h0, T0, dt=0.5, sample_every=10.0, tmax=None,
             xi=None, W=0.0):
    D = diag_vector(variant)
    Dxi = np.zeros(dim)
    if xi is not None:
        for s in range(NS):
            occ = ((states >> np.uint64(s)) & np.uint64(1)).astype(float)
            Dxi += occ * xi[s]

    def hmul_at(lmbda):
        Jv = J0 * (1 + np.cos(lmbda)) / 2
        hv = h0 * np.sin(lmbda)
        d = hv * D + W * Dxi
        return lambda x: (-(J0 - Jv)) * (A_intra @ x) + (-Jv) * (A_inter @ x) + d * x

    # ground state at t=0 (lambda = pi): decoupled plaquettes
    op = spla.LinearOperator((dim, dim), matvec=hmul_at(np.pi), dtype=complex)
    w0, v0 = spla.eigsh(op, k=1, which="SA", tol=1e-12, maxiter=5000)
    psi = v0[:, 0].astype(complex)
    psi /= np.linalg.norm(psi)
    print(f"  E(t=0) = {w0[0]:.9f} MHz")

    if tmax is None:
        tmax = T0
    nseg = int(round(tmax / sample_every))
    steps_per = int(round(sample_every / dt))
    samples = {0.0: occupations(psi)}
    t = 0.0
    for seg in range(nseg):
        for k in range(steps_per):
            tm = t + (k + 0.5) * dt
            lm = np.pi - 2 * np.pi * tm / T0
            psi = lanczos_expm(hmul_at(lm), psi, 2 * np.pi * 1e-3 * dt)
            psi /= np.linalg.norm(psi)
        t += sample_every
        samples[round(t, 9)] = occupations(psi)
    return samples


def delta_q(samples, T0, corners):
    dq = [samples[T0 / 2][c] - samples[0.0][c] for c in corners]
    return dq, 2 * np.mean(np.abs(dq))


corners = [site(0, 0), site(0, N - 1), site(N - 1, N - 1), site(N - 1, 0)]
print("corners c1..c4 (site ids):", corners)

print("\ndiag pump, h0=10, T0=500:")
s = run_pump("diag", 10.0, 500.0)
dq, q = delta_q(s, 500.0, corners)
print("  dq_i =", np.round(dq, 6), " Delta q =", round(q, 6))
p = s[250.0]
print("  P1(250) grid:")
for j in range(N):
    print("   ", np.round([p[site(i, j)] for i in range(N)], 4))
print("  sum P1(250) =", p.sum())

print("\nnondiag pump, h0=3.5, T0=500:")
s = run_pump("nondiag", 3.5, 500.0)
dq, q = delta_q(s, 500.0, corners)
print("  dq_i =", np.round(dq, 6), " Delta q =", round(q, 6))
p = s[250.0]
c1, adj = site(0, 0), site(0, 1)
print("  P1(250) grid:")
for j in range(N):
    print("   ", np.round([p[site(i, j)] for i in range(N)], 4))
print("  DeltaP(c1 vs y-adj) =", (p[c1] - p[adj]) / (p[c1] + p[adj]))

print("\nnondiag pump, h0=10, T0=500 (expected to fail):")
s = run_pump("nondiag", 10.0, 500.0)
dq, q = delta_q(s, 500.0, corners)
p = s[250.0]
print("  dq_i =", np.round(dq, 6), " Delta q =", round(q, 6))
print("  P1(250) grid:")
for j in range(N):
    print("   ", np.round([p[site(i, j)] for i in range(N)], 4))
print("  DeltaP(c1 vs y-adj) =", (p[c1] - p[adj]) / (p[c1] + p[adj]))

if "--disorder" in sys.argv:
    rng = np.random.default_rng(7)
    for Wmhz in (20.0, 32.0):
        qs = []
        for r in range(5):
            xi = rng.uniform(-1, 1, NS)
            s = run_pump("diag", 10.0, 500.0, tmax=250.0, xi=xi, W=Wmhz)
            dq = [s[250.0][c] - s[0.0][c] for c in corners]
            qs.append(2 * np.mean(np.abs(dq)))
        print(f"W = {Wmhz}: dq samples {np.round(qs, 4)} mean {np.mean(qs):.4f}")
