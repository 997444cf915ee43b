# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see _kernels_py for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

cdef extern from *:
    """
    static inline int sl_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int sl_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int sl_mul_ovf(long long a, long long b, long long *r) nogil
    int sl_add_ovf(long long a, long long b, long long *r) nogil

cdef enum:
    MAXD = 8
cdef long long COEFF_LIMIT = 1LL << 59


cdef inline long long _mod(long long a, long long p) noexcept nogil:
    a %= p
    return a + p if a < 0 else a


def group_closure(gens, long long p, long long limit):
    cdef cnp.int64_t[:, :, :] g = np.ascontiguousarray(np.asarray(gens, dtype=np.int64) % p)
    cdef int ng = g.shape[0], d = g.shape[1], dd = d * d
    cdef unordered_set[uint64_t] seen
    cdef vector[uint64_t] queue
    cdef long long a[MAXD * MAXD]
    cdef long long c[MAXD * MAXD]
    cdef uint64_t code, cur
    cdef size_t head = 0
    cdef int i, j, k, s, t
    cdef long long acc
    code = 0
    for i in range(d):
        for j in range(d):
            code = code * p + (1 if i == j else 0)
    seen.insert(code)
    queue.push_back(code)
    while head < queue.size():
        cur = queue[head]
        head += 1
        for k in range(dd - 1, -1, -1):
            a[k] = cur % p
            cur //= p
        for s in range(ng):
            for i in range(d):
                for j in range(d):
                    acc = 0
                    for t in range(d):
                        acc += a[i * d + t] * g[s, t, j]
                    c[i * d + j] = acc % p
            code = 0
            for k in range(dd):
                code = code * p + c[k]
            if seen.find(code) == seen.end():
                seen.insert(code)
                if <long long>seen.size() > limit:
                    raise OverflowError("group closure exceeded limit %d" % limit)
                queue.push_back(code)
    codes = np.array(sorted(queue), dtype=np.uint64)
    cdef cnp.int64_t[:, :] out = np.zeros((len(codes), dd), dtype=np.int64)
    cdef Py_ssize_t r
    for r in range(len(codes)):
        cur = codes[r]
        for k in range(dd - 1, -1, -1):
            out[r, k] = cur % p
            cur //= p
    return np.asarray(out).reshape(-1, d, d)


cdef int _berk(long long *a, int d, long long p, long long *res) noexcept nogil:
    # p > 0: work mod p; p == 0: exact with overflow check (returns 1 on overflow)
    cdef long long vec[MAXD + 1]
    cdef long long nv[MAXD + 1]
    cdef long long first[MAXD + 1]
    cdef long long v[MAXD]
    cdef long long w[MAXD]
    cdef long long s, tmp
    cdef int k, size, i, j, it, m
    vec[0] = 1
    vec[1] = -a[(d - 1) * d + d - 1]
    if p:
        vec[1] = _mod(vec[1], p)
    for k in range(d - 2, -1, -1):
        size = d - k
        m = size - 1
        first[0] = 1
        first[1] = -a[k * d + k]
        for i in range(m):
            v[i] = a[(k + 1 + i) * d + k]
        for it in range(m):
            s = 0
            for i in range(m):
                if p:
                    s = (s + a[k * d + k + 1 + i] * v[i]) % p
                else:
                    if sl_mul_ovf(a[k * d + k + 1 + i], v[i], &tmp) or sl_add_ovf(s, tmp, &s):
                        return 1
            first[2 + it] = -s
            for i in range(m):
                s = 0
                for j in range(m):
                    if p:
                        s = (s + a[(k + 1 + i) * d + k + 1 + j] * v[j]) % p
                    else:
                        if sl_mul_ovf(a[(k + 1 + i) * d + k + 1 + j], v[j], &tmp) or sl_add_ovf(s, tmp, &s):
                            return 1
                w[i] = s
            for i in range(m):
                v[i] = w[i]
        for i in range(size + 1):
            s = 0
            for j in range((i if i < size - 1 else size - 1) + 1):
                if p:
                    s = (s + first[i - j] * vec[j]) % p
                else:
                    if sl_mul_ovf(first[i - j], vec[j], &tmp) or sl_add_ovf(s, tmp, &s):
                        return 1
            nv[i] = _mod(s, p) if p else s
        for i in range(size + 1):
            vec[i] = nv[i]
    for i in range(d + 1):
        res[i] = vec[i]
    return 0


def charpoly_mod_p(elems, long long p):
    cdef cnp.int64_t[:, :, :] e = np.ascontiguousarray(np.asarray(elems, dtype=np.int64) % p)
    cdef Py_ssize_t m = e.shape[0], t
    cdef int d = e.shape[1], i, j
    cdef long long a[MAXD * MAXD]
    cdef long long res[MAXD + 1]
    out_arr = np.zeros((m, d + 1), dtype=np.int64)
    cdef cnp.int64_t[:, :] out = out_arr
    with nogil:
        for t in range(m):
            for i in range(d):
                for j in range(d):
                    a[i * d + j] = e[t, i, j]
            _berk(a, d, p, res)
            for i in range(d + 1):
                out[t, i] = res[i]
    return out_arr


def walk_charpolys(choices, gi, gj, gs, int n):
    cdef cnp.int32_t[:, :] ch = np.ascontiguousarray(choices, dtype=np.int32)
    cdef cnp.int32_t[:] vi = np.ascontiguousarray(gi, dtype=np.int32)
    cdef cnp.int32_t[:] vj = np.ascontiguousarray(gj, dtype=np.int32)
    cdef cnp.int32_t[:] vs = np.ascontiguousarray(gs, dtype=np.int32)
    cdef Py_ssize_t T = ch.shape[0], N = ch.shape[1], t, k
    coeffs_arr = np.zeros((T, N + 1, n + 1), dtype=np.int64)
    overflow_arr = np.zeros(T, dtype=np.uint8)
    cdef cnp.int64_t[:, :, :] coeffs = coeffs_arr
    cdef cnp.uint8_t[:] overflow = overflow_arr
    cdef long long x[MAXD * MAXD]
    cdef long long res[MAXD + 1]
    cdef long long tmp
    cdef int r, c, i, j, bad
    with nogil:
        for t in range(T):
            for r in range(n * n):
                x[r] = 0
            for r in range(n):
                x[r * n + r] = 1
            _berk(x, n, 0, res)
            for r in range(n + 1):
                coeffs[t, 0, r] = res[r]
            for k in range(N):
                c = ch[t, k]
                i = vi[c]
                j = vj[c]
                bad = 0
                for r in range(n):
                    x[r * n + j] += vs[c] * x[r * n + i]
                    if x[r * n + j] >= COEFF_LIMIT or x[r * n + j] <= -COEFF_LIMIT:
                        bad = 1
                if not bad:
                    bad = _berk(x, n, 0, res)
                if not bad:
                    for r in range(n + 1):
                        if res[r] >= COEFF_LIMIT or res[r] <= -COEFF_LIMIT:
                            bad = 1
                if bad:
                    overflow[t] = 1
                    break
                for r in range(n + 1):
                    coeffs[t, k + 1, r] = res[r]
    return coeffs_arr, overflow_arr


cdef inline void _ext_mul(long long *a, long long *b, long long *out, long long q, int r, long long *red) noexcept nogil:
    cdef long long prod[2 * MAXD]
    cdef int i, j, k
    cdef long long cc
    for i in range(2 * r - 1):
        prod[i] = 0
    for i in range(r):
        if a[i]:
            for j in range(r):
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % q
    for k in range(2 * r - 2, r - 1, -1):
        cc = prod[k] % q
        if cc:
            for i in range(r):
                prod[k - r + i] = _mod(prod[k - r + i] - cc * red[i], q)
    for i in range(r):
        out[i] = _mod(prod[i], q)


def fiber_counts(f_desc, long long q, int r, modpoly, ts):
    cdef list fl = [int(c) % q for c in f_desc]
    cdef int nf = len(fl)
    cdef long long red[MAXD]
    cdef list mp = [int(c) % q for c in list(modpoly)[1:]][::-1]
    cdef int i, k, ii
    for i in range(r):
        red[i] = mp[i]
    cdef long long size = q ** r
    cdef long long idx, e_idx
    chi_arr = np.full(size, -1, dtype=np.int8)
    fx_arr = np.zeros((size, r), dtype=np.int64)
    cdef cnp.int8_t[:] chi = chi_arr
    cdef cnp.int64_t[:, :] fx = fx_arr
    cdef cnp.int64_t[:] fc = np.array(fl, dtype=np.int64)
    cdef cnp.int64_t[:] tv = np.asarray(ts, dtype=np.int64) % q
    out_arr = np.zeros(len(ts), dtype=np.int64)
    cdef cnp.int64_t[:] out = out_arr
    cdef long long e[MAXD]
    cdef long long acc[MAXD]
    cdef long long tmp[MAXD]
    cdef long long total
    with nogil:
        for e_idx in range(size):
            idx = e_idx
            for i in range(r):
                e[i] = idx % q
                idx //= q
            _ext_mul(e, e, tmp, q, r, red)
            idx = 0
            for i in range(r - 1, -1, -1):
                idx = idx * q + tmp[i]
            chi[idx] = 1
            for i in range(r):
                acc[i] = 0
            for k in range(nf):
                _ext_mul(acc, e, tmp, q, r, red)
                for i in range(r):
                    acc[i] = tmp[i]
                acc[0] = (acc[0] + fc[k]) % q
            for i in range(r):
                fx[e_idx, i] = acc[i]
        chi[0] = 0
        for ii in range(tv.shape[0]):
            total = 1
            for e_idx in range(size):
                idx = e_idx
                for i in range(r):
                    e[i] = idx % q
                    idx //= q
                e[0] = _mod(e[0] - tv[ii], q)
                for i in range(r):
                    acc[i] = fx[e_idx, i]
                _ext_mul(acc, e, tmp, q, r, red)
                idx = 0
                for i in range(r - 1, -1, -1):
                    idx = idx * q + tmp[i]
                total += 1 + chi[idx]
            out[ii] = total
    return out_arr


cdef long long _inv(long long a, long long p) noexcept nogil:
    cdef long long t = 0, nt = 1, rr = p, nr = a, qq, tmp
    while nr:
        qq = rr // nr
        tmp = t - qq * nt
        t = nt
        nt = tmp
        tmp = rr - qq * nr
        rr = nr
        nr = tmp
    return _mod(t, p)


def ec_point_order(a, long long x, long long y, long long p, long long max_order):
    cdef long long a1 = int(a[0]) % p, a2 = int(a[1]) % p, a3 = int(a[2]) % p
    cdef long long a4 = int(a[3]) % p, a6 = int(a[4]) % p
    cdef long long x0 = _mod(x, p), y0 = _mod(y, p), cx, cy, num, den, lam, nx, ny
    cdef long long k
    if p > 3037000499:
        raise ValueError("prime too large for the compiled order kernel")
    cdef long long found = 0
    cx = x0
    cy = y0
    with nogil:
        for k in range(1, max_order + 1):
            if cx == x0 and _mod(cy + y0 + a1 * x0 + a3, p) == 0:
                found = k + 1
                break
            if cx == x0:
                num = _mod((3 * x0 % p) * x0 + 2 * a2 * x0 + a4 - a1 * y0, p)
                den = _mod(2 * y0 + a1 * x0 + a3, p)
            else:
                num = _mod(cy - y0, p)
                den = _mod(cx - x0, p)
            lam = num * _inv(den, p) % p
            nx = _mod(lam * lam % p + a1 * lam - a2 - cx - x0, p)
            ny = _mod(-((lam + a1) % p) * nx % p - _mod(cy - lam * cx % p, p) - a3, p)
            cx = nx
            cy = ny
    return found
