"""Pure-Python reference versions of the compiled kernels (same API)."""
import numpy as np

COEFF_LIMIT = 1 << 59


def _encode(m, p):
    code = 0
    for v in m:
        code = code * p + int(v)
    return code


def _decode(code, p, d):
    out = [0] * (d * d)
    for k in range(d * d - 1, -1, -1):
        code, out[k] = divmod(code, p)
    return out


def group_closure(gens, p, limit):
    """Sorted array of all elements of the group generated by ``gens`` mod p."""
    gens = np.asarray(gens, dtype=np.int64) % p
    d = gens.shape[1]
    glist = [[int(v) for v in g.ravel()] for g in gens]
    ident = [1 if i == j else 0 for i in range(d) for j in range(d)]
    seen = {_encode(ident, p)}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in glist:
                c = [0] * (d * d)
                for i in range(d):
                    for j in range(d):
                        s = 0
                        for k in range(d):
                            s += a[i * d + k] * g[k * d + j]
                        c[i * d + j] = s % p
                code = _encode(c, p)
                if code not in seen:
                    seen.add(code)
                    if len(seen) > limit:
                        raise OverflowError("group closure exceeded limit %d" % limit)
                    nxt.append(c)
        frontier = nxt
    codes = sorted(seen)
    return np.array([_decode(c, p, d) for c in codes], dtype=np.int64).reshape(-1, d, d)


def _berkowitz(a, d, mod=None):
    # a: flat row-major list; returns [1, c1, .., cd] of det(T I - A)
    vec = [1, -a[(d - 1) * d + (d - 1)]]
    if mod:
        vec = [v % mod for v in vec]
    for k in range(d - 2, -1, -1):
        size = d - k
        sub = range(k + 1, d)
        akk = a[k * d + k]
        row = [a[k * d + j] for j in sub]
        col = [a[i * d + k] for i in sub]
        first = [1, -akk]
        v = col
        for _ in range(size - 1):
            s = 0
            for x, y in zip(row, v):
                s += x * y
            first.append(-s)
            v = [sum(a[i * d + j] * v[jj] for jj, j in enumerate(sub)) for i in sub]
            if mod:
                v = [t % mod for t in v]
        new = []
        for i in range(size + 1):
            s = 0
            for j in range(min(i, size - 1) + 1):
                s += first[i - j] * vec[j]
            new.append(s % mod if mod else s)
        vec = new
    return vec


def charpoly_mod_p(elems, p):
    """Coefficients (leading first) of det(T I - g) mod p for each g."""
    elems = np.asarray(elems, dtype=np.int64)
    m, d = elems.shape[0], elems.shape[1]
    out = np.zeros((m, d + 1), dtype=np.int64)
    for t in range(m):
        out[t] = _berkowitz([int(v) for v in elems[t].ravel()], d, p)
    return out


def walk_charpolys(choices, gi, gj, gs, n):
    """Char polys along random products of elementary matrices X_{k+1} = X_k E.

    Returns (coeffs[T, N+1, n+1], overflow[T]); a trial whose coefficients or
    entries exceed 2**59 is flagged and its remaining rows are left at zero.
    """
    choices = np.asarray(choices)
    T, N = choices.shape
    coeffs = np.zeros((T, N + 1, n + 1), dtype=np.int64)
    overflow = np.zeros(T, dtype=np.uint8)
    for t in range(T):
        x = [1 if i == j else 0 for i in range(n) for j in range(n)]
        coeffs[t, 0] = _berkowitz(x, n)
        for k in range(N):
            c = int(choices[t, k])
            i, j, s = int(gi[c]), int(gj[c]), int(gs[c])
            for r in range(n):
                x[r * n + j] += s * x[r * n + i]
            if any(abs(v) >= COEFF_LIMIT for v in x):
                overflow[t] = 1
                break
            cp = _berkowitz(x, n)
            if any(abs(v) >= COEFF_LIMIT for v in cp):
                overflow[t] = 1
                break
            coeffs[t, k + 1] = cp
    return coeffs, overflow


def _ext_mul(a, b, q, r, red):
    # a, b: coefficient lists length r (low first); red: z^r = -sum red[i] z^i
    prod = [0] * (2 * r - 1)
    for i in range(r):
        if a[i]:
            for j in range(r):
                prod[i + j] += a[i] * b[j]
    for k in range(2 * r - 2, r - 1, -1):
        c = prod[k] % q
        if c:
            for i in range(r):
                prod[k - r + i] -= c * red[i]
    return [v % q for v in prod[:r]]


def fiber_counts(f_desc, q, r, modpoly, ts):
    """#C_t(F_{q^r}) for y^2 = f(x)(x - t), t in ``ts``, plus one point at infinity.

    F_{q^r} is F_q[z]/(modpoly) with ``modpoly`` monic, leading coefficient first.
    """
    f_desc = [int(c) % q for c in f_desc]
    red = [int(c) % q for c in list(modpoly)[1:]][::-1]  # low first, without leading 1
    size = q ** r

    def unpack(idx):
        out = []
        for _ in range(r):
            idx, d = divmod(idx, q)
            out.append(d)
        return out

    def pack(v):
        idx = 0
        for d in reversed(v):
            idx = idx * q + d
        return idx

    elems = [unpack(i) for i in range(size)]
    chi = [-1] * size
    chi[0] = 0
    for e in elems:
        chi[pack(_ext_mul(e, e, q, r, red))] = 1
    chi[0] = 0
    fx = []
    for e in elems:
        acc = [0] * r
        for c in f_desc:
            acc = _ext_mul(acc, e, q, r, red)
            acc[0] = (acc[0] + c) % q
        fx.append(acc)
    out = np.zeros(len(ts), dtype=np.int64)
    for k, t in enumerate(ts):
        total = 1
        for e, fv in zip(elems, fx):
            lin = list(e)
            lin[0] = (lin[0] - int(t)) % q
            total += 1 + chi[pack(_ext_mul(fv, lin, q, r, red))]
        out[k] = total
    return out


def ec_point_order(a, x, y, p, max_order):
    """Order of (x, y) on the long Weierstrass curve ``a`` over F_p (0 if > max_order)."""
    a1, a2, a3, a4, a6 = [int(v) % p for v in a]
    x0, y0 = int(x) % p, int(y) % p
    cx, cy = x0, y0
    for k in range(1, max_order + 1):
        # current point is k*P; check whether k*P + P is infinity
        if cx == x0 and (cy + y0 + a1 * x0 + a3) % p == 0:
            return k + 1
        if cx == x0:
            num = (3 * x0 * x0 + 2 * a2 * x0 + a4 - a1 * y0) % p
            den = (2 * y0 + a1 * x0 + a3) % p
        else:
            num = (cy - y0) % p
            den = (cx - x0) % p
        lam = num * pow(den, p - 2, p) % p
        nx = (lam * lam + a1 * lam - a2 - cx - x0) % p
        ny = (-(lam + a1) * nx - (cy - lam * cx) - a3) % p
        cx, cy = nx, ny
    return 0
