"""NumPy implementation of the time-stepping kernels (used when the extension is absent)."""
import numpy as np


def van_der_corput(n: int) -> float:
    """Base-5 van der Corput element with digits permuted by ``a -> 3a mod 5``."""
    q, bk = 0.0, 0.2
    while n > 0:
        q += ((3 * (n % 5)) % 5) * bk
        n //= 5
        bk = bk / 5.0
    return q


def rp_sample(uL, sL, uR, sR, k, xi):
    uL, sL, uR, sR, xi = (np.asarray(a, dtype=float) for a in (uL, sL, uR, sR, xi))
    um = 0.5 * (uL + uR) + (sR - sL) / (2.0 * k)
    sm = 0.5 * (sL + sR) + 0.5 * k * (uR - uL)
    out_u = uR.copy()
    out_s = sR.copy()
    done = np.zeros(uL.shape, dtype=bool)

    def put(mask, uu, ss):
        nonlocal done
        mask = mask & ~done
        out_u[mask] = np.broadcast_to(uu, uL.shape)[mask]
        out_s[mask] = np.broadcast_to(ss, uL.shape)[mask]
        done |= mask

    rare1 = um > uL
    shock1 = um < uL
    lo1 = np.where(rare1, uL - k, 0.5 * (um + uL) - k)
    put((rare1 | shock1) & (xi < lo1), uL, sL)
    put(rare1 & (xi < um - k), xi + k, k * xi + sL - k * (uL - k))
    rare2 = uR > um
    shock2 = uR < um
    lo2 = np.where(rare2, um + k, 0.5 * (uR + um) + k)
    put((rare2 | shock2) & (xi < lo2), um, sm)
    put(rare2 & (xi < uR + k), xi - k, -k * xi + sm + k * (um + k))
    return out_u, out_s


def fv_evolve(u, s, k, dx, cfl, t_end):
    """Advance cell averages to ``t_end`` in place; returns the number of steps."""
    n = u.shape[0]
    t = 0.0
    steps = 0
    while t < t_end:
        dt = cfl * dx / (np.max(np.abs(u)) + k)
        if t + dt >= t_end:
            dt = t_end - t
        r = dt / dx
        uL, uR, sL, sR = u[:-1], u[1:], s[:-1], s[1:]
        du = uR - uL
        ds = sR - sL
        ub = 0.5 * (uL + uR)
        al = np.maximum(np.abs(uL), np.abs(uR)) + k
        au = ub * du - ds
        as_ = ub * ds - k * k * du
        tu = np.zeros(n)
        ts = np.zeros(n)
        tu[1:] += 0.5 * (au + al * du)
        ts[1:] += 0.5 * (as_ + al * ds)
        tu[:-1] += 0.5 * (au - al * du)
        ts[:-1] += 0.5 * (as_ - al * ds)
        u -= r * tu
        s -= r * ts
        t = t + dt
        steps += 1
    return steps


def glimm_evolve(u, s, k, dx, cfl, t_end, seed):
    """Random-choice evolution to ``t_end`` in place; returns the number of steps."""
    t = 0.0
    steps = 0
    while t < t_end:
        dt = cfl * 0.5 * dx / (np.max(np.abs(u)) + k)
        if t + dt >= t_end:
            dt = t_end - t
        steps += 1
        theta = van_der_corput(steps + seed)
        if theta <= 0.5:
            ul = np.concatenate((u[:1], u[:-1]))
            sl = np.concatenate((s[:1], s[:-1]))
            xi = np.full(u.shape, theta * dx / dt)
            nu, ns = rp_sample(ul, sl, u, s, k, xi)
        else:
            ur = np.concatenate((u[1:], u[-1:]))
            sr = np.concatenate((s[1:], s[-1:]))
            xi = np.full(u.shape, (theta - 1.0) * dx / dt)
            nu, ns = rp_sample(u, s, ur, sr, k, xi)
        u[:] = nu
        s[:] = ns
        t = t + dt
    return steps
