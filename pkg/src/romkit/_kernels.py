"""Compiled inner loops for Gram-Schmidt and the reduced-basis greedy.

Both loops are sequential with O(L) work per step, so interpreter
overhead would otherwise dominate for the sizes of interest. Arrays must
be C-contiguous and share a dtype (float64 or complex128); weights are
float64.
"""

import numpy as np
from numba import njit

STATUS_OK = 0
STATUS_ZERO = 1
STATUS_DEPENDENT = 2


@njit(cache=True)
def inner(f, g, w):
    """sum(conj(f) * g * w)."""
    acc = np.conj(f[0]) * g[0] * w[0]
    for j in range(1, f.shape[0]):
        acc += np.conj(f[j]) * g[j] * w[j]
    return acc


@njit(cache=True)
def gs_passes(basis, k, v, w, trigger, max_passes):
    """Remove from ``v`` (in place) its components along ``basis[:k]``.

    Modified Gram-Schmidt: each coefficient is taken against the partially
    reduced ``v``. Passes repeat while the norm falls below ``trigger``
    times its value before the pass. Returns (original norm, surviving norm).
    """
    original = np.sqrt(np.real(inner(v, v, w)))
    previous = original
    surviving = original
    if k == 0:
        return original, surviving
    length = v.shape[0]
    for _ in range(max_passes):
        for i in range(k):
            c = inner(basis[i], v, w)
            for j in range(length):
                v[j] -= c * basis[i, j]
        surviving = np.sqrt(np.real(inner(v, v, w)))
        if surviving >= trigger * previous:
            break
        previous = surviving
    return original, surviving


@njit(cache=True)
def greedy(work, w, sigma, seed, tol, max_size, zero_norm, dependence_rtol,
           trigger, max_passes):
    """Reduced-basis greedy on the rows of ``work``.

    ``sigma`` holds the current squared projection errors and is updated
    in place through the recursion sigma -= |c|^2.
    """
    n_rows, length = work.shape
    elements = np.empty((max_size, length), dtype=work.dtype)
    indices = np.empty(max_size, dtype=np.int64)
    errors = np.empty(max_size, dtype=np.float64)
    v = np.empty(length, dtype=work.dtype)

    n = 0
    index = seed
    error = sigma[seed]
    status = STATUS_OK
    while True:
        v[:] = work[index]
        original, surviving = gs_passes(elements, n, v, w, trigger, max_passes)
        if original <= zero_norm:
            status = STATUS_ZERO
            break
        if surviving < dependence_rtol * original:
            status = STATUS_DEPENDENT
            break
        for j in range(length):
            elements[n, j] = v[j] / surviving
        indices[n] = index
        errors[n] = error
        n += 1

        for r in range(n_rows):
            c = inner(elements[n - 1], work[r], w)
            sigma[r] -= np.real(c * np.conj(c))
        for i in range(n):
            sigma[indices[i]] = 0.0
        index = np.argmax(sigma)
        error = sigma[index]
        if error <= tol or n == max_size:
            break
    return elements[:n].copy(), indices[:n].copy(), errors[:n].copy(), error, status
