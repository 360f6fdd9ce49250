# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; same signatures, same results."""

import heapq


cpdef dict add_scaled(dict target, dict src, object c=1):
    cdef object w, v, s
    if not c:
        return target
    for w, v in src.items():
        s = target.get(w, 0) + c * v
        if s:
            target[w] = s
        else:
            target.pop(w, None)
    return target


cpdef dict scale(dict p, object c):
    if not c:
        return {}
    return {w: c * v for w, v in p.items()}


cpdef dict mul(dict a, dict b):
    cdef dict out = {}
    cdef object u, v, x, y, w, s
    for u, x in a.items():
        for v, y in b.items():
            w = u + v
            s = out.get(w, 0) + x * y
            if s:
                out[w] = s
            else:
                del out[w]
    return out


cpdef dict bracket(dict a, dict b):
    cdef dict out = {}
    cdef object u, v, x, y, w, s, xy
    for u, x in a.items():
        for v, y in b.items():
            xy = x * y
            w = u + v
            s = out.get(w, 0) + xy
            if s:
                out[w] = s
            else:
                del out[w]
            w = v + u
            s = out.get(w, 0) - xy
            if s:
                out[w] = s
            else:
                del out[w]
    return out


cpdef dict derive(dict p, dict images):
    cdef dict out = {}
    cdef object w, c, img, head, tail, u, d, key, s
    cdef Py_ssize_t i, n
    for w, c in p.items():
        n = len(w)
        for i in range(n):
            img = images.get(w[i])
            if not img:
                continue
            head = w[:i]
            tail = w[i + 1:]
            for u, d in (<dict>img).items():
                key = head + u + tail
                s = out.get(key, 0) + c * d
                if s:
                    out[key] = s
                else:
                    del out[key]
    return out


cpdef dict substitute(dict p, dict images, object maxlen=None):
    cdef dict out = {}
    cdef dict acc, nxt
    cdef object w, c, letter, img, u, x, v, y, key, s
    cdef Py_ssize_t lim = -1
    if maxlen is not None:
        lim = maxlen
    for w, c in p.items():
        acc = {w[:0]: c}
        for letter in w:
            img = images.get(letter)
            if not img:
                acc = {}
                break
            nxt = {}
            for u, x in acc.items():
                for v, y in (<dict>img).items():
                    if lim >= 0 and len(u) + len(v) > lim:
                        continue
                    key = u + v
                    s = nxt.get(key, 0) + x * y
                    if s:
                        nxt[key] = s
                    else:
                        del nxt[key]
            acc = nxt
            if not acc:
                break
        add_scaled(out, acc)
    return out


def triangular_reduce(x, lookup):
    cdef dict rem = dict(x)
    cdef list heap = list(rem)
    cdef dict coords = {}
    cdef object w, c, basis, u, v, s
    heapq.heapify(heap)
    while heap:
        w = heapq.heappop(heap)
        c = rem.get(w)
        if not c:
            continue
        basis = lookup(w)
        if basis is None:
            return coords, rem
        coords[w] = c
        for u, v in (<dict>basis).items():
            s = rem.get(u, 0) - c * v
            if s:
                if u not in rem:
                    heapq.heappush(heap, u)
                rem[u] = s
            else:
                rem.pop(u, None)
    return coords, rem
