# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled stage-evolution kernel.  Mirror of ``_stagekernel_py``."""

from cpython cimport array
import array

from .errors import ResourceError

IMPLEMENTATION = "compiled"

cdef array.array _LONG_TEMPLATE = array.array('q', [])


cdef inline long long _term_of(long long label, long long[::1] prefix_caps,
                               int tail_kind, long long[::1] tail_vals) nogil:
    cdef Py_ssize_t plen = prefix_caps.shape[0]
    if label <= plen:
        return prefix_caps[label - 1]
    if tail_kind == 0:
        return tail_vals[0]
    return tail_vals[(label - plen - 1) % tail_vals.shape[0]]


def bump_stage(object genus, object terms):
    """Even-stage step: genus grows by one wherever it is below the term."""
    cdef long long[::1] g = genus
    cdef long long[::1] t = terms
    cdef Py_ssize_t n = g.shape[0]
    cdef array.array out_arr = array.clone(_LONG_TEMPLATE, n, zero=False)
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t i
    for i in range(n):
        if t[i] < 0 or g[i] < t[i]:
            out[i] = g[i] + 1
        else:
            out[i] = g[i]
    return out_arr


def expand_stage(object genus, object terms, object prefix_caps,
                 int tail_kind, object tail_vals, long long max_total):
    """Odd-stage step; see the pure twin for the contract."""
    cdef long long[::1] g = genus
    cdef long long[::1] t = terms
    cdef long long[::1] pc = prefix_caps
    cdef long long[::1] tv = tail_vals
    cdef Py_ssize_t m = g.shape[0]
    cdef Py_ssize_t i, p
    cdef long long links = 0
    for i in range(m):
        links += 6 * g[i]
    cdef long long total = m + links
    if max_total >= 0 and total > max_total:
        raise ResourceError(
            f"stage would hold {total} components, over the allowance {max_total}"
        )
    cdef array.array og_arr = array.clone(_LONG_TEMPLATE, total, zero=False)
    cdef array.array ot_arr = array.clone(_LONG_TEMPLATE, total, zero=False)
    cdef array.array lp_arr = array.clone(_LONG_TEMPLATE, links, zero=False)
    cdef long long[::1] og = og_arr
    cdef long long[::1] ot = ot_arr
    cdef long long[::1] lp
    if links:
        lp = lp_arr
    cdef Py_ssize_t pos = 0
    cdef long long label = m
    cdef long long chain
    for i in range(m):
        og[i] = g[i]
        ot[i] = t[i]
    for p in range(m):
        chain = 6 * g[p]
        for i in range(chain):
            label += 1
            og[m + pos] = 2
            ot[m + pos] = _term_of(label, pc, tail_kind, tv)
            lp[pos] = p + 1
            pos += 1
    return og_arr, ot_arr, lp_arr


def first_violation(object genus, object terms):
    """Index of the first component breaking genus >= 2 or genus <= term, else -1."""
    cdef long long[::1] g = genus
    cdef long long[::1] t = terms
    cdef Py_ssize_t i
    for i in range(g.shape[0]):
        if g[i] < 2 or (t[i] >= 0 and g[i] > t[i]):
            return i
    return -1


def genus_total(object genus):
    cdef long long[::1] g = genus
    cdef long long total = 0
    cdef Py_ssize_t i
    for i in range(g.shape[0]):
        total += g[i]
    return total
