# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels.

Twin of apmetric._pykernels: same nine functions, same semantics, same
operation order so the two backends agree to rounding noise. Counts arrive as
C-contiguous int64 arrays (TAKES_ARRAY is True).
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.math cimport NAN, exp, lgamma, log
from libc.stdint cimport int64_t

TAKES_ARRAY = True

NAME = "compiled"


def associativity(const int64_t[:, ::1] counts):
    cdef Py_ssize_t n_rows = counts.shape[0]
    cdef Py_ssize_t n_cols = counts.shape[1]
    cdef int64_t* hits = <int64_t*> PyMem_Malloc(n_cols * sizeof(int64_t))
    if hits == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, best
    cdef int64_t best_v, same, pairs, k
    try:
        for j in range(n_cols):
            hits[j] = 0
        for i in range(n_rows):
            best = 0
            best_v = counts[i, 0]
            for j in range(1, n_cols):
                if counts[i, j] > best_v:
                    best_v = counts[i, j]
                    best = j
            hits[best] += 1
        same = 0
        for j in range(n_cols):
            k = hits[j]
            same += k * (k - 1) // 2
        pairs = (<int64_t> n_rows) * (n_rows - 1) // 2
        return (<double> (pairs - same)) / (<double> pairs)
    finally:
        PyMem_Free(hits)


def peakiness_rows(const int64_t[:, ::1] counts):
    cdef Py_ssize_t n_rows = counts.shape[0]
    cdef Py_ssize_t n_cols = counts.shape[1]
    cdef Py_ssize_t i, j
    cdef int64_t m1, m2, v
    out = []
    for i in range(n_rows):
        m1 = -1
        m2 = -1
        for j in range(n_cols):
            v = counts[i, j]
            if v > m1:
                m2 = m1
                m1 = v
            elif v > m2:
                m2 = v
        if m1 == 0:
            out.append(NAN)
        else:
            out.append((<double> (m1 - m2)) / (<double> m1))
    return out


def ap_parts(const int64_t[:, ::1] counts):
    # One-pass (associativity, sum of defined row peakiness, defined count);
    # same tie and multiplicity rules as associativity/peakiness_rows.
    cdef Py_ssize_t n_rows = counts.shape[0]
    cdef Py_ssize_t n_cols = counts.shape[1]
    cdef int64_t* hits = <int64_t*> PyMem_Malloc(n_cols * sizeof(int64_t))
    if hits == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, best
    cdef int64_t m1, m2, v, same, pairs, k, defined
    cdef double peak_sum = 0.0
    try:
        for j in range(n_cols):
            hits[j] = 0
        defined = 0
        for i in range(n_rows):
            m1 = -1
            m2 = -1
            best = 0
            for j in range(n_cols):
                v = counts[i, j]
                if v > m1:
                    m2 = m1
                    m1 = v
                    best = j
                elif v > m2:
                    m2 = v
            hits[best] += 1
            if m1 > 0:
                peak_sum += (<double> (m1 - m2)) / (<double> m1)
                defined += 1
        same = 0
        for j in range(n_cols):
            k = hits[j]
            same += k * (k - 1) // 2
        pairs = (<int64_t> n_rows) * (n_rows - 1) // 2
        return (<double> (pairs - same)) / (<double> pairs), peak_sum, defined
    finally:
        PyMem_Free(hits)


def f1_parts(const int64_t[:, ::1] counts):
    # One-pass sums/counts for truth-class accuracy and purity over
    # nonzero rows and columns.
    cdef Py_ssize_t n_rows = counts.shape[0]
    cdef Py_ssize_t n_cols = counts.shape[1]
    cdef int64_t* col_sums = <int64_t*> PyMem_Malloc(n_cols * sizeof(int64_t))
    cdef int64_t* col_maxes = <int64_t*> PyMem_Malloc(n_cols * sizeof(int64_t))
    cdef Py_ssize_t i, j
    cdef int64_t row_sum, row_max, v, tca_count, purity_count
    cdef double tca_sum = 0.0, purity_sum = 0.0
    if col_sums == NULL or col_maxes == NULL:
        PyMem_Free(col_sums)
        PyMem_Free(col_maxes)
        raise MemoryError()
    try:
        for j in range(n_cols):
            col_sums[j] = 0
            col_maxes[j] = 0
        tca_count = 0
        for i in range(n_rows):
            row_sum = 0
            row_max = 0
            for j in range(n_cols):
                v = counts[i, j]
                row_sum += v
                if v > row_max:
                    row_max = v
                col_sums[j] += v
                if v > col_maxes[j]:
                    col_maxes[j] = v
            if row_sum > 0:
                tca_sum += (<double> row_max) / (<double> row_sum)
                tca_count += 1
        purity_count = 0
        for j in range(n_cols):
            if col_sums[j] > 0:
                purity_sum += (<double> col_maxes[j]) / (<double> col_sums[j])
                purity_count += 1
        return tca_sum, tca_count, purity_sum, purity_count
    finally:
        PyMem_Free(col_sums)
        PyMem_Free(col_maxes)


def tca_rows(const int64_t[:, ::1] counts):
    cdef Py_ssize_t n_rows = counts.shape[0]
    cdef Py_ssize_t n_cols = counts.shape[1]
    cdef Py_ssize_t i, j
    cdef int64_t s, m, v
    out = []
    for i in range(n_rows):
        s = 0
        m = 0
        for j in range(n_cols):
            v = counts[i, j]
            s += v
            if v > m:
                m = v
        if s == 0:
            out.append(NAN)
        else:
            out.append((<double> m) / (<double> s))
    return out


def purity_cols(const int64_t[:, ::1] counts):
    cdef Py_ssize_t n_rows = counts.shape[0]
    cdef Py_ssize_t n_cols = counts.shape[1]
    cdef Py_ssize_t i, j
    cdef int64_t s, m, v
    out = []
    for j in range(n_cols):
        s = 0
        m = 0
        for i in range(n_rows):
            v = counts[i, j]
            s += v
            if v > m:
                m = v
        if s == 0:
            out.append(NAN)
        else:
            out.append((<double> m) / (<double> s))
    return out


def pair_sums(const int64_t[:, ::1] counts):
    cdef Py_ssize_t n_rows = counts.shape[0]
    cdef Py_ssize_t n_cols = counts.shape[1]
    cdef Py_ssize_t i, j
    cdef int64_t n = 0, s_cells = 0, s_rows = 0, s_cols = 0, a, b, v
    for i in range(n_rows):
        for j in range(n_cols):
            v = counts[i, j]
            n += v
            s_cells += v * (v - 1) // 2
    for i in range(n_rows):
        a = 0
        for j in range(n_cols):
            a += counts[i, j]
        s_rows += a * (a - 1) // 2
    for j in range(n_cols):
        b = 0
        for i in range(n_rows):
            b += counts[i, j]
        s_cols += b * (b - 1) // 2
    return n, s_cells, s_rows, s_cols


cdef int64_t* _margins(const int64_t[:, ::1] counts, bint by_row) except NULL:
    cdef Py_ssize_t n_rows = counts.shape[0]
    cdef Py_ssize_t n_cols = counts.shape[1]
    cdef Py_ssize_t outer = n_rows if by_row else n_cols
    cdef Py_ssize_t i, j
    cdef int64_t* sums = <int64_t*> PyMem_Malloc(outer * sizeof(int64_t))
    if sums == NULL:
        raise MemoryError()
    if by_row:
        for i in range(n_rows):
            sums[i] = 0
            for j in range(n_cols):
                sums[i] += counts[i, j]
    else:
        for j in range(n_cols):
            sums[j] = 0
            for i in range(n_rows):
                sums[j] += counts[i, j]
    return sums


def entropy_stats(const int64_t[:, ::1] counts):
    cdef Py_ssize_t n_rows = counts.shape[0]
    cdef Py_ssize_t n_cols = counts.shape[1]
    cdef int64_t* row_sums = NULL
    cdef int64_t* col_sums = NULL
    cdef Py_ssize_t i, j
    cdef int64_t a, b, v, n
    cdef double p, h_truth, h_pred, h_t_given_p, h_p_given_t, mi
    try:
        row_sums = _margins(counts, True)
        col_sums = _margins(counts, False)
        n = 0
        for i in range(n_rows):
            n += row_sums[i]
        h_truth = 0.0
        for i in range(n_rows):
            a = row_sums[i]
            if a > 0:
                p = (<double> a) / (<double> n)
                h_truth -= p * log(p)
        h_pred = 0.0
        for j in range(n_cols):
            b = col_sums[j]
            if b > 0:
                p = (<double> b) / (<double> n)
                h_pred -= p * log(p)
        h_t_given_p = 0.0
        h_p_given_t = 0.0
        mi = 0.0
        for i in range(n_rows):
            a = row_sums[i]
            if a == 0:
                continue
            for j in range(n_cols):
                v = counts[i, j]
                if v == 0:
                    continue
                b = col_sums[j]
                p = (<double> v) / (<double> n)
                h_t_given_p -= p * log((<double> v) / (<double> b))
                h_p_given_t -= p * log((<double> v) / (<double> a))
                mi += p * log((<double> (v * n)) / (<double> (a * b)))
        if mi < 0.0:
            mi = 0.0
        return h_truth, h_pred, h_t_given_p, h_p_given_t, mi
    finally:
        PyMem_Free(row_sums)
        PyMem_Free(col_sums)


cdef class _LogTables:
    # lgf[k] = log(k!), lg[k] = log(k); read-only after construction.
    cdef double* lgf
    cdef double* lg
    cdef Py_ssize_t n

    def __cinit__(self, Py_ssize_t n):
        self.n = n
        self.lgf = <double*> PyMem_Malloc((n + 1) * sizeof(double))
        self.lg = <double*> PyMem_Malloc((n + 1) * sizeof(double))
        if self.lgf == NULL or self.lg == NULL:
            raise MemoryError()
        self.lgf[0] = 0.0
        self.lg[0] = 0.0
        cdef Py_ssize_t k
        for k in range(1, n + 1):
            self.lgf[k] = lgamma(k + 1.0)
            self.lg[k] = log(<double> k)

    def __dealloc__(self):
        PyMem_Free(self.lgf)
        PyMem_Free(self.lg)


_log_table_cache = {}


cdef _LogTables _tables_for(int64_t n):
    tables = _log_table_cache.get(n)
    if tables is None:
        if len(_log_table_cache) >= 8:
            _log_table_cache.clear()
        tables = _LogTables(n)
        _log_table_cache[n] = tables
    return <_LogTables> tables


def expected_mutual_info(const int64_t[:, ::1] counts):
    cdef Py_ssize_t n_rows = counts.shape[0]
    cdef Py_ssize_t n_cols = counts.shape[1]
    cdef int64_t* row_sums = NULL
    cdef int64_t* col_sums = NULL
    cdef Py_ssize_t i, j
    cdef int64_t a, b, n, nij, start, end
    cdef double base_a, outer_a, log_const, outer, cell, lpmf, emi, log_n
    cdef _LogTables t
    cdef double* lgf
    cdef double* lg
    try:
        row_sums = _margins(counts, True)
        col_sums = _margins(counts, False)
        n = 0
        for i in range(n_rows):
            n += row_sums[i]
        t = _tables_for(n)
        lgf = t.lgf
        lg = t.lg
        log_n = lg[n]
        emi = 0.0
        for i in range(n_rows):
            a = row_sums[i]
            if a == 0:
                continue
            base_a = lgf[a] + lgf[n - a] - lgf[n]
            outer_a = log_n - lg[a]
            for j in range(n_cols):
                b = col_sums[j]
                if b == 0:
                    continue
                log_const = base_a + lgf[b] + lgf[n - b]
                outer = outer_a - lg[b]
                start = a + b - n
                if start < 1:
                    start = 1
                end = a if a < b else b
                cell = 0.0
                for nij in range(start, end + 1):
                    lpmf = (
                        log_const
                        - lgf[nij]
                        - lgf[a - nij]
                        - lgf[b - nij]
                        - lgf[n - a - b + nij]
                    )
                    cell += (<double> nij) * (lg[nij] + outer) * exp(lpmf)
                emi += cell / (<double> n)
        return emi
    finally:
        PyMem_Free(row_sums)
        PyMem_Free(col_sums)
