"""Pure-Python numeric kernels.

Fallback implementations of the hot per-table loops. The compiled twin
(apmetric._ckernels) exposes the same nine functions with the same semantics;
parity between the two is enforced by the test suite. Callers are expected to
have validated shapes already: these functions assume a rectangular grid of
non-negative ints with whatever minimum dimensions the caller's contract states.

Counts arrive as nested tuples (TAKES_ARRAY is False); the compiled kernels take
int64 arrays instead.
"""

from math import exp, lgamma, log

TAKES_ARRAY = False

NAME = "pure"

_NAN = float("nan")


def associativity(counts):
    """Fraction of row pairs whose argmax columns differ; ties break low."""
    n_cols = len(counts[0])
    hits = [0] * n_cols
    for row in counts:
        best = 0
        best_v = row[0]
        for j in range(1, n_cols):
            if row[j] > best_v:
                best_v = row[j]
                best = j
        hits[best] += 1
    n_rows = len(counts)
    same = 0
    for k in hits:
        same += k * (k - 1) // 2
    pairs = n_rows * (n_rows - 1) // 2
    return (pairs - same) / pairs


def peakiness_rows(counts):
    """Per-row (max1 - max2) / max1; NaN marks all-zero rows.

    max2 counts multiplicity: a duplicated maximum gives 0.
    """
    out = []
    for row in counts:
        m1 = -1
        m2 = -1
        for v in row:
            if v > m1:
                m2 = m1
                m1 = v
            elif v > m2:
                m2 = v
        if m1 == 0:
            out.append(_NAN)
        else:
            out.append((m1 - m2) / m1)
    return out


def ap_parts(counts):
    """One-pass (associativity, sum of defined row peakiness, defined count).

    Same tie and multiplicity rules as associativity/peakiness_rows; the sum
    accumulates in row order so it matches summing peakiness_rows output.
    """
    n_cols = len(counts[0])
    hits = [0] * n_cols
    peak_sum = 0.0
    defined = 0
    for row in counts:
        m1 = -1
        m2 = -1
        best = 0
        j = 0
        for v in row:
            if v > m1:
                m2 = m1
                m1 = v
                best = j
            elif v > m2:
                m2 = v
            j += 1
        hits[best] += 1
        if m1 > 0:
            peak_sum += (m1 - m2) / m1
            defined += 1
    n_rows = len(counts)
    same = 0
    for k in hits:
        same += k * (k - 1) // 2
    pairs = n_rows * (n_rows - 1) // 2
    return (pairs - same) / pairs, peak_sum, defined


def f1_parts(counts):
    """One-pass sums and counts for truth-class accuracy and purity.

    Returns (tca_sum, tca_count, purity_sum, purity_count) over nonzero rows
    and columns, accumulated in index order to match the per-row/col kernels.
    """
    n_cols = len(counts[0])
    col_sums = [0] * n_cols
    col_maxes = [0] * n_cols
    tca_sum = 0.0
    tca_count = 0
    for row in counts:
        row_sum = 0
        row_max = 0
        j = 0
        for v in row:
            row_sum += v
            if v > row_max:
                row_max = v
            col_sums[j] += v
            if v > col_maxes[j]:
                col_maxes[j] = v
            j += 1
        if row_sum > 0:
            tca_sum += row_max / row_sum
            tca_count += 1
    purity_sum = 0.0
    purity_count = 0
    for j in range(n_cols):
        if col_sums[j] > 0:
            purity_sum += col_maxes[j] / col_sums[j]
            purity_count += 1
    return tca_sum, tca_count, purity_sum, purity_count


def tca_rows(counts):
    """Per-row max / row sum; NaN marks all-zero rows."""
    out = []
    for row in counts:
        s = sum(row)
        if s == 0:
            out.append(_NAN)
        else:
            out.append(max(row) / s)
    return out


def purity_cols(counts):
    """Per-column max / column sum; NaN marks all-zero columns."""
    n_cols = len(counts[0])
    out = []
    for j in range(n_cols):
        s = 0
        m = 0
        for row in counts:
            v = row[j]
            s += v
            if v > m:
                m = v
        if s == 0:
            out.append(_NAN)
        else:
            out.append(m / s)
    return out


def pair_sums(counts):
    """(n, sum_cells, sum_rows, sum_cols) where each sum is over C(x, 2)."""
    n = 0
    s_cells = 0
    for row in counts:
        for v in row:
            n += v
            s_cells += v * (v - 1) // 2
    s_rows = 0
    for row in counts:
        a = sum(row)
        s_rows += a * (a - 1) // 2
    s_cols = 0
    for col in zip(*counts):
        b = sum(col)
        s_cols += b * (b - 1) // 2
    return n, s_cells, s_rows, s_cols


def entropy_stats(counts):
    """(H_truth, H_pred, H_truth|pred, H_pred|truth, MI), natural log.

    Zero marginals contribute nothing. MI is clamped at 0 to absorb rounding on
    independent tables.
    """
    row_sums = [sum(row) for row in counts]
    col_sums = [sum(col) for col in zip(*counts)]
    n = sum(row_sums)
    h_truth = 0.0
    for a in row_sums:
        if a > 0:
            p = a / n
            h_truth -= p * log(p)
    h_pred = 0.0
    for b in col_sums:
        if b > 0:
            p = b / n
            h_pred -= p * log(p)
    h_t_given_p = 0.0
    h_p_given_t = 0.0
    mi = 0.0
    for i, row in enumerate(counts):
        a = row_sums[i]
        if a == 0:
            continue
        for j, v in enumerate(row):
            if v == 0:
                continue
            b = col_sums[j]
            p = v / n
            h_t_given_p -= p * log(v / b)
            h_p_given_t -= p * log(v / a)
            mi += p * log(v * n / (a * b))
    if mi < 0.0:
        mi = 0.0
    return h_truth, h_pred, h_t_given_p, h_p_given_t, mi


_LOG_TABLE_CACHE = {}


def _log_tables(n):
    # lgf[k] = log(k!), lg[k] = log(k); both shared read-only once built.
    cached = _LOG_TABLE_CACHE.get(n)
    if cached is not None:
        return cached
    lgf = [0.0] * (n + 1)
    lg = [0.0] * (n + 1)
    for k in range(1, n + 1):
        lgf[k] = lgamma(k + 1.0)
        lg[k] = log(k)
    if len(_LOG_TABLE_CACHE) >= 8:
        _LOG_TABLE_CACHE.clear()
    _LOG_TABLE_CACHE[n] = (lgf, lg)
    return lgf, lg


def expected_mutual_info(counts):
    """Exact expected MI of random tables with these margins (permutation model).

    Sums the full hypergeometric term range for every cell of the margin
    product; terms whose probability underflows contribute nothing, which is
    also their true weight at double precision.
    """
    row_sums = [sum(row) for row in counts]
    col_sums = [sum(col) for col in zip(*counts)]
    n = sum(row_sums)
    lgf, lg = _log_tables(n)
    log_n = lg[n]
    emi = 0.0
    for a in row_sums:
        if a == 0:
            continue
        base_a = lgf[a] + lgf[n - a] - lgf[n]
        outer_a = log_n - lg[a]
        for b in col_sums:
            if b == 0:
                continue
            log_const = base_a + lgf[b] + lgf[n - b]
            outer = outer_a - lg[b]
            start = a + b - n
            if start < 1:
                start = 1
            end = min(a, b)
            cell = 0.0
            for nij in range(start, end + 1):
                lpmf = (
                    log_const
                    - lgf[nij]
                    - lgf[a - nij]
                    - lgf[b - nij]
                    - lgf[n - a - b + nij]
                )
                cell += nij * (lg[nij] + outer) * exp(lpmf)
            emi += cell / n
    return emi
