"""Pure numpy fallback for the permutation-sum kernel."""
import numpy as np


def gather_accumulate(out, x, idx, coeffs, num_threads=1):
    """out[i] += sum_p coeffs[p] * x[idx[p, i]], terms added in order of p."""
    idx = np.asarray(idx, dtype=np.int64)
    if out.shape[0] != idx.shape[1]:
        raise ValueError("output length does not match index rows")
    if len(coeffs) != idx.shape[0]:
        raise ValueError("coefficient count does not match index rows")
    for p in range(idx.shape[0]):
        c = float(coeffs[p])
        g = x[idx[p]]
        out.real += c * g.real
        out.imag += c * g.imag
    return out
