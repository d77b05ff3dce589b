"""Kernel backend selector.

The compiled extension is preferred when it imported cleanly; set
``CIRCWORDS_KERNEL=pure`` to force the pure-Python fallback (used by the
benchmark to compare both).
"""

from __future__ import annotations

import os

from circwords import _kernels_py

if os.environ.get("CIRCWORDS_KERNEL", "auto") == "pure":
    _impl = _kernels_py
else:
    try:
        from circwords import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND

nuc_word = _impl.nuc_word
first_square = _impl.first_square
first_overlap = _impl.first_overlap
circ_square_exists = _impl.circ_square_exists
count_unbordered = _impl.count_unbordered
sum_nuc = _impl.sum_nuc
nuc_histogram = _impl.nuc_histogram
mnuc_scan = _impl.mnuc_scan
beta_uu_scan = _impl.beta_uu_scan
prop1_counterexample = _impl.prop1_counterexample
bordered_short_counterexample = _impl.bordered_short_counterexample
nonprimitive_nuc_counterexample = _impl.nonprimitive_nuc_counterexample
theorem2_first_witness = _impl.theorem2_first_witness
circsf_first_witness = _impl.circsf_first_witness
