"""Kernel backend selection.

Two interchangeable kernel sets exist: the compiled Cython extension
(apmetric._ckernels) and the pure-Python fallback (apmetric._pykernels). The
compiled set is used when importable; set APMETRIC_KERNELS=pure or =compiled to
force one at import time, or switch temporarily with use(). The numeric results
agree between the two; only speed differs.
"""

from __future__ import annotations

import os
import warnings
from contextlib import contextmanager
from typing import TYPE_CHECKING, Iterator

from . import _pykernels
from .errors import InvalidSpecError

if TYPE_CHECKING:
    from .contingency import ContingencyTable

__all__ = ["active_name", "available", "get", "use"]

_compiled = None
_compiled_error: ImportError | None = None
try:
    from . import _ckernels as _compiled  # type: ignore[no-redef]
except ImportError as exc:
    _compiled_error = exc

_BY_NAME = {"pure": _pykernels}
if _compiled is not None:
    _BY_NAME["compiled"] = _compiled


def available() -> tuple[str, ...]:
    """Names of the importable kernel sets."""
    return tuple(_BY_NAME)


def get(name: str | None):
    """Kernel module for a backend name; None or "active" means the current one."""
    if name is None or name == "active":
        return _active
    try:
        return _BY_NAME[name]
    except KeyError:
        known = ", ".join(["active", *_BY_NAME])
        raise InvalidSpecError(f"unknown backend {name!r} (expected one of: {known})") from None


def _select_default():
    forced = os.environ.get("APMETRIC_KERNELS", "").strip().lower()
    if forced == "pure":
        return _pykernels
    if forced == "compiled":
        if _compiled is None:
            raise ImportError(
                "APMETRIC_KERNELS=compiled but the compiled kernels are not importable"
            ) from _compiled_error
        return _compiled
    if forced not in ("", "auto"):
        warnings.warn(
            f"ignoring unknown APMETRIC_KERNELS value {forced!r}", stacklevel=2
        )
    return _compiled if _compiled is not None else _pykernels


_active = _select_default()


def active_name() -> str:
    return _active.NAME


@contextmanager
def use(name: str | None) -> Iterator:
    """Temporarily switch the active backend (not thread-safe during the switch)."""
    global _active
    previous = _active
    _active = get(name)
    try:
        yield _active
    finally:
        _active = previous


def kernels_and_data(table: "ContingencyTable"):
    """Active kernel module plus the table data in the form it expects."""
    kernels = _active
    if kernels.TAKES_ARRAY:
        return kernels, table.as_array()
    return kernels, table.counts
