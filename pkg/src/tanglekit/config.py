from __future__ import annotations

import contextlib
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    # rank tables are one byte per subset
    table_max: int = 22
    # whole-powerset scans (lambda tables, separations, connectivity)
    scan_max: int = 16
    # node budget for the recursive breadth-critical search
    critical_nodes: int = 20000


_caps = Caps()


def caps() -> Caps:
    return _caps


def set_caps(**kwargs) -> Caps:
    global _caps
    _caps = replace(_caps, **kwargs)
    return _caps


@contextlib.contextmanager
def override_caps(**kwargs):
    global _caps
    saved = _caps
    _caps = replace(_caps, **kwargs)
    try:
        yield _caps
    finally:
        _caps = saved
