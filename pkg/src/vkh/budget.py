"""Configurable cap on exhaustive state enumeration."""

from __future__ import annotations

import os

from vkh.errors import ResourceLimit

DEFAULT_STATE_BUDGET = 1 << 16


def state_budget() -> int:
    raw = os.environ.get("VKH_STATE_BUDGET")
    if not raw:
        return DEFAULT_STATE_BUDGET
    try:
        return int(raw, 0)
    except ValueError:
        return DEFAULT_STATE_BUDGET


def check_states(n: int, budget: int | None = None) -> None:
    """Raise ResourceLimit when a 2**n enumeration exceeds the budget."""
    limit = state_budget() if budget is None else budget
    if (1 << n) > limit:
        raise ResourceLimit(f"2^{n} states exceed the state budget of {limit} (set VKH_STATE_BUDGET)")
