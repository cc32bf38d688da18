"""Recursion headroom for the recursive walkers."""

import sys
from contextlib import contextmanager


@contextmanager
def stack_room(frames: int):
    """Temporarily raise the interpreter recursion limit to at least ``frames``."""
    old = sys.getrecursionlimit()
    need = frames + 1000
    if need > old:
        sys.setrecursionlimit(need)
    try:
        yield
    finally:
        sys.setrecursionlimit(old)
