"""Exact computations with Burnside rings, Mackey functors of finite groups,
and truncated Mackey profunctors of the profinite integers."""

__version__ = "0.1.0"
