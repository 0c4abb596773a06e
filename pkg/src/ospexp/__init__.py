"""Exact computations with exponential modules of osp(1|2)."""
