"""Weighted girth of embedded planar digraphs (build in progress)."""
