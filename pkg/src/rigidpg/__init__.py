"""Search and exclusion toolkit for rigid-type partial geometries with abelian Singer groups."""

__version__ = "0.1.0"
