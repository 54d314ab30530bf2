"""Vorticity-preserving finite volume schemes for linear acoustics on polygonal meshes."""

from ._core import (
    ConfigError,
    DegenerateStencil,
    DomainError,
    Mesh,
    MeshError,
    NonFiniteState,
    ParseError,
    SingularNodalSystem,
    __version__,
    check_identities,
    curl,
    divergence,
    exact_fourquadrant_v,
    exact_oblique,
    gradient,
    initialize,
    kernel_dimension,
    make_mesh,
    read_mesh,
    rhs,
    run_config,
    simulate,
    stability_scan,
    symbol,
    write_mesh,
)

__all__ = [name for name in dir() if not name.startswith("_")]
