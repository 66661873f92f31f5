"""Exact theta series, theta operators and mod-p kernel checks."""

try:
    from . import _thetakernel as _ext
except ImportError:  # in-tree build: the extension sits next to the package
    import _thetakernel as _ext

globals().update({name: getattr(_ext, name) for name in dir(_ext) if not name.startswith("_")})

__all__ = [name for name in dir(_ext) if not name.startswith("_")]
