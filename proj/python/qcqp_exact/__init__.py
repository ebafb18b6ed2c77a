"""QCQP modeling, Shor-SDP dual solving and exactness certification."""

try:
    from ._core import *  # noqa: F401,F403  (installed-wheel layout)
    from . import _core as _core  # noqa: F401
except ImportError:  # pragma: no cover - development layout
    from _core import *  # noqa: F401,F403
    import _core  # noqa: F401

__version__ = "0.1.0"
