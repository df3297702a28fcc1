"""Plane homeomorphism verifier bindings."""

try:
    from ._c1homeo import *  # noqa: F401,F403
    from ._c1homeo import __doc__  # noqa: F401
except ImportError:  # extension built in-tree, not installed as a package
    from _c1homeo import *  # noqa: F401,F403
    from _c1homeo import __doc__  # noqa: F401
