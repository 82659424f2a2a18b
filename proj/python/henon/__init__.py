"""Python access to the henon library."""

try:
    from ._henon import *  # noqa: F401,F403
    from ._henon import HenonError
except ImportError:  # build tree: extension sits next to the package
    from _henon import *  # noqa: F401,F403
    from _henon import HenonError

__all__ = [name for name in dir() if not name.startswith("_")]
