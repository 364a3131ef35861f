"""Modules over bound quiver algebras as quiver representations."""
from .module import *  # noqa: F401,F403
from .module import __all__ as _module_all
from .decompose import *  # noqa: F401,F403
from .decompose import __all__ as _decompose_all

__all__ = list(_module_all) + list(_decompose_all)
