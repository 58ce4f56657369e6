"""Quantum Liang information flow simulator.

Thin wrapper over the _qliang extension module. When the package is built
with scikit-build-core the extension lives inside the package; when working
from a CMake build tree, _qliang is importable from the build directory.
"""

try:
    from ._qliang import *  # noqa: F401,F403
    from ._qliang import __version__  # noqa: F401
except ImportError:  # build-tree layout
    from _qliang import *  # noqa: F401,F403
    from _qliang import __version__  # noqa: F401
