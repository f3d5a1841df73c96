"""BB84 intercept-resend simulation with PT-symmetric state discrimination.

Thin re-export of the compiled extension. Installed wheels carry the module
inside the package; in-tree builds put it next to the build directory, which
must then be on sys.path.
"""

try:
    from ._ptqkd import *  # noqa: F401,F403
except ImportError:
    from _ptqkd import *  # noqa: F401,F403
