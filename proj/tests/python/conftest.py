import os
import sys

# Development wiring: the build tree exports the extension module location and
# the CLI path through environment variables (see tests/CMakeLists.txt).
_module_dir = os.environ.get("QCQP_EXACT_MODULE_DIR")
_pypkg_dir = os.environ.get("QCQP_EXACT_PYPKG")
for p in (_module_dir, _pypkg_dir):
    if p and p not in sys.path:
        sys.path.insert(0, p)
