import glob
import importlib.util
import os
import sys

# ctest points this at the freshly built module; load it by file so neither
# an installed copy nor an editable-install finder can shadow it.
_build = os.environ.get("TFSE_PYTHONPATH")
if _build:
    found = glob.glob(os.path.join(_build, "tfse*.so")) + glob.glob(os.path.join(_build, "tfse*.pyd"))
    if not found:
        raise RuntimeError(f"no tfse extension in {_build}")
    spec = importlib.util.spec_from_file_location("tfse", found[0])
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    sys.modules["tfse"] = module


def pytest_report_header(config):
    import tfse

    return f"tfse module: {tfse.__file__}"
