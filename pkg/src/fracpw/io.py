"""JSON / CSV serialisation with atomic writes and provenance headers."""
import csv
import hashlib
import io as _io
import json
import os
import tempfile

import numpy as np

from . import __version__
from .errors import InvalidArgument
from .pwcore import FracPWFunction, SpectralDensity, make_params
from .quadrature import build_grid
from .sampling import SampleSet


def config_hash(config):
    blob = json.dumps(config, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def header_line(config, grid=None):
    gspec = "none" if grid is None else ",".join(
        f"{k}={v}" for k, v in grid.spec().items())
    return f"# fracpw {__version__} config={config_hash(config)} grid={gspec}"


def atomic_write(path, text):
    """Write via a temp file in the same directory and rename over ``path``."""
    path = os.fspath(path)
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(path, obj):
    atomic_write(path, dumps_json(obj))


def _csv_text(header_comment, columns, rows):
    buf = _io.StringIO()
    if header_comment:
        buf.write(header_comment + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v
                    for v in r])
    return buf.getvalue()


def eval_csv_text(z, values, header_comment=None):
    """Columns x,re,im for real points, else re_z,im_z,re_f,im_f."""
    z = np.asarray(z, dtype=np.complex128).ravel()
    v = np.asarray(values, dtype=np.complex128).ravel()
    if np.all(z.imag == 0):
        cols = ["x", "re", "im"]
        rows = zip(z.real, v.real, v.imag)
    else:
        cols = ["re_z", "im_z", "re_f", "im_f"]
        rows = zip(z.real, z.imag, v.real, v.imag)
    return _csv_text(header_comment, cols, rows)


def write_eval_csv(path, z, values, header_comment=None):
    atomic_write(path, eval_csv_text(z, values, header_comment))


def kernel_csv_text(points, header_comment=None):
    cols = ["re_w", "im_w", "re_z", "im_z", "re_K", "im_K"]
    rows = [(p.w.real, p.w.imag, p.z.real, p.z.imag, p.value.real, p.value.imag)
            for p in points]
    return _csv_text(header_comment, cols, rows)


def write_kernel_csv(path, points, header_comment=None):
    atomic_write(path, kernel_csv_text(points, header_comment))


def read_csv_rows(path):
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    return reader.fieldnames, list(reader)


# ------------------------------------------------------------ densities

def function_to_json(f):
    d = f.params.as_dict()
    d["g"] = [[float(v.real), float(v.imag)] for v in f.values]
    d["grid"] = f.grid.spec()
    return d


def function_from_json(d):
    keys = {"a", "s", "p", "g", "grid"}
    extra = set(d) - keys
    if extra:
        raise InvalidArgument(f"unknown keys in density file: {sorted(extra)}")
    params = make_params(d["a"], d["s"], d.get("p", 2.0))
    gspec = d.get("grid", {})
    grid = build_grid(params.a, **gspec)
    vals = np.array([complex(re, im) for re, im in d["g"]])
    return FracPWFunction(params, SpectralDensity(grid, vals))


# ------------------------------------------------------------ samples

def write_samples(path, samples, header_comment=None):
    """CSV n,re,im plus sidecar ``<path>.json`` with a, kind, N."""
    rows = zip(samples.indices, samples.values.real, samples.values.imag)
    atomic_write(path, _csv_text(header_comment, ["n", "re", "im"], rows))
    write_json(sidecar_path(path), {"a": samples.a, "kind": samples.kind,
                                    "N": samples.N})


def sidecar_path(path):
    return os.fspath(path) + ".json"


def read_samples(path, sidecar=None):
    with open(sidecar or sidecar_path(path)) as fh:
        meta = json.load(fh)
    extra = set(meta) - {"a", "kind", "N"}
    if extra:
        raise InvalidArgument(f"unknown keys in sample sidecar: {sorted(extra)}")
    cols, rows = read_csv_rows(path)
    if cols != ["n", "re", "im"]:
        raise InvalidArgument(f"sample CSV must have columns n,re,im, got {cols}")
    N = int(meta["N"])
    vals = np.zeros(2 * N + 1, dtype=np.complex128)
    for r in rows:
        n = int(r["n"])
        if abs(n) > N:
            raise InvalidArgument(f"sample index {n} outside |n| <= {N}")
        vals[n + N] = complex(float(r["re"]), float(r["im"]))
    return SampleSet(float(meta["a"]), meta["kind"], N, vals)


def read_lambdas(path):
    """One real per line (first CSV column); '#' comments and a header allowed."""
    out = []
    with open(path) as fh:
        for ln in fh:
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            tok = ln.split(",")[0]
            try:
                out.append(float(tok))
            except ValueError:
                if out:
                    raise InvalidArgument(f"bad lambda value {tok!r}") from None
    return np.array(out)
