"""Persistent reference curves, one per (bundle, knot class).

The registry is a directory of code files.  Registration is first-writer-wins:
the file is written under a temporary name and hard-linked into place, so a
concurrent second writer fails cleanly and readers never see partial files.
"""

from __future__ import annotations

import hashlib
import os
import re
import tempfile
from pathlib import Path

from .codeio import format_code, parse_code
from .diagram import DiagramCode, knot_class
from .group_core import format_element

ENV_VAR = "FRAMEDKNOTS_REGISTRY"


def component_key(code: DiagramCode) -> str:
    s = code.spec
    cls = format_element(knot_class(code))
    slug = re.sub(r"[^A-Za-z0-9]+", "_", cls).strip("_") or "1"
    digest = hashlib.sha1(f"{s.surface.genus},{s.surface.punctures},{s.euler}:{cls}".encode()).hexdigest()[:12]
    return f"g{s.surface.genus}p{s.surface.punctures}e{s.euler}-{slug[:40]}-{digest}"


class Registry:
    def __init__(self, root):
        self.root = Path(root)

    @classmethod
    def from_env(cls, path=None):
        path = path or os.environ.get(ENV_VAR)
        return cls(path) if path else None

    def path_for(self, code: DiagramCode) -> Path:
        return self.root / (component_key(code) + ".code")

    def lookup(self, code: DiagramCode):
        p = self.path_for(code)
        if not p.exists():
            return None
        return parse_code(p.read_text(), str(p))

    def register(self, code: DiagramCode):
        """Store ``code`` unless a reference exists; returns ``(reference, key, created)``."""
        self.root.mkdir(parents=True, exist_ok=True)
        target = self.path_for(code)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(format_code(code))
            try:
                os.link(tmp, target)
                created = True
            except FileExistsError:
                created = False
        finally:
            os.unlink(tmp)
        return parse_code(target.read_text(), str(target)), target.stem, created
