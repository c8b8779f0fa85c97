"""Size caps.

Every cap can be overridden from the environment with the ``LINEXT_`` prefix
(``LINEXT_CAP_N=80``) or from the command line (``--cap-n 80``).
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields


@dataclass
class Caps:
    n: int = 64                 # largest poset accepted by constructors
    enum: int = 12              # largest poset handed to brute-force enumeration
    ideals: int = 2_000_000     # node budget of the order-ideal DP
    dim: int = 6                # largest intrinsic dimension for exact volume
    mixed_dim: int = 5          # largest dimension for mixed volumes
    minor: int = 8              # largest square minor inspected by the TU check
    free_vars: int = 20         # largest free-coordinate count for 0/1 vertex search

    @classmethod
    def from_env(cls, environ=None) -> "Caps":
        environ = os.environ if environ is None else environ
        caps = cls()
        for f in fields(cls):
            raw = environ.get(f"LINEXT_CAP_{f.name.upper()}")
            if raw is not None:
                setattr(caps, f.name, int(raw))
        return caps

    def validate(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"cap {f.name} must be positive")


CAPS = Caps.from_env()


def set_caps(**kwargs):
    for key, value in kwargs.items():
        if value is None:
            continue
        if not hasattr(CAPS, key):
            raise KeyError(key)
        setattr(CAPS, key, int(value))
    CAPS.validate()
