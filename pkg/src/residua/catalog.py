"""Builtin group constructors and catalog loading."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .group import ConcreteGroup, GroupFormatError, Perm, ResiduaError, build_group, load_group_file


class CatalogError(ResiduaError, ValueError):
    pass


def _cycle(points: Sequence[int], degree: int) -> Perm:
    images = list(range(1, degree + 1))
    for a, b in zip(points, list(points[1:]) + [points[0]]):
        images[a - 1] = b
    return Perm(degree, tuple(images))


def cyclic_gens(n: int) -> tuple[int, list[Perm]]:
    if n < 1:
        raise CatalogError("C_n needs n >= 1")
    return (n, [_cycle(range(1, n + 1), n)] if n > 1 else [])


def dihedral_gens(order: int) -> tuple[int, list[Perm]]:
    """Dihedral group of the given order (``D8`` has order 8)."""
    if order < 4 or order % 2:
        raise CatalogError(f"dihedral order must be even and >= 4, got {order}")
    n = order // 2
    if n == 2:
        return 4, [_cycle((1, 2), 4), _cycle((3, 4), 4)]
    refl = Perm(n, tuple(((n + 1 - k) % n) + 1 for k in range(1, n + 1)))
    return n, [_cycle(range(1, n + 1), n), refl]


def quaternion_gens() -> tuple[int, list[Perm]]:
    # regular representation on 8 points
    i = Perm(8, (2, 3, 4, 1, 6, 7, 8, 5))
    j = Perm(8, (5, 8, 7, 6, 3, 2, 1, 4))
    return 8, [i, j]


def symmetric_gens(n: int) -> tuple[int, list[Perm]]:
    if not 1 <= n <= 5:
        raise CatalogError("S_n is available for 1 <= n <= 5")
    if n == 1:
        return 1, []
    if n == 2:
        return 2, [_cycle((1, 2), 2)]
    return n, [_cycle(range(1, n + 1), n), _cycle((1, 2), n)]


def alternating_gens(n: int) -> tuple[int, list[Perm]]:
    if not 1 <= n <= 5:
        raise CatalogError("A_n is available for 1 <= n <= 5")
    if n < 3:
        return n, []
    return n, [_cycle((k, k + 1, k + 2), n) for k in range(1, n - 1)]


def direct_product_gens(parts: Sequence[tuple[int, list[Perm]]]) -> tuple[int, list[Perm]]:
    """Generators of a direct product acting on disjoint point blocks."""
    degree = sum(d for d, _ in parts)
    gens = []
    offset = 0
    for d, ps in parts:
        for p in ps:
            images = list(range(1, degree + 1))
            for k, v in enumerate(p.images):
                images[offset + k] = offset + v
            gens.append(Perm(degree, tuple(images)))
        offset += d
    return degree, gens


_ATOM = re.compile(r"^(C|D|S|A)(\d+)$|^Q8$")


def _atom_gens(token: str) -> tuple[int, list[Perm]]:
    m = _ATOM.match(token)
    if m is None:
        raise CatalogError(f"unknown builtin group {token!r}")
    if token == "Q8":
        return quaternion_gens()
    kind, n = m.group(1), int(m.group(2))
    if kind == "C":
        return cyclic_gens(n)
    if kind == "D":
        return dihedral_gens(n)
    if kind == "S":
        return symmetric_gens(n)
    return alternating_gens(n)


def builtin_gens(name: str) -> tuple[int, list[Perm]]:
    """Generators for names like ``C6``, ``D8``, ``Q8``, ``S4``, ``A4`` or ``S3 x C2``."""
    tokens = [t for t in re.split(r"\s*x\s*", name.strip())]
    if not tokens or any(not t for t in tokens):
        raise CatalogError(f"bad group name {name!r}")
    parts = [_atom_gens(t) for t in tokens]
    return parts[0] if len(parts) == 1 else direct_product_gens(parts)


def builtin(name: str, max_order: Optional[int] = None) -> ConcreteGroup:
    degree, gens = builtin_gens(name)
    return build_group(gens, degree=degree, max_order=max_order)


@dataclass
class CatalogEntry:
    name: str
    source: str
    path: Optional[Path] = None
    _group: Optional[ConcreteGroup] = field(default=None, repr=False, compare=False)

    @property
    def group(self) -> ConcreteGroup:
        if self._group is None:
            self._group = load_group_file(self.path) if self.path else builtin(self.source)
        return self._group


def default_catalog_names() -> list[str]:
    data = resources.files("residua").joinpath("data/default_catalog.json").read_text()
    return list(json.loads(data)["groups"])


def resolve_entry(spec: str | dict) -> CatalogEntry:
    """A catalog item: a builtin name, a path to a group file, or
    ``{"name": ..., "file": ...}``."""
    if isinstance(spec, dict):
        if "file" in spec:
            path = Path(spec["file"])
            return CatalogEntry(spec.get("name", path.stem), "file", path)
        if "builtin" in spec:
            return CatalogEntry(spec.get("name", spec["builtin"]), spec["builtin"])
        raise CatalogError(f"catalog entry needs 'file' or 'builtin': {spec!r}")
    path = Path(spec)
    if path.suffix and path.is_file():
        return CatalogEntry(path.stem, "file", path)
    builtin_gens(spec)  # validate the name early
    return CatalogEntry(spec, spec)


def load_catalog(config: Optional[dict] = None, build: bool = True) -> list[CatalogEntry]:
    """Entries from ``config["groups"]`` (default: the pinned catalog).

    With ``build`` the groups are enumerated immediately so that cap and
    parse errors surface here.
    """
    items = (config or {}).get("groups") or default_catalog_names()
    entries = []
    names = set()
    for item in items:
        entry = resolve_entry(item)
        if entry.name in names:
            raise CatalogError(f"duplicate catalog name {entry.name!r}")
        names.add(entry.name)
        entries.append(entry)
    if build:
        for entry in entries:
            try:
                entry.group
            except GroupFormatError as exc:
                raise CatalogError(f"{entry.name}: {exc}") from exc
    return entries


def load_config(path: Optional[str | Path]) -> dict:
    if path is None:
        return {}
    try:
        cfg = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise CatalogError("config must be a JSON object")
    base = Path(path).parent
    groups = []
    for item in cfg.get("groups", []):
        if isinstance(item, dict) and "file" in item and not Path(item["file"]).is_absolute():
            item = dict(item, file=str(base / item["file"]))
        groups.append(item)
    if groups:
        cfg["groups"] = groups
    return cfg
