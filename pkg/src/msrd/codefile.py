"""Line-oriented text format for codes.

::

    msrd-code 1
    field p=3 e=1 m=2 submod=0,1 extmod=1,0,1
    gamma 1,3                 (optional; omitted for the polynomial basis)
    profile (2,2) (2,2)
    partition 2,2             (optional; F_{q^m}-linear codes only)
    meta key=value ...        (optional)
    genmat 2 4                (either this ...)
    1 3 1 3
    1 6 4 7
    basis 4                   (... or this: tuples separated by blank lines,
    0 1                        blocks within a tuple by ';' lines)
    ...

Element codes are the canonical integers used throughout the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from msrd.codes import FqLinearCode, FqmLinearCode, to_fq_linear
from msrd.gf import FieldTower
from msrd.sumrank import BlockProfile, LengthPartition, MatrixTuple

MAGIC = "msrd-code 1"


class ParseError(ValueError):
    pass


@dataclass
class CodeFile:
    tower: FieldTower
    profile: BlockProfile
    partition: LengthPartition | None = None
    genmat: tuple[tuple[int, ...], ...] | None = None
    basis: tuple[MatrixTuple, ...] | None = None
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if (self.genmat is None) == (self.basis is None):
            raise ValueError("exactly one of genmat and basis must be given")
        if self.genmat is not None and self.partition is None:
            raise ValueError("a generator matrix needs a length partition")

    @classmethod
    def from_code(cls, code, meta=None) -> CodeFile:
        meta = dict(meta or {})
        if isinstance(code, FqmLinearCode):
            return cls(code.tower, code.partition.profile(), code.partition, genmat=code.genmat, meta=meta)
        return cls(code.tower, code.profile, basis=tuple(code.basis), meta=meta)

    def fqm_code(self) -> FqmLinearCode | None:
        if self.genmat is None:
            return None
        return FqmLinearCode(self.tower, self.partition, self.genmat)

    def fq_code(self) -> FqLinearCode:
        if self.genmat is not None:
            return to_fq_linear(self.fqm_code())
        return FqLinearCode(self.tower, self.profile, self.basis)


def _ints(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in s.split(",")) if s else ()


def _csv(xs) -> str:
    return ",".join(str(int(x)) for x in xs)


def serialize(cf: CodeFile) -> str:
    t = cf.tower
    out = [MAGIC, f"field p={t.p} e={t.e} m={t.m} submod={_csv(t.sub_modulus)} extmod={_csv(t.ext_modulus)}"]
    if t.gamma != tuple(t.q**i for i in range(t.m)):
        out.append(f"gamma {_csv(t.gamma)}")
    out.append(f"profile {cf.profile}")
    if cf.partition is not None:
        out.append(f"partition {_csv(cf.partition.n)}")
    if cf.meta:
        out.append("meta " + " ".join(f"{k}={v}" for k, v in cf.meta.items()))
    if cf.genmat is not None:
        out.append(f"genmat {len(cf.genmat)} {cf.partition.length}")
        out.extend(" ".join(str(x) for x in row) for row in cf.genmat)
    else:
        out.append(f"basis {len(cf.basis)}")
        for i, b in enumerate(cf.basis):
            if i:
                out.append("")
            for j, blk in enumerate(b.blocks):
                if j:
                    out.append(";")
                out.extend(" ".join(str(x) for x in row) for row in blk)
    return "\n".join(out) + "\n"


_PROFILE_RE = re.compile(r"\((\d+),(\d+)\)")


def parse(text: str) -> CodeFile:
    try:
        return _parse(text.splitlines())
    except ParseError:
        raise
    except (ValueError, IndexError, KeyError) as exc:
        raise ParseError(str(exc)) from exc


def _parse(lines: list[str]) -> CodeFile:
    pos = 0

    def take() -> str:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError("unexpected end of file")
        pos += 1
        return lines[pos - 1]

    if take().strip() != MAGIC:
        raise ParseError(f"missing header {MAGIC!r}")
    kw, _, rest = take().partition(" ")
    if kw != "field":
        raise ParseError("expected field line")
    f = dict(tok.split("=", 1) for tok in rest.split())
    p, e, m = int(f["p"]), int(f["e"]), int(f["m"])
    submod, extmod = _ints(f["submod"]), _ints(f["extmod"])
    gamma = None
    line = take()
    if line.startswith("gamma "):
        gamma = _ints(line[6:].strip())
        line = take()
    tower = FieldTower(p, e, m, submod, extmod, gamma)
    if not line.startswith("profile"):
        raise ParseError("expected profile line")
    body = line[len("profile") :].strip()
    blocks = tuple((int(a), int(b)) for a, b in _PROFILE_RE.findall(body))
    if _PROFILE_RE.sub("", body).strip():
        raise ParseError(f"malformed profile {body!r}")
    profile = BlockProfile(blocks)
    partition = None
    meta: dict[str, str] = {}
    line = take()
    if line.startswith("partition "):
        partition = LengthPartition(_ints(line[10:].strip()), m)
        if partition.profile() != profile:
            raise ParseError("partition disagrees with profile")
        line = take()
    if line.startswith("meta "):
        meta = dict(tok.split("=", 1) for tok in line[5:].split())
        line = take()
    head = line.split()
    if head[0] == "genmat":
        k, n = int(head[1]), int(head[2])
        if partition is None or n != partition.length:
            raise ParseError("generator body needs a matching partition line")
        rows = []
        for _ in range(k):
            row = tuple(int(x) for x in take().split())
            if len(row) != n or any(not 0 <= x < tower.order for x in row):
                raise ParseError("bad generator row")
            rows.append(row)
        cf = CodeFile(tower, profile, partition, genmat=tuple(rows), meta=meta)
    elif head[0] == "basis":
        k = int(head[1])
        basis = []
        for i in range(k):
            if i and take().strip():
                raise ParseError("expected blank line between basis tuples")
            blks = []
            for j, (bm, bn) in enumerate(profile):
                if j and take().strip() != ";":
                    raise ParseError("expected ';' between blocks")
                rows = [tuple(int(x) for x in take().split()) for _ in range(bm)]
                if any(len(r) != bn for r in rows):
                    raise ParseError("block row of wrong length")
                arr = np.array(rows, dtype=np.int64).reshape(bm, bn)
                if arr.size and (arr.min() < 0 or arr.max() >= tower.q):
                    raise ParseError("basis entry outside GF(q)")
                blks.append(arr)
            basis.append(MatrixTuple(tower.sub, blks))
        cf = CodeFile(tower, profile, partition, basis=tuple(basis), meta=meta)
    else:
        raise ParseError(f"unknown body {head[0]!r}")
    if any(x.strip() for x in lines[pos:]):
        raise ParseError("trailing content after body")
    return cf


def read(path) -> CodeFile:
    with open(path) as fh:
        return parse(fh.read())


def write(path, cf: CodeFile) -> None:
    with open(path, "w") as fh:
        fh.write(serialize(cf))


def to_json(cf: CodeFile) -> dict:
    t = cf.tower
    out = {
        "field": {"p": t.p, "e": t.e, "m": t.m, "q": t.q, "submod": list(t.sub_modulus), "extmod": list(t.ext_modulus), "gamma": list(t.gamma)},
        "profile": [list(b) for b in cf.profile],
        "meta": cf.meta,
    }
    if cf.partition is not None:
        out["partition"] = list(cf.partition.n)
    if cf.genmat is not None:
        out["genmat"] = [list(r) for r in cf.genmat]
    else:
        out["basis"] = [[b.tolist() for b in x.blocks] for x in cf.basis]
    return out
