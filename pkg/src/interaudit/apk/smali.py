"""Smali disassembly parsing.

Captures class headers, method signatures, and the three instruction
shapes the analysis needs: invocations, integer constants (for resource
id resolution), and everything else verbatim.  Unknown directives never
abort a parse; only a missing .class header is fatal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from ..errors import ParseError


@dataclass(frozen=True)
class Invoke:
    invoke_kind: str  # e.g. "invoke-virtual", "invoke-static/range"
    target_class: str  # dotted form
    target_name: str
    target_descriptor: str
    arg_registers: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "op": "invoke",
            "invoke_kind": self.invoke_kind,
            "target_class": self.target_class,
            "target_name": self.target_name,
            "target_descriptor": self.target_descriptor,
            "arg_registers": list(self.arg_registers),
        }


@dataclass(frozen=True)
class ConstInt:
    register: str
    value: int

    def to_dict(self) -> dict:
        return {"op": "const", "register": self.register, "value": self.value}


@dataclass(frozen=True)
class Other:
    text: str

    def to_dict(self) -> dict:
        return {"op": "other", "text": self.text}


Instruction = Union[Invoke, ConstInt, Other]


def instruction_from_dict(data: dict) -> Instruction:
    op = data.get("op")
    if op == "invoke":
        return Invoke(
            invoke_kind=data["invoke_kind"],
            target_class=data["target_class"],
            target_name=data["target_name"],
            target_descriptor=data["target_descriptor"],
            arg_registers=tuple(data["arg_registers"]),
        )
    if op == "const":
        return ConstInt(register=data["register"], value=data["value"])
    return Other(text=data["text"])


@dataclass(frozen=True)
class SmaliMethod:
    owner_class: str
    name: str
    descriptor: str
    flags: tuple[str, ...]
    instructions: tuple[Instruction, ...]

    @property
    def is_public(self) -> bool:
        return "private" not in self.flags and "protected" not in self.flags

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "descriptor": self.descriptor,
            "flags": list(self.flags),
            "instructions": [i.to_dict() for i in self.instructions],
        }


@dataclass(frozen=True)
class SmaliClass:
    name: str  # dotted form
    super_class: str | None
    interfaces: tuple[str, ...]
    methods: tuple[SmaliMethod, ...]
    source_path: str = "<smali>"

    def method(self, name: str, descriptor: str | None = None) -> SmaliMethod | None:
        for m in self.methods:
            if m.name == name and (descriptor is None or m.descriptor == descriptor):
                return m
        return None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "super_class": self.super_class,
            "interfaces": list(self.interfaces),
            "methods": [m.to_dict() for m in self.methods],
            "source_path": self.source_path,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SmaliClass":
        methods = tuple(
            SmaliMethod(
                owner_class=data["name"],
                name=m["name"],
                descriptor=m["descriptor"],
                flags=tuple(m["flags"]),
                instructions=tuple(instruction_from_dict(i) for i in m["instructions"]),
            )
            for m in data["methods"]
        )
        return cls(
            name=data["name"],
            super_class=data.get("super_class"),
            interfaces=tuple(data.get("interfaces", ())),
            methods=methods,
            source_path=data.get("source_path", "<smali>"),
        )


def jvm_to_dotted(ref: str) -> str:
    """Lcom/foo/Bar; -> com.foo.Bar"""
    if ref.startswith("L") and ref.endswith(";"):
        ref = ref[1:-1]
    return ref.replace("/", ".")


def descriptor_arg_types(descriptor: str) -> list[str]:
    """Argument type descriptors of a (args)ret method descriptor."""
    if not descriptor.startswith("("):
        return []
    args = descriptor[1 : descriptor.find(")")]
    types = []
    i = 0
    while i < len(args):
        start = i
        while i < len(args) and args[i] == "[":
            i += 1
        if i < len(args) and args[i] == "L":
            end = args.find(";", i)
            if end < 0:
                break
            i = end + 1
        else:
            i += 1
        types.append(args[start:i])
    return types


_METHOD_RE = re.compile(r"^\.method\s+((?:[a-z][\w-]*\s+)*)([^\s(]+)(\([^)]*\)\S+)\s*$")
_INVOKE_RE = re.compile(
    r"^(invoke-[a-z]+(?:/range)?)\s*\{([^}]*)\}\s*,\s*(L[^;]+;)->([^\s(]+)(\([^)]*\)\S+)\s*$"
)
_CONST_RE = re.compile(
    r"^const(?:/4|/16|/high16)?\s+([vp]\d+)\s*,\s*(-?0x[0-9a-fA-F]+|-?\d+)\s*$"
)
_REG_RANGE_RE = re.compile(r"^([vp])(\d+)\s*\.\.\s*[vp](\d+)$")


def _parse_registers(raw: str) -> tuple[str, ...]:
    raw = raw.strip()
    if not raw:
        return ()
    m = _REG_RANGE_RE.match(raw)
    if m:
        prefix, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
        if hi < lo or hi - lo > 255:
            return ()
        return tuple(f"{prefix}{i}" for i in range(lo, hi + 1))
    return tuple(r.strip() for r in raw.split(",") if r.strip())


def parse_smali(text: str, path: str = "<smali>") -> SmaliClass:
    class_name = None
    super_class = None
    interfaces: list[str] = []
    methods: list[SmaliMethod] = []

    current: dict | None = None  # name, descriptor, flags, instructions

    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue

        if line.startswith(".class"):
            token = line.split()[-1]
            if token.startswith("L") and token.endswith(";"):
                class_name = jvm_to_dotted(token)
            continue
        if line.startswith(".super"):
            token = line.split()[-1]
            super_class = jvm_to_dotted(token)
            continue
        if line.startswith(".implements"):
            token = line.split()[-1]
            interfaces.append(jvm_to_dotted(token))
            continue

        if line.startswith(".method"):
            m = _METHOD_RE.match(line)
            if m:
                current = {
                    "flags": tuple(m.group(1).split()),
                    "name": m.group(2),
                    "descriptor": m.group(3),
                    "instructions": [],
                }
            continue
        if line.startswith(".end method"):
            if current is not None and class_name is not None:
                methods.append(
                    SmaliMethod(
                        owner_class=class_name,
                        name=current["name"],
                        descriptor=current["descriptor"],
                        flags=current["flags"],
                        instructions=tuple(current["instructions"]),
                    )
                )
            current = None
            continue

        if current is None:
            continue

        m = _INVOKE_RE.match(line)
        if m:
            current["instructions"].append(
                Invoke(
                    invoke_kind=m.group(1),
                    target_class=jvm_to_dotted(m.group(3)),
                    target_name=m.group(4),
                    target_descriptor=m.group(5),
                    arg_registers=_parse_registers(m.group(2)),
                )
            )
            continue
        m = _CONST_RE.match(line)
        if m:
            try:
                value = int(m.group(2), 0)
            except ValueError:
                current["instructions"].append(Other(text=line))
                continue
            current["instructions"].append(ConstInt(register=m.group(1), value=value))
            continue
        current["instructions"].append(Other(text=line))

    if class_name is None:
        raise ParseError("smali file has no .class header", path=path)

    return SmaliClass(
        name=class_name,
        super_class=super_class,
        interfaces=tuple(interfaces),
        methods=tuple(methods),
        source_path=path,
    )
