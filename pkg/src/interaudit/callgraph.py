"""Class-hierarchy-aware static call graph over an app's smali methods.

Replaces heavyweight dataflow tooling: the checker only needs to know
which analytics calls a callback can reach, so a CHA call graph with
bounded breadth-first reachability is enough.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .apk.model import AppModel
from .apk.smali import Invoke


@dataclass(frozen=True, order=True)
class MethodRef:
    owner: str
    name: str
    descriptor: str

    def __str__(self):
        return f"{self.owner}.{self.name}{self.descriptor}"

    def to_dict(self) -> dict:
        return {"owner": self.owner, "name": self.name, "descriptor": self.descriptor}


class CallGraph:
    def __init__(self, app: AppModel):
        self._app = app
        self._subclasses = self._build_subclass_map(app)
        self._edges: dict[MethodRef, tuple[MethodRef, ...]] = {}
        self._build_edges(app)

    @staticmethod
    def _build_subclass_map(app: AppModel) -> dict[str, set[str]]:
        subclasses: dict[str, set[str]] = {}
        for cls in app.classes.values():
            parents = list(cls.interfaces)
            if cls.super_class:
                parents.append(cls.super_class)
            for parent in parents:
                subclasses.setdefault(parent, set()).add(cls.name)
        # close transitively
        changed = True
        while changed:
            changed = False
            for parent, subs in subclasses.items():
                extra = set()
                for sub in subs:
                    extra |= subclasses.get(sub, set())
                if not extra <= subs:
                    subs |= extra
                    changed = True
        return subclasses

    def _lookup(self, class_name: str, name: str, descriptor: str) -> MethodRef | None:
        """Find a method in the class or its in-app super chain."""
        seen = set()
        current = class_name
        while current and current in self._app.classes and current not in seen:
            seen.add(current)
            cls = self._app.classes[current]
            if cls.method(name, descriptor) is not None:
                return MethodRef(current, name, descriptor)
            current = cls.super_class
        return None

    def resolve(self, invoke: Invoke) -> list[MethodRef]:
        targets = set()
        direct = self._lookup(invoke.target_class, invoke.target_name, invoke.target_descriptor)
        if direct is not None:
            targets.add(direct)
        if invoke.invoke_kind.startswith(("invoke-virtual", "invoke-interface")):
            for sub in self._subclasses.get(invoke.target_class, ()):
                cls = self._app.classes.get(sub)
                if cls is not None and cls.method(invoke.target_name, invoke.target_descriptor):
                    targets.add(MethodRef(sub, invoke.target_name, invoke.target_descriptor))
        return sorted(targets)

    def _build_edges(self, app: AppModel):
        for cls in app.classes.values():
            for method in cls.methods:
                ref = MethodRef(cls.name, method.name, method.descriptor)
                callees = set()
                for instr in method.instructions:
                    if isinstance(instr, Invoke):
                        callees.update(self.resolve(instr))
                self._edges[ref] = tuple(sorted(callees))

    def callees(self, ref: MethodRef) -> tuple[MethodRef, ...]:
        return self._edges.get(ref, ())

    def reachable(self, start: MethodRef, max_edges: int) -> dict[MethodRef, tuple[MethodRef, ...]]:
        """Methods reachable from start within max_edges call edges.

        Returns shortest call chains keyed by method, start included with
        a chain of length one.
        """
        chains = {start: (start,)}
        queue = deque([(start, 0)])
        while queue:
            current, depth = queue.popleft()
            if depth >= max_edges:
                continue
            for callee in self.callees(current):
                if callee not in chains:
                    chains[callee] = chains[current] + (callee,)
                    queue.append((callee, depth + 1))
        return chains
