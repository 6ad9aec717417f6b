from typing import Mapping, Optional, List, Any

from abstracttree import Tree, print_tree, to_string

from .exceptions import DuplicateChildError


class ReportNode(Tree):
    """Node of a verification report.

    Each node has an identifier unique among its siblings and a dict of data
    (claims, witness values, verdicts). Trees are built once and then only read.
    """
    __slots__ = "identifier", "data", "_parent", "_children"

    def __init__(self, identifier: Any = None, data: Mapping = None, children=()):
        self.identifier = identifier
        self.data = dict(data or {})
        self._parent: Optional["ReportNode"] = None
        self._children: dict = {}
        for child in children:
            self.add_child(child)

    def __repr__(self):
        return f"{self.__class__.__name__}({self.identifier!r})"

    def __str__(self):
        if not self.data:
            return str(self.identifier)
        summary = ", ".join(f"{key}={value}" for key, value in self.data.items())
        return f"{self.identifier}: {summary}"

    @property
    def parent(self) -> Optional["ReportNode"]:
        return self._parent

    @property
    def children(self) -> List["ReportNode"]:
        return list(self._children.values())

    def __getitem__(self, identifier) -> "ReportNode":
        return self._children[identifier]

    def __contains__(self, identifier) -> bool:
        return identifier in self._children

    __iter__ = None

    def add_child(self, node: "ReportNode") -> "ReportNode":
        if node.identifier in self._children:
            raise DuplicateChildError(self.identifier, node.identifier)
        node._parent = self
        self._children[node.identifier] = node
        return node

    def show(self, *args, **kwargs):
        """Print this tree. Shortcut for print(tree.to_string())."""
        print_tree(self, *args, **kwargs)

    def to_string(self, *args, **kwargs) -> str:
        """Render this tree as text."""
        return to_string(self, *args, **kwargs)
