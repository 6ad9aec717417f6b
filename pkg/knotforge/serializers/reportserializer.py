from typing import Mapping, Any

from ..report import ReportNode


class ReportSerializer:
    __slots__ = "identifier_name", "children_name"

    def __init__(self, identifier_name: str = "identifier", children_name: str = "children"):
        """
        Convert reports to ReportNode trees and trees to nested dictionaries.

        :param identifier_name: Key holding the node identifier in dicts
        :param children_name: Key holding the list of children in dicts
        """
        if identifier_name == children_name:
            raise ValueError("identifier_name and children_name must differ")
        self.identifier_name = identifier_name
        self.children_name = children_name

    def to_tree(self, report: Any, identifier: str = None) -> ReportNode:
        """
        Build a tree from a report or any JSON-like document.

        Nested mappings and lists of mappings become children; everything else
        becomes node data. List items are identified by their "name" field when
        they have one, else by position.

        :param report: Object with to_json(), or a mapping
        :param identifier: Identifier of the root
        :return: Root node
        """
        if identifier is None:
            identifier = "report" if isinstance(report, Mapping) else type(report).__name__
        data = report.to_json() if hasattr(report, "to_json") else report
        tree = ReportNode(identifier)
        stack = [(tree, data)]
        while stack:
            node, mapping = stack.pop()
            for key, value in mapping.items():
                if isinstance(value, Mapping):
                    stack.append((node.add_child(ReportNode(key)), value))
                elif isinstance(value, list) and value and all(isinstance(item, Mapping) for item in value):
                    container = node.add_child(ReportNode(key))
                    for index, item in enumerate(value):
                        label = item.get("name", f"{key}[{index}]")
                        stack.append((container.add_child(ReportNode(label)), item))
                else:
                    node.data[key] = value
        return tree

    def to_dict(self, tree: ReportNode) -> Mapping:
        """
        Convert tree to a nested dictionary.

        :param tree: Root node
        :return: {identifier, **data, children: [...]}
        """
        node_name, children_name = self.identifier_name, self.children_name
        last_mapping = {node_name: tree.identifier, **tree.data}
        stack = [last_mapping]
        for node, item in tree.descendants.preorder():
            if item.depth > len(stack):
                stack.append(last_mapping)
            else:
                while item.depth < len(stack):
                    stack.pop()
            last_mapping = {node_name: node.identifier, **node.data}
            parent = stack[-1]
            parent.setdefault(children_name, []).append(last_mapping)
        return stack[0]

    def from_dict(self, data: Mapping) -> ReportNode:
        """
        Load tree from a nested dictionary written by to_dict.

        :param data: Dictionary in which tree is stored
        :return: Root node
        """
        node_name, children_name = self.identifier_name, self.children_name
        tree = ReportNode(data[node_name], {k: v for k, v in data.items() if k not in (node_name, children_name)})
        stack = [(tree, iter(data.get(children_name, ())))]
        while stack:
            parent, children = stack[-1]
            data_node = next(children, None)
            if data_node is None:
                stack.pop()
                continue
            fields = {k: v for k, v in data_node.items() if k not in (node_name, children_name)}
            node = parent.add_child(ReportNode(data_node[node_name], fields))
            if data_node.get(children_name):
                stack.append((node, iter(data_node[children_name])))
        return tree
