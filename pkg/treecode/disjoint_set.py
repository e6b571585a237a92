from typing import Dict, Generic, Hashable, Iterable, TypeVar

T = TypeVar("T", bound=Hashable)


class DisjointSet(Generic[T]):
    """
    Disjoint-set forest with union by rank and path compression.

    Each set additionally carries a payload (``tag``) that survives merges; the caller decides
    which payload wins. The Elder rule uses it to remember the oldest leaf of each component.

    Examples:
        >>> ds = DisjointSet(["a", "b", "c"])
        >>> ds.union("a", "c")
        'a'
        >>> ds.find("c") == ds.find("a")
        True
    """

    def __init__(self, elements: Iterable[T] = ()):
        self._parent: Dict[T, T] = {}
        self._rank: Dict[T, int] = {}
        self._tag: Dict[T, object] = {}
        for e in elements:
            self.add(e)

    def __contains__(self, x) -> bool:
        return x in self._parent

    def __len__(self) -> int:
        return len(self._parent)

    def add(self, x: T, tag: object = None) -> None:
        if x in self._parent:
            raise KeyError(f"Element {x!r} is already present")
        self._parent[x] = x
        self._rank[x] = 0
        self._tag[x] = x if tag is None else tag

    def find(self, x: T) -> T:
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, x: T, y: T, tag: object = None) -> T:
        """
        Merge the sets containing ``x`` and ``y`` and return the new representative.

        :param tag: payload of the merged set; defaults to the payload of ``x``'s set.
        """
        x_root, y_root = self.find(x), self.find(y)
        if tag is None:
            tag = self._tag[x_root]
        if x_root == y_root:
            self._tag[x_root] = tag
            return x_root
        if self._rank[x_root] < self._rank[y_root]:
            x_root, y_root = y_root, x_root
        self._parent[y_root] = x_root
        if self._rank[x_root] == self._rank[y_root]:
            self._rank[x_root] += 1
        self._tag[x_root] = tag
        del self._tag[y_root]
        return x_root

    def tag(self, x: T) -> object:
        return self._tag[self.find(x)]

    def groups(self) -> Dict[T, list]:
        result: Dict[T, list] = {}
        for e in self._parent:
            result.setdefault(self.find(e), []).append(e)
        return result
