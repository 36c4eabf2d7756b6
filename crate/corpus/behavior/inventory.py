from dataclasses import dataclass, field


@dataclass(order=True)
class Item:
    price: float
    name: str = field(compare=False)
    tags: list = field(default_factory=list, compare=False)


class Inventory:
    def __init__(self):
        self.items = {}

    def add(self, *items):
        for item in items:
            self.items[item.name] = item

    def cheapest(self, n=1):
        return [i.name for i in sorted(self.items.values())[:n]]

    def tagged(self, tag):
        return {name for name, item in self.items.items() if tag in item.tags}

    def total(self):
        return round(sum(i.price for i in self.items.values()), 2)

    def __len__(self):
        return len(self.items)

    def __contains__(self, name):
        return name in self.items
