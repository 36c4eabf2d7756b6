import abc


class Base(abc.ABC):
    registry = {}

    @abc.abstractmethod
    def area(self):
        pass

    @classmethod
    def register(cls, name):
        cls.registry[name] = cls
        return cls


class Square(Base, metaclass=abc.ABCMeta):

    def __init__(self, side):
        self.side = side

    def area(self):
        return self.side ** 2
