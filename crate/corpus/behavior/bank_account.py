class InsufficientFunds(Exception):
    pass


class Account:
    """A tiny ledger with an audit trail."""

    rate = 0.01

    def __init__(self, owner, *, balance=0):
        self.owner = owner
        self._balance = balance
        self.history = []

    @property
    def balance(self):
        return self._balance

    def deposit(self, amount):
        if amount <= 0:
            raise ValueError(f"bad amount: {amount!r}")
        self._balance += amount
        self.history.append(('deposit', amount))
        return self

    def withdraw(self, amount):
        try:
            if amount > self._balance:
                raise InsufficientFunds(self.owner)
            self._balance -= amount
        except InsufficientFunds as exc:
            self.history.append(('refused', amount))
            raise RuntimeError('withdrawal refused') from exc
        else:
            self.history.append(('withdraw', amount))
        finally:
            self.history.append(('checked', self._balance))

    @classmethod
    def joint(cls, *owners, **kw):
        return cls(' & '.join(owners), **kw)

    def __repr__(self):
        return f'Account({self.owner!r}, balance={self._balance:.2f})'
