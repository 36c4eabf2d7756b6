def test_deposit_chain():
    a = Account('ann').deposit(10).deposit(5)
    assert a.balance == 15

def test_refused():
    a = Account('bob', balance=3)
    try:
        a.withdraw(5)
    except RuntimeError as e:
        assert isinstance(e.__cause__, InsufficientFunds)
    assert a.history == [('refused', 5), ('checked', 3)]

def test_joint_repr():
    assert repr(Account.joint('a', 'b', balance=2)) == "Account('a & b', balance=2.00)"

def test_bad_amount():
    Account('c').deposit(-1)
