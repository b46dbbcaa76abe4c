import pytest

from b21parity.errors import InputTooLarge
from b21parity.gf2series import bt_parity
from b21parity.partitions_exact import (
    brute_force_bt,
    bt_table,
    iter_regular_partitions,
    partition_numbers,
)


def odd_part_partitions(n, largest=None):
    if largest is None:
        largest = n if n % 2 else n - 1
    if n == 0:
        return 1
    return sum(odd_part_partitions(n - k, k) for k in range(1, min(n, largest) + 1, 2))


def test_example_partition_listed():
    assert (5, 2, 2, 1) in set(iter_regular_partitions(10, 3))


def test_b3_of_10():
    # no part divisible by 3: enumerate directly
    assert brute_force_bt(10, 3) == 22


@pytest.mark.parametrize("t", [2, 3, 21])
def test_small_values(t):
    assert brute_force_bt(0, t) == 1
    assert brute_force_bt(1, t) == 1


def test_guard():
    with pytest.raises(InputTooLarge):
        brute_force_bt(61, 3)
    with pytest.raises(InputTooLarge):
        bt_table(3, 10**5 + 1)


def test_table_matches_brute_force_b3():
    tab = bt_table(3, 41)
    assert [tab[n] for n in range(41)] == [brute_force_bt(n, 3) for n in range(41)]


def test_b2_counts_odd_part_partitions():
    tab = bt_table(2, 20)
    assert list(tab.counts) == [odd_part_partitions(n) for n in range(20)]


def test_partition_numbers():
    assert partition_numbers(10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    assert partition_numbers(101)[100] == 190569292


@pytest.mark.parametrize("t", range(2, 22))
def test_table_vs_brute_force_all_t(t):
    tab = bt_table(t, 36)
    assert list(tab.counts) == [brute_force_bt(n, t) for n in range(36)]


def test_parity_projection_b21():
    tab = bt_table(21, 5000)
    assert tab[0] == 1
    assert tab.parity() == bt_parity(21, 5000)


@pytest.mark.parametrize("t", [2, 3, 5, 13])
def test_parity_projection_other_t(t):
    assert bt_table(t, 1500).parity() == bt_parity(t, 1500)
