import itertools

import pytest

from adjoint_keel.surfaces import (
    from_multiplicities,
    hirzebruch,
    is_effective,
    is_nef,
    plane_blowup,
)


def nef_big_battery(max_plane=60, max_hirzebruch=48):
    """Deterministic battery of nef effective big classes.

    Plane blowups up to r = 6 with bounded degree/multiplicities plus
    Hirzebruch surfaces up to n = 3; at least one hundred classes total.
    """
    battery = []
    for r in range(0, 7):
        model = plane_blowup(r)
        found = 0
        for d in range(1, 9):
            for mults in itertools.product(range(0, 3), repeat=r):
                cls = from_multiplicities(model, d, mults)
                if cls.dot(cls) <= 0 or not is_nef(cls):
                    continue
                if not is_effective(cls):
                    continue
                battery.append((model, cls))
                found += 1
                if found >= max_plane // 7 + 2:
                    break
            if found >= max_plane // 7 + 2:
                break
    for n in range(0, 4):
        model = hirzebruch(n)
        count = 0
        for a in range(1, 5):
            for b in range(n * a, n * a + 4):
                cls = model.divisor((a, b))
                if cls.dot(cls) <= 0 or not is_nef(cls):
                    continue
                battery.append((model, cls))
                count += 1
                if count >= max_hirzebruch // 4:
                    break
            if count >= max_hirzebruch // 4:
                break
    return battery


@pytest.fixture(scope="session")
def class_battery():
    battery = nef_big_battery()
    assert len(battery) >= 100
    return battery
